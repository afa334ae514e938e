"""Conventional common-band (CB) interferometry.

Master is filtered to the slave's band, the slave is sinc-interpolated to
the master grid by spectral zero padding, and the two are conjugate
multiplied pixel by pixel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .operator import BandSelector
from .raster import ResolutionRatio, as_complex_raster, as_real_raster, phase_of
from .transforms import dft2, idft2

__all__ = ["CbResult", "cb_filter_master", "upsample_slave", "cb_interferogram"]


@dataclass(frozen=True)
class CbResult:
    interferogram: np.ndarray
    topo_phase: np.ndarray


def cb_filter_master(z_m, ratio: ResolutionRatio) -> np.ndarray:
    """Zero every frequency outside the common band (no gain applied)."""
    z_m = as_complex_raster(z_m, "z_m")
    band = BandSelector.from_ratio(z_m.shape, ratio)
    spec = dft2(z_m)
    spec[~band.mask()] = 0.0
    return idft2(spec)


def upsample_slave(y_s, target: tuple[int, int]) -> np.ndarray:
    """Sinc-interpolate an I x J image onto an N x L grid.

    Scaled by ``sqrt(IJ/NL)`` so that upsampling a
    :func:`~ncbinsar.operator.lowpass_degrade` output reproduces
    :func:`cb_filter_master` of the original.
    """
    y_s = as_complex_raster(y_s, "y_s")
    i, j = y_s.shape
    n, l = target
    if i > n or j > l:
        raise DimensionError(f"cannot upsample {i}x{j} onto smaller grid {n}x{l}")
    band = BandSelector((n, l), (i, j))
    return np.sqrt(i * j / (n * l)) * idft2(band.embed(dft2(y_s)))


def cb_interferogram(z_m, y_s, ratio: ResolutionRatio, flat_phase=None) -> CbResult:
    z_m = as_complex_raster(z_m, "z_m")
    y_s = as_complex_raster(y_s, "y_s")
    expected = ratio.band_shape(z_m.shape)
    if y_s.shape != expected:
        raise DimensionError(f"slave is {y_s.shape}, ratio {ratio} on {z_m.shape} needs {expected}")
    ifg = cb_filter_master(z_m, ratio) * np.conj(upsample_slave(y_s, z_m.shape))
    if flat_phase is not None:
        flat = as_real_raster(flat_phase, "flat_phase")
        if flat.shape != z_m.shape:
            raise DimensionError(f"flat_phase is {flat.shape}, expected {z_m.shape}")
        ifg = ifg * np.exp(-1j * flat)
    return CbResult(interferogram=ifg, topo_phase=phase_of(ifg))
