"""Phase RMSE, coefficient-error curves and interferogram spectra."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NonSquareError
from .raster import as_complex_raster, as_real_raster, phase_of
from .transforms import SparseTransform, dft2

__all__ = [
    "DB_FLOOR",
    "ErrorCurves",
    "rmse",
    "coef_error_map",
    "corner_size",
    "error_curves",
    "interferogram_spectrum",
    "spectral_support_area",
    "to_db",
]

DB_FLOOR = -300.0
DEFAULT_PERCENTAGES = tuple(round(0.1 * i, 1) for i in range(1, 11))


def rmse(phi_true, phi_est) -> float:
    """Root-mean-square of the wrapped phase difference, in radians."""
    a = as_real_raster(phi_true, "phi_true")
    b = as_real_raster(phi_est, "phi_est")
    if a.shape != b.shape:
        raise DimensionError(f"rmse: shape mismatch {a.shape} vs {b.shape}")
    d = phase_of(np.exp(1j * (a - b)))
    return float(np.sqrt(np.mean(d * d)))


def coef_error_map(phi_true, phi_est, t: SparseTransform) -> np.ndarray:
    """Sparse-domain coefficients of ``exp(j phi_true) - exp(j phi_est)``."""
    a = as_real_raster(phi_true, "phi_true")
    b = as_real_raster(phi_est, "phi_est")
    if a.shape != b.shape:
        raise DimensionError(f"coef_error_map: shape mismatch {a.shape} vs {b.shape}")
    return t.analyze(np.exp(1j * a) - np.exp(1j * b))


def to_db(power: float) -> float:
    return 10.0 * math.log10(power) if power > 0 else DB_FLOOR


def corner_size(xi: float, n: int) -> int:
    """Low-frequency corner ``P`` with ``P^2/N^2`` closest to ``xi``."""
    return int(round(math.sqrt(xi) * n))


@dataclass(frozen=True)
class ErrorCurves:
    percentages: tuple[float, ...]
    e_low_db: tuple[float, ...]
    e_high_db: tuple[float, ...]

    def rows(self):
        return zip(self.percentages, self.e_low_db, self.e_high_db)


def error_curves(emap, percentages=DEFAULT_PERCENTAGES) -> ErrorCurves:
    """Mean squared coefficient error inside / outside the low-frequency corner.

    For each ``xi`` the corner ``[:P, :P]`` with ``P = round(sqrt(xi) N)``
    gives ``E_low``; everything else gives ``E_high``. Empty or all-zero
    regions report ``DB_FLOOR``.
    """
    emap = np.asarray(emap)
    if emap.ndim != 2:
        raise DimensionError(f"error_curves: expected a 2-D map, got {emap.shape}")
    n, m = emap.shape
    if n != m:
        raise NonSquareError(f"error_curves needs a square map, got {n}x{m}")
    xs = tuple(float(x) for x in percentages)
    if list(xs) != sorted(xs) or any(not 0 < x <= 1 for x in xs):
        raise ValueError("percentages must be ascending values in (0, 1]")
    power = np.abs(emap) ** 2
    total = float(np.sum(power))
    lows, highs = [], []
    for xi in xs:
        p = corner_size(xi, n)
        low_sum = float(np.sum(power[:p, :p]))
        low_count = p * p
        high_sum = total - low_sum
        high_count = n * n - low_count
        lows.append(to_db(low_sum / low_count) if low_count else DB_FLOOR)
        highs.append(to_db(max(high_sum, 0.0) / high_count) if high_count else DB_FLOOR)
    return ErrorCurves(xs, tuple(lows), tuple(highs))


def interferogram_spectrum(z_m, ifg, *, weight_by_master: bool = False) -> np.ndarray:
    """Centred magnitude spectrum of an interferogram.

    With ``weight_by_master`` the raster is first multiplied by ``|z_m|``,
    turning a recovered ``|z_s| exp(j phi)`` into the conventional
    ``|z_m||z_s| exp(j phi)`` interferogram.
    """
    z_m = as_complex_raster(z_m, "z_m")
    ifg = as_complex_raster(ifg, "ifg")
    if z_m.shape != ifg.shape:
        raise DimensionError(f"interferogram_spectrum: shape mismatch {z_m.shape} vs {ifg.shape}")
    if weight_by_master:
        ifg = np.abs(z_m) * ifg
    return np.abs(np.fft.fftshift(dft2(ifg)))


def spectral_support_area(spectrum, level_db: float = -20.0) -> int:
    """Number of bins within ``level_db`` of the spectral peak."""
    spectrum = np.asarray(spectrum, dtype=np.float64)
    peak = float(spectrum.max())
    if peak <= 0:
        return 0
    return int(np.count_nonzero(spectrum >= peak * 10.0 ** (level_db / 20.0)))
