"""Unitary 2-D DFT and the orthonormal sparsifying bases.

All transforms are orthonormal, so analysis and synthesis are adjoint and
mutually inverse. Complex rasters go through the real DCT / wavelet by
transforming real and imaginary parts separately.

DFT spectra keep DC at index (0, 0); no fftshift is applied in storage.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
import scipy.fft as sfft

from . import kernels
from .errors import SizeError
from .raster import as_complex_raster

__all__ = [
    "Basis",
    "SparseTransform",
    "dft2",
    "idft2",
    "analyze",
    "synthesize",
    "mixed_norm",
    "FFT_WORKERS",
]

# pocketfft splits the work along independent 1-D transforms, so the
# worker count never changes the result bits.
FFT_WORKERS = -1

MIXED_NORM_MAX_SAMPLES = 64 * 64


def dft2(a) -> np.ndarray:
    """Unitary 2-D DFT (scaled by 1/sqrt(rows*cols))."""
    return sfft.fft2(as_complex_raster(a), norm="ortho", workers=FFT_WORKERS)


def idft2(a) -> np.ndarray:
    """Inverse of :func:`dft2`."""
    return sfft.ifft2(as_complex_raster(a), norm="ortho", workers=FFT_WORKERS)


class Basis(str, enum.Enum):
    DCT = "dct"
    DB4 = "db4"
    IDENTITY = "identity"


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def default_db4_levels(shape: tuple[int, int]) -> int:
    m = min(shape)
    return max(1, int(math.log2(m)) - 3) if _is_pow2(m) else 1


@dataclass(frozen=True)
class SparseTransform:
    """Orthonormal analysis/synthesis pair.

    Parameters
    ----------
    kind : Basis or str
        ``"dct"`` (separable orthonormal DCT-II), ``"db4"`` (periodic
        4-tap Daubechies wavelet, Mallat layout) or ``"identity"``.
    levels : int, optional
        Number of dyadic wavelet levels. ``None`` picks
        ``min(log2(rows), log2(cols)) - 3`` (at least 1) per raster.
    """

    kind: Basis = Basis.DCT
    levels: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Basis(self.kind))
        if self.levels is not None and self.levels < 1:
            raise ValueError(f"levels must be positive, got {self.levels}")

    def _levels_for(self, shape: tuple[int, int]) -> int:
        rows, cols = shape
        if not (_is_pow2(rows) and _is_pow2(cols)):
            raise SizeError(f"DB4 needs power-of-two dimensions, got {rows}x{cols}")
        max_levels = int(math.log2(min(rows, cols))) - 2
        levels = default_db4_levels(shape) if self.levels is None else self.levels
        if max_levels < 1 or levels > max_levels:
            raise SizeError(
                f"DB4 with {levels} level(s) needs log2(min(rows, cols)) - 2 >= levels; "
                f"got {rows}x{cols}"
            )
        return levels

    def validate(self, shape: tuple[int, int]) -> None:
        if self.kind is Basis.DB4:
            self._levels_for(shape)

    def analyze(self, u) -> np.ndarray:
        """Coefficients ``x = W u``."""
        u = as_complex_raster(u)
        if self.kind is Basis.IDENTITY:
            return u.copy()
        if self.kind is Basis.DCT:
            return sfft.dctn(u, type=2, norm="ortho", workers=FFT_WORKERS)
        levels = self._levels_for(u.shape)
        return _db4_forward(u.real, levels) + 1j * _db4_forward(u.imag, levels)

    def synthesize(self, x) -> np.ndarray:
        """Raster ``u = W* x``."""
        x = as_complex_raster(x)
        if self.kind is Basis.IDENTITY:
            return x.copy()
        if self.kind is Basis.DCT:
            return sfft.idctn(x, type=2, norm="ortho", workers=FFT_WORKERS)
        levels = self._levels_for(x.shape)
        return _db4_inverse(x.real, levels) + 1j * _db4_inverse(x.imag, levels)


def _db4_forward(x: np.ndarray, levels: int) -> np.ndarray:
    out = np.array(x, dtype=np.float64, copy=True)
    r, c = out.shape
    for _ in range(levels):
        block = kernels.db4_analyze_rows(out[:r, :c])
        block = kernels.db4_analyze_rows(block.T.copy()).T
        out[:r, :c] = block
        r //= 2
        c //= 2
    return out


def _db4_inverse(x: np.ndarray, levels: int) -> np.ndarray:
    out = np.array(x, dtype=np.float64, copy=True)
    rows, cols = out.shape
    for lev in reversed(range(levels)):
        r = rows >> lev
        c = cols >> lev
        block = kernels.db4_synthesize_rows(out[:r, :c].T.copy()).T
        block = kernels.db4_synthesize_rows(np.ascontiguousarray(block))
        out[:r, :c] = block
    return out


def analyze(t: SparseTransform, u) -> np.ndarray:
    return t.analyze(u)


def synthesize(t: SparseTransform, x) -> np.ndarray:
    return t.synthesize(x)


def mixed_norm(t: SparseTransform, shape: tuple[int, int], k: int) -> float:
    """Exact ``||W||_{k,inf}`` for the synthesis matrix on a ``shape`` grid.

    For unit-norm ``x`` supported on ``k`` entries, ``|(W x)_i|`` is
    maximized by aligning ``x`` with the ``k`` largest entries of row ``i``,
    so the supremum is the largest root-sum-square of any row's ``k``
    largest magnitudes. Row ``i`` of ``W`` is ``analyze(e_i)`` because the
    bases are real orthogonal.
    """
    rows, cols = shape
    total = rows * cols
    if not 1 <= k <= total:
        raise ValueError(f"k must lie in [1, {total}], got {k}")
    if total > MIXED_NORM_MAX_SAMPLES:
        raise SizeError(f"mixed_norm materializes rows; {rows}x{cols} exceeds 64x64")
    t.validate(shape)
    best = 0.0
    delta = np.zeros(shape, dtype=np.complex128)
    for i in range(total):
        delta.flat[i] = 1.0
        row = np.abs(t.analyze(delta)).ravel() ** 2
        delta.flat[i] = 0.0
        top = np.partition(row, total - k)[total - k:] if k < total else row
        best = max(best, float(np.sum(top)))
    return math.sqrt(best)
