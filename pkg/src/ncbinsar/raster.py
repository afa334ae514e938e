"""Complex rasters, phase fields and resolution ratios.

Rasters are plain 2-D numpy arrays (``complex128`` for images, spectra and
interferograms, ``float64`` for phases). The helpers here validate and
normalize inputs; they never wrap the array in a custom container.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionError, RatioError

__all__ = [
    "ResolutionRatio",
    "as_complex_raster",
    "as_real_raster",
    "as_phase_field",
    "hadamard",
    "phase_of",
    "frobenius_norm",
    "inner",
    "wrap_phase",
]

_UNIT_TOL = 1e-12


def _check_2d(a: np.ndarray, name: str) -> None:
    if a.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {a.shape}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionError(f"{name} must have at least one row and column, got {a.shape}")


def as_complex_raster(a, name: str = "raster") -> np.ndarray:
    """Return ``a`` as a C-contiguous complex128 2-D array.

    Single precision input is rejected: every downstream tolerance assumes
    double precision.
    """
    arr = np.asarray(a)
    if arr.dtype in (np.float32, np.complex64, np.float16):
        raise TypeError(f"{name}: single precision ({arr.dtype}) is not supported")
    _check_2d(arr, name)
    return np.ascontiguousarray(arr, dtype=np.complex128)


def as_real_raster(a, name: str = "raster") -> np.ndarray:
    arr = np.asarray(a)
    if np.iscomplexobj(arr):
        raise TypeError(f"{name}: expected a real raster, got {arr.dtype}")
    if arr.dtype in (np.float32, np.float16):
        raise TypeError(f"{name}: single precision ({arr.dtype}) is not supported")
    _check_2d(arr, name)
    return np.ascontiguousarray(arr, dtype=np.float64)


def as_phase_field(a, name: str = "theta") -> np.ndarray:
    """Validate a unit-modulus complex raster (the master phase screen)."""
    arr = as_complex_raster(a, name)
    dev = np.max(np.abs(np.abs(arr) - 1.0))
    if dev > _UNIT_TOL:
        raise ValueError(f"{name}: samples must have unit modulus (max deviation {dev:.3e})")
    return arr


def hadamard(a, b) -> np.ndarray:
    """Elementwise product of two equally sized rasters."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionError(f"hadamard: shape mismatch {a.shape} vs {b.shape}")
    return a * b


def phase_of(a) -> np.ndarray:
    """Principal argument in (-pi, pi]; zero samples map to 0.

    ``np.angle`` returns -pi for negative reals carrying a negative-zero
    imaginary part, so that branch is folded back to +pi.
    """
    a = np.asarray(a)
    ph = np.angle(a)
    ph = np.where(ph <= -np.pi, np.pi, ph)
    return np.where(a == 0, 0.0, ph)


def wrap_phase(phi) -> np.ndarray:
    """Wrap real phases to (-pi, pi]."""
    return phase_of(np.exp(1j * np.asarray(phi, dtype=np.float64)))


def frobenius_norm(a) -> float:
    # numpy's pairwise summation over a contiguous buffer has a fixed order,
    # so this is bit-reproducible (BLAS dot products are not).
    a = np.ascontiguousarray(a)
    if np.iscomplexobj(a):
        sq = a.real * a.real + a.imag * a.imag
    else:
        sq = a * a
    return float(np.sqrt(np.sum(sq, dtype=np.float64)))


def inner(a, b) -> complex:
    """<a, b> = sum(a * conj(b)), linear in the first argument."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionError(f"inner: shape mismatch {a.shape} vs {b.shape}")
    return complex(np.sum(a * np.conj(b)))


@dataclass(frozen=True)
class ResolutionRatio:
    """Fraction of the master bandwidth kept by the slave, per axis.

    ``alpha`` applies to rows (range), ``beta`` to columns (azimuth). Both are
    exact rationals so integer band sizes can be checked without rounding.
    """

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        for name in ("alpha", "beta"):
            value = Fraction(getattr(self, name))
            if not (0 < value <= 1):
                raise RatioError(f"{name} must lie in (0, 1], got {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def parse(cls, alpha: str | Fraction | int, beta: str | Fraction | int) -> "ResolutionRatio":
        try:
            return cls(Fraction(alpha), Fraction(beta))
        except (ValueError, ZeroDivisionError) as exc:
            raise RatioError(f"cannot parse ratio {alpha!r} x {beta!r}: {exc}") from exc

    @property
    def product(self) -> float:
        return float(self.alpha * self.beta)

    def band_shape(self, shape: tuple[int, int]) -> tuple[int, int]:
        """Kept (I, J) for a full (N, L) grid; raises if either is fractional."""
        n, l = shape
        i = self.alpha * n
        j = self.beta * l
        if i.denominator != 1 or j.denominator != 1:
            raise RatioError(
                f"ratio {self.alpha} x {self.beta} on a {n}x{l} grid gives "
                f"non-integer band {i} x {j}"
            )
        return int(i), int(j)

    def __str__(self) -> str:
        return f"{self.alpha}x{self.beta}"
