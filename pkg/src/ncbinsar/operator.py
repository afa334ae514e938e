"""Band selection and the speckle-modulated measurement operator.

The operator maps an N x L interferogram ``U`` to the I x J spectral
measurement domain (the DFT of the low-resolution slave image)::

    forward(U) = (1/sqrt(ab)) * band(dft2(theta * U))

and ``adjoint`` is its exact conjugate transpose. Working in the spectral
domain means the slave image is transformed once, not every iteration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError
from .raster import ResolutionRatio, as_complex_raster, as_phase_field, frobenius_norm
from .transforms import SparseTransform, dft2, idft2

__all__ = [
    "lowpass_indices",
    "BandSelector",
    "MeasurementOperator",
    "lowpass_degrade",
    "power_iteration",
]


def lowpass_indices(n: int, m: int) -> np.ndarray:
    """DC-centred lowpass index set keeping ``m`` of ``n`` DFT bins.

    ``ceil(m/2)`` non-negative frequencies followed by ``floor(m/2)``
    negative ones, so the kept bins land in natural DFT order in an
    ``m``-point spectrum.
    """
    if not 1 <= m <= n:
        raise ValueError(f"cannot keep {m} of {n} frequencies")
    pos = (m + 1) // 2
    neg = m // 2
    return np.concatenate([np.arange(pos), np.arange(n - neg, n)]).astype(np.intp)


@dataclass(frozen=True)
class BandSelector:
    full_shape: tuple[int, int]
    kept_shape: tuple[int, int]
    row_index: np.ndarray = field(init=False, repr=False)
    col_index: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if any(k < 1 or k > f for k, f in zip(self.kept_shape, self.full_shape)):
            raise DimensionError(f"cannot keep a {self.kept_shape} band of a {self.full_shape} spectrum")
        object.__setattr__(self, "row_index", lowpass_indices(self.full_shape[0], self.kept_shape[0]))
        object.__setattr__(self, "col_index", lowpass_indices(self.full_shape[1], self.kept_shape[1]))

    @classmethod
    def from_ratio(cls, shape: tuple[int, int], ratio: ResolutionRatio) -> "BandSelector":
        return cls(tuple(shape), ratio.band_shape(shape))

    def extract(self, spectrum: np.ndarray) -> np.ndarray:
        if spectrum.shape != self.full_shape:
            raise DimensionError(f"expected a {self.full_shape} spectrum, got {spectrum.shape}")
        return spectrum[np.ix_(self.row_index, self.col_index)]

    def embed(self, small: np.ndarray) -> np.ndarray:
        if small.shape != self.kept_shape:
            raise DimensionError(f"expected a {self.kept_shape} spectrum, got {small.shape}")
        out = np.zeros(self.full_shape, dtype=np.complex128)
        out[np.ix_(self.row_index, self.col_index)] = small
        return out

    def mask(self) -> np.ndarray:
        m = np.zeros(self.full_shape, dtype=bool)
        m[np.ix_(self.row_index, self.col_index)] = True
        return m


def lowpass_degrade(z, ratio: ResolutionRatio) -> np.ndarray:
    """Band-limit an N x L image to the I x J low-resolution grid."""
    z = as_complex_raster(z, "z")
    band = BandSelector.from_ratio(z.shape, ratio)
    gain = 1.0 / np.sqrt(ratio.product)
    return gain * idft2(band.extract(dft2(z)))


def power_iteration(normal_op, shape, *, max_iter: int = 200, rtol: float = 1e-10, seed: int = 0):
    """Largest eigenvalue of a Hermitian PSD operator given as a callable.

    Returns ``(eigenvalue, iterations)``. Stops when the Rayleigh quotient
    changes by less than ``rtol`` relative.
    """
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    v /= frobenius_norm(v)
    lam = 0.0
    for it in range(1, max_iter + 1):
        w = normal_op(v)
        lam_new = float(np.real(np.vdot(v, w)))
        nrm = frobenius_norm(w)
        if nrm == 0.0:
            return 0.0, it
        v = w / nrm
        if it > 1 and abs(lam_new - lam) <= rtol * abs(lam_new):
            return lam_new, it
        lam = lam_new
    return lam, max_iter


class MeasurementOperator:
    """Speckle-phase-modulated band-limiting map and its adjoint.

    Parameters
    ----------
    theta : array_like
        N x L unit-modulus master phase screen.
    ratio : ResolutionRatio
        Slave/master bandwidth ratio; ``alpha*N`` and ``beta*L`` must be
        integers.
    """

    def __init__(self, theta, ratio: ResolutionRatio):
        self.theta = as_phase_field(theta)
        self.theta.setflags(write=False)
        self.ratio = ratio
        self.band = BandSelector.from_ratio(self.theta.shape, ratio)
        self.gain = 1.0 / np.sqrt(ratio.product)

    @property
    def shape(self) -> tuple[int, int]:
        return self.theta.shape

    @property
    def measurement_shape(self) -> tuple[int, int]:
        return self.band.kept_shape

    def forward(self, u) -> np.ndarray:
        u = np.asarray(u)
        if u.shape != self.shape:
            raise DimensionError(f"forward expects {self.shape}, got {u.shape}")
        return self.gain * self.band.extract(dft2(self.theta * u))

    def adjoint(self, y) -> np.ndarray:
        y = np.asarray(y)
        if y.shape != self.measurement_shape:
            raise DimensionError(f"adjoint expects {self.measurement_shape}, got {y.shape}")
        return self.gain * np.conj(self.theta) * idft2(self.band.embed(y))

    def normal(self, u) -> np.ndarray:
        return self.adjoint(self.forward(u))

    def sensing_forward(self, t: SparseTransform, x) -> np.ndarray:
        """``A x = H (W* x)``."""
        return self.forward(t.synthesize(x))

    def sensing_adjoint(self, t: SparseTransform, y) -> np.ndarray:
        return t.analyze(self.adjoint(y))

    def prop1_forward(self, u_hat) -> np.ndarray:
        """Random-convolution form acting on the spectrum ``u_hat = dft2(u)``.

        Evaluated as band(dft2(theta * idft2(u_hat))), i.e. a circular
        convolution of the spectrum with the spectrum of ``theta`` followed
        by lowpass subsampling.
        """
        u_hat = np.asarray(u_hat)
        if u_hat.shape != self.shape:
            raise DimensionError(f"prop1_forward expects {self.shape}, got {u_hat.shape}")
        return self.gain * self.band.extract(dft2(self.theta * idft2(u_hat)))

    def operator_norm(self, *, max_iter: int = 200, rtol: float = 1e-10) -> float:
        lam, _ = power_iteration(self.normal, self.shape, max_iter=max_iter, rtol=rtol)
        return float(np.sqrt(lam))

    def dense(self) -> np.ndarray:
        """Materialize the (I*J) x (N*L) matrix, row-major vectorization.

        Verification helper; only sensible for small grids.
        """
        n, l = self.shape
        cols = []
        e = np.zeros(self.shape, dtype=np.complex128)
        for i in range(n * l):
            e.flat[i] = 1.0
            cols.append(self.forward(e).ravel())
            e.flat[i] = 0.0
        return np.stack(cols, axis=1)
