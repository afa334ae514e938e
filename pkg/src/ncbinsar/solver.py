"""NIL1M: FISTA for l1-regularized interferogram recovery.

Solves::

    min_U ||Y_hat - H U||_F^2 + lam * ||W U||_1

where ``Y_hat`` is the DFT of the low-resolution slave image and ``H`` the
:class:`~ncbinsar.operator.MeasurementOperator`. The gradient's Lipschitz
constant is exactly ``2/(alpha*beta)``, so no line search is needed.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ConfigError, DimensionError, ZeroInputError
from .operator import MeasurementOperator
from .raster import ResolutionRatio, as_complex_raster, frobenius_norm, phase_of
from .transforms import SparseTransform, dft2

__all__ = [
    "SolverConfig",
    "SolverState",
    "RecoveryResult",
    "soft_threshold",
    "select_lambda",
    "lipschitz_constant",
    "objective",
    "nil1m",
]

log = logging.getLogger(__name__)


def soft_threshold(v, kappa: float) -> np.ndarray:
    """Complex shrinkage: ``v * max(|v| - kappa, 0) / |v|`` (phase kept)."""
    if kappa < 0:
        raise ValueError(f"kappa must be non-negative, got {kappa}")
    return kernels.soft_threshold(v, float(kappa))


def select_lambda(y_s, gamma: float, K: int) -> float:
    """Regularization weight from the slave image power.

    ``sigma = sqrt(mean(|y_s|^2) / gamma)`` and
    ``lam = sigma * sqrt(2 ln K)`` with ``K`` the coefficient count.
    """
    y_s = np.asarray(y_s)
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    if K < 2:
        raise ValueError(f"K must be at least 2, got {K}")
    power = frobenius_norm(y_s) ** 2
    if power == 0.0:
        raise ZeroInputError("select_lambda: slave image is identically zero")
    sigma = math.sqrt(power / y_s.size / gamma)
    return sigma * math.sqrt(2.0 * math.log(K))


def lipschitz_constant(ratio: ResolutionRatio) -> float:
    return 2.0 / ratio.product


@dataclass(frozen=True)
class SolverConfig:
    """NIL1M settings. Give exactly one of ``lam`` and ``gamma``."""

    lam: float | None = None
    gamma: float | None = None
    n_iter: int = 200
    transform: SparseTransform = field(default_factory=SparseTransform)
    record_history: bool = False

    def __post_init__(self):
        if (self.lam is None) == (self.gamma is None):
            raise ConfigError("exactly one of lam and gamma must be set")
        if self.lam is not None and self.lam < 0:
            raise ConfigError(f"lam must be non-negative, got {self.lam}")
        if self.gamma is not None and self.gamma <= 0:
            raise ConfigError(f"gamma must be positive, got {self.gamma}")
        if self.n_iter < 1:
            raise ConfigError(f"n_iter must be >= 1, got {self.n_iter}")

    def resolve_lambda(self, y_s, K: int) -> float:
        if self.lam is not None:
            return float(self.lam)
        return select_lambda(y_s, self.gamma, K)


@dataclass
class SolverState:
    u: np.ndarray
    u_prev: np.ndarray
    v: np.ndarray
    t: float = 1.0
    iteration: int = 0
    objective_history: list[float] = field(default_factory=list)

    @classmethod
    def zeros(cls, shape) -> "SolverState":
        z = np.zeros(shape, dtype=np.complex128)
        return cls(u=z, u_prev=z, v=z)


@dataclass(frozen=True)
class RecoveryResult:
    """Output of :func:`nil1m`.

    ``u_hat`` is the raw estimate of ``|z_s| exp(-j phi_topo)``.
    ``interferogram`` is its conjugate, the conventional orientation
    ``|z_s| exp(+j phi_topo)``, and ``topo_phase`` its phase.
    """

    u_hat: np.ndarray
    interferogram: np.ndarray
    topo_phase: np.ndarray
    iterations_run: int
    final_objective: float
    lambda_used: float
    objective_history: tuple[float, ...] = ()


def objective(y_hat, u, op: MeasurementOperator, lam: float, transform: SparseTransform) -> float:
    """``||y_hat - H u||_F^2 + lam * sum |W u|``."""
    y_hat = np.asarray(y_hat)
    if y_hat.shape != op.measurement_shape:
        raise DimensionError(f"objective: y_hat is {y_hat.shape}, expected {op.measurement_shape}")
    resid = frobenius_norm(y_hat - op.forward(u)) ** 2
    coef = transform.analyze(u)
    return resid + lam * float(np.sum(np.abs(coef)))


def nil1m(y_s, theta, ratio: ResolutionRatio, cfg: SolverConfig) -> RecoveryResult:
    """Recover the high-resolution interferogram from a low-resolution slave.

    Parameters
    ----------
    y_s : array_like
        I x J low-resolution slave image (image domain).
    theta : array_like
        N x L unit-modulus master phase screen ``exp(j(phi_m - phi_flat))``.
    ratio : ResolutionRatio
        Must satisfy ``I = alpha*N`` and ``J = beta*L``.
    cfg : SolverConfig

    Returns
    -------
    RecoveryResult
        Runs exactly ``cfg.n_iter`` iterations; no early stopping.
    """
    y_s = as_complex_raster(y_s, "y_s")
    op = MeasurementOperator(theta, ratio)
    if y_s.shape != op.measurement_shape:
        raise DimensionError(
            f"slave is {y_s.shape} but ratio {ratio} on a {op.shape} grid needs {op.measurement_shape}"
        )
    W = cfg.transform
    W.validate(op.shape)
    K = op.shape[0] * op.shape[1]
    lam = cfg.resolve_lambda(y_s, K)
    lip = lipschitz_constant(ratio)
    kappa = lam / lip
    step = 2.0 / lip

    y_hat = dft2(y_s)
    st = SolverState.zeros(op.shape)
    for i in range(1, cfg.n_iter + 1):
        resid = y_hat - op.forward(st.v)
        # gradient step V - D with D = -(2/L_f) H* R
        z = st.v + step * op.adjoint(resid)
        u = W.synthesize(kernels.soft_threshold(W.analyze(z), kappa))
        t_next = 0.5 + 0.5 * math.sqrt(1.0 + 4.0 * st.t * st.t)
        v_next = u + ((st.t - 1.0) / t_next) * (u - st.u)
        st.u_prev, st.u, st.v, st.t, st.iteration = st.u, u, v_next, t_next, i
        if cfg.record_history:
            st.objective_history.append(objective(y_hat, u, op, lam, W))

    final = st.objective_history[-1] if st.objective_history else objective(y_hat, st.u, op, lam, W)
    log.debug("nil1m: %d iterations, lambda=%.6g, objective=%.6g", st.iteration, lam, final)
    ifg = np.conj(st.u)
    return RecoveryResult(
        u_hat=st.u,
        interferogram=ifg,
        topo_phase=phase_of(ifg),
        iterations_run=st.iteration,
        final_objective=final,
        lambda_used=lam,
        objective_history=tuple(st.objective_history),
    )
