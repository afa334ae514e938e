"""Desk-scale numerical checks of the operator theory.

Concentration of ``||H u||`` around 1 under random speckle, empirical
restricted isometry constants, the gradient Lipschitz constant and the
sample-complexity frontier. Every Monte Carlo trial ``i`` draws its speckle
from ``default_rng(seed + i)`` so results do not depend on execution order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, SizeError
from .operator import MeasurementOperator
from .raster import ResolutionRatio
from .transforms import SparseTransform, dft2, idft2, mixed_norm

__all__ = [
    "VerifyConfig",
    "ConcentrationResult",
    "RicResult",
    "random_phase_screen",
    "sparse_test_vectors",
    "tail_bound",
    "median_concentration",
    "dense_sensing_matrix",
    "empirical_ric",
    "lipschitz_check",
    "theorem1_required_ratio",
    "theorem1_frontier",
    "run_verify",
]

THEOREM1_C = 576.0
DENSE_LIMIT = 64 * 64
EXHAUSTIVE_LIMIT = 64
RANDOM_SUPPORTS = 10_000


@dataclass(frozen=True)
class VerifyConfig:
    rows: int = 32
    cols: int = 32
    alpha: str = "1/4"
    beta: str = "1/4"
    trials: int = 1000
    k: int = 2
    delta: float = 0.5
    eta: float = 0.1
    seed: int = 0
    basis: str = "dct"
    n_vectors: int = 5
    # extends past 1 so the tail bound drops below 1 for part of the grid
    deltas: tuple[float, ...] = (0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9,
                                 1.0, 1.25, 1.5, 1.75, 2.0)

    def __post_init__(self):
        object.__setattr__(self, "deltas", tuple(float(d) for d in self.deltas))
        if self.rows * self.cols > DENSE_LIMIT:
            raise ConfigError(f"verify grids are capped at 64x64 samples, got {self.rows}x{self.cols}")
        if not 1 <= self.k <= self.rows * self.cols:
            raise ConfigError(f"k must lie in [1, rows*cols], got {self.k}")
        if not 0 < self.delta < 1 or not 0 < self.eta < 1:
            raise ConfigError("delta and eta must lie in (0, 1)")
        if self.trials < 100:
            raise ConfigError(f"concentration checks need at least 100 trials, got {self.trials}")
        if self.n_vectors < 1:
            raise ConfigError("n_vectors must be positive")
        if not self.deltas or any(d <= 0 for d in self.deltas) or list(self.deltas) != sorted(self.deltas):
            raise ConfigError("deltas must be positive and ascending")
        self.ratio  # validates alpha/beta

    @property
    def ratio(self) -> ResolutionRatio:
        return ResolutionRatio.parse(self.alpha, self.beta)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def transform(self) -> SparseTransform:
        return SparseTransform(self.basis)

    @classmethod
    def from_dict(cls, d: dict) -> "VerifyConfig":
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown verify config keys: {sorted(unknown)}")
        d = dict(d)
        for key in ("alpha", "beta"):
            if key in d:
                d[key] = str(d[key])
        return cls(**d)


def random_phase_screen(shape, rng: np.random.Generator) -> np.ndarray:
    return np.exp(1j * rng.uniform(-math.pi, math.pi, size=shape))


def sparse_test_vectors(shape, t: SparseTransform, k: int, count: int, seed: int) -> list[np.ndarray]:
    """Unit-norm rasters whose coefficients in ``t`` are exactly k-sparse."""
    rng = np.random.default_rng(seed)
    total = shape[0] * shape[1]
    out = []
    for _ in range(count):
        x = np.zeros(total, dtype=np.complex128)
        support = rng.choice(total, size=k, replace=False)
        x[support] = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        x /= np.linalg.norm(x)
        out.append(t.synthesize(x.reshape(shape)))
    return out


def tail_bound(delta, ratio_product: float, w_norm_sq: float):
    """Tail bound ``4 exp(-ab delta^2 / (16 ||W||_{k,inf}^2))``."""
    delta = np.asarray(delta, dtype=np.float64)
    return 4.0 * np.exp(-ratio_product * delta**2 / (16.0 * w_norm_sq))


@dataclass(frozen=True)
class ConcentrationResult:
    medians: np.ndarray          # one per test vector
    deltas: np.ndarray
    tail_freq: np.ndarray        # (n_vectors, n_deltas)
    bound: np.ndarray            # tail bound per delta
    mixed_norm_sq: float
    norms: np.ndarray = field(repr=False)  # (n_vectors, trials)

    @property
    def median(self) -> float:
        return float(np.median(self.medians))

    def tail_at(self, delta: float) -> np.ndarray:
        return np.mean(np.abs(self.norms - 1.0) >= delta, axis=1)

    def bound_respected(self) -> bool:
        active = self.bound <= 1.0
        return bool(np.all(self.tail_freq[:, active] <= self.bound[active]))


def median_concentration(cfg: VerifyConfig) -> ConcentrationResult:
    t = cfg.transform
    ratio = cfg.ratio
    vectors = sparse_test_vectors(cfg.shape, t, cfg.k, cfg.n_vectors, cfg.seed)
    norms = np.empty((len(vectors), cfg.trials))
    for trial in range(cfg.trials):
        theta = random_phase_screen(cfg.shape, np.random.default_rng(cfg.seed + trial))
        op = MeasurementOperator(theta, ratio)
        for v, u in enumerate(vectors):
            norms[v, trial] = np.linalg.norm(op.forward(u))
    deltas = np.asarray(cfg.deltas)
    tails = np.stack([np.mean(np.abs(norms - 1.0) >= d, axis=1) for d in deltas], axis=1)
    w2 = mixed_norm(t, cfg.shape, cfg.k) ** 2
    return ConcentrationResult(
        medians=np.median(norms, axis=1),
        deltas=deltas,
        tail_freq=tails,
        bound=tail_bound(deltas, ratio.product, w2),
        mixed_norm_sq=w2,
        norms=norms,
    )


def dense_sensing_matrix(op: MeasurementOperator, t: SparseTransform) -> np.ndarray:
    """Columns ``A e_j`` in row-major coefficient order."""
    n, l = op.shape
    if n * l > DENSE_LIMIT:
        raise SizeError(f"dense sensing matrix capped at 64x64, got {n}x{l}")
    e = np.zeros(op.shape, dtype=np.complex128)
    cols = []
    for j in range(n * l):
        e.flat[j] = 1.0
        cols.append(op.sensing_forward(t, e).ravel())
        e.flat[j] = 0.0
    return np.stack(cols, axis=1)


@dataclass(frozen=True)
class RicResult:
    delta_k: float
    exhaustive: bool        # False: sampled supports, delta_k is a lower bound
    supports_checked: int


def _ric_from_gram(gram: np.ndarray, supports: np.ndarray) -> float:
    sub = gram[supports[:, :, None], supports[:, None, :]]
    eig = np.linalg.eigvalsh(sub)
    return float(max(np.max(eig[:, -1] - 1.0), np.max(1.0 - eig[:, 0])))


def empirical_ric(cfg: VerifyConfig, theta=None) -> RicResult:
    """Restricted isometry constant of one sensing-matrix realization.

    Exhaustive over all supports when ``rows*cols <= 64`` and ``k <= 3``;
    otherwise ``10^4`` random supports give a lower bound.
    """
    if theta is None:
        theta = random_phase_screen(cfg.shape, np.random.default_rng(cfg.seed))
    op = MeasurementOperator(theta, cfg.ratio)
    A = dense_sensing_matrix(op, cfg.transform)
    gram = A.conj().T @ A
    total = gram.shape[0]
    k = cfg.k
    exhaustive = total <= EXHAUSTIVE_LIMIT and k <= 3
    if exhaustive:
        supports = np.array(list(itertools.combinations(range(total), k)), dtype=np.intp)
    else:
        rng = np.random.default_rng(cfg.seed)
        supports = np.array(
            [rng.choice(total, size=k, replace=False) for _ in range(RANDOM_SUPPORTS)], dtype=np.intp
        )
    worst = 0.0
    for start in range(0, len(supports), 20_000):
        worst = max(worst, _ric_from_gram(gram, supports[start:start + 20_000]))
    return RicResult(worst, exhaustive, len(supports))


def lipschitz_check(cfg: VerifyConfig) -> float:
    """``2 * lambda_max(H* H)`` by power iteration; should equal ``2/(ab)``."""
    theta = random_phase_screen(cfg.shape, np.random.default_rng(cfg.seed))
    op = MeasurementOperator(theta, cfg.ratio)
    return 2.0 * op.operator_norm() ** 2


def theorem1_required_ratio(K: int, k: int, delta: float, eta: float, w_norm_sq: float,
                            C: float = THEOREM1_C) -> float:
    """Smallest ``alpha*beta`` for which the RIP sample bound holds (natural logs)."""
    bracket = k * math.log(math.e * K / k) + k * math.log(36.0 / delta) + math.log(4.0 / eta)
    return C * w_norm_sq / delta**2 * bracket


def theorem1_frontier(cfg: VerifyConfig) -> dict:
    w2 = mixed_norm(cfg.transform, cfg.shape, cfg.k) ** 2
    K = cfg.rows * cfg.cols
    return {
        "required_alpha_beta": theorem1_required_ratio(K, cfg.k, cfg.delta, cfg.eta, w2),
        "configured_alpha_beta": cfg.ratio.product,
        "mixed_norm_sq": w2,
        "K": K,
        "k": cfg.k,
    }


def _convolution_form_error(cfg: VerifyConfig) -> float:
    rng = np.random.default_rng(cfg.seed)
    op = MeasurementOperator(random_phase_screen(cfg.shape, rng), cfg.ratio)
    u = rng.standard_normal(cfg.shape) + 1j * rng.standard_normal(cfg.shape)
    ref = op.forward(u)
    return float(np.linalg.norm(op.prop1_forward(dft2(u)) - ref) / np.linalg.norm(ref))


def _check(name, measured, expected, tolerance, passed) -> dict:
    return {
        "check": name,
        "measured": measured,
        "expected": expected,
        "tolerance": tolerance,
        "pass": bool(passed),
    }


def run_verify(cfg: VerifyConfig) -> list[dict]:
    """Run every check and return JSON-ready report entries."""
    report = []
    ab = cfg.ratio.product

    lf = lipschitz_check(cfg)
    report.append(_check("lipschitz_constant", lf, 2.0 / ab, 1e-5, abs(lf - 2.0 / ab) <= 1e-5 * (2.0 / ab)))

    err = _convolution_form_error(cfg)
    report.append(_check("convolution_form_equivalence", err, 0.0, 1e-12, err <= 1e-12))

    conc = median_concentration(cfg)
    report.append(_check("median_norm", conc.median, 1.0, 0.02, abs(conc.median - 1.0) <= 0.02))
    active = conc.bound <= 1.0
    worst_tail = float(np.max(conc.tail_freq[:, active])) if np.any(active) else 0.0
    report.append(_check(
        "tail_bound",
        {"deltas": conc.deltas.tolist(), "tail_max": conc.tail_freq.max(axis=0).tolist(),
         "worst_tail_where_bound_active": worst_tail, "active_deltas": int(np.count_nonzero(active))},
        {"bound": conc.bound.tolist()},
        None,
        conc.bound_respected(),
    ))

    ric = empirical_ric(cfg)
    report.append(_check(
        "empirical_ric" + ("" if ric.exhaustive else "_lower_bound"),
        ric.delta_k, "< 1", None, ric.delta_k < 1.0,
    ))

    frontier = theorem1_frontier(cfg)
    # reported only: the bound is known to be loose at desk scale
    report.append(_check("sample_bound_frontier", frontier["required_alpha_beta"], frontier["configured_alpha_beta"],
                         None, True))
    return report
