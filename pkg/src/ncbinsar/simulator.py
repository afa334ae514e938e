"""Synthetic master/slave scenes with known topographic phase.

Draw order from the seeded generator is part of the contract: Rayleigh
amplitude, then master phase, then phase noise, each a full row-major
raster. The flat-Earth phase is zero, so the master phase screen is
``exp(j phi_m)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ConfigError
from .operator import lowpass_degrade
from .raster import ResolutionRatio, frobenius_norm

__all__ = [
    "Pattern",
    "OutlierPatch",
    "SceneConfig",
    "SceneBundle",
    "topo_phase_pattern",
    "default_patches",
    "simulate_scene",
    "degrade_slave",
    "empirical_noise_stats",
]


class Pattern(str, enum.Enum):
    PYRAMID = "pyramid"
    RINGS = "rings"


@dataclass(frozen=True)
class OutlierPatch:
    row: int
    col: int
    phase_offset: float
    size: int = 16


@dataclass(frozen=True)
class SceneConfig:
    rows: int = 256
    cols: int = 256
    pattern: Pattern = Pattern.PYRAMID
    fringe_scale: float = 0.2
    outlier_patches: tuple[OutlierPatch, ...] = ()
    noise_half_width: float = 0.0
    seed: int = 0

    def __post_init__(self):
        try:
            object.__setattr__(self, "pattern", Pattern(self.pattern))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        patches = tuple(p if isinstance(p, OutlierPatch) else OutlierPatch(**p) for p in self.outlier_patches)
        object.__setattr__(self, "outlier_patches", patches)
        if self.rows < 1 or self.cols < 1:
            raise ConfigError(f"scene size must be positive, got {self.rows}x{self.cols}")
        if not 0.0 <= self.noise_half_width <= math.pi:
            raise ConfigError(f"noise_half_width must lie in [0, pi], got {self.noise_half_width}")
        for p in patches:
            if p.size < 1 or p.row < 0 or p.col < 0 or p.row + p.size > self.rows or p.col + p.size > self.cols:
                raise ConfigError(f"outlier patch {p} does not fit in a {self.rows}x{self.cols} grid")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pattern"] = self.pattern.value
        d["outlier_patches"] = [asdict(p) for p in self.outlier_patches]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SceneConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown scene config keys: {sorted(unknown)}")
        d = dict(d)
        d["outlier_patches"] = tuple(d.get("outlier_patches", ()))
        return cls(**d)


@dataclass(frozen=True)
class SceneBundle:
    config: SceneConfig
    z_m: np.ndarray
    z_s: np.ndarray
    theta_m: np.ndarray
    phi_topo: np.ndarray
    phi_noise: np.ndarray
    amplitude: np.ndarray
    phi_m: np.ndarray = field(repr=False)

    @property
    def u(self) -> np.ndarray:
        """Ground-truth interferogram ``|z_s| exp(-j phi_topo)``."""
        return self.amplitude * np.exp(-1j * self.phi_topo)

    @property
    def noise(self) -> np.ndarray:
        """Additive noise term ``theta u (exp(-j phi_noise) - 1)``."""
        return self.theta_m * self.u * (np.exp(-1j * self.phi_noise) - 1.0)


def topo_phase_pattern(cfg: SceneConfig) -> np.ndarray:
    n = np.arange(cfg.rows, dtype=np.float64)[:, None]
    l = np.arange(cfg.cols, dtype=np.float64)[None, :]
    if cfg.pattern is Pattern.PYRAMID:
        dist = np.minimum(np.minimum(n, cfg.rows - 1 - n), np.minimum(l, cfg.cols - 1 - l))
        phi = cfg.fringe_scale * dist
    else:
        phi = cfg.fringe_scale * np.sqrt((n - cfg.rows / 2) ** 2 + (l - cfg.cols / 2) ** 2)
    phi = np.array(phi, dtype=np.float64)
    for p in cfg.outlier_patches:
        phi[p.row:p.row + p.size, p.col:p.col + p.size] += p.phase_offset
    return phi


def default_patches(rows: int, cols: int, size: int = 16) -> tuple[OutlierPatch, ...]:
    """Three small outlier patches at fixed fractional positions."""
    spots = ((0.30, 0.65, math.pi / 2), (0.62, 0.28, -math.pi / 2), (0.78, 0.80, math.pi))
    patches = []
    for fr, fc, off in spots:
        r = min(int(fr * rows), rows - size)
        c = min(int(fc * cols), cols - size)
        if r >= 0 and c >= 0:
            patches.append(OutlierPatch(r, c, off, size))
    return tuple(patches)


def simulate_scene(cfg: SceneConfig) -> SceneBundle:
    rng = np.random.default_rng(cfg.seed)
    shape = (cfg.rows, cfg.cols)
    amplitude = rng.rayleigh(1.0, size=shape)
    phi_m = rng.uniform(-math.pi, math.pi, size=shape)
    a = cfg.noise_half_width
    # drawn even when a == 0 so the stream position never depends on a
    phi_noise = rng.uniform(-a, a, size=shape) + 0.0
    phi_topo = topo_phase_pattern(cfg)
    theta = np.exp(1j * phi_m)
    z_m = amplitude * theta
    z_s = amplitude * np.exp(1j * (phi_m - phi_topo - phi_noise))
    for arr in (z_m, z_s, theta, phi_topo, phi_noise, amplitude, phi_m):
        arr.setflags(write=False)
    return SceneBundle(cfg, z_m, z_s, theta, phi_topo, phi_noise, amplitude, phi_m)


def degrade_slave(bundle: SceneBundle, ratio: ResolutionRatio) -> np.ndarray:
    """The observed low-resolution slave image."""
    return lowpass_degrade(bundle.z_s, ratio)


def empirical_noise_stats(bundle: SceneBundle) -> tuple[float, float]:
    """``(snr_db, coherence)`` of the simulated pair.

    SNR compares the noise-free slave ``theta u`` with the noise term;
    coherence is the topography-compensated sample coherence over the
    whole scene. A noise-free scene reports ``inf`` dB.
    """
    signal = frobenius_norm(bundle.theta_m * bundle.u) ** 2
    noise = frobenius_norm(bundle.noise) ** 2
    snr_db = math.inf if noise == 0.0 else 10.0 * math.log10(signal / noise)
    cross = np.sum(bundle.z_m * np.conj(bundle.z_s) * np.exp(-1j * bundle.phi_topo))
    denom = math.sqrt(frobenius_norm(bundle.z_m) ** 2 * frobenius_norm(bundle.z_s) ** 2)
    coherence = float(abs(cross) / denom) if denom > 0 else 0.0
    return snr_db, coherence
