"""Scene-to-RMSE pipelines comparing NCB recovery with the CB baseline."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .baseline import CbResult, cb_interferogram
from .metrics import rmse
from .raster import ResolutionRatio
from .simulator import Pattern, SceneBundle, SceneConfig, default_patches, degrade_slave, simulate_scene
from .solver import RecoveryResult, SolverConfig, nil1m
from .transforms import SparseTransform

__all__ = [
    "NOISY_HALF_WIDTH",
    "TABLE1_RATIOS",
    "Comparison",
    "table1_scene",
    "run_comparison",
    "table1_cells",
    "reproduce_table1",
]

NOISY_HALF_WIDTH = math.pi / 4
TABLE1_RATIOS = (ResolutionRatio.parse("1/16", "1"), ResolutionRatio.parse("1", "1/16"))
TABLE1_HEADER = ("setting", "example", "method", "rmse_1/16x1", "rmse_1x1/16")


@dataclass(frozen=True)
class Comparison:
    bundle: SceneBundle
    ratio: ResolutionRatio
    y_s: np.ndarray
    ncb: RecoveryResult
    cb: CbResult

    @property
    def rmse_ncb(self) -> float:
        return rmse(self.bundle.phi_topo, self.ncb.topo_phase)

    @property
    def rmse_cb(self) -> float:
        return rmse(self.bundle.phi_topo, self.cb.topo_phase)


def table1_scene(size: int, pattern, noisy: bool, seed: int) -> SceneConfig:
    """Square scene with the default outlier patches."""
    return SceneConfig(
        rows=size,
        cols=size,
        pattern=Pattern(pattern),
        outlier_patches=default_patches(size, size),
        noise_half_width=NOISY_HALF_WIDTH if noisy else 0.0,
        seed=seed,
    )


def run_comparison(scene: SceneConfig, ratio: ResolutionRatio, solver: SolverConfig | None = None) -> Comparison:
    """Simulate, degrade the slave, then run both NCB and CB on the same data."""
    solver = solver or SolverConfig(gamma=1.0)
    bundle = simulate_scene(scene)
    y_s = degrade_slave(bundle, ratio)
    ncb = nil1m(y_s, bundle.theta_m, ratio, solver)
    cb = cb_interferogram(bundle.z_m, y_s, ratio)
    return Comparison(bundle, ratio, y_s, ncb, cb)


def table1_cells():
    """The eight ``(setting, example, ratio)`` cells in index order."""
    cells = []
    for setting in ("noisy", "noise-free"):
        for example in (Pattern.PYRAMID, Pattern.RINGS):
            for ratio in TABLE1_RATIOS:
                cells.append((setting, example, ratio))
    return cells


def reproduce_table1(size: int = 256, seed: int = 0, n_iter: int = 200, basis: str = "dct"):
    """RMSE grid with one row per ``(setting, example, method)``.

    Cell ``c`` simulates its scene with seed ``seed + c``, so cells are
    independent and can run in any order.
    """
    solver = SolverConfig(gamma=1.0, n_iter=n_iter, transform=SparseTransform(basis))
    grid: dict[tuple[str, str, str], dict[str, float]] = {}
    for c, (setting, example, ratio) in enumerate(table1_cells()):
        scene = table1_scene(size, example, setting == "noisy", seed + c)
        cmp_ = run_comparison(scene, ratio, solver)
        grid.setdefault((setting, example.value, "NCB"), {})[str(ratio)] = cmp_.rmse_ncb
        grid.setdefault((setting, example.value, "CB"), {})[str(ratio)] = cmp_.rmse_cb
    keys = [str(r) for r in TABLE1_RATIOS]
    return [(s, e, m, *(vals[k] for k in keys)) for (s, e, m), vals in grid.items()]
