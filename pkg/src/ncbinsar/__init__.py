"""Non-common band SAR interferometry by sparse recovery."""

from .baseline import CbResult, cb_filter_master, cb_interferogram, upsample_slave
from .errors import (
    ConfigError,
    DimensionError,
    FormatError,
    IoError,
    NcbError,
    NonSquareError,
    RatioError,
    SizeError,
    ZeroInputError,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .operator import BandSelector, MeasurementOperator, lowpass_degrade
from .raster import ResolutionRatio, frobenius_norm, hadamard, phase_of
from .simulator import Pattern, SceneBundle, SceneConfig, degrade_slave, simulate_scene
from .solver import RecoveryResult, SolverConfig, nil1m, select_lambda, soft_threshold
from .transforms import Basis, SparseTransform, dft2, idft2, mixed_norm

__version__ = "0.1.0"
