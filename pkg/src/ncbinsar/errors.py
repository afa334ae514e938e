"""Exception hierarchy shared by every ncbinsar module."""


class NcbError(Exception):
    """Base class for all library errors."""


class DimensionError(NcbError, ValueError):
    """Raster shapes do not agree with what an operation needs."""


class SizeError(NcbError, ValueError):
    """A raster size is unsupported (non power of two, too large to materialize, ...)."""


class RatioError(NcbError, ValueError):
    """A resolution ratio does not give an integer band size."""


class ZeroInputError(NcbError, ValueError):
    """An input that must carry energy is identically zero."""


class ConfigError(NcbError, ValueError):
    """Invalid scene, solver or verification configuration."""


class NonSquareError(DimensionError):
    """Binned coefficient-error curves need square maps."""


class FormatError(NcbError, ValueError):
    """Malformed raster file."""


class IoError(NcbError, OSError):
    """Reading or writing a file failed."""
