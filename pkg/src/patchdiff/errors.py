"""Exception types shared across the package."""


class PatchDiffError(Exception):
    """Base class for all library errors."""


class RangeError(PatchDiffError, ValueError):
    """A scalar argument lies outside its permitted range."""


class ShapeError(PatchDiffError, ValueError):
    """Array shapes violate an operation's contract."""


class GeometryError(PatchDiffError, ValueError):
    """Patch-grid geometry preconditions are violated."""


class ConfigError(PatchDiffError, ValueError):
    """Invalid, inconsistent, or unknown configuration."""


class CheckpointError(PatchDiffError, ValueError):
    """Checkpoint file is malformed or incompatible with this loader."""


class DataError(PatchDiffError, ValueError):
    """Dataset files are missing, undersized, or inconsistent."""


class NumericError(PatchDiffError, RuntimeError):
    """A numeric invariant failed at runtime (e.g. non-finite loss)."""
