"""Exception types shared across the package."""


class IntHistError(Exception):
    """Base class for all package errors."""


class CapacityError(IntHistError):
    """Input exceeds a hard size limit or a byte budget cannot be met."""


class BoundsError(IntHistError):
    """A region or window falls outside the image/tensor extents."""


class ShapeError(IntHistError):
    """Operands have mismatched bin counts or extents."""


class ParameterError(IntHistError):
    """A numeric parameter (tile, block, worker count, ...) is invalid."""


class ScanOverflowError(IntHistError):
    """A prefix sum exceeded the 32-bit count range."""


class FormatError(IntHistError):
    """Malformed bytes in a PGM or tensor file."""
