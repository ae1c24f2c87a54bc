"""Exception types shared across the package."""


class BloomCliqueError(Exception):
    """Base class for all package errors."""


class NotPowerOfTwo(BloomCliqueError):
    """n must be a power of two."""


class TooSmall(BloomCliqueError):
    """Parameter below the supported minimum."""


class StringTooShort(BloomCliqueError):
    """Random string exhausted before all fields were read."""


class IndexOutOfRange(BloomCliqueError):
    """Bit index outside [1, m]."""


class LengthMismatch(BloomCliqueError):
    """Operands have different bit lengths."""


class OutOfRange(BloomCliqueError):
    """Vertex or parameter outside its valid range."""


class NotStrictlyOrdered(BloomCliqueError):
    """Sequence expected to be strictly increasing."""


class NotEnoughTriples(BloomCliqueError):
    """Clique edge triples cannot supply enough parameter bits."""


class MalformedSolution(BloomCliqueError):
    """Solution has wrong cardinality, duplicates, or out-of-range vertices."""


class UnqueryableVariant(BloomCliqueError):
    """Operation undefined for this variant (masked arrays fold away the filters)."""


class GuardExceeded(BloomCliqueError):
    """Brute-force feasibility guard tripped."""


class DomainError(BloomCliqueError):
    """Formula undefined or vacuous for these inputs."""


class ParseError(BloomCliqueError):
    """Instance or solution file violates the format."""
