"""
Exception hierarchy for the engine

Every error carries the CLI exit code it maps to:
2 for parse/config errors, 3 for invariant violations, 4 for verification failures.
"""
from typing import Optional


class HeckeEngineError(Exception):
    """Base class for all engine errors"""
    exit_code = 3

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    @property
    def kind(self) -> str:
        return type(self).__name__


class ConfigurationError(HeckeEngineError, ValueError):
    """Invalid command-line or environment configuration"""
    exit_code = 2


class RankTooSmallError(ConfigurationError):
    """Rank d below 3"""

    def __init__(self, d: int):
        super().__init__(f"rank d={d} is too small (d >= 3 required)")
        self.d = d


class InvalidWindowError(HeckeEngineError, ValueError):
    """A window that is not an element of Sigma_d"""

    def __init__(self, message: str, index: Optional[int] = None):
        if index is not None:
            message = f"{message} (at index {index})"
        super().__init__(message)
        self.index = index


class WindowLengthError(InvalidWindowError):
    pass


class WindowEntryError(InvalidWindowError):
    """A window entry that is not an exact integer"""


class ResidueCoverError(InvalidWindowError):
    pass


class SymmetryError(InvalidWindowError):
    pass


class ParityError(InvalidWindowError):
    pass


class RankMismatchError(HeckeEngineError, ValueError):
    """Operands of different rank"""

    def __init__(self, left: int, right: int):
        super().__init__(f"rank mismatch: d={left} vs d={right}")
        self.left = left
        self.right = right


class NoDescentError(HeckeEngineError, ValueError):
    """Descents are only defined for s_0..s_d"""

    def __init__(self):
        super().__init__("rho has no descent: it preserves length")


class CompositionError(ConfigurationError):
    pass


class ExpressionParseError(ConfigurationError):
    """Element expression that does not follow the grammar"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class MalformedRecordError(ConfigurationError):
    """A cache line that cannot be read back"""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"malformed record on line {line_number}: {message}")
        self.line_number = line_number


class IntervalTooLargeError(ConfigurationError):
    def __init__(self, size: int, bound: int):
        super().__init__(f"Bruhat interval of size {size} exceeds the oracle bound {bound}")
        self.size = size
        self.bound = bound


class KLInvariantError(HeckeEngineError):
    """A KL table entry that breaks diagonal, support or degree invariants"""


class VerificationError(HeckeEngineError):
    """An oracle or relation check failed"""
    exit_code = 4
