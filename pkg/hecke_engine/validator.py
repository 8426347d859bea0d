"""
Window validation for elements of Sigma_d
Each check is a separate validator so new invariants can be added incrementally
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Type

from hecke_engine.errors import (
    InvalidWindowError,
    ParityError,
    RankTooSmallError,
    ResidueCoverError,
    SymmetryError,
    WindowLengthError,
)

MIN_RANK = 3


@dataclass
class ValidationResult:
    """Result of a validation check"""
    is_valid: bool
    message: Optional[str] = None
    index: Optional[int] = None
    error: Type[InvalidWindowError] = InvalidWindowError


def window_apply(d: int, window: Sequence[int], i: int) -> int:
    """w(i) for the periodic extension w(i + kD) = w(i) + kD of a raw window"""
    q, r = divmod(i - 1, 2 * d)
    return window[r] + q * 2 * d


def window_crossings(d: int, window: Sequence[int]) -> Tuple[int, int]:
    """
    (N_0, N_d) with N_0 = #{i <= 0 : w(i) >= 1} and N_d = #{i <= d : w(i) >= d+1}

    Only rows within the maximal displacement of the boundary can cross it,
    so both counts are finite scans. Works on windows that are not yet
    validated.
    """
    D = 2 * d
    spread = max(abs(window[j] - (j + 1)) for j in range(D))
    n_zero = sum(1 for i in range(-spread, 1) if window_apply(d, window, i) >= 1)
    n_d = sum(1 for i in range(d - spread, d + 1) if window_apply(d, window, i) >= d + 1)
    return n_zero, n_d


def window_parity(d: int, window: Sequence[int]) -> int:
    n_zero, n_d = window_crossings(d, window)
    return (n_zero + n_d) % 2


class WindowValidator:
    """
    Validates raw windows against the Sigma_d invariants
    The first failing validator decides the error that is raised
    """

    def __init__(self):
        self.validators = [
            self._validate_length,
            self._validate_residue_cover,
            self._validate_symmetry,
            self._validate_parity,
        ]

    def validate(self, d: int, window: Sequence[int]) -> List[ValidationResult]:
        """
        Run all validators, stopping at the first failure

        Returns:
            List of failed results (empty when the window is valid)
        """
        if d < MIN_RANK:
            raise RankTooSmallError(d)
        for validator in self.validators:
            result = validator(d, window)
            if not result.is_valid:
                return [result]
        return []

    def check(self, d: int, window: Sequence[int]) -> None:
        """Raise the error of the first failing validator"""
        for failure in self.validate(d, window):
            raise failure.error(failure.message, failure.index)

    def _validate_length(self, d: int, window: Sequence[int]) -> ValidationResult:
        if len(window) != 2 * d:
            return ValidationResult(
                is_valid=False,
                message=f"window has {len(window)} entries, expected {2 * d}",
                error=WindowLengthError,
            )
        return ValidationResult(is_valid=True)

    def _validate_residue_cover(self, d: int, window: Sequence[int]) -> ValidationResult:
        D = 2 * d
        seen = {}
        for i, value in enumerate(window, start=1):
            residue = value % D
            if residue in seen:
                return ValidationResult(
                    is_valid=False,
                    message=f"residue cover violation: w({seen[residue]}) and w({i}) agree mod {D}",
                    index=i,
                    error=ResidueCoverError,
                )
            seen[residue] = i
        return ValidationResult(is_valid=True)

    def _validate_symmetry(self, d: int, window: Sequence[int]) -> ValidationResult:
        D = 2 * d
        for i in range(1, d + 1):
            if window[i - 1] + window[D - i] != D + 1:
                return ValidationResult(
                    is_valid=False,
                    message=f"symmetry violation: w({i}) + w({D + 1 - i}) = {window[i - 1] + window[D - i]}, expected {D + 1}",
                    index=i,
                    error=SymmetryError,
                )
        return ValidationResult(is_valid=True)

    def _validate_parity(self, d: int, window: Sequence[int]) -> ValidationResult:
        n_zero, n_d = window_crossings(d, window)
        if (n_zero + n_d) % 2:
            # index of the boundary (after row 0 or after row d) with the odd count
            return ValidationResult(
                is_valid=False,
                message=f"parity violation: N_0 + N_d = {n_zero} + {n_d} is odd",
                index=0 if n_zero % 2 else d,
                error=ParityError,
            )
        return ValidationResult(is_valid=True)


# Global validator instance
window_validator = WindowValidator()
