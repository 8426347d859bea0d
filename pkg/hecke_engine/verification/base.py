"""
Abstract base class for verification suites
Every suite checks one family of properties and reports in the same format
"""
import logging
from abc import ABC, abstractmethod
from typing import Callable, List, Union

from hecke_engine.config import settings
from hecke_engine.errors import HeckeEngineError
from hecke_engine.models import SuiteReport

logger = logging.getLogger(__name__)

Message = Union[str, Callable[[], str]]


class VerificationSuite(ABC):
    """
    Abstract base class for verification suites

    Subclasses implement check() and call expect() once per assertion;
    messages may be passed as callables so they are only rendered on failure.
    """

    def __init__(self, d: int, max_length: int):
        self.d = d
        self.max_length = max_length
        self._checked = 0
        self._failures: List[str] = []

    @abstractmethod
    def check(self) -> None:
        """Evaluate every assertion of the suite"""
        pass

    @abstractmethod
    def get_suite_name(self) -> str:
        """Return the name of this suite for reports"""
        pass

    def reset(self):
        """Clear counters before a new run"""
        self._checked = 0
        self._failures = []

    def expect(self, condition: bool, message: Message) -> None:
        self._checked += 1
        if not condition:
            text = message() if callable(message) else message
            if len(self._failures) < settings.report_max_failures:
                self._failures.append(text)
            logger.warning(f"[{self.get_suite_name()}] {text}")

    def run(self) -> SuiteReport:
        self.reset()
        failed_with_error = False
        try:
            self.check()
        except HeckeEngineError as e:
            failed_with_error = True
            self._failures.append(f"{e.kind}: {e.message}")
            logger.error(f"Suite {self.get_suite_name()} aborted: {e.message}", exc_info=True)
        passed = not self._failures and not failed_with_error
        logger.info(f"Suite {self.get_suite_name()}: {self._checked} checks, {'passed' if passed else 'FAILED'}")
        return SuiteReport(
            name=self.get_suite_name(),
            passed=passed,
            checked=self._checked,
            failures=list(self._failures),
        )
