"""
Factory for creating verification suites by name
"""
import logging
from typing import List, Optional

from hecke_engine.config import settings
from hecke_engine.verification.algebra_suites import MonomialSuite, PositivitySuite, SpecializationSuite
from hecke_engine.verification.base import VerificationSuite
from hecke_engine.verification.oracle_suites import BruhatSuite, CanonicalSuite, LengthSuite, MultiplicationSuite
from hecke_engine.verification.relations import RelationSuite

logger = logging.getLogger(__name__)


class SuiteFactory:
    """
    Factory to create verification suites

    Supported suites:
    - "relations": defining relations (always run by `check`)
    - "length", "bruhat", "multiplication", "canonical": oracle cross-checks
    - "monomial", "specialization", "positivity": algebra consistency
    """

    _SUITES = {
        "relations": RelationSuite,
        "length": LengthSuite,
        "monomial": MonomialSuite,
        "specialization": SpecializationSuite,
        "bruhat": BruhatSuite,
        "multiplication": MultiplicationSuite,
        "canonical": CanonicalSuite,
        "positivity": PositivitySuite,
    }

    @staticmethod
    def create(name: str, d: int, max_length: Optional[int] = None) -> VerificationSuite:
        """
        Create a verification suite

        Args:
            name: Suite name, see get_available_suites()
            d: Rank
            max_length: Length bound; defaults to HECKE_CHECK_MAX_LENGTH

        Raises:
            ValueError: for unknown suite names
        """
        key = name.lower().strip()
        if key not in SuiteFactory._SUITES:
            raise ValueError(f"Unknown verification suite: {name}. Available: {SuiteFactory.get_available_suites()}")
        if max_length is None:
            max_length = settings.check_max_length
        return SuiteFactory._SUITES[key](d, max_length)

    @staticmethod
    def create_all(d: int, max_length: Optional[int] = None, verify: bool = True) -> List[VerificationSuite]:
        """The relation suite, plus every oracle suite when verify is set"""
        names = SuiteFactory.get_available_suites() if verify else ["relations"]
        return [SuiteFactory.create(name, d, max_length) for name in names]

    @staticmethod
    def get_available_suites() -> List[str]:
        """Get list of available suite names"""
        return list(SuiteFactory._SUITES)
