"""
Verification suites for the engine
Each suite checks one family of properties; `check` runs them side by side
"""

from hecke_engine.verification.base import VerificationSuite
from hecke_engine.verification.relations import RelationSuite
from hecke_engine.verification.oracle_suites import BruhatSuite, CanonicalSuite, LengthSuite, MultiplicationSuite
from hecke_engine.verification.algebra_suites import MonomialSuite, PositivitySuite, SpecializationSuite
from hecke_engine.verification.factory import SuiteFactory
from hecke_engine.verification.runner import run_check, run_suites

__all__ = [
    "VerificationSuite",
    "RelationSuite",
    "LengthSuite",
    "BruhatSuite",
    "MultiplicationSuite",
    "CanonicalSuite",
    "MonomialSuite",
    "SpecializationSuite",
    "PositivitySuite",
    "SuiteFactory",
    "run_check",
    "run_suites",
]
