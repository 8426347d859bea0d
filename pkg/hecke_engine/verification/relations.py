"""
Defining relations of the extended affine Hecke algebra
"""
from hecke_engine.hecke import verify_relations
from hecke_engine.verification.base import VerificationSuite


class RelationSuite(VerificationSuite):
    """Quadratic, braid, commuting and rho-conjugation relations, plus Trho^2 = 1"""

    def check(self) -> None:
        report = verify_relations(self.d)
        for result in report.results:
            self.expect(result.passed, f"relation {result.name} fails: {result.detail}")

    def get_suite_name(self) -> str:
        return "relations"
