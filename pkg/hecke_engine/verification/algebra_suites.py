"""
Internal consistency of the algebra: monomial factorization, classical limit, positivity
"""
from collections import defaultdict
from typing import Dict, List, Tuple

from hecke_engine.hecke import he_basis, he_mult, he_replay, he_specialize_one
from hecke_engine.kl import kl_structure_positivity
from hecke_engine.laurent import LaurentPoly
from hecke_engine.verification.base import VerificationSuite
from hecke_engine.weyl import (
    ap_enumerate,
    ap_length,
    ap_matrix_product,
    ap_reduced_word,
    ap_replay,
    ap_to_text,
)


class MonomialSuite(VerificationSuite):
    """Replaying a reduced word gives exactly 1 * [w]"""

    def check(self) -> None:
        for w in ap_enumerate(self.d, self.max_length):
            word = ap_reduced_word(w)
            self.expect(len(word) == ap_length(w), lambda: f"word of {ap_to_text(w)} has {len(word)} letters")
            self.expect(ap_replay(self.d, word) == w, lambda: f"word {word.render()} does not replay to {ap_to_text(w)}")
            self.expect(he_replay(w) == he_basis(w), lambda: f"monomial of {ap_to_text(w)} has lower terms")

    def get_suite_name(self) -> str:
        return "monomial"


class SpecializationSuite(VerificationSuite):
    """At v = 1 the product of basis elements is the matrix product"""

    def check(self) -> None:
        elements = ap_enumerate(self.d, self.max_length)
        for x in elements:
            for y in elements:
                specialized = he_specialize_one(he_mult(he_basis(x), he_basis(y)))
                self.expect(
                    specialized == {ap_matrix_product(x, y): 1},
                    lambda: f"[{ap_to_text(x)}] * [{ap_to_text(y)}] at v=1 is not the matrix product",
                )

    def get_suite_name(self) -> str:
        return "specialization"


class PositivitySuite(VerificationSuite):
    """Canonical structure constants lie in N[v, v^-1]"""

    def check(self) -> None:
        elements = ap_enumerate(self.d, self.max_length)
        report = kl_structure_positivity(self.d, self.max_length)
        self.expect(
            report.pairs_checked == len(elements) ** 2,
            lambda: f"audit covered {report.pairs_checked} pairs, expected {len(elements) ** 2}",
        )
        negative: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], List[str]] = defaultdict(list)
        for violation in report.violations:
            coefficient = LaurentPoly.from_pairs(violation.coefficient)
            negative[(tuple(violation.x), tuple(violation.y))].append(f"{coefficient} at C_{violation.z}")
        for x in elements:
            for y in elements:
                found = negative.get((x.window, y.window))
                self.expect(
                    not found,
                    lambda: f"C_{list(x.window)} * C_{list(y.window)} has negative coefficients: {', '.join(found)}",
                )

    def get_suite_name(self) -> str:
        return "positivity"
