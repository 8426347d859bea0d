"""
Cross-checks of the engine against the brute-force oracles
"""
from hecke_engine.hecke import he_bar, he_basis, he_mult
from hecke_engine.kl import KLTable, kl_canonical, kl_polynomial
from hecke_engine.oracle import oracle_bruhat, oracle_canonical, oracle_length, oracle_mult
from hecke_engine.verification.base import VerificationSuite
from hecke_engine.weyl import (
    RHO,
    ap_bruhat_leq,
    ap_enumerate,
    ap_generator,
    ap_identity,
    ap_inverse,
    ap_length,
    ap_move,
    ap_parity,
    ap_to_text,
)


class LengthSuite(VerificationSuite):
    """Length formula against the pair count, plus the length axioms and closure"""

    def check(self) -> None:
        elements = ap_enumerate(self.d, self.max_length)
        for w in elements:
            length = ap_length(w)
            self.expect(length == oracle_length(w), lambda: f"length of {ap_to_text(w)}: {length} != {oracle_length(w)}")
            self.expect(ap_parity(w) == 0, lambda: f"{ap_to_text(w)} has odd parity")
            self.expect(ap_length(ap_inverse(w)) == length, lambda: f"l(w^-1) != l(w) for {ap_to_text(w)}")
            self.expect(ap_length(ap_move(w, RHO)) == length, lambda: f"rho changes the length of {ap_to_text(w)}")
        stratum = {w for w in elements if ap_length(w) == 0}
        self.expect(
            stratum == {ap_identity(self.d), ap_generator(self.d, RHO)},
            lambda: f"length-0 stratum is {sorted(ap_to_text(w) for w in stratum)}",
        )

    def get_suite_name(self) -> str:
        return "length"


class BruhatSuite(VerificationSuite):
    """Bruhat order against the subword property, and the partial-order axioms"""

    def check(self) -> None:
        elements = ap_enumerate(self.d, self.max_length)
        below = {w: set() for w in elements}
        for y in elements:
            for w in elements:
                leq = ap_bruhat_leq(y, w)
                self.expect(
                    leq == oracle_bruhat(y, w),
                    lambda: f"Bruhat order disagrees with the subword oracle on {ap_to_text(y)} <= {ap_to_text(w)}",
                )
                if leq:
                    below[w].add(y)
        for w in elements:
            self.expect(w in below[w], lambda: f"{ap_to_text(w)} is not below itself")
            for y in below[w]:
                if y != w:
                    self.expect(w not in below[y], lambda: f"{ap_to_text(y)} and {ap_to_text(w)} are mutually below")
                self.expect(below[y] <= below[w], lambda: f"transitivity fails through {ap_to_text(y)} <= {ap_to_text(w)}")

    def get_suite_name(self) -> str:
        return "bruhat"


class MultiplicationSuite(VerificationSuite):
    """Generator-formula products against the Iwahori rule on all basis pairs"""

    def check(self) -> None:
        elements = ap_enumerate(self.d, self.max_length)
        for x in elements:
            for y in elements:
                basis_x, basis_y = he_basis(x), he_basis(y)
                self.expect(
                    he_mult(basis_x, basis_y) == oracle_mult(basis_x, basis_y),
                    lambda: f"[{ap_to_text(x)}] * [{ap_to_text(y)}] disagrees with the Iwahori rule",
                )

    def get_suite_name(self) -> str:
        return "multiplication"


class CanonicalSuite(VerificationSuite):
    """Canonical basis: bar invariance, unitriangularity, oracle solve and rho-translation"""

    def check(self) -> None:
        table = KLTable(self.d)
        for w in ap_enumerate(self.d, self.max_length):
            element = kl_canonical(w, table)
            self.expect(he_bar(element) == element, lambda: f"C_w is not bar-invariant for {ap_to_text(w)}")
            self.expect(kl_polynomial(w, w, table) == 1, lambda: f"P(w,w) != 1 for {ap_to_text(w)}")
            self.expect(element == oracle_canonical(w), lambda: f"recursion and oracle disagree for {ap_to_text(w)}")
            shifted = ap_move(w, RHO)
            for y in element.support():
                p = kl_polynomial(y, w, table)
                if y != w:
                    self.expect(p.in_vinv(), lambda: f"P(y,w) = {p} not in v^-1 Z[v^-1] for {ap_to_text(y)}, {ap_to_text(w)}")
                self.expect(
                    kl_polynomial(ap_move(y, RHO), shifted, table) == p,
                    lambda: f"rho-translation changes P(y,w) for {ap_to_text(y)}, {ap_to_text(w)}",
                )

    def get_suite_name(self) -> str:
        return "canonical"
