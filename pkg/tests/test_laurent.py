"""
Tests for exact Laurent polynomial arithmetic
"""
import random
from fractions import Fraction

import pytest

from hecke_engine.laurent import (
    ONE,
    V,
    ZERO,
    LaurentPoly,
    as_laurent,
    lp_add,
    lp_bar,
    lp_coefficient,
    lp_eval_one,
    lp_from_pairs,
    lp_from_text,
    lp_in_vinv,
    lp_is_nonneg,
    lp_mul,
    lp_neg,
    lp_scale_v,
    lp_specialize_q,
    lp_sub,
    lp_to_pairs,
    lp_to_text,
)


def random_poly(rng: random.Random) -> LaurentPoly:
    return LaurentPoly((rng.randint(-4, 4), rng.randint(-3, 3)) for _ in range(rng.randint(0, 4)))


class TestNormalForm:
    """Test construction and normal form"""

    def test_zero_coefficients_dropped(self):
        """Terms that cancel leave no trace"""
        p = LaurentPoly([(1, 2), (1, -2), (0, 3)])
        assert p.terms == ((0, 3),)

    def test_terms_sorted(self):
        """Exponents are strictly ascending"""
        p = LaurentPoly([(3, 1), (-2, 5), (0, -1)])
        assert p.to_pairs() == [(-2, 5), (0, -1), (3, 1)]

    def test_zero_polynomial(self):
        """The zero polynomial has no terms and is falsy"""
        assert LaurentPoly().terms == ()
        assert not ZERO
        assert ZERO == 0

    def test_immutable(self):
        """Attributes cannot be reassigned"""
        with pytest.raises(AttributeError):
            ONE._terms = ()

    def test_degrees(self):
        """min and max degree, undefined for zero"""
        p = LaurentPoly([(-1, 1), (2, 4)])
        assert p.min_degree == -1
        assert p.max_degree == 2
        with pytest.raises(ValueError):
            ZERO.min_degree

    def test_coefficient(self):
        """Missing exponents have coefficient 0"""
        p = LaurentPoly([(2, 1), (0, -1)])
        assert lp_coefficient(p, 2) == 1
        assert lp_coefficient(p, 0) == -1
        assert lp_coefficient(p, 1) == 0


class TestArithmetic:
    """Test ring operations"""

    def setup_method(self):
        self.rng = random.Random(20240601)

    def test_quadratic_coefficient(self):
        """(v^2 - 1) * v^2 = v^4 - v^2"""
        p = LaurentPoly.monomial(2) - 1
        assert lp_mul(p, LaurentPoly.monomial(2)) == LaurentPoly([(4, 1), (2, -1)])

    def test_int_coercion(self):
        """Integers act as constants on both sides"""
        assert 1 + V == V + 1
        assert 2 * V == LaurentPoly.monomial(1, 2)
        assert 1 - V == -(V - 1)
        assert as_laurent(3) == LaurentPoly.constant(3)
        with pytest.raises(TypeError):
            as_laurent(1.5)

    def test_power(self):
        """(1 + v)^3 has binomial coefficients"""
        assert (1 + V) ** 3 == LaurentPoly([(0, 1), (1, 3), (2, 3), (3, 1)])
        assert V ** 0 == ONE

    def test_ring_axioms(self):
        """Commutativity, associativity and distributivity on random samples"""
        for _ in range(50):
            a, b, c = (random_poly(self.rng) for _ in range(3))
            assert lp_add(a, b) == lp_add(b, a)
            assert lp_mul(a, b) == lp_mul(b, a)
            assert lp_mul(lp_mul(a, b), c) == lp_mul(a, lp_mul(b, c))
            assert lp_mul(a, lp_add(b, c)) == lp_add(lp_mul(a, b), lp_mul(a, c))
            assert lp_sub(a, a) == ZERO
            assert lp_add(a, lp_neg(a)) == ZERO

    def test_eval_one_is_ring_homomorphism(self):
        """Evaluation at v = 1 respects sums and products"""
        for _ in range(50):
            a, b = random_poly(self.rng), random_poly(self.rng)
            assert lp_eval_one(lp_add(a, b)) == lp_eval_one(a) + lp_eval_one(b)
            assert lp_eval_one(lp_mul(a, b)) == lp_eval_one(a) * lp_eval_one(b)
            assert lp_eval_one(lp_neg(a)) == -lp_eval_one(a)
        assert lp_eval_one(ONE) == 1

    def test_bar_is_ring_involution(self):
        """bar(bar(a)) = a and bar(ab) = bar(a) bar(b)"""
        for _ in range(50):
            a, b = random_poly(self.rng), random_poly(self.rng)
            assert lp_bar(lp_bar(a)) == a
            assert lp_bar(lp_mul(a, b)) == lp_mul(lp_bar(a), lp_bar(b))

    def test_shift(self):
        """Multiplying by v^k shifts every exponent"""
        p = LaurentPoly([(0, 1), (2, -1)])
        assert lp_scale_v(p, -3) == LaurentPoly([(-3, 1), (-1, -1)])

    def test_hash_matches_equality(self):
        """Equal polynomials hash equally"""
        assert hash(LaurentPoly([(1, 1), (0, 1)])) == hash(1 + V)
        assert len({1 + V, V + 1, V}) == 2

    def test_constants_hash_like_ints(self):
        """Constants equal to an int can stand in for it as a dict key"""
        assert ONE == 1 and hash(ONE) == hash(1)
        assert ZERO == 0 and hash(ZERO) == hash(0)
        assert hash(LaurentPoly.constant(-7)) == hash(-7)
        assert {ONE: "x"}.get(1) == "x"
        assert {5: "y"}.get(LaurentPoly.constant(5)) == "y"
        assert len({ONE, 1, V}) == 2


class TestEvaluation:
    """Test evaluation and predicates"""

    def test_eval_one(self):
        """v = 1 sums the coefficients"""
        assert lp_eval_one(LaurentPoly([(2, 1), (0, -1)])) == 0
        assert lp_eval_one(LaurentPoly.monomial(-3, 5)) == 5

    def test_specialize_q(self):
        """v^2 - 1 at v = sqrt(q) is q - 1"""
        p = LaurentPoly([(2, 1), (0, -1)])
        assert lp_specialize_q(p, 5) == 4
        assert lp_specialize_q(LaurentPoly.monomial(-2), 4) == Fraction(1, 4)

    def test_specialize_q_odd_exponent(self):
        """Odd exponents have no rational value"""
        with pytest.raises(ValueError):
            lp_specialize_q(V, 9)

    def test_is_nonneg(self):
        """Nonnegativity of every coefficient"""
        assert lp_is_nonneg(LaurentPoly([(-1, 1), (1, 2)]))
        assert lp_is_nonneg(ZERO)
        assert not lp_is_nonneg(LaurentPoly([(2, 1), (0, -1)]))

    def test_in_vinv(self):
        """Only strictly negative exponents"""
        assert lp_in_vinv(LaurentPoly([(-3, 1), (-1, 2)]))
        assert lp_in_vinv(ZERO)
        assert not lp_in_vinv(ONE)

    def test_truncate_below(self):
        """Keeps exponents strictly below the bound"""
        p = LaurentPoly([(-2, 1), (0, 4), (1, 1)])
        assert p.truncate_below(0) == LaurentPoly.monomial(-2)


class TestTextForms:
    """Test text and machine forms"""

    def test_to_text(self):
        """Ascending exponents with explicit signs"""
        assert lp_to_text(LaurentPoly([(2, 1), (0, -1)])) == "-1 + v^2"
        assert lp_to_text(LaurentPoly.monomial(-1, 2)) == "2*v^-1"
        assert lp_to_text(V) == "v"
        assert lp_to_text(ZERO) == "0"
        assert lp_to_text(LaurentPoly([(0, 1), (1, -3)])) == "1 - 3*v"

    def test_from_text(self):
        """Whitespace-insensitive parsing"""
        assert lp_from_text("v^2-1") == LaurentPoly([(2, 1), (0, -1)])
        assert lp_from_text(" 2*v^-1 - v ") == LaurentPoly([(-1, 2), (1, -1)])
        assert lp_from_text("0") == ZERO
        assert lp_from_text("-v^(-2)") == LaurentPoly.monomial(-2, -1)

    def test_text_roundtrip(self):
        """Printing then parsing gives back the same value"""
        rng = random.Random(7)
        for _ in range(30):
            p = random_poly(rng)
            assert lp_from_text(lp_to_text(p)) == p

    @pytest.mark.parametrize("text", ["v^", "v^x", "*v", "v +", "x"])
    def test_from_text_rejects(self, text):
        """Malformed text raises ValueError"""
        with pytest.raises(ValueError):
            lp_from_text(text)

    def test_pairs(self):
        """Machine form is the list of (k, c) pairs"""
        p = LaurentPoly([(2, 1), (0, -1)])
        assert lp_to_pairs(p) == [(0, -1), (2, 1)]
        assert lp_from_pairs([[0, -1], [2, 1]]) == p

    @pytest.mark.parametrize("pairs", [[[2, 1], [0, -1]], [[0, 0]], [[1, 1], [1, 2]], [[1]], [[True, 1]]])
    def test_from_pairs_strict(self, pairs):
        """Pairs out of normal form are rejected"""
        with pytest.raises(ValueError):
            lp_from_pairs(pairs)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
