"""
Exact Laurent polynomials in v with integer coefficients

Values are immutable and kept in normal form: exponents strictly ascending,
no zero coefficients, the zero polynomial being the empty term sequence.
"""
import operator
import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple, Union

Term = Tuple[int, int]
Scalar = Union["LaurentPoly", int]

_TERM_PATTERN = re.compile(r"([+-])?(\d+)?(\*)?(v(?:\^\(?(-?\d+)\)?)?)?")


class LaurentPoly:
    """Element of Z[v, v^-1]"""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Iterable[Term] = ()):
        acc: Dict[int, int] = {}
        for k, c in terms:
            k = operator.index(k)
            acc[k] = acc.get(k, 0) + operator.index(c)
        terms = tuple(sorted((k, c) for k, c in acc.items() if c))
        object.__setattr__(self, "_terms", terms)
        # constants hash like the int they compare equal to
        if not terms:
            object.__setattr__(self, "_hash", hash(0))
        elif len(terms) == 1 and terms[0][0] == 0:
            object.__setattr__(self, "_hash", hash(terms[0][1]))
        else:
            object.__setattr__(self, "_hash", hash(terms))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # Constructors

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls(((0, c),))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LaurentPoly":
        """c * v^k"""
        return cls(((k, c),))

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[int]]) -> "LaurentPoly":
        """
        Read the machine form [[k, c], ...]

        Raises:
            ValueError: if the pairs are not already in normal form
        """
        terms: List[Term] = []
        for pair in pairs:
            if len(pair) != 2:
                raise ValueError(f"expected [k, c] pair, got {pair!r}")
            k, c = pair
            if isinstance(k, bool) or isinstance(c, bool):
                raise ValueError(f"expected integers, got {pair!r}")
            terms.append((operator.index(k), operator.index(c)))
        poly = cls(terms)
        if list(poly.terms) != terms:
            raise ValueError(f"not in normal form: {list(pairs)!r}")
        return poly

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """
        Read the text form, e.g. "-1 + v^2", "2*v^-1 - v", "3"

        Raises:
            ValueError: on malformed input
        """
        s = re.sub(r"\s+", "", text)
        if s in ("", "0"):
            return cls()
        terms: List[Term] = []
        pos = 0
        while pos < len(s):
            match = _TERM_PATTERN.match(s, pos)
            sign, digits, star, v_part, exponent = match.groups()
            if match.end() == pos or (digits is None and v_part is None):
                raise ValueError(f"cannot parse Laurent polynomial {text!r} at position {pos}")
            if pos > 0 and sign is None:
                raise ValueError(f"missing sign before term at position {pos} in {text!r}")
            if star and (digits is None or v_part is None):
                raise ValueError(f"dangling '*' at position {pos} in {text!r}")
            coefficient = int(digits) if digits is not None else 1
            if sign == "-":
                coefficient = -coefficient
            if v_part is None:
                k = 0
            else:
                k = int(exponent) if exponent is not None else 1
            terms.append((k, coefficient))
            pos = match.end()
        return cls(terms)

    # Accessors

    @property
    def terms(self) -> Tuple[Term, ...]:
        return self._terms

    def coefficient(self, k: int) -> int:
        for exponent, c in self._terms:
            if exponent == k:
                return c
        return 0

    @property
    def min_degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return self._terms[0][0]

    @property
    def max_degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return self._terms[-1][0]

    def to_pairs(self) -> List[Tuple[int, int]]:
        return list(self._terms)

    def __iter__(self) -> Iterator[Term]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # Ring operations

    def __add__(self, other: Scalar) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return LaurentPoly(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly((k, -c) for k, c in self._terms)

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return LaurentPoly(
            (k1 + k2, c1 * c2) for k1, c1 in self._terms for k2, c2 in other._terms
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not in Z[v, v^-1] in general")
        result = ONE
        for _ in range(n):
            result = result * self
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v^k"""
        return LaurentPoly((e + k, c) for e, c in self._terms)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return self._hash

    # Involution, evaluation and predicates

    def bar(self) -> "LaurentPoly":
        """v -> v^-1"""
        return LaurentPoly((-k, c) for k, c in self._terms)

    def eval_one(self) -> int:
        return sum(c for _, c in self._terms)

    def specialize_q(self, q: int) -> Fraction:
        """
        Evaluate at v = sqrt(q)

        Raises:
            ValueError: if some exponent is odd (the value would be irrational)
        """
        if q <= 0:
            raise ValueError(f"q must be positive, got {q}")
        total = Fraction(0)
        for k, c in self._terms:
            if k % 2:
                raise ValueError(f"odd exponent v^{k} has no value at v=sqrt({q})")
            total += c * Fraction(q) ** (k // 2)
        return total

    def is_nonneg(self) -> bool:
        return all(c >= 1 for _, c in self._terms)

    def in_vinv(self) -> bool:
        return all(k <= -1 for k, _ in self._terms)

    def truncate_below(self, k: int) -> "LaurentPoly":
        """Terms with exponent < k"""
        return LaurentPoly(t for t in self._terms if t[0] < k)

    # Text forms

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: List[str] = []
        for k, c in self._terms:
            magnitude = abs(c)
            if k == 0:
                body = str(magnitude)
            else:
                power = "v" if k == 1 else f"v^{k}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


def _coerce(value):
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return LaurentPoly.constant(value)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
V = LaurentPoly.monomial(1)


def as_laurent(value: Scalar) -> LaurentPoly:
    coerced = _coerce(value)
    if coerced is NotImplemented:
        raise TypeError(f"cannot use {type(value).__name__} as a Laurent coefficient")
    return coerced


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_sub(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a - b


def lp_neg(a: LaurentPoly) -> LaurentPoly:
    return -a


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_scale_v(a: LaurentPoly, k: int) -> LaurentPoly:
    return a.shift(k)


def lp_coefficient(a: LaurentPoly, k: int) -> int:
    return a.coefficient(k)


def lp_bar(a: LaurentPoly) -> LaurentPoly:
    return a.bar()


def lp_eval_one(a: LaurentPoly) -> int:
    return a.eval_one()


def lp_specialize_q(a: LaurentPoly, q: int) -> Fraction:
    return a.specialize_q(q)


def lp_is_nonneg(a: LaurentPoly) -> bool:
    return a.is_nonneg()


def lp_in_vinv(a: LaurentPoly) -> bool:
    return a.in_vinv()


def lp_to_text(a: LaurentPoly) -> str:
    return str(a)


def lp_from_text(text: str) -> LaurentPoly:
    return LaurentPoly.parse(text)


def lp_to_pairs(a: LaurentPoly) -> List[Tuple[int, int]]:
    return a.to_pairs()


def lp_from_pairs(pairs: Sequence[Sequence[int]]) -> LaurentPoly:
    return LaurentPoly.from_pairs(pairs)
