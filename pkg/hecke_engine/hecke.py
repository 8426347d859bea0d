"""
The convolution algebra on the basis {[sigma] : sigma in Sigma_d}

Left multiplication by a generator follows the four row-exchange cases:
T_h uses rows (h, h+1), T_0 rows (-1, 1), T_d rows (d-1, d+1), and T_rho
exchanges rows (0, 1) and (d, d+1) at once. General products factor the
left operand into generators and fold them onto the right operand.
"""
import logging
import threading
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from cachetools import LRUCache, cached

from hecke_engine.config import settings
from hecke_engine.errors import RankMismatchError
from hecke_engine.laurent import ONE, ZERO, LaurentPoly, Scalar, as_laurent
from hecke_engine.models import HeckeEltRecord, RelationReport, RelationResult, TermRecord
from hecke_engine.weyl import (
    RHO,
    AffinePerm,
    GenLabel,
    ReducedWord,
    check_rank,
    designated_rows,
    ap_apply,
    ap_from_window,
    ap_generator,
    ap_identity,
    ap_label,
    ap_move,
    ap_reduced_word,
    generators,
    label_name,
)

logger = logging.getLogger(__name__)

V2 = LaurentPoly.monomial(2)
V_MINUS_2 = LaurentPoly.monomial(-2)


class HeckeElt:
    """
    Finite combination of basis symbols [w] with Laurent coefficients

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("d", "_terms", "_hash")

    def __init__(self, d: int, terms: Union[Mapping[AffinePerm, Scalar], Iterable[Tuple[AffinePerm, Scalar]]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[AffinePerm, LaurentPoly] = {}
        for w, c in items:
            if w.d != d:
                raise RankMismatchError(d, w.d)
            c = as_laurent(c)
            acc[w] = acc[w] + c if w in acc else c
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "_terms", {w: c for w, c in acc.items() if c})
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _trusted(cls, d: int, terms: Dict[AffinePerm, LaurentPoly]) -> "HeckeElt":
        """Wrap an accumulator dict without re-checking ranks; drops zeros"""
        elt = cls.__new__(cls)
        object.__setattr__(elt, "d", d)
        object.__setattr__(elt, "_terms", {w: c for w, c in terms.items() if c})
        object.__setattr__(elt, "_hash", None)
        return elt

    def __setattr__(self, name, value):
        raise AttributeError("HeckeElt is immutable")

    def coefficient(self, w: AffinePerm) -> LaurentPoly:
        return self._terms.get(w, ZERO)

    def items(self) -> List[Tuple[AffinePerm, LaurentPoly]]:
        """Terms in canonical (window lexicographic) order"""
        return sorted(self._terms.items(), key=lambda item: item[0].window)

    def support(self) -> List[AffinePerm]:
        return [w for w, _ in self.items()]

    def __iter__(self) -> Iterator[Tuple[AffinePerm, LaurentPoly]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, w: AffinePerm) -> bool:
        return w in self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.d == other.d and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.d, frozenset(self._terms.items()))))
        return self._hash

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return he_add(self, other)

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return he_sub(self, other)

    def __neg__(self) -> "HeckeElt":
        return he_neg(self)

    def __mul__(self, other):
        if isinstance(other, HeckeElt):
            return he_mult(self, other)
        return he_scale(as_laurent(other), self)

    def __rmul__(self, other):
        return he_scale(as_laurent(other), self)

    def __str__(self) -> str:
        return he_to_text(self)

    def __repr__(self) -> str:
        return f"HeckeElt(d={self.d}, {he_to_text(self)!r})"


def _check_same_rank(a: HeckeElt, b: HeckeElt) -> None:
    if a.d != b.d:
        raise RankMismatchError(a.d, b.d)


# Module operations

def he_zero(d: int) -> HeckeElt:
    return HeckeElt._trusted(d, {})


def he_basis(w: AffinePerm) -> HeckeElt:
    return HeckeElt._trusted(w.d, {w: ONE})


def he_unit(d: int) -> HeckeElt:
    return he_basis(ap_identity(d))


def he_add(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    _check_same_rank(a, b)
    acc = dict(a._terms)
    for w, c in b._terms.items():
        acc[w] = acc[w] + c if w in acc else c
    return HeckeElt._trusted(a.d, acc)


def he_scale(p: LaurentPoly, a: HeckeElt) -> HeckeElt:
    return HeckeElt._trusted(a.d, {w: p * c for w, c in a._terms.items()})


def he_neg(a: HeckeElt) -> HeckeElt:
    return HeckeElt._trusted(a.d, {w: -c for w, c in a._terms.items()})


def he_sub(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    return he_add(a, he_neg(b))


def he_coefficient(a: HeckeElt, w: AffinePerm) -> LaurentPoly:
    return a.coefficient(w)


# Multiplication

def he_mult_gen_left(g: GenLabel, a: HeckeElt) -> HeckeElt:
    """
    [T_g] * a, term by term

    For g != rho with (k, l) the images of the designated rows: k < l gives
    [sigma'] alone; k > l gives v^2 [sigma'] + (v^2 - 1) [sigma]. T_rho
    exchanges both row pairs and keeps the coefficient.
    """
    acc: Dict[AffinePerm, LaurentPoly] = {}

    def emit(w: AffinePerm, c: LaurentPoly) -> None:
        acc[w] = acc[w] + c if w in acc else c

    if g == RHO:
        for w, c in a._terms.items():
            emit(ap_move(w, RHO), c)
        return HeckeElt._trusted(a.d, acc)

    (row_h, row_next), = designated_rows(a.d, g)
    for w, c in a._terms.items():
        moved = ap_move(w, g)
        if ap_apply(w, row_h) < ap_apply(w, row_next):
            emit(moved, c)
        else:
            emit(moved, V2 * c)
            emit(w, (V2 - 1) * c)
    return HeckeElt._trusted(a.d, acc)


def _fold_word(reduced_word: ReducedWord, b: HeckeElt) -> HeckeElt:
    result = b
    if reduced_word.rho_prefix:
        result = he_mult_gen_left(RHO, result)
    for g in reversed(reduced_word.word):
        result = he_mult_gen_left(g, result)
    return result


@cached(cache=LRUCache(maxsize=settings.mult_cache_size), lock=threading.Lock())
def _basis_product(x: AffinePerm, y: AffinePerm) -> HeckeElt:
    return _fold_word(ap_reduced_word(x), he_basis(y))


def he_mult(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    """Bilinear extension of the basis products [x] * [y]"""
    _check_same_rank(a, b)
    acc: Dict[AffinePerm, LaurentPoly] = {}
    for x, cx in a._terms.items():
        for y, cy in b._terms.items():
            coefficient = cx * cy
            for z, cz in _basis_product(x, y)._terms.items():
                term = coefficient * cz
                acc[z] = acc[z] + term if z in acc else term
    return HeckeElt._trusted(a.d, acc)


def he_monomial(d: int, labels: Sequence[GenLabel]) -> HeckeElt:
    """T_{labels[0]} * ... * T_{labels[-1]} as an element"""
    check_rank(d)
    result = he_unit(d)
    for g in reversed(labels):
        result = he_mult_gen_left(g, result)
    return result


def he_replay(w: AffinePerm) -> HeckeElt:
    """Replay the reduced word of w from [e] (or [rho]); equals [w] exactly"""
    return _fold_word(ap_reduced_word(w), he_unit(w.d))


# Bar involution

def _bar_gen_left(g: GenLabel, a: HeckeElt) -> HeckeElt:
    """T_g^-1 * a with T_g^-1 = v^-2 T_g - (1 - v^-2), and T_rho^-1 = T_rho"""
    if g == RHO:
        return he_mult_gen_left(RHO, a)
    return he_sub(he_scale(V_MINUS_2, he_mult_gen_left(g, a)), he_scale(1 - V_MINUS_2, a))


def he_bar_word(d: int, reduced_word: ReducedWord) -> HeckeElt:
    """bar of the monomial T_{g1} * ... * T_{gm} * T_rho^e along the given word"""
    result = he_unit(d)
    if reduced_word.rho_prefix:
        result = he_mult_gen_left(RHO, result)
    for g in reversed(reduced_word.word):
        result = _bar_gen_left(g, result)
    return result


@cached(cache=LRUCache(maxsize=settings.mult_cache_size), lock=threading.Lock())
def _bar_basis(w: AffinePerm) -> HeckeElt:
    return he_bar_word(w.d, ap_reduced_word(w))


def he_bar(a: HeckeElt) -> HeckeElt:
    acc: Dict[AffinePerm, LaurentPoly] = {}
    for w, c in a._terms.items():
        c_bar = c.bar()
        for z, cz in _bar_basis(w)._terms.items():
            term = c_bar * cz
            acc[z] = acc[z] + term if z in acc else term
    return HeckeElt._trusted(a.d, acc)


# Specialization

def he_specialize_one(a: HeckeElt) -> Dict[AffinePerm, int]:
    """Coefficients at v = 1, zero entries dropped"""
    values = {w: c.eval_one() for w, c in a.items()}
    return {w: value for w, value in values.items() if value}


def he_specialize_q(a: HeckeElt, q: int) -> Dict[AffinePerm, Fraction]:
    """Coefficients at v = sqrt(q); requires even exponents"""
    values = {w: c.specialize_q(q) for w, c in a.items()}
    return {w: value for w, value in values.items() if value}


# Text and machine forms

def he_to_text(a: HeckeElt) -> str:
    if not a:
        return "0"
    parts: List[str] = []
    for w, c in a.items():
        symbol = f"[{ap_label(w)}]"
        if c == ONE:
            parts.append(symbol)
        elif len(c) == 1:
            parts.append(f"{c}·{symbol}")
        else:
            parts.append(f"({c})·{symbol}")
    return " + ".join(parts)


def he_to_record(a: HeckeElt) -> HeckeEltRecord:
    return HeckeEltRecord(
        d=a.d,
        terms=[TermRecord(w=list(w.window), coeff=c.to_pairs()) for w, c in a.items()],
    )


def he_from_record(record: HeckeEltRecord) -> HeckeElt:
    return HeckeElt(
        record.d,
        [(ap_from_window(record.d, term.w), LaurentPoly.from_pairs(term.coeff)) for term in record.terms],
    )


# Defining relations

def coxeter_matrix(d: int) -> Dict[Tuple[int, int], int]:
    """
    m(i, j) for 0 <= i < j <= d: 3 for braided pairs, 2 for commuting pairs

    Braids join j, j+1 for 1 <= j <= d-2, and 0-2 and (d-2)-d. For d = 3 the
    diagram closes into a square, so 0 and d are braided as well.
    """
    check_rank(d)
    braided = {(j, j + 1) for j in range(1, d - 1)} | {(0, 2), (d - 2, d)}
    if d == 3:
        braided.add((0, d))
    return {
        (i, j): 3 if (i, j) in braided else 2
        for i, j in combinations(range(d + 1), 2)
    }


def _relations(d: int, generator_elts: Mapping[GenLabel, HeckeElt]):
    """(name, lhs, rhs) triples of the extended affine Hecke presentation"""
    def T(*labels: GenLabel) -> HeckeElt:
        result = he_unit(d)
        for g in labels:
            result = he_mult(result, generator_elts[g])
        return result

    unit = he_unit(d)
    for i in generators(d):
        yield (
            f"T{i}^2 = (v^2-1)T{i} + v^2",
            T(i, i),
            he_add(he_scale(V2 - 1, T(i)), he_scale(V2, unit)),
        )
    for (i, j), m in coxeter_matrix(d).items():
        if m == 3:
            yield (f"T{i}T{j}T{i} = T{j}T{i}T{j}", T(i, j, i), T(j, i, j))
        else:
            yield (f"T{i}T{j} = T{j}T{i}", T(i, j), T(j, i))
    yield ("T0 = TrhoT1Trho", T(0), T(RHO, 1, RHO))
    yield (f"T{d} = TrhoT{d - 1}Trho", T(d), T(RHO, d - 1, RHO))
    for i in range(2, d - 1):
        yield (f"T{i} = TrhoT{i}Trho", T(i), T(RHO, i, RHO))
    yield ("Trho^2 = 1", T(RHO, RHO), unit)


def verify_relations(d: int, generator_windows: Optional[Mapping[GenLabel, AffinePerm]] = None) -> RelationReport:
    """
    Evaluate every defining relation as an exact identity

    Args:
        d: Rank
        generator_windows: Optional replacement windows for some generators
            (fault injection); the rest come from ap_generator
    """
    check_rank(d)
    windows = {g: ap_generator(d, g) for g in generators(d) + [RHO]}
    if generator_windows:
        windows.update(generator_windows)
    generator_elts = {g: he_basis(w) for g, w in windows.items()}

    results = []
    for name, lhs, rhs in _relations(d, generator_elts):
        passed = lhs == rhs
        detail = None
        if not passed:
            detail = f"lhs = {he_to_text(lhs)}; rhs = {he_to_text(rhs)}"
            logger.warning(f"Relation {name} fails for d={d}: {detail}")
        results.append(RelationResult(name=name, passed=passed, detail=detail))
    logger.info(f"Checked {len(results)} relations for d={d}")
    return RelationReport(d=d, results=results, passed=all(r.passed for r in results))
