"""
Brute-force reference implementations for cross-validation

Nothing here calls the length formula, descent rule, multiplication, bar
involution or canonical-basis recursion it is used to check: it only relies
on the element/coefficient types and on pointwise composition.
"""
import logging
import threading
from itertools import combinations
from typing import Dict, FrozenSet, List, Tuple

from cachetools import LRUCache, cached

from hecke_engine.config import settings
from hecke_engine.errors import IntervalTooLargeError, RankMismatchError
from hecke_engine.hecke import HeckeElt
from hecke_engine.laurent import ONE, LaurentPoly
from hecke_engine.weyl import RHO, AffinePerm, ap_apply, ap_compose, ap_generator, generators

logger = logging.getLogger(__name__)

V2 = LaurentPoly.monomial(2)
V_MINUS_2 = LaurentPoly.monomial(-2)


def _check_same_rank(a, b) -> None:
    if a.d != b.d:
        raise RankMismatchError(a.d, b.d)


@cached(cache=LRUCache(maxsize=settings.length_cache_size), lock=threading.Lock())
def oracle_length(w: AffinePerm) -> int:
    """
    Pair count over a generous radius: every k within 2(spread + D) of i,
    and every row within that radius of the two boundaries
    """
    d, D = w.d, 2 * w.d
    spread = max(abs(ap_apply(w, j) - j) for j in range(1, D + 1))
    radius = 2 * (spread + D)
    inversions = 0
    for i in range(1, D + 1):
        image = ap_apply(w, i)
        inversions += sum(1 for k in range(i - radius, i) if ap_apply(w, k) > image)
    below_zero = sum(1 for i in range(1, radius + 1) if ap_apply(w, i) <= 0)
    below_d = sum(1 for i in range(d + 1, d + radius + 1) if ap_apply(w, i) <= d)
    return (inversions - below_zero - below_d) // 2


def _right_multiply(w: AffinePerm, g) -> AffinePerm:
    return ap_compose(w, ap_generator(w.d, g))


def _is_descent(w: AffinePerm, g) -> bool:
    return oracle_length(_right_multiply(w, g)) < oracle_length(w)


@cached(cache=LRUCache(maxsize=settings.length_cache_size), lock=threading.Lock())
def oracle_reduced_word(w: AffinePerm) -> Tuple[AffinePerm, Tuple[int, ...]]:
    """
    (residue, word) with w = residue o s_{word[-1]} o ... o s_{word[0]},
    residue of length 0; found by stripping descents tested through lengths
    """
    word: List[int] = []
    current = w
    while oracle_length(current) > 0:
        g = next(g for g in generators(w.d) if _is_descent(current, g))
        word.append(g)
        current = _right_multiply(current, g)
    return current, tuple(word)


@cached(cache=LRUCache(maxsize=settings.length_cache_size), lock=threading.Lock())
def oracle_interval(w: AffinePerm) -> FrozenSet[AffinePerm]:
    """All subword products of a reduced word of w, keeping its length-0 residue"""
    residue, word = oracle_reduced_word(w)
    products = set()
    for size in range(len(word) + 1):
        for positions in combinations(range(len(word)), size):
            current = residue
            for position in reversed(positions):
                current = _right_multiply(current, word[position])
            products.add(current)
    return frozenset(products)


def oracle_bruhat(y: AffinePerm, w: AffinePerm) -> bool:
    """Subword property: y is a subword product of w with the same residue"""
    _check_same_rank(y, w)
    return y in oracle_interval(w)


def _gen_left(g, a: HeckeElt) -> HeckeElt:
    """Iwahori rule T_g T_w, with lengths deciding the case"""
    terms: List[Tuple[AffinePerm, LaurentPoly]] = []
    for w, c in a.items():
        moved = _right_multiply(w, g)
        if g == RHO or oracle_length(moved) > oracle_length(w):
            terms.append((moved, c))
        else:
            terms.append((moved, V2 * c))
            terms.append((w, (V2 - 1) * c))
    return HeckeElt(a.d, terms)


def _gen_inverse_left(g, a: HeckeElt) -> HeckeElt:
    if g == RHO:
        return _gen_left(g, a)
    lifted = _gen_left(g, a)
    terms = [(w, V_MINUS_2 * c) for w, c in lifted.items()]
    terms += [(w, (V_MINUS_2 - 1) * c) for w, c in a.items()]
    return HeckeElt(a.d, terms)


def _apply_word(a: AffinePerm, word: Tuple[int, ...], start: HeckeElt, inverse: bool = False) -> HeckeElt:
    step = _gen_inverse_left if inverse else _gen_left
    result = start
    if a.window != tuple(range(1, 2 * a.d + 1)):
        result = step(RHO, result)
    for g in reversed(word):
        result = step(g, result)
    return result


def oracle_mult(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    """
    Product through the Iwahori rule: [x] = T_{g_1} ... T_{g_m} T_rho^e for
    x = residue o s_{g_m} o ... o s_{g_1}, applied to b right to left
    """
    _check_same_rank(a, b)
    total = HeckeElt(a.d)
    for x, c in a.items():
        residue, word = oracle_reduced_word(x)
        product = _apply_word(residue, word, b)
        total = total + HeckeElt(a.d, [(z, c * cz) for z, cz in product.items()])
    return total


@cached(cache=LRUCache(maxsize=settings.mult_cache_size), lock=threading.Lock())
def _oracle_bar_basis(x: AffinePerm) -> HeckeElt:
    """bar([x]) = T_{g_1}^-1 ... T_{g_m}^-1 T_rho^e applied to [e]"""
    residue, word = oracle_reduced_word(x)
    unit = HeckeElt(x.d, [(AffinePerm(x.d, tuple(range(1, 2 * x.d + 1))), ONE)])
    return _apply_word(residue, word, unit, inverse=True)


def oracle_bar(a: HeckeElt) -> HeckeElt:
    total = HeckeElt(a.d)
    for x, c in a.items():
        total = total + HeckeElt(a.d, [(z, c.bar() * cz) for z, cz in _oracle_bar_basis(x).items()])
    return total


def oracle_canonical(w: AffinePerm) -> HeckeElt:
    """
    Solve bar(C) = C over the Bruhat interval below w directly

    Writing bar(T^_x) = sum_z r_{z,x} T^_z, the coefficients of
    C = sum p_y T^_y satisfy p_y - bar(p_y) = sum_{x > y} bar(p_x) r_{y,x};
    with p_y in v^-1 Z[v^-1] it is the negative-degree part of the right side.

    Raises:
        IntervalTooLargeError: interval larger than settings.oracle_max_interval
    """
    interval = oracle_interval(w)
    if len(interval) > settings.oracle_max_interval:
        raise IntervalTooLargeError(len(interval), settings.oracle_max_interval)
    lengths = {x: oracle_length(x) for x in interval}
    ordered = sorted(interval, key=lambda x: (-lengths[x], x.window))

    # r_{z,x} for x in the interval, from bar([x]) = sum c_z [z]
    r: Dict[AffinePerm, Dict[AffinePerm, LaurentPoly]] = {}
    for x in ordered:
        r[x] = {z: c.shift(lengths[x] + oracle_length(z)) for z, c in _oracle_bar_basis(x).items()}

    solution: Dict[AffinePerm, LaurentPoly] = {}
    for y in ordered:
        if y == w:
            solution[y] = ONE
            continue
        rhs = LaurentPoly()
        for x, p_x in solution.items():
            r_yx = r[x].get(y)
            if r_yx is not None:
                rhs = rhs + p_x.bar() * r_yx
        solution[y] = rhs.truncate_below(0)

    logger.debug(f"Oracle solved an interval of {len(interval)} elements")
    return HeckeElt(w.d, [(y, p.shift(-lengths[y])) for y, p in solution.items()])
