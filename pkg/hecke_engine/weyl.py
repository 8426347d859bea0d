"""
Periodic symmetric permutations of Z: the extended affine Weyl group of type D

An element w of Sigma_d is a bijection of Z with w(i + D) = w(i) + D,
w(1 - i) = 1 - w(i) and even crossing parity, where D = 2d. It is stored as
its window w(1), ..., w(D). The monomial matrix sigma_w has sigma_{i,j} = 1
exactly when j = w(i).

Generator moves act on the right: the g-move of w exchanges the images of the
two rows designated for g (and their mirrors), which is w composed with s_g.
"""
import logging
import operator
import re
import threading
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from hecke_engine.config import settings
from hecke_engine.errors import (
    CompositionError,
    NoDescentError,
    RankMismatchError,
    RankTooSmallError,
    WindowEntryError,
)
from hecke_engine.models import WindowRecord
from hecke_engine.validator import MIN_RANK, window_crossings, window_parity, window_validator

logger = logging.getLogger(__name__)

RHO = "rho"
GenLabel = Union[int, str]

_TEXT_PATTERN = re.compile(r"^\s*d\s*=\s*(\d+)\s*;\s*w\s*=\s*\[([^\]]*)\]\s*$")
_LABEL_PATTERN = re.compile(r"^(?:T|s_?)?(\d+|rho)$")


@dataclass(frozen=True)
class AffinePerm:
    """
    Element of Sigma_d stored as its window w(1), ..., w(2d)

    The constructor trusts its input; use ap_from_window for untrusted windows.
    """
    d: int
    window: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "window", tuple(self.window))

    @property
    def D(self) -> int:
        return 2 * self.d

    def __call__(self, i: int) -> int:
        return ap_apply(self, i)

    def __str__(self) -> str:
        return ap_to_text(self)


@dataclass(frozen=True)
class Composition:
    """Palindromic weight lambda_1..lambda_n with lambda_i = lambda_{n+1-i}"""
    n: int
    lam: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(self.lam))
        if len(self.lam) != self.n:
            raise CompositionError(f"composition has {len(self.lam)} parts, expected {self.n}")
        if any(part < 0 for part in self.lam):
            raise CompositionError(f"negative part in {self.lam}")
        if self.lam != tuple(reversed(self.lam)):
            raise CompositionError(f"{self.lam} is not palindromic")

    @property
    def d(self) -> int:
        return sum(self.lam) // 2


@dataclass(frozen=True)
class ReducedWord:
    """
    Reduced word of w: [w] = T_{word[0]} * ... * T_{word[-1]} * T_rho^rho_prefix

    rho_prefix means the fold starts from [rho] instead of [e]; the letters are
    then applied right to left.
    """
    rho_prefix: bool
    word: Tuple[GenLabel, ...]

    def __len__(self) -> int:
        return len(self.word)

    def factors(self) -> Tuple[GenLabel, ...]:
        """Generator letters in product order"""
        return self.word + ((RHO,) if self.rho_prefix else ())

    def render(self) -> str:
        factors = self.factors()
        if not factors:
            return "e"
        return " * ".join(label_name(g) for g in factors)


def check_rank(d: int) -> None:
    if d < MIN_RANK:
        raise RankTooSmallError(d)


def _check_same_rank(a: AffinePerm, b: AffinePerm) -> None:
    if a.d != b.d:
        raise RankMismatchError(a.d, b.d)


# Generator labels

def generators(d: int) -> List[GenLabel]:
    """s_0, ..., s_d in tie-break order"""
    return list(range(d + 1))


def label_name(g: GenLabel) -> str:
    return "Trho" if g == RHO else f"T{g}"


def parse_label(text: str, d: int) -> GenLabel:
    """
    Read 'T2', 's_2', 's2', '2', 'Trho' or 'rho'

    Raises:
        ValueError: for unknown labels or indices outside [0, d]
    """
    match = _LABEL_PATTERN.match(text.strip())
    if not match:
        raise ValueError(f"unknown generator label {text!r}")
    token = match.group(1)
    if token == "rho":
        return RHO
    index = int(token)
    if not 0 <= index <= d:
        raise ValueError(f"generator index {index} outside [0, {d}]")
    return index


def designated_rows(d: int, g: GenLabel) -> Tuple[Tuple[int, int], ...]:
    """Row pairs whose images the g-move exchanges"""
    if g == RHO:
        return ((0, 1), (d, d + 1))
    if g == 0:
        return ((-1, 1),)
    if g == d:
        return ((d - 1, d + 1),)
    if isinstance(g, int) and 1 <= g < d:
        return ((g, g + 1),)
    raise ValueError(f"unknown generator {g!r} for d={d}")


# Construction and basic arithmetic

def _exact_entries(window: Sequence[int]) -> Tuple[int, ...]:
    entries = []
    for i, x in enumerate(window, start=1):
        try:
            entries.append(operator.index(x))
        except TypeError:
            raise WindowEntryError(f"entry {x!r} is not an integer", i) from None
    return tuple(entries)


def ap_from_window(d: int, window: Sequence[int]) -> AffinePerm:
    """
    Validated element of Sigma_d

    Raises:
        WindowEntryError, RankTooSmallError, WindowLengthError,
        ResidueCoverError, SymmetryError, ParityError
    """
    window = _exact_entries(window)
    window_validator.check(d, window)
    return AffinePerm(d, window)


def ap_identity(d: int) -> AffinePerm:
    check_rank(d)
    return AffinePerm(d, tuple(range(1, 2 * d + 1)))


def ap_generator(d: int, g: GenLabel) -> AffinePerm:
    check_rank(d)
    D = 2 * d
    window = list(range(1, D + 1))
    if g == RHO:
        window[0], window[d - 1], window[d], window[D - 1] = 0, d + 1, d, D + 1
    elif g == 0:
        window[0], window[1], window[D - 2], window[D - 1] = -1, 0, D + 1, D + 2
    elif g == d:
        window[d - 2], window[d] = d + 1, d - 1
        window[d - 1], window[d + 1] = d + 2, d
    elif isinstance(g, int) and 1 <= g < d:
        window[g - 1], window[g] = g + 1, g
        window[D - g - 1], window[D - g] = D - g + 1, D - g
    else:
        raise ValueError(f"unknown generator {g!r} for d={d}")
    return AffinePerm(d, tuple(window))


def ap_apply(w: AffinePerm, i: int) -> int:
    D = 2 * w.d
    q, r = divmod(i - 1, D)
    return w.window[r] + q * D


def ap_compose(a: AffinePerm, b: AffinePerm) -> AffinePerm:
    """(a o b)(i) = a(b(i))"""
    _check_same_rank(a, b)
    return AffinePerm(a.d, tuple(ap_apply(a, ap_apply(b, i)) for i in range(1, 2 * a.d + 1)))


def ap_matrix_product(a: AffinePerm, b: AffinePerm) -> AffinePerm:
    """sigma_a * sigma_b as monomial matrices, i.e. b o a"""
    return ap_compose(b, a)


def ap_inverse(a: AffinePerm) -> AffinePerm:
    D = 2 * a.d
    inverse = [0] * D
    for i in range(1, D + 1):
        q, r = divmod(ap_apply(a, i) - 1, D)
        inverse[r] = i - q * D
    return AffinePerm(a.d, tuple(inverse))


def ap_move(w: AffinePerm, g: GenLabel) -> AffinePerm:
    """
    The g-move: exchange the images of the designated rows and their mirrors

    Equal to ap_compose(w, ap_generator(w.d, g)).
    """
    D = 2 * w.d
    window = list(w.window)
    for a, b in designated_rows(w.d, g):
        image_a, image_b = ap_apply(w, a), ap_apply(w, b)
        for row, value in ((a, image_b), (b, image_a), (1 - a, 1 - image_b), (1 - b, 1 - image_a)):
            q, r = divmod(row - 1, D)
            window[r] = value - q * D
    return AffinePerm(w.d, tuple(window))


def ap_matrix_block(w: AffinePerm, rows: Sequence[int], cols: Sequence[int]) -> List[List[int]]:
    """0/1 block of sigma_w on the given rows and columns"""
    return [[1 if ap_apply(w, i) == j else 0 for j in cols] for i in rows]


# Length, parity, descents

def _max_displacement(w: AffinePerm) -> int:
    """max_j w(j) - j; by symmetry also bounds j - w(j)"""
    return max(value - j for j, value in enumerate(w.window, start=1))


@cached(cache=LRUCache(maxsize=settings.length_cache_size), lock=threading.Lock())
def ap_length(w: AffinePerm) -> int:
    """
    Orbit dimension d(sigma), i.e. the length of w

    Half of: the number of pairs k < i, i in [1, D], with w(k) > w(i), minus
    #{i >= 1 : w(i) <= 0} and #{i >= d+1 : w(i) <= d}. Since
    |w(k) - k| <= delta, only k > w(i) - delta can contribute to the first
    count and only rows within delta of a boundary to the other two.
    """
    d, D = w.d, 2 * w.d
    delta = _max_displacement(w)
    inversions = 0
    for i in range(1, D + 1):
        image = w.window[i - 1]
        for k in range(image - delta + 1, i):
            if ap_apply(w, k) > image:
                inversions += 1
    below_zero = sum(1 for i in range(1, delta + 1) if ap_apply(w, i) <= 0)
    below_d = sum(1 for i in range(d + 1, d + delta + 1) if ap_apply(w, i) <= d)
    total = inversions - below_zero - below_d
    if total < 0 or total % 2:
        raise ValueError(f"{ap_to_text(w)} is not an element of Sigma_d (length sum {total})")
    return total // 2


def ap_parity(w: AffinePerm) -> int:
    """(N_0 + N_d) mod 2; accepts windows that were never validated"""
    return window_parity(w.d, w.window)


def ap_coset(w: AffinePerm) -> int:
    """0 on the affine Weyl group, 1 on its rho-translate"""
    n_zero, _ = window_crossings(w.d, w.window)
    return n_zero % 2


def ap_descent(w: AffinePerm, g: GenLabel) -> bool:
    """True iff the g-move lowers the length, i.e. the first designated row image is larger"""
    if g == RHO:
        raise NoDescentError()
    (a, b), = designated_rows(w.d, g)
    return ap_apply(w, a) > ap_apply(w, b)


def ap_descents(w: AffinePerm) -> List[int]:
    return [g for g in generators(w.d) if ap_descent(w, g)]


# Reduced words

def ap_reduced_word(w: AffinePerm, order: Optional[Sequence[int]] = None) -> ReducedWord:
    """
    Greedy descent stripping: repeatedly apply the first available descent in
    `order` (default s_0, s_1, ..., s_d) until length 0; the residue is e or rho
    """
    if order is None:
        order = generators(w.d)
    order = tuple(order)
    if sorted(order) != generators(w.d):
        raise ValueError(f"tie-break order {order} is not a permutation of 0..{w.d}")
    return _reduced_word(w, order)


@cached(cache=LRUCache(maxsize=settings.length_cache_size), lock=threading.Lock())
def _reduced_word(w: AffinePerm, order: Tuple[int, ...]) -> ReducedWord:
    word: List[int] = []
    current = w
    for _ in range(ap_length(w)):
        g = next((g for g in order if ap_descent(current, g)), None)
        if g is None:
            raise RuntimeError(f"no descent found for {ap_to_text(current)} of positive length")
        word.append(g)
        current = ap_move(current, g)
    if current == ap_identity(w.d):
        return ReducedWord(False, tuple(word))
    if current == ap_generator(w.d, RHO):
        return ReducedWord(True, tuple(word))
    raise RuntimeError(f"length-0 residue {ap_to_text(current)} is neither e nor rho")


def ap_replay(d: int, reduced_word: ReducedWord) -> AffinePerm:
    """Fold the moves of a word starting from e (or rho)"""
    current = ap_generator(d, RHO) if reduced_word.rho_prefix else ap_identity(d)
    for g in reversed(reduced_word.word):
        current = ap_move(current, g)
    return current


# Orders

def ap_bruhat_leq(a: AffinePerm, b: AffinePerm) -> bool:
    """
    Bruhat order of Sigma_d

    Elements of different rho-cosets are incomparable; within a coset the
    order is decided by descending along descents of b.
    """
    _check_same_rank(a, b)
    if ap_coset(a) != ap_coset(b):
        return False
    return _bruhat_descend(a, b)


@cached(cache=LRUCache(maxsize=settings.bruhat_cache_size), lock=threading.Lock())
def _bruhat_descend(y: AffinePerm, w: AffinePerm) -> bool:
    length_y, length_w = ap_length(y), ap_length(w)
    if length_y > length_w:
        return False
    if length_y == length_w:
        return y == w
    g = ap_descents(w)[0]
    lower_w = ap_move(w, g)
    if ap_descent(y, g):
        return _bruhat_descend(ap_move(y, g), lower_w)
    return _bruhat_descend(y, lower_w)


def _column_count(w: AffinePerm, i: int, j: int, delta: int) -> int:
    """#{k >= i : w(k) <= j}; rows past j + delta map above j"""
    return sum(1 for k in range(i, j + delta + 1) if ap_apply(w, k) <= j)


def ap_dominance_leq(a: AffinePerm, b: AffinePerm) -> bool:
    """
    Column-count criterion: c_a(i, j) <= c_b(i, j) for all i > j, where
    c(i, j) = sum_{k >= i, l <= j} sigma_{k,l}

    The counts are D-periodic along the diagonal, so rows i in [1, D] suffice,
    and both matrices live in a band of width delta around the diagonal.
    Necessary for the Bruhat order but strictly weaker on Sigma_d.
    """
    _check_same_rank(a, b)
    D = 2 * a.d
    delta_a, delta_b = _max_displacement(a), _max_displacement(b)
    reach = 2 * (delta_a + delta_b + D)
    for i in range(1, D + 1):
        for j in range(i - 1 - reach, i):
            if _column_count(a, i, j, delta_a) > _column_count(b, i, j, delta_b):
                return False
    return True


# Enumeration

def ap_enumerate(d: int, L: int) -> List[AffinePerm]:
    """
    All elements of length <= L, sorted by (length, window)

    Breadth-first closure of {e, rho} under every generator move.
    """
    check_rank(d)
    if L < 0:
        return []
    seeds = [ap_identity(d), ap_generator(d, RHO)]
    seen = set(seeds)
    queue = deque(seeds)
    moves: List[GenLabel] = generators(d) + [RHO]
    while queue:
        w = queue.popleft()
        for g in moves:
            u = ap_move(w, g)
            if u in seen or ap_length(u) > L:
                continue
            seen.add(u)
            queue.append(u)
    logger.debug(f"Enumerated {len(seen)} elements of Sigma_{d} with length <= {L}")
    return sorted(seen, key=lambda w: (ap_length(w), w.window))


def enumerate_compositions(n: int, d: int) -> List[Composition]:
    """
    Lambda_{n,d}: free parts lambda_1..lambda_{n/2} summing to d, reflected

    Raises:
        CompositionError: if n is not an even integer >= 2
    """
    check_rank(d)
    if n < 2 or n % 2:
        raise CompositionError(f"n={n} must be an even integer >= 2")
    free = n // 2
    compositions = []
    # stars and bars: free - 1 separators among d + free - 1 slots
    for separators in combinations(range(d + free - 1), free - 1):
        parts: List[int] = []
        previous = -1
        for position in separators + (d + free - 1,):
            parts.append(position - previous - 1)
            previous = position
        compositions.append(Composition(n, tuple(parts) + tuple(reversed(parts))))
    return sorted(compositions, key=lambda c: c.lam)


# Text and machine forms

@cached(cache={}, key=lambda d: hashkey(d), lock=threading.Lock())
def _named_elements(d: int) -> Dict[Tuple[int, ...], str]:
    names = {ap_identity(d).window: "e"}
    for g in generators(d) + [RHO]:
        names[ap_generator(d, g).window] = label_name(g)
    return names


def ap_label(w: AffinePerm) -> str:
    """'e', 'T0'..'Td', 'Trho', or 'w=a1,...,aD'"""
    name = _named_elements(w.d).get(w.window)
    if name is not None:
        return name
    return "w=" + ",".join(str(x) for x in w.window)


def ap_to_text(w: AffinePerm) -> str:
    return f"d={w.d};w=[{','.join(str(x) for x in w.window)}]"


def ap_from_text(text: str) -> AffinePerm:
    match = _TEXT_PATTERN.match(text)
    if not match:
        raise ValueError(f"expected 'd=<rank>;w=[...]', got {text!r}")
    entries = [x for x in match.group(2).split(",") if x.strip()]
    return ap_from_window(int(match.group(1)), [int(x) for x in entries])


def ap_to_record(w: AffinePerm) -> WindowRecord:
    return WindowRecord(d=w.d, w=list(w.window))


def ap_from_record(record: WindowRecord) -> AffinePerm:
    return ap_from_window(record.d, record.w)
