"""
Canonical basis and Kazhdan-Lusztig polynomials

Normalization: with T^_y = v^{-l(y)} [y], the canonical element of w is
C_w = sum_y P_{y,w} T^_y. It is bar-invariant, P_{w,w} = 1 and
P_{y,w} lies in v^-1 Z[v^-1] for y < w, so the coefficient of [y] in C_w
is P_{y,w} v^{-l(y)}. On the rho-coset, C_{w o rho} = T_rho * C_w.
"""
import logging
import os
import threading
from pathlib import Path
from typing import Dict, Iterator, List, Optional, TextIO, Tuple, Union

from pydantic import ValidationError

from hecke_engine.errors import KLInvariantError, MalformedRecordError, RankMismatchError
from hecke_engine.hecke import (
    HeckeElt,
    he_add,
    he_basis,
    he_mult,
    he_mult_gen_left,
    he_scale,
    he_sub,
)
from hecke_engine.laurent import ONE, ZERO, LaurentPoly
from hecke_engine.models import KLRecord, PositivityReport, PositivityViolation
from hecke_engine.weyl import (
    RHO,
    AffinePerm,
    ap_bruhat_leq,
    ap_coset,
    ap_descent,
    ap_descents,
    ap_enumerate,
    ap_from_window,
    ap_length,
    ap_move,
    ap_to_text,
    check_rank,
)

logger = logging.getLogger(__name__)

V_INV = LaurentPoly.monomial(-1)

Column = Dict[AffinePerm, LaurentPoly]


def _validate_column(w: AffinePerm, column: Column, check_support: bool) -> None:
    diagonal = column.get(w)
    if diagonal != ONE:
        raise KLInvariantError(f"P(w,w) = {diagonal} for w = {ap_to_text(w)}, expected 1")
    for y, p in column.items():
        if y.d != w.d:
            raise RankMismatchError(w.d, y.d)
        if y == w:
            continue
        if not p:
            raise KLInvariantError(f"zero entry stored for y = {ap_to_text(y)}, w = {ap_to_text(w)}")
        if not p.in_vinv():
            raise KLInvariantError(f"P(y,w) = {p} is not in v^-1 Z[v^-1] for y = {ap_to_text(y)}, w = {ap_to_text(w)}")
        if check_support and not ap_bruhat_leq(y, w):
            raise KLInvariantError(f"P(y,w) != 0 but y = {ap_to_text(y)} is not below w = {ap_to_text(w)}")


class KLTable:
    """
    Memoized P_{y,w}, one complete column per computed w

    Reads are lock-free; each column is published once under the lock, and a
    republish must agree with the stored value.
    """

    def __init__(self, d: int):
        check_rank(d)
        self.d = d
        self._columns: Dict[AffinePerm, Column] = {}
        self._canonical: Dict[AffinePerm, HeckeElt] = {}
        self._lock = threading.Lock()

    def _check_rank(self, w: AffinePerm) -> None:
        if w.d != self.d:
            raise RankMismatchError(self.d, w.d)

    def has_column(self, w: AffinePerm) -> bool:
        return w in self._columns

    def column(self, w: AffinePerm) -> Column:
        """All nonzero P_{y,w}; empty if w was never computed"""
        return dict(self._columns.get(w, {}))

    def get(self, y: AffinePerm, w: AffinePerm) -> Optional[LaurentPoly]:
        """P_{y,w}, or None when the column of w is not known"""
        column = self._columns.get(w)
        if column is None:
            return None
        return column.get(y, ZERO)

    def publish_column(self, w: AffinePerm, column: Column, check_support: bool = False) -> None:
        self._check_rank(w)
        _validate_column(w, column, check_support)
        with self._lock:
            existing = self._columns.get(w)
            if existing is None:
                self._columns[w] = dict(column)
            elif existing != column:
                raise KLInvariantError(f"conflicting column for w = {ap_to_text(w)}")

    def canonical(self, w: AffinePerm) -> Optional[HeckeElt]:
        """C_w if known, rebuilding it from the stored column when needed"""
        element = self._canonical.get(w)
        if element is not None:
            return element
        column = self._columns.get(w)
        if column is None:
            return None
        element = HeckeElt(self.d, {y: p.shift(-ap_length(y)) for y, p in column.items()})
        with self._lock:
            self._canonical.setdefault(w, element)
        return element

    def _publish_canonical(self, w: AffinePerm, element: HeckeElt) -> None:
        with self._lock:
            self._canonical.setdefault(w, element)

    def entries(self) -> List[Tuple[AffinePerm, AffinePerm, LaurentPoly]]:
        """(y, w, P_{y,w}) sorted by (l(w), window of w, window of y)"""
        with self._lock:
            columns = list(self._columns.items())
        columns.sort(key=lambda item: (ap_length(item[0]), item[0].window))
        return [
            (y, w, column[y])
            for w, column in columns
            for y in sorted(column, key=lambda y: y.window)
        ]

    def merge(self, other: "KLTable") -> "KLTable":
        """Add every column of other; ranks must agree"""
        if other.d != self.d:
            raise RankMismatchError(self.d, other.d)
        for w, column in list(other._columns.items()):
            self.publish_column(w, column)
        return self

    def __iter__(self) -> Iterator[Tuple[AffinePerm, AffinePerm, LaurentPoly]]:
        return iter(self.entries())

    def __len__(self) -> int:
        return sum(len(column) for column in list(self._columns.values()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, KLTable):
            return NotImplemented
        return self.d == other.d and self._columns == other._columns

    def __repr__(self) -> str:
        return f"KLTable(d={self.d}, columns={len(self._columns)}, entries={len(self)})"


def _check_table(w: AffinePerm, table: KLTable) -> None:
    if w.d != table.d:
        raise RankMismatchError(table.d, w.d)


def kl_canonical(w: AffinePerm, table: KLTable) -> HeckeElt:
    """
    C_w by the classical recursion: for a descent g of w with u = w o s_g,
    C_w = C_g * C_u - sum mu(z, u) C_z over z < u having g as a descent,
    where C_g = v^-1 ([s_g] + [e])
    """
    _check_table(w, table)
    known = table.canonical(w)
    if known is not None:
        return known

    if ap_length(w) == 0:
        element = he_basis(w)
    elif ap_coset(w) == 1:
        element = he_mult_gen_left(RHO, kl_canonical(ap_move(w, RHO), table))
    else:
        g = ap_descents(w)[0]
        u = ap_move(w, g)
        lower = kl_canonical(u, table)
        element = he_scale(V_INV, he_add(he_mult_gen_left(g, lower), lower))
        for z, p in sorted(table.column(u).items(), key=lambda item: item[0].window):
            mu = p.coefficient(-1)
            if z != u and mu and ap_descent(z, g):
                element = he_sub(element, he_scale(LaurentPoly.constant(mu), kl_canonical(z, table)))

    column = {y: c.shift(ap_length(y)) for y, c in element.items()}
    table.publish_column(w, column)
    table._publish_canonical(w, element)
    logger.debug(f"Canonical element of {ap_to_text(w)} has {len(element)} terms")
    return element


def kl_polynomial(y: AffinePerm, w: AffinePerm, table: KLTable) -> LaurentPoly:
    _check_table(y, table)
    _check_table(w, table)
    if y == w:
        return ONE
    kl_canonical(w, table)
    return table.get(y, w)


def kl_mu(y: AffinePerm, w: AffinePerm, table: KLTable) -> int:
    """Coefficient of v^-1 in P_{y,w}"""
    return kl_polynomial(y, w, table).coefficient(-1)


def kl_expand(h: HeckeElt, table: KLTable) -> Dict[AffinePerm, LaurentPoly]:
    """Coefficients of h in the canonical basis, by peeling off the longest term"""
    if h.d != table.d:
        raise RankMismatchError(table.d, h.d)
    coefficients: Dict[AffinePerm, LaurentPoly] = {}
    remaining = h
    while remaining:
        z = max(remaining.support(), key=lambda w: (ap_length(w), w.window))
        coefficient = remaining.coefficient(z).shift(ap_length(z))
        coefficients[z] = coefficient
        remaining = he_sub(remaining, he_scale(coefficient, kl_canonical(z, table)))
    return coefficients


def kl_structure_positivity(d: int, L: int, table: Optional[KLTable] = None) -> PositivityReport:
    """Expand C_x * C_y for all x, y of length <= L and check every coefficient is in N[v, v^-1]"""
    check_rank(d)
    if table is None:
        table = KLTable(d)
    elements = ap_enumerate(d, L)
    canonical = {w: kl_canonical(w, table) for w in elements}
    violations: List[PositivityViolation] = []
    pairs = 0
    for x in elements:
        for y in elements:
            pairs += 1
            expansion = kl_expand(he_mult(canonical[x], canonical[y]), table)
            for z in sorted(expansion, key=lambda w: w.window):
                coefficient = expansion[z]
                if not coefficient.is_nonneg():
                    logger.warning(f"Negative structure constant at {ap_to_text(x)} * {ap_to_text(y)} -> {ap_to_text(z)}: {coefficient}")
                    violations.append(PositivityViolation(
                        x=list(x.window),
                        y=list(y.window),
                        z=list(z.window),
                        coefficient=coefficient.to_pairs(),
                    ))
    logger.info(f"Positivity audit d={d}, L={L}: {pairs} pairs, {len(violations)} violations")
    return PositivityReport(
        d=d,
        max_length=L,
        pairs_checked=pairs,
        violations=violations,
        passed=not violations,
    )


# Persistence

def kl_cache_dumps(table: KLTable) -> str:
    """JSON lines, one P_{y,w} per line"""
    return "".join(
        KLRecord(d=table.d, y=list(y.window), w=list(w.window), p=p.to_pairs()).model_dump_json() + "\n"
        for y, w, p in table.entries()
    )


def kl_cache_save(table: KLTable, destination: Union[str, Path, TextIO]) -> int:
    """
    Write the table as JSON lines

    Returns:
        Number of records written
    """
    text = kl_cache_dumps(table)
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        path = Path(destination)
        tmp_path = path.with_name(path.name + ".tmp")
        tmp_path.write_text(text, encoding="utf-8")
        os.replace(tmp_path, path)
        logger.info(f"Saved {len(table)} KL entries to {path}")
    return len(table)


def kl_cache_loads(text: str, into: Optional[KLTable] = None) -> KLTable:
    columns: Dict[AffinePerm, Column] = {}
    first_line: Dict[AffinePerm, int] = {}
    d: Optional[int] = None
    for line_number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = KLRecord.model_validate_json(line)
            y = ap_from_window(record.d, record.y)
            w = ap_from_window(record.d, record.w)
            p = LaurentPoly.from_pairs(record.p)
        except (ValidationError, ValueError) as e:
            raise MalformedRecordError(str(e).splitlines()[0], line_number) from e
        if d is None:
            d = record.d
        elif record.d != d:
            raise MalformedRecordError(f"rank {record.d} differs from rank {d} of earlier records", line_number)
        column = columns.setdefault(w, {})
        first_line.setdefault(w, line_number)
        if y in column:
            raise MalformedRecordError(f"duplicate entry for y = {ap_to_text(y)}", line_number)
        column[y] = p

    if d is None:
        if into is not None:
            return into
        raise MalformedRecordError("no records", 1)

    table = KLTable(d)
    for w, column in columns.items():
        if w not in column:
            raise MalformedRecordError(f"column of {ap_to_text(w)} has no diagonal entry", first_line[w])
        try:
            table.publish_column(w, column, check_support=True)
        except KLInvariantError as e:
            raise KLInvariantError(f"{e.message} (column starting on line {first_line[w]})") from e
    if into is not None:
        return into.merge(table)
    return table


def kl_cache_load(source: Union[str, Path, TextIO], into: Optional[KLTable] = None) -> KLTable:
    """
    Read a table written by kl_cache_save, re-validating every invariant

    Args:
        source: Path or readable text stream
        into: Optional table to merge the records into

    Raises:
        MalformedRecordError: unreadable line (with its line number)
        KLInvariantError: readable records breaking a table invariant
        RankMismatchError: merging into a table of another rank
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
        logger.info(f"Loading KL cache from {source}")
    return kl_cache_loads(text, into=into)
