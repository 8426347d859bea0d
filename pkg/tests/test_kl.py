"""
Tests for the canonical basis, KL polynomials and the KL cache
"""
import io

import pytest

from hecke_engine.errors import KLInvariantError, MalformedRecordError, RankMismatchError
from hecke_engine.hecke import he_bar, he_basis, he_mult, he_mult_gen_left
from hecke_engine.kl import (
    KLTable,
    kl_cache_dumps,
    kl_cache_load,
    kl_cache_loads,
    kl_cache_save,
    kl_canonical,
    kl_expand,
    kl_mu,
    kl_polynomial,
    kl_structure_positivity,
)
from hecke_engine.laurent import ONE, LaurentPoly
from hecke_engine.weyl import (
    RHO,
    ap_bruhat_leq,
    ap_enumerate,
    ap_generator,
    ap_identity,
    ap_length,
    ap_move,
)

V_INV = LaurentPoly.monomial(-1)


class TestCanonicalBasis:
    """Test suite for kl_canonical"""

    def setup_method(self):
        """Fresh table per test"""
        self.table = KLTable(3)

    def test_length_zero(self):
        assert kl_canonical(ap_identity(3), self.table) == he_basis(ap_identity(3))
        assert kl_canonical(ap_generator(3, RHO), self.table) == he_basis(ap_generator(3, RHO))

    def test_generator(self):
        """C_s = v^-1 ([s] + [e]), so P(e, s) = v^-1"""
        s = ap_generator(3, 1)
        element = kl_canonical(s, self.table)
        assert element.coefficient(s) == V_INV
        assert element.coefficient(ap_identity(3)) == V_INV
        assert kl_polynomial(ap_identity(3), s, self.table) == V_INV
        assert kl_mu(ap_identity(3), s, self.table) == 1

    def test_properties(self):
        """Bar invariance, unitriangularity and degree bound up to length 4"""
        for w in ap_enumerate(3, 4):
            element = kl_canonical(w, self.table)
            assert he_bar(element) == element
            assert kl_polynomial(w, w, self.table) == ONE
            for y in element.support():
                assert ap_bruhat_leq(y, w)
                if y != w:
                    assert kl_polynomial(y, w, self.table).in_vinv()

    def test_rho_translation(self):
        """C_{w o rho} = T_rho * C_w and P is invariant under the shift"""
        for w in ap_enumerate(3, 3):
            shifted = ap_move(w, RHO)
            element = kl_canonical(w, self.table)
            assert kl_canonical(shifted, self.table) == he_mult_gen_left(RHO, element)
            for y in element.support():
                assert kl_polynomial(ap_move(y, RHO), shifted, self.table) == kl_polynomial(y, w, self.table)

    def test_zero_outside_interval(self):
        s0, s1 = ap_generator(3, 0), ap_generator(3, 1)
        assert not kl_polynomial(s0, s1, self.table)

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatchError):
            kl_canonical(ap_identity(4), self.table)

    def test_expand_canonical(self):
        """Expanding C_w gives exactly {w: 1}"""
        for w in ap_enumerate(3, 3):
            assert kl_expand(kl_canonical(w, self.table), self.table) == {w: ONE}

    def test_expand_product(self):
        """C_s * C_s = (v + v^-1) C_s"""
        s = ap_generator(3, 2)
        c_s = kl_canonical(s, self.table)
        expansion = kl_expand(he_mult(c_s, c_s), self.table)
        assert expansion == {s: LaurentPoly([(-1, 1), (1, 1)])}

    def test_rebuild_from_columns(self):
        """A table loaded from entries rebuilds the same canonical elements"""
        for w in ap_enumerate(3, 3):
            kl_canonical(w, self.table)
        reloaded = kl_cache_loads(kl_cache_dumps(self.table))
        for w in ap_enumerate(3, 3):
            assert reloaded.canonical(w) == self.table.canonical(w)


class TestPositivity:
    """Test the structure-constant positivity audit"""

    def test_positive_up_to_length_two(self):
        report = kl_structure_positivity(3, 2)
        assert report.passed
        assert report.violations == []
        assert report.pairs_checked == len(ap_enumerate(3, 2)) ** 2


class TestKLTable:
    """Test table invariants and merging"""

    def test_entries_sorted(self):
        table = KLTable(3)
        for w in ap_enumerate(3, 1):
            kl_canonical(w, table)
        entries = table.entries()
        keys = [(ap_length(w), w.window, y.window) for y, w, _ in entries]
        assert keys == sorted(keys)
        assert len(table) == 18

    def test_publish_conflict(self):
        table = KLTable(3)
        s = ap_generator(3, 1)
        kl_canonical(s, table)
        with pytest.raises(KLInvariantError):
            table.publish_column(s, {s: ONE})

    def test_publish_rejects_bad_column(self):
        table = KLTable(3)
        s = ap_generator(3, 1)
        with pytest.raises(KLInvariantError):
            table.publish_column(s, {s: ONE, ap_identity(3): ONE})

    def test_merge(self):
        first, second = KLTable(3), KLTable(3)
        kl_canonical(ap_generator(3, 1), first)
        kl_canonical(ap_generator(3, 2), second)
        first.merge(second)
        assert first.has_column(ap_generator(3, 2))
        with pytest.raises(RankMismatchError):
            first.merge(KLTable(4))

    def test_get_unknown_column(self):
        assert KLTable(3).get(ap_identity(3), ap_generator(3, 1)) is None


class TestKLCache:
    """Test cache persistence"""

    def setup_method(self):
        self.table = KLTable(3)
        for w in ap_enumerate(3, 2):
            kl_canonical(w, self.table)

    def test_roundtrip(self, tmp_path):
        path = tmp_path / "kl.jsonl"
        assert kl_cache_save(self.table, path) == len(self.table)
        loaded = kl_cache_load(path)
        assert loaded == self.table
        assert kl_cache_dumps(loaded) == path.read_text(encoding="utf-8")

    def test_byte_identical_across_runs(self):
        """Independent computations serialize identically"""
        other = KLTable(3)
        for w in reversed(ap_enumerate(3, 2)):
            kl_canonical(w, other)
        assert kl_cache_dumps(other) == kl_cache_dumps(self.table)

    def test_stream(self):
        buffer = io.StringIO()
        kl_cache_save(self.table, buffer)
        buffer.seek(0)
        assert kl_cache_load(buffer) == self.table

    def test_line_format(self):
        first = kl_cache_dumps(self.table).splitlines()[0]
        assert first == '{"d":3,"y":[0,2,4,3,5,7],"w":[0,2,4,3,5,7],"p":[[0,1]]}'

    def test_malformed_line(self):
        lines = kl_cache_dumps(self.table).splitlines()
        lines[2] = '{"d":3,"y":[1,2,3],"w":[1,2,3,4,5,6],"p":[[0,1]]}'
        with pytest.raises(MalformedRecordError) as excinfo:
            kl_cache_loads("\n".join(lines))
        assert excinfo.value.line_number == 3

    def test_not_json(self):
        with pytest.raises(MalformedRecordError) as excinfo:
            kl_cache_loads("not json\n")
        assert excinfo.value.line_number == 1

    def test_duplicate_entry(self):
        lines = kl_cache_dumps(self.table).splitlines()
        with pytest.raises(MalformedRecordError) as excinfo:
            kl_cache_loads("\n".join(lines + [lines[0]]))
        assert excinfo.value.line_number == len(lines) + 1

    def test_missing_diagonal(self):
        text = '{"d":3,"y":[1,2,3,4,5,6],"w":[2,1,3,4,6,5],"p":[[-1,1]]}\n'
        with pytest.raises(MalformedRecordError):
            kl_cache_loads(text)

    def test_invariant_violation(self):
        """Readable records with a nonzero entry outside the interval"""
        text = (
            '{"d":3,"y":[2,1,3,4,6,5],"w":[1,3,2,5,4,6],"p":[[-1,1]]}\n'
            '{"d":3,"y":[1,3,2,5,4,6],"w":[1,3,2,5,4,6],"p":[[0,1]]}\n'
        )
        with pytest.raises(KLInvariantError):
            kl_cache_loads(text)

    def test_empty(self):
        with pytest.raises(MalformedRecordError):
            kl_cache_loads("")
        table = KLTable(3)
        assert kl_cache_loads("", into=table) is table

    def test_load_into(self):
        target = KLTable(3)
        kl_cache_loads(kl_cache_dumps(self.table), into=target)
        assert target == self.table


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
