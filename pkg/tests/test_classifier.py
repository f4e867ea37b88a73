import pytest
from hypothesis import given, settings, strategies as st

from tightpoly import engine
from tightpoly.classifier import (
    _bfs_relabel,
    census_nonorientable,
    classify_tight,
    low_index_normal,
)
from tightpoly.errors import CapExceeded
from tightpoly.toddcox import perm_rep, regular_rep
from tightpoly.words import (
    coxeter_presentation,
    gamma_pq_presentation,
    lambda_k_presentation,
)


def direct_normal_subgroups(pres):
    """Brute-force oracle: enumerate normal subgroups of a finite group as
    unions of conjugacy classes closed under multiplication."""
    rep = regular_rep(pres)
    elements = sorted(engine.closure_perms(rep.degree, rep.gens, cap=2000))
    classes = []
    assigned = {}
    for e in elements:
        if e in assigned:
            continue
        orbit = {e}
        frontier = [e]
        while frontier:
            x = frontier.pop()
            for g in rep.gens:
                y = engine.compose(engine.compose(g, x), g)
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        cls = frozenset(orbit)
        classes.append(cls)
        for x in cls:
            assigned[x] = cls
    ident = engine.identity_perm(rep.degree)
    others = [c for c in classes if ident not in c]
    normals = []
    for bits in range(1 << len(others)):
        subset = {ident}
        for i, cls in enumerate(others):
            if bits >> i & 1:
                subset |= cls
        if len(elements) % len(subset) != 0:
            continue
        if all(engine.compose(a, b) in subset for a in subset for b in subset):
            normals.append(frozenset(subset))
    return rep, normals


def coset_table_of_normal(rep, normal, ngens):
    """Canonical coset table of the action on the cosets of a normal subgroup."""
    elements = engine.closure_perms(rep.degree, rep.gens, cap=2000)
    coset_of = {}
    cosets = []
    for e in sorted(elements):
        if e in coset_of:
            continue
        coset = frozenset(engine.compose(n, e) for n in normal)
        idx = len(cosets)
        cosets.append(coset)
        for x in coset:
            coset_of[x] = idx
    # Reorder so the subgroup itself is coset 0.
    ident = engine.identity_perm(rep.degree)
    base = coset_of[ident]
    order = [base] + [i for i in range(len(cosets)) if i != base]
    relabel = {old: new for new, old in enumerate(order)}
    rows = [[0] * ngens for _ in cosets]
    for old, coset in enumerate(cosets):
        e = next(iter(coset))
        for g in range(ngens):
            rows[relabel[old]][g] = relabel[coset_of[engine.compose(e, rep.gens[g])]]
    return _bfs_relabel([tuple(r) for r in rows], ngens)


class TestLowIndexNormal:
    def test_index_one(self):
        tables = low_index_normal(coxeter_presentation((3, 2)), 1)
        assert len(tables) == 1
        assert tables[0].rows == 1

    def test_trivial_kernel_of_finite_group(self):
        assert len(low_index_normal(coxeter_presentation((3, 2)), 12)) == 1
        assert len(low_index_normal(coxeter_presentation((3, 4)), 48)) == 1

    def test_index_cap(self):
        with pytest.raises(CapExceeded):
            low_index_normal(coxeter_presentation((3, 2)), 200)

    @pytest.mark.parametrize(
        "pres",
        [
            coxeter_presentation((2, 2)),
            coxeter_presentation((3, 2)),
            coxeter_presentation((3, 3)),
            coxeter_presentation((5, 2)),
            coxeter_presentation((3, 4)),
            coxeter_presentation((3, 5)),
            gamma_pq_presentation(3, 6),
            lambda_k_presentation(1),
        ],
    )
    def test_complete_against_direct_enumeration(self, pres):
        # For finite presentations, the search must agree with the
        # brute-force normal subgroup oracle at every divisor index.
        rep, normals = direct_normal_subgroups(pres)
        order = rep.degree
        by_index = {}
        for normal in normals:
            index = order // len(normal)
            by_index.setdefault(index, set()).add(
                coset_table_of_normal(rep, normal, pres.ngens)
            )
        for index in sorted(by_index):
            found = {t.table for t in low_index_normal(pres, index)}
            assert found == by_index[index], f"index {index} mismatch"

    def test_tables_are_valid_and_regular(self):
        for table in low_index_normal(coxeter_presentation((4, 4)), 32):
            rep = perm_rep(table)  # validates all relators
            group = engine.closure_perms(rep.degree, rep.gens)
            assert len(group) == rep.degree


class TestFuzzAgainstOracle:
    @settings(max_examples=25, deadline=None)
    @given(
        st.tuples(st.integers(2, 4), st.integers(2, 4)),
        st.lists(st.integers(0, 2), min_size=2, max_size=6),
    )
    def test_random_quotients_match_direct_enumeration(self, sym, extra):
        from tightpoly.errors import BudgetExceeded
        from tightpoly.words import Presentation

        base = coxeter_presentation(sym)
        pres = Presentation(3, base.relators + (tuple(extra),))
        try:
            rep = regular_rep(pres, max_cosets=400)
        except BudgetExceeded:
            return
        if rep.degree > 40:
            return
        _, normals = direct_normal_subgroups(pres)
        by_index = {}
        for normal in normals:
            index = rep.degree // len(normal)
            by_index.setdefault(index, set()).add(
                coset_table_of_normal(rep, normal, 3)
            )
        for index, expected in sorted(by_index.items()):
            found = {t.table for t in low_index_normal(pres, index)}
            assert found == expected, (sym, extra, index)


class TestClassify:
    def test_36_unique_and_gamma(self):
        records = classify_tight(3, 6, require_orientable=True)
        assert len(records) == 1
        record = records[0]
        assert record.order == 36
        assert record.isomorphic_to_gamma is True
        assert record.profile.schlafli == (3, 6)
        assert record.tight and record.orientable and record.polytope_ok

    def test_34_orientable_empty(self):
        assert classify_tight(3, 4, require_orientable=True) == []

    def test_34_nonorientable_is_lambda1(self):
        records = census_nonorientable(3, 4)
        assert len(records) == 1
        assert records[0].isomorphic_to_lambda is True
        assert records[0].order == 24

    def test_94_nonorientable_contains_lambda3(self):
        records = census_nonorientable(9, 4)
        assert any(r.isomorphic_to_lambda for r in records)

    def test_54_nonorientable_golden(self):
        # Exhaustive search is its own oracle; frozen after the first
        # verified run.
        assert census_nonorientable(5, 4) == []

    def test_48_two_records(self):
        records = classify_tight(4, 8, require_orientable=True)
        assert len(records) >= 2
        tables = {r.table.table for r in records}
        assert len(tables) == len(records)

    def test_unfiltered_includes_both_kinds(self):
        records = classify_tight(3, 4, require_orientable=False)
        assert len(records) == 1  # only the non-orientable one exists

    def test_cap(self):
        with pytest.raises(CapExceeded):
            classify_tight(10, 7, require_orientable=True)

    def test_records_satisfy_source_relators(self):
        for record in classify_tight(4, 4, require_orientable=True):
            perm_rep(record.table)  # raises on any relator violation
            assert record.order == 32

    # Exhaustive search is its own oracle; counts frozen after the first
    # verified run. Types come in dual pairs with equal counts.
    BOTH_EVEN_GOLDEN = {
        (2, 2): 1, (2, 4): 1, (2, 6): 1, (2, 8): 1, (2, 10): 1, (2, 12): 1,
        (2, 14): 1, (2, 16): 1, (2, 18): 1, (2, 20): 1, (2, 22): 1, (2, 24): 1,
        (4, 4): 1, (4, 6): 1, (4, 8): 2, (4, 10): 1, (4, 12): 1,
        (6, 6): 3, (6, 8): 1,
    }

    def test_both_even_census_counts_golden(self):
        for (p, q), expected in self.BOTH_EVEN_GOLDEN.items():
            found = len(classify_tight(p, q, require_orientable=True))
            dual = len(classify_tight(q, p, require_orientable=True))
            assert found == expected, (p, q, found)
            assert dual == expected, (q, p, dual)
