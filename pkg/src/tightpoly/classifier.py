"""Normal subgroups of low index, and the tight polyhedron census.

The search backtracks over based transitive coset tables of the exact
target index, with points numbered in first-appearance (row-major) order so
each subgroup is generated exactly once. Three facts special to regular
quotient actions make it fast and keep it exact:

  * a generator column is either the identity permutation or a derangement,
    so one self-loop fixes a whole column and one moved point bans all
    self-loops in it;
  * a non-definition edge a->b under generator g pins a group relation (the
    witness word of a, then g, then the reversed witness of b) that must
    close from every row, so it is pushed as a scoped relator and scanned
    everywhere;
  * a completed table is kept only if the group generated by its columns
    has order exactly equal to the index, i.e. the action is regular.

The pruning rules only ever remove tables that no normal subgroup can
extend, and the final filter is exact, so the enumeration is sound and
complete; the test suite cross-checks it against brute-force normal
subgroup enumeration on finite groups.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import engine, sggi
from .errors import AdjacentOddPair, CapExceeded
from .poset import NotEquivelar, build_poset
from .toddcox import CosetTable, PermRep, group_order, perm_rep
from .words import (
    Presentation,
    coxeter_presentation,
    gamma_tuple_presentation,
    lambda_k_presentation,
)

DEFAULT_INDEX_CAP = 128
UNDEF = -1


def _bfs_relabel(rows: list[tuple[int, ...]], ngens: int) -> tuple[tuple[int, ...], ...]:
    """Canonical numbering: breadth-first from point 0 in generator order."""
    n = len(rows)
    label = [UNDEF] * n
    label[0] = 0
    order = [0]
    next_label = 1
    for x in order:
        for g in range(ngens):
            y = rows[x][g]
            if label[y] == UNDEF:
                label[y] = next_label
                next_label += 1
                order.append(y)
    assert next_label == n, "table is not transitive"
    out: list[tuple[int, ...]] = [()] * n
    for x in range(n):
        out[label[x]] = tuple(label[v] for v in rows[x])
    return tuple(out)


def _cycle_key(w: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical form of a relator cycle: minimum over rotations of the word
    and of its reversal (letters are involutions)."""
    best = None
    for u in (w, tuple(reversed(w))):
        for t in range(len(u)):
            rot = u[t:] + u[:t]
            if best is None or rot < best:
                best = rot
    return best or ()


# Trail tags for backtracking.
_CELL = 0
_COLSTATE = 1
_BUCKET = 2
_DYNKEY = 3

_COL_UNKNOWN = 0
_COL_IDENTITY = 1
_COL_DERANGED = 2


class _NormalSearch:
    """Backtracking over based transitive tables of the exact index.

    Deductions are worklist-driven: defining an edge (a, g) anchors a scan of
    every relator conjugate starting with g at row a, so every relator cycle
    is verified exactly when its last edge appears. Two facts about regular
    actions prune hard: a generator column is either the identity or a
    derangement, and any word reaching point b from point a names the same
    group element as a generator edge a->b, so that word is a relator of the
    quotient and must close from every row.
    """

    def __init__(self, pres: Presentation, index: int):
        self.ngens = n = pres.ngens
        self.index = index
        self.table = [UNDEF] * (index * n)
        self.colstate = [_COL_UNKNOWN] * n
        self.nrows = 1
        self.witness: list[tuple[int, ...]] = [()]
        self.buckets: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
        self.dyn_seen: set[tuple[int, ...]] = set()
        self.trail: list[tuple] = []
        self.worklist: list[tuple[int, int]] = []
        self.pending: list[tuple[int, ...]] = []
        self.found: list[tuple[tuple[int, ...], ...]] = []
        for w in dict.fromkeys(pres.relators):
            if len(w) == 2 and w[0] == w[1]:
                continue  # involution relators are built into the edge rule
            key = _cycle_key(w)
            if key in self.dyn_seen:
                continue
            self.dyn_seen.add(key)
            for conj in {w[t:] + w[:t] for t in range(len(w))}:
                self.buckets[conj[0]].append(conj)
        for bucket in self.buckets:
            bucket.sort()

    # -- constraint recording -------------------------------------------------

    def _set(self, a: int, g: int, b: int) -> bool:
        table = self.table
        n = self.ngens
        cur = table[a * n + g]
        if cur != UNDEF:
            return cur == b
        state = self.colstate[g]
        if a == b:
            if state == _COL_DERANGED:
                return False
            if state == _COL_UNKNOWN:
                self._mark_column_identity(g)
                return True
            table[a * n + g] = a
            self.trail.append((_CELL, a * n + g))
            self.worklist.append((a, g))
            return True
        if state == _COL_IDENTITY:
            return False
        back = table[b * n + g]
        if back != UNDEF and back != a:
            return False
        if state == _COL_UNKNOWN:
            self.colstate[g] = _COL_DERANGED
            self.trail.append((_COLSTATE, g, _COL_UNKNOWN))
        table[a * n + g] = b
        self.trail.append((_CELL, a * n + g))
        self.worklist.append((a, g))
        if back == UNDEF:
            table[b * n + g] = a
            self.trail.append((_CELL, b * n + g))
            self.worklist.append((b, g))
        wa, wb = self.witness[a], self.witness[b]
        # Definition edges (witness extends witness) carry no group relation;
        # anything else pins an element identity worth propagating.
        if wb != wa + (g,) and wa != wb + (g,):
            self.pending.append(wa + (g,) + tuple(reversed(wb)))
        return True

    def _mark_column_identity(self, g: int) -> None:
        self.colstate[g] = _COL_IDENTITY
        self.trail.append((_COLSTATE, g, _COL_UNKNOWN))
        table = self.table
        n = self.ngens
        for y in range(self.nrows):
            idx = y * n + g
            if table[idx] == UNDEF:
                table[idx] = y
                self.trail.append((_CELL, idx))
                self.worklist.append((y, g))

    def _add_dynamic(self, w: tuple[int, ...]) -> bool:
        key = _cycle_key(w)
        if key in self.dyn_seen:
            return True
        self.dyn_seen.add(key)
        self.trail.append((_DYNKEY, key))
        conjugates = sorted({w[t:] + w[:t] for t in range(len(w))})
        for conj in conjugates:
            self.buckets[conj[0]].append(conj)
            self.trail.append((_BUCKET, conj[0]))
            for c in range(self.nrows):
                if not self._scan(c, conj):
                    return False
        return True

    # -- propagation -----------------------------------------------------------

    def _scan(self, c: int, w: tuple[int, ...]) -> bool:
        table = self.table
        n = self.ngens
        f = c
        i, j = 0, len(w) - 1
        while i <= j:
            nxt = table[f * n + w[i]]
            if nxt == UNDEF:
                break
            f = nxt
            i += 1
        if i > j:
            return f == c
        b = c
        while j >= i:
            nxt = table[b * n + w[j]]
            if nxt == UNDEF:
                break
            b = nxt
            j -= 1
        if j < i:
            return f == b
        if i == j:
            return self._set(f, w[i], b)
        return True

    def _propagate(self) -> bool:
        worklist = self.worklist
        pending = self.pending
        buckets = self.buckets
        while worklist or pending:
            if pending:
                if not self._add_dynamic(pending.pop()):
                    worklist.clear()
                    pending.clear()
                    return False
                continue
            a, g = worklist.pop()
            for w in buckets[g]:
                if not self._scan(a, w):
                    worklist.clear()
                    pending.clear()
                    return False
        return True

    # -- search ------------------------------------------------------------------

    def _first_undefined(self) -> int:
        table = self.table
        limit = self.nrows * self.ngens
        for idx in range(limit):
            if table[idx] == UNDEF:
                return idx
        return -1

    def _emit(self) -> None:
        if self.nrows != self.index:
            return
        n = self.ngens
        rows = [
            tuple(self.table[a * n : (a + 1) * n]) for a in range(self.nrows)
        ]
        # Exact normality filter: the action must be regular.
        perms = [tuple(row[g] for row in rows) for g in range(n)]
        try:
            order = len(engine.closure_perms(self.nrows, perms, cap=self.nrows + 1))
        except CapExceeded:
            return
        if order == self.nrows:
            self.found.append(_bfs_relabel(rows, n))

    def run(self) -> None:
        if not self._propagate():
            return
        idx = self._first_undefined()
        if idx < 0:
            self._emit()
            return
        a, g = divmod(idx, self.ngens)
        mark = len(self.trail)
        n = self.ngens
        for b in range(self.nrows):
            if self.table[b * n + g] == UNDEF:
                if self._set(a, g, b):
                    self.run()
                self._undo(mark)
        if self.nrows < self.index:
            fresh = self.nrows
            self.nrows += 1
            self.witness.append(self.witness[a] + (g,))
            for h in range(n):
                if h != g and self.colstate[h] == _COL_IDENTITY:
                    self.table[fresh * n + h] = fresh
                    self.trail.append((_CELL, fresh * n + h))
                    self.worklist.append((fresh, h))
            if self._set(a, g, fresh):
                self.run()
            self._undo(mark)
            self.witness.pop()
            self.nrows -= 1

    def _undo(self, mark: int) -> None:
        trail = self.trail
        table = self.table
        while len(trail) > mark:
            entry = trail.pop()
            tag = entry[0]
            if tag == _CELL:
                table[entry[1]] = UNDEF
            elif tag == _COLSTATE:
                self.colstate[entry[1]] = entry[2]
            elif tag == _BUCKET:
                self.buckets[entry[1]].pop()
            else:
                self.dyn_seen.discard(entry[1])
        self.worklist.clear()
        self.pending.clear()


def low_index_normal(
    pres: Presentation, index: int, index_cap: int | None = None
) -> list[CosetTable]:
    """All normal subgroups of exactly the given index.

    Each is returned as the coset table of the action on its cosets (the
    regular action of the quotient), in canonical breadth-first numbering;
    subgroup_gens is empty because the subgroup is not parabolic. The result
    is sorted by table content.
    """
    cap = DEFAULT_INDEX_CAP if index_cap is None else index_cap
    if index < 1:
        raise ValueError(f"index must be >= 1, got {index}")
    if index > cap:
        raise CapExceeded(cap)
    search = _NormalSearch(pres, index)
    search.run()
    tables = sorted(set(search.found))
    return [
        CosetTable(pres=pres, subgroup_gens=frozenset(), table=t) for t in tables
    ]


@dataclass(frozen=True)
class CensusRecord:
    schlafli: tuple[int, int]
    table: CosetTable
    order: int
    profile: sggi.SggiProfile
    tight: bool
    orientable: bool
    polytope_ok: bool
    isomorphic_to_gamma: bool | None
    isomorphic_to_lambda: bool | None


def _family_isomorphism(
    family_pres, rep: PermRep, max_cosets: int | None
) -> bool:
    """Is the identity generator map an isomorphism from the family group?

    The quotient satisfies the Coxeter relators by construction, so checking
    the family relators plus equal orders certifies a bijection.
    """
    images = [(g,) for g in range(len(rep.gens))]
    if not engine.check_generator_map(family_pres, rep, images):
        return False
    return group_order(family_pres, max_cosets) == rep.degree


def _census(
    p: int,
    q: int,
    orientable: bool | None,
    index_cap: int | None,
    max_cosets: int | None,
    cap: int | None,
) -> list[CensusRecord]:
    if p < 2 or q < 2:
        raise ValueError(f"need p, q >= 2, got ({p}, {q})")
    index = 2 * p * q
    tables = low_index_normal(coxeter_presentation((p, q)), index, index_cap)

    try:
        gamma_pres = gamma_tuple_presentation((p, q))
    except AdjacentOddPair:
        gamma_pres = None
    lambda_pres = None
    if q == 4 and p % 3 == 0 and (p // 3) % 2 == 1:
        lambda_pres = lambda_k_presentation(p // 3)

    records = []
    for table in tables:
        rep = perm_rep(table)
        if not sggi.check_sggi(rep):
            continue
        if sggi.schlafli_of_group(rep) != (p, q):
            continue
        prof = sggi.profile(rep, cap)
        if not prof.is_string_c_group:
            continue
        poset = build_poset(rep)
        report = poset.verify_polytope()
        if not report.passed:
            continue
        sym = poset.combinatorial_schlafli()
        if isinstance(sym, NotEquivelar) or not poset.is_tight():
            continue
        if orientable is not None and prof.orientable != orientable:
            continue
        records.append(
            CensusRecord(
                schlafli=(p, q),
                table=table,
                order=rep.degree,
                profile=prof,
                tight=True,
                orientable=prof.orientable,
                polytope_ok=True,
                isomorphic_to_gamma=(
                    _family_isomorphism(gamma_pres, rep, max_cosets)
                    if gamma_pres is not None
                    else None
                ),
                isomorphic_to_lambda=(
                    _family_isomorphism(lambda_pres, rep, max_cosets)
                    if lambda_pres is not None
                    else None
                ),
            )
        )
    records.sort(key=lambda r: r.table.table)
    return records


def classify_tight(
    p: int,
    q: int,
    require_orientable: bool,
    index_cap: int | None = None,
    max_cosets: int | None = None,
    cap: int | None = None,
) -> list[CensusRecord]:
    """Exhaustive census of tight regular polyhedra of one type.

    Enumerates the normal subgroups of the string Coxeter group of index
    exactly 2pq and keeps the quotients that are string C-groups of exact
    type {p, q} whose poset is a verified tight polytope; optionally only
    the orientable ones.
    """
    return _census(
        p, q, True if require_orientable else None, index_cap, max_cosets, cap
    )


def census_nonorientable(
    p: int,
    q: int,
    index_cap: int | None = None,
    max_cosets: int | None = None,
    cap: int | None = None,
) -> list[CensusRecord]:
    """Tight census restricted to non-orientable quotients."""
    return _census(p, q, False, index_cap, max_cosets, cap)
