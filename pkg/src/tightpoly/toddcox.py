"""Coset enumeration for presentations with involutory generators.

HLT-style relator scanning with immediate deductions; coincidences are
processed to completion through a union-find before any further scanning.
The run is fully deterministic: cosets are processed in increasing order,
relators in presentation order, and new cosets are defined at the first
missing entry of the current scan, so two runs on the same presentation
produce identical tables.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import BudgetExceeded, RelatorViolation
from .words import Presentation, Word

DEFAULT_MAX_COSETS = 100_000
UNDEF = -1


def default_max_cosets() -> int:
    env = os.environ.get("TIGHTPOLY_MAX_COSETS")
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"TIGHTPOLY_MAX_COSETS={env!r} is not an integer") from None
        if value >= 1:
            return value
    return DEFAULT_MAX_COSETS


@dataclass(frozen=True)
class PermRep:
    """Permutations of the generators on points 0..degree-1.

    Permutations act on the right: a word is applied letter by letter, so
    evaluating (a, b) sends point x to gens[b][gens[a][x]].
    """

    degree: int
    gens: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CosetTable:
    """Closed coset table; row c column g is the coset c * x_g.

    Coset 0 is the enumerated subgroup itself (coset 1 in the 1-based dump
    format used for golden files).
    """

    pres: Presentation
    subgroup_gens: frozenset[int]
    table: tuple[tuple[int, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.table)

    def column(self, g: int) -> tuple[int, ...]:
        return tuple(row[g] for row in self.table)

    def dump(self) -> str:
        """Stable 1-based text rendering: `coset g0→c g1→c ...` per row."""
        lines = []
        for c, row in enumerate(self.table):
            cells = " ".join(f"g{g}→{v + 1}" for g, v in enumerate(row))
            lines.append(f"{c + 1} {cells}")
        return "\n".join(lines) + "\n"


def _require_involutions(pres: Presentation) -> None:
    have = {w[0] for w in pres.relators if len(w) == 2 and w[0] == w[1]}
    missing = [g for g in range(pres.ngens) if g not in have]
    if missing:
        raise ValueError(
            f"presentation lacks involution relators for generators {missing}; "
            "enumeration assumes every generator squares to the identity"
        )


class _Enumerator:
    def __init__(self, pres: Presentation, subgroup_gens: frozenset[int], budget: int):
        self.ngens = pres.ngens
        self.rels = pres.relators
        self.budget = budget
        self.table: list[list[int]] = []
        self.parent: list[int] = []
        self.changed = False
        self._new_coset()
        for g in sorted(subgroup_gens):
            self._set(0, g, 0)

    def _new_coset(self) -> int:
        if len(self.table) >= self.budget:
            raise BudgetExceeded(self.budget)
        c = len(self.table)
        self.table.append([UNDEF] * self.ngens)
        self.parent.append(c)
        return c

    def find(self, c: int) -> int:
        parent = self.parent
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def _unify(self, a: int, b: int) -> None:
        queue = [(a, b)]
        table = self.table
        while queue:
            a, b = queue.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self.parent[b] = a
            self.changed = True
            row_b = table[b]
            row_a = table[a]
            for g in range(self.ngens):
                nb = row_b[g]
                if nb == UNDEF:
                    continue
                nb = self.find(nb)
                na = row_a[g]
                if na == UNDEF:
                    row_a[g] = nb
                    back = table[nb][g]
                    if back == UNDEF:
                        table[nb][g] = a
                    else:
                        queue.append((back, a))
                else:
                    queue.append((na, nb))

    def _set(self, a: int, g: int, b: int) -> None:
        # Record a*x_g = b together with the involutory reverse edge.
        a, b = self.find(a), self.find(b)
        ea = self.table[a][g]
        if ea != UNDEF:
            if self.find(ea) != b:
                self._unify(ea, b)
            return
        self.table[a][g] = b
        self.changed = True
        eb = self.table[b][g]
        if eb == UNDEF:
            self.table[b][g] = a
        elif self.find(eb) != a:
            self._unify(eb, a)

    def scan(self, c: int, w: Word) -> None:
        """Trace relator w from coset c, defining cosets to close the scan."""
        table = self.table
        find = self.find
        while True:
            f = find(c)
            b = f
            i, j = 0, len(w) - 1
            while True:
                while i <= j:
                    nxt = table[f][w[i]]
                    if nxt == UNDEF:
                        break
                    f = find(nxt)
                    i += 1
                if i > j:
                    if f != b:
                        self._unify(f, b)
                    return
                while j >= i:
                    nxt = table[b][w[j]]
                    if nxt == UNDEF:
                        break
                    b = find(nxt)
                    j -= 1
                if j < i:
                    if f != b:
                        self._unify(f, b)
                    return
                if i == j:
                    self._set(f, w[i], b)
                    return
                # Gap of two or more: define at the first missing entry and
                # restart the scan (entries may have merged meanwhile).
                self._set(f, w[i], self._new_coset())
                break

    def run(self) -> None:
        current = 0
        while True:
            while current < len(self.table):
                c = current
                current += 1
                if self.find(c) != c:
                    continue
                for w in self.rels:
                    self.scan(c, w)
                    if self.find(c) != c:
                        break
            # Closing sweep: coincidences can add entries to rows processed
            # earlier, so rescan everything until a clean pass.
            self.changed = False
            for c in range(len(self.table)):
                if self.find(c) != c:
                    continue
                for w in self.rels:
                    self.scan(c, w)
                    if self.find(c) != c:
                        break
            if not self.changed and current >= len(self.table):
                return

    def compact(self) -> tuple[tuple[int, ...], ...]:
        live = [c for c in range(len(self.table)) if self.find(c) == c]
        index = {c: i for i, c in enumerate(live)}
        rows = []
        for c in live:
            row = self.table[c]
            assert UNDEF not in row, "closed table has undefined entries"
            rows.append(tuple(index[self.find(v)] for v in row))
        return tuple(rows)


def _check_closed(table: tuple[tuple[int, ...], ...], pres: Presentation) -> bool:
    n = len(table)
    for g in range(pres.ngens):
        col = [row[g] for row in table]
        if sorted(col) != list(range(n)):
            return False
        if any(table[col[c]][g] != c for c in range(n)):
            return False
    for w in pres.relators:
        for c in range(n):
            x = c
            for letter in w:
                x = table[x][letter]
            if x != c:
                return False
    return True


def enumerate_cosets(
    pres: Presentation,
    subgroup_gens=(),
    max_cosets: int | None = None,
) -> CosetTable:
    """Enumerate the cosets of the subgroup generated by a set of generators.

    Raises BudgetExceeded if the table does not close within `max_cosets`
    allocated cosets; a partial table is never returned.
    """
    _require_involutions(pres)
    budget = default_max_cosets() if max_cosets is None else max_cosets
    if budget < 1:
        raise ValueError("max_cosets must be >= 1")
    gens = frozenset(subgroup_gens)
    for g in gens:
        if not 0 <= g < pres.ngens:
            raise ValueError(f"subgroup generator {g} out of range")
    enum = _Enumerator(pres, gens, budget)
    enum.run()
    table = enum.compact()
    assert _check_closed(table, pres), "enumeration produced an inconsistent table"
    return CosetTable(pres=pres, subgroup_gens=gens, table=table)


def perm_rep(table: CosetTable) -> PermRep:
    """Permutation images of the generators on the coset indices."""
    n = table.rows
    gens = tuple(table.column(g) for g in range(table.pres.ngens))
    for g, col in enumerate(gens):
        if sorted(col) != list(range(n)):
            raise RelatorViolation(f"column {g} is not a permutation")
        if any(col[col[c]] != c for c in range(n)):
            raise RelatorViolation(f"column {g} is not an involution")
    for w in table.pres.relators:
        for c in range(n):
            x = c
            for letter in w:
                x = gens[letter][x]
            if x != c:
                raise RelatorViolation(f"relator {w} does not close at coset {c}")
    return PermRep(degree=n, gens=gens)


def group_order(pres: Presentation, max_cosets: int | None = None) -> int:
    """Order of the presented group, by enumeration over the trivial subgroup."""
    return enumerate_cosets(pres, (), max_cosets).rows


def regular_rep(pres: Presentation, max_cosets: int | None = None) -> PermRep:
    """Regular permutation representation (enumeration over the trivial subgroup)."""
    return perm_rep(enumerate_cosets(pres, (), max_cosets))
