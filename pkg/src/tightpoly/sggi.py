"""Verdicts on a group with marked involutory generators.

Every operation here takes the regular representation of the group (the
output of a trivial-subgroup enumeration, where points are in bijection
with group elements). Subgroups are then encoded exactly by their point
sets: the intersection condition is still checked by exact set
intersection over all pairs of generator subsets, it just intersects point
sets instead of permutation sets. engine.closure provides the independent
permutation-set route, and the two are compared in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Literal

from . import engine
from .toddcox import PermRep

Subset = tuple[int, ...]


class Orientability(Enum):
    ORIENTABLE = "orientable"
    NON_ORIENTABLE = "non-orientable"


@dataclass(frozen=True)
class SggiProfile:
    rank: int
    group_order: int
    is_sggi: bool
    degenerate: tuple[int, ...]
    schlafli: tuple[int, ...]
    is_string_c_group: bool
    intersection_witness: tuple[Subset, Subset] | None
    orientable: bool
    rotation_index: int


def check_sggi(rep: PermRep) -> bool:
    """Generators square to 1 and non-adjacent pairs commute."""
    n = len(rep.gens)
    ident = engine.identity_perm(rep.degree)
    for g in rep.gens:
        if engine.compose(g, g) != ident:
            return False
    for i in range(n):
        for j in range(i + 2, n):
            if engine.eval_word(rep, (i, j, i, j)) != ident:
                return False
    return True


def degenerate_generators(rep: PermRep) -> tuple[int, ...]:
    """Indices of generators equal to the identity."""
    ident = engine.identity_perm(rep.degree)
    return tuple(i for i, g in enumerate(rep.gens) if g == ident)


def schlafli_of_group(rep: PermRep) -> tuple[int, ...]:
    """Orders of the products of consecutive generators."""
    return tuple(
        engine.element_order(rep, (i - 1, i)) for i in range(1, len(rep.gens))
    )


def _subsets(n: int) -> list[Subset]:
    # Size-graded lexicographic order; the first failing pair in this order
    # is the reported witness.
    return [
        tuple(c) for size in range(n + 1) for c in combinations(range(n), size)
    ]


def check_intersection_condition(
    rep: PermRep, cap: int | None = None
) -> tuple[bool, tuple[Subset, Subset] | None]:
    """Subgroup intersections must match closures of index intersections.

    Checked over every pair of subsets on exact point-set encodings of the
    subgroups (the rep must be regular); on failure, returns the first
    violating pair in size-graded lexicographic order.
    """
    n = len(rep.gens)
    subsets = _subsets(n)
    sets = {I: engine.point_orbit(rep, I) for I in subsets}
    for I in subsets:
        for J in subsets:
            meet = tuple(sorted(set(I) & set(J)))
            if sets[I] & sets[J] != sets[meet]:
                return False, (I, J)
    return True, None


Side = Literal["facet", "vertexfigure"]


def quotient_criterion(
    rep: PermRep, quotient_rep: PermRep, side: Side, cap: int | None = None
) -> bool:
    """Is the generator-preserving map onto a known string C-group injective
    on the facet (or vertex-figure) subgroup?

    Certified by equal subgroup orders. When true, `rep` is a string C-group
    without running the full intersection check.
    """
    n = len(rep.gens)
    if len(quotient_rep.gens) != n:
        raise ValueError("generator counts differ")
    if side == "facet":
        indices = range(0, n - 1)
    elif side == "vertexfigure":
        indices = range(1, n)
    else:
        raise ValueError(f"unknown side {side!r}")
    big = engine.point_orbit(rep, indices)
    small = engine.point_orbit(quotient_rep, indices)
    return len(big) == len(small)


def rotation_subgroup(rep: PermRep, cap: int | None = None) -> frozenset:
    """Element set of the subgroup generated by all products of two generators."""
    n = len(rep.gens)
    pairs = [
        engine.compose(rep.gens[i], rep.gens[j])
        for i in range(n)
        for j in range(n)
        if i != j
    ]
    return engine.closure_perms(rep.degree, pairs, cap)


def _rotation_points(rep: PermRep) -> frozenset[int]:
    n = len(rep.gens)
    gens = rep.gens
    pairs = [
        tuple(gens[j][x] for x in gens[i])
        for i in range(n)
        for j in range(n)
        if i != j
    ]
    pair_rep = PermRep(degree=rep.degree, gens=tuple(pairs))
    return engine.point_orbit(pair_rep, range(len(pairs)))


def orientability(rep: PermRep) -> Orientability:
    rot = _rotation_points(rep)
    index, rem = divmod(rep.degree, len(rot))
    assert rem == 0 and index in (1, 2), f"rotation subgroup index {rep.degree}/{len(rot)}"
    return Orientability.ORIENTABLE if index == 2 else Orientability.NON_ORIENTABLE


def profile(rep: PermRep, cap: int | None = None) -> SggiProfile:
    """Full verdict bundle for a regular representation."""
    rot_index = rep.degree // len(_rotation_points(rep))
    sggi_ok = check_sggi(rep)
    c_group, witness = check_intersection_condition(rep, cap)
    return SggiProfile(
        rank=len(rep.gens),
        group_order=rep.degree,
        is_sggi=sggi_ok,
        degenerate=degenerate_generators(rep),
        schlafli=schlafli_of_group(rep),
        is_string_c_group=sggi_ok and c_group,
        intersection_witness=witness,
        orientable=rot_index == 2,
        rotation_index=rot_index,
    )
