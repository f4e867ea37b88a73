"""End-to-end construction and verification of the polytope families.

A verdict never raises on a mathematical failure: every claim is recorded
in an ordered claim map and the caller aggregates. Resource errors
(BudgetExceeded, CapExceeded) do propagate.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Literal, Sequence

from . import engine, sggi
from .errors import NotAdmissible, PreconditionViolated
from .poset import NotEquivelar, PosetReport, build_poset
from .toddcox import PermRep, group_order, regular_rep
from .words import (
    Presentation,
    admissibility_message,
    gamma_tuple_presentation,
    is_admissible,
    kill_generators,
    lambda_k_presentation,
    validate_symbol,
)


@dataclass(frozen=True)
class FamilyVerdict:
    family: str
    schlafli: tuple[int, ...]
    presentation: Presentation
    group_order: int
    expected_order: int
    profile: sggi.SggiProfile
    poset_report: PosetReport
    flag_count: int
    combinatorial_type: tuple[int, ...] | None
    tight: bool
    claims: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.claims.values())


def _poset_checks(rep: PermRep, cap: int | None):
    poset = build_poset(rep)
    report = poset.verify_polytope()
    if not report.passed:
        return poset, report, 0, None, False
    flag_count = poset.flag_count()
    sym = poset.combinatorial_schlafli()
    combinatorial = None if isinstance(sym, NotEquivelar) else sym
    tight = poset.is_tight() if combinatorial is not None else False
    return poset, report, flag_count, combinatorial, tight


def verify_gamma_family(
    sym: Sequence[int],
    max_cosets: int | None = None,
    cap: int | None = None,
) -> FamilyVerdict:
    """Build the quotient for an admissible tuple and verify every claim:
    exact order, type, string C-group, tightness, orientability, and the
    polytope axioms."""
    entries = validate_symbol(sym)
    adm = is_admissible(entries)
    if not adm:
        raise NotAdmissible(
            admissibility_message(entries, adm),
            odd_index=adm.odd_index,
            violating_index=adm.violating_index,
        )
    pres = gamma_tuple_presentation(entries)
    rep = regular_rep(pres, max_cosets)
    prof = sggi.profile(rep, cap)
    poset, report, flag_count, combinatorial, tight = _poset_checks(rep, cap)
    expected = 2 * prod(entries)
    claims = {
        "order": prof.group_order == expected,
        "type": prof.schlafli == entries,
        "string_c_group": prof.is_string_c_group,
        "tight": tight,
        "orientable": prof.orientable,
        "polytope": report.passed,
        "flags_equal_order": flag_count == prof.group_order,
        "schlafli_consistent": combinatorial == prof.schlafli,
    }
    return FamilyVerdict(
        family="gamma",
        schlafli=entries,
        presentation=pres,
        group_order=prof.group_order,
        expected_order=expected,
        profile=prof,
        poset_report=report,
        flag_count=flag_count,
        combinatorial_type=combinatorial,
        tight=tight,
        claims=claims,
    )


def _klein_four_checks(rep: PermRep, k: int, cap: int | None) -> tuple[bool, bool]:
    """Normal Klein 4-subgroup generated by x2 and x1 x2 x1, with dihedral
    quotient of order 6k (certified by order arithmetic plus the order of
    x0 x1 modulo the subgroup)."""
    ident = engine.identity_perm(rep.degree)
    a = rep.gens[2]
    b = engine.eval_word(rep, (1, 2, 1))
    subgroup = engine.closure_perms(rep.degree, [a, b], cap)
    klein = len(subgroup) == 4 and all(
        engine.compose(h, h) == ident for h in subgroup
    )
    normal = klein and all(
        engine.compose(engine.compose(g, h), g) in subgroup
        for g in rep.gens
        for h in subgroup
    )
    if not normal:
        return False, False
    quotient_order = rep.degree // 4
    rho01 = engine.eval_word(rep, (0, 1))
    power = ident
    image_order = 0
    for m in range(1, rep.degree + 1):
        power = engine.compose(power, rho01)
        if power in subgroup:
            image_order = m
            break
    dihedral = quotient_order == 6 * k and image_order == 3 * k
    return True, dihedral


def verify_lambda_family(
    k: int,
    max_cosets: int | None = None,
    cap: int | None = None,
) -> FamilyVerdict:
    """Verify the non-orientable family member for odd k: order 24k, type
    {3k, 4}, string C-group, tight, non-orientable, with its normal Klein
    4-subgroup and dihedral quotient of order 6k."""
    pres = lambda_k_presentation(k)
    entries = (3 * k, 4)
    rep = regular_rep(pres, max_cosets)
    prof = sggi.profile(rep, cap)
    poset, report, flag_count, combinatorial, tight = _poset_checks(rep, cap)
    klein, dihedral = _klein_four_checks(rep, k, cap)
    expected = 24 * k
    claims = {
        "order": prof.group_order == expected,
        "type": prof.schlafli == entries,
        "string_c_group": prof.is_string_c_group,
        "tight": tight,
        "non_orientable": not prof.orientable,
        "polytope": report.passed,
        "flags_equal_order": flag_count == prof.group_order,
        "schlafli_consistent": combinatorial == prof.schlafli,
        "klein_four_normal": klein,
        "dihedral_quotient": dihedral,
    }
    return FamilyVerdict(
        family="lambda",
        schlafli=entries,
        presentation=pres,
        group_order=prof.group_order,
        expected_order=expected,
        profile=prof,
        poset_report=report,
        flag_count=flag_count,
        combinatorial_type=combinatorial,
        tight=tight,
        claims=claims,
    )


FapSide = Literal["two_faces", "co_faces"]


def check_fap(
    sym: Sequence[int],
    side: FapSide,
    max_cosets: int | None = None,
    cap: int | None = None,
) -> bool:
    """Does killing the generators above (or below) the cut leave a
    presentation of the corresponding parabolic subgroup?

    Certified by order equality: the killed quotient always receives a
    surjection from the parabolic, so equal orders mean the natural map is
    a bijection.
    """
    entries = validate_symbol(sym)
    n = len(entries) + 1
    pres = gamma_tuple_presentation(entries)
    if side == "two_faces":
        keep = range(0, min(2, n))
    elif side == "co_faces":
        keep = range(max(n - 2, 0), n)
    else:
        raise ValueError(f"unknown side {side!r}")
    killed = kill_generators(pres, keep)
    killed_order = group_order(killed, max_cosets)
    rep = regular_rep(pres, max_cosets)
    parabolic = engine.closure(rep, keep, cap)
    return killed_order == len(parabolic)


@dataclass(frozen=True)
class OeoReport:
    degree: int
    orders: tuple[int, int, int]
    relators_ok: dict[str, bool]

    @property
    def all_ok(self) -> bool:
        return all(self.relators_ok.values())


def oeo_permutation_rep(p1: int, p2: int, p3: int) -> tuple[PermRep, OeoReport]:
    """Rotation-group permutation representation for odd-even-odd triples.

    Points are pairs (j, k) with j mod p1 and k mod p2; requires p1, p3 odd
    and p2 an even divisor of both 2*p1 and 2*p3. Verifies the eight
    defining relators of the rotation group and reports generator orders.
    """
    if p1 % 2 == 0 or p3 % 2 == 0:
        raise PreconditionViolated(f"p1={p1} and p3={p3} must be odd")
    if p2 % 2 != 0 or (2 * p1) % p2 != 0 or (2 * p3) % p2 != 0:
        raise PreconditionViolated(
            f"p2={p2} must be an even divisor of 2*p1={2 * p1} and 2*p3={2 * p3}"
        )
    degree = p1 * p2

    def build(step) -> tuple[int, ...]:
        out = [0] * degree
        for j in range(p1):
            for k in range(p2):
                jj, kk = step(j, k)
                out[j * p2 + k] = (jj % p1) * p2 + (kk % p2)
        return tuple(out)

    pi2 = build(lambda j, k: (j, k + 1))
    pi1 = build(lambda j, k: (j + 1, k) if k % 2 == 0 else (j - 1, k - 2))
    pi3 = build(lambda j, k: (j, k - 2 * j) if k % 2 == 0 else (j, k + 2 * (j - 1)))

    ident = engine.identity_perm(degree)

    def power(p, e):
        out = ident
        for _ in range(e):
            out = engine.compose(out, p)
        return out

    def commutator(a, b):
        return engine.compose(
            engine.compose(a, b), engine.compose(engine.invert(a), engine.invert(b))
        )

    y12 = engine.compose(pi1, pi2)
    y23 = engine.compose(pi2, pi3)
    y123 = engine.compose(y12, pi3)
    sq2 = engine.compose(pi2, pi2)
    relators_ok = {
        "y1^p1": power(pi1, p1) == ident,
        "y2^p2": power(pi2, p2) == ident,
        "y3^p3": power(pi3, p3) == ident,
        "(y1 y2)^2": engine.compose(y12, y12) == ident,
        "(y2 y3)^2": engine.compose(y23, y23) == ident,
        "(y1 y2 y3)^2": engine.compose(y123, y123) == ident,
        "[y1, y2^2]": commutator(pi1, sq2) == ident,
        "[y3, y2^2]": commutator(pi3, sq2) == ident,
    }
    report = OeoReport(
        degree=degree,
        orders=(
            engine.perm_order(pi1),
            engine.perm_order(pi2),
            engine.perm_order(pi3),
        ),
        relators_ok=relators_ok,
    )
    return PermRep(degree=degree, gens=(pi1, pi2, pi3)), report


def subgroup_2_check(
    sym: Sequence[int],
    max_cosets: int | None = None,
    cap: int | None = None,
) -> bool:
    """Where an entry equals 2, the prefix and suffix parabolic subgroups
    must realize the corresponding family groups.

    Checked for every slot with entry 2, in both directions: the family
    relators hold on the parabolic generators, and the orders agree.
    """
    entries = validate_symbol(sym)
    slots = [i for i, p in enumerate(entries, start=1) if p == 2]
    if not slots:
        raise ValueError(f"no entry equal to 2 in {entries}")
    n = len(entries) + 1
    rep = regular_rep(gamma_tuple_presentation(entries), max_cosets)
    for i in slots:
        for keep, part in (
            (tuple(range(0, i + 1)), entries[:i]),
            (tuple(range(i - 1, n)), entries[i - 1 :]),
        ):
            part_pres = gamma_tuple_presentation(part)
            images = [(g,) for g in keep]
            if not engine.check_generator_map(part_pres, rep, images):
                return False
            parabolic = engine.closure(rep, keep, cap)
            if len(parabolic) != group_order(part_pres, max_cosets):
                return False
    return True
