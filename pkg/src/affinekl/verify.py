"""Invariant suites for cross-verifying the two computation methods.

Each family returns a report dict {name, cases, failures} where failures is a
list of human-readable counterexample strings (empty on success).  The CLI
exposes these through its verify subcommand; the test suite reuses them
directly.  A deliberate fault can be injected to exercise the reporting
machinery itself.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .alcove import (
    a_plus,
    alcoves_containing,
    facet_of,
    right_stabilizer,
)
from .heckemod import (
    Memo,
    NVector,
    act_parabolic_closed,
    act_parabolic_naive,
    canonical_alcove,
    facet_sum,
)
from .laurent import LaurentPoly
from .pathops import PathEngine
from .rootdata import Point, RootSystem, pt_add, pt_scale



def enumerate_facets(rs: RootSystem, coord_bound) -> list:
    """All distinct facets with a witness in the closed dominant box with
    weight coordinates up to the bound, from a quarter-level grid (fine
    enough to hit every cell of the arrangement in the box)."""
    step = Fraction(rs.level, 4)
    steps = int(Fraction(coord_bound) / step)
    seen = {}
    for coords in _grid(rs.rank, steps):
        p = tuple(step * c for c in coords)
        fac = facet_of(rs, p)
        seen.setdefault(fac.profile, fac)
    return list(seen.values())


def _grid(rank: int, steps: int):
    if rank == 0:
        yield ()
        return
    for head in range(steps + 1):
        for tail in _grid(rank - 1, steps):
            yield (head,) + tail


def check_oracle_equivalence(rs: RootSystem, bound: int) -> dict:
    """Path method versus alcove recursion on every dominant integral weight
    with coordinates up to the bound; exact Laurent equality."""
    oracle_memo = Memo()
    engine = PathEngine(rs, Memo())
    failures = []
    cases = 0
    for coords in _grid(rs.rank, bound):
        mu = tuple(Fraction(c) for c in coords)
        cases += 1
        shifted = pt_add(mu, rs.rho)
        via_path = engine.compute_n(mu)
        oracle = canonical_alcove(rs, a_plus(facet_of(rs, shifted)), oracle_memo)
        via_oracle = engine.from_alcove_level(oracle, shifted)
        if not via_path.equal_terms(via_oracle):
            failures.append(f"mu={coords}: path {via_path} != oracle {via_oracle}")
    return {"name": "oracle_equivalence", "cases": cases, "failures": failures}


def check_rightmult(rs: RootSystem, coord_bound, inject_fault: bool = False) -> dict:
    """Naive parabolic action equals its closed form (zero branch included)
    on every facet of the bounded region and every dominant alcove around it."""
    failures = []
    cases = 0
    for fac in enumerate_facets(rs, coord_bound):
        stab = right_stabilizer(fac)
        for alc, _ in alcoves_containing(fac):
            if not alc.is_dominant():
                continue
            cases += 1
            naive = act_parabolic_naive(rs, NVector.basis(alc), stab)
            closed = act_parabolic_closed(rs, alc, fac)
            if inject_fault:
                closed = closed + NVector.basis(alc).scaled(LaurentPoly.v(1))
                inject_fault = False
            if naive != closed:
                failures.append(f"facet {fac} alcove {alc}: {naive} != {closed}")
    return {"name": "rightmult", "cases": cases, "failures": failures}


def check_grouped_parabolic(rs: RootSystem, coord_bound) -> dict:
    """The grouped facet sum of an enveloping facet times the parabolic
    element of a boundary facet: naive action equals the v-order times the
    shifted grouped sum, and vanishes when the boundary facet leaves the open
    chamber."""
    failures = []
    cases = 0
    for fac in enumerate_facets(rs, coord_bound):
        stab = right_stabilizer(fac)
        for envelope in _boundary_pairs(rs, fac, coord_bound):
            if not envelope.is_inside_chamber():
                continue
            cases += 1
            naive = act_parabolic_naive(rs, facet_sum(envelope), stab)
            if not fac.is_inside_chamber():
                closed = NVector.zero()
            else:
                sub = right_stabilizer(envelope)
                below = sum(
                    1
                    for alpha, m in fac.walls()
                    if rs.pair(envelope.witness, alpha) > m * rs.level
                )
                closed = facet_sum(fac).scaled(sub.v_order() * LaurentPoly.v(-below))
            if naive != closed:
                failures.append(f"{envelope} * C_P({fac}): {naive} != {closed}")
    return {"name": "grouped_parabolic", "cases": cases, "failures": failures}


def _boundary_pairs(rs: RootSystem, fac, coord_bound):
    """Facets having fac in their boundary, found among the bounded region."""
    out = []
    for other in enumerate_facets(rs, coord_bound):
        if other.profile == fac.profile:
            continue
        walls_fac = dict(fac.walls())
        walls_other = dict(other.walls())
        if not set(walls_other.items()) < set(walls_fac.items()):
            continue
        # strips of `other` must match fac's profile where fac has strips,
        # and hug the wall where fac has walls
        ok = True
        for alpha, entry in zip(rs.positive_roots, fac.profile):
            val = rs.pair(other.witness, alpha)
            if entry[0] == "strip":
                m = entry[1]
                if not (m * rs.level < val < (m + 1) * rs.level):
                    ok = False
                    break
            else:
                m = entry[1]
                if not ((m - 1) * rs.level < val < (m + 1) * rs.level):
                    ok = False
                    break
        if ok:
            out.append(other)
    return out


def check_canonical_facet_grouping(rs: RootSystem, coord_bound) -> dict:
    """Canonical elements of upper alcoves of facets decompose over grouped
    facet sums: coefficients are constant along conjugate facets."""
    memo = Memo()
    engine = PathEngine(rs, Memo())
    failures = []
    cases = 0
    for fac in enumerate_facets(rs, coord_bound):
        if not fac.is_inside_chamber():
            continue
        cases += 1
        top = a_plus(fac)
        canonical = canonical_alcove(rs, top, memo)
        regrouped = NVector.zero()
        for point, coeff in engine.from_alcove_level(canonical, fac.witness).items():
            regrouped = regrouped + facet_sum(facet_of(rs, point)).scaled(coeff)
        if regrouped != canonical:
            failures.append(f"facet {fac}: grouped {regrouped} != {canonical}")
    return {"name": "canonical_facet_grouping", "cases": cases, "failures": failures}


def check_path_independence(
    rs: RootSystem, pairs: int = 10, paths_per_pair: int = 20, seed: int = 0,
    coord_bound: int = 4, lam_bound: int = 3,
) -> dict:
    """Randomized valid paths between the same endpoints give identical
    transported elements."""
    rng = random.Random(seed)
    failures = []
    cases = 0
    for _ in range(pairs):
        mu = tuple(Fraction(rng.randint(0, coord_bound)) for _ in range(rs.rank))
        lam = tuple(Fraction(rng.randint(0, lam_bound)) for _ in range(rs.rank))
        if all(c == 0 for c in lam):
            lam = tuple(Fraction(1) for _ in range(rs.rank))
        cases += 1
        reference = None
        for _ in range(paths_per_pair):
            engine = PathEngine(rs, Memo())
            start = engine.compute_n(mu)
            path = random_path(rs, start.anchor, pt_add(start.anchor, lam), rng)
            result = engine.run_segments(start, path)
            if reference is None:
                reference = result
            elif not result.equal_terms(reference):
                failures.append(f"mu={mu} lam={lam}: {result} != {reference}")
                break
    return {"name": "path_independence", "cases": cases, "failures": failures}


def random_path(rs: RootSystem, start: Point, target: Point, rng: random.Random):
    """A randomized valid elementary-segment path: random staircase of
    fundamental-weight legs in random rational chunks."""
    from .pathops import _split_leg

    remaining = [target[i] - start[i] for i in range(rs.rank)]
    cur = start
    segments = []
    while any(c > 0 for c in remaining):
        choices = [i for i in range(rs.rank) if remaining[i] > 0]
        i = rng.choice(choices)
        denom = rng.choice([1, 2, 3])
        amount = min(remaining[i], Fraction(rng.randint(1, 3), denom))
        leg = pt_scale(rs.fundamental_weight(i), amount)
        segments.extend(_split_leg(rs, cur, leg))
        cur = pt_add(cur, leg)
        remaining[i] -= amount
    return segments


def run_families(rs: RootSystem, bound: int, inject_fault: bool = False) -> list[dict]:
    """The whole battery at a region bound, as used by the CLI."""
    reports = [
        check_oracle_equivalence(rs, bound),
        check_rightmult(rs, min(3 * rs.level, bound * rs.level), inject_fault),
        check_grouped_parabolic(rs, 2 * rs.level),
        check_canonical_facet_grouping(rs, 2 * rs.level),
        check_path_independence(rs, pairs=4, paths_per_pair=5,
                                coord_bound=min(bound, 4)),
    ]
    return reports
