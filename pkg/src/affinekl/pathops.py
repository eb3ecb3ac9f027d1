"""Piecewise-linear path operators on the point-indexed module.

Here the module is indexed by rational points of the (shifted) dominant
chamber rather than by alcoves.  An elementary segment leaves a facet, crosses
at most one cell of smaller dimension, and ends in a facet; the crossing
operator expands each basis point over the orbit of the segment endpoint under
the reflections through the crossed cell, with exponents read off wall counts.
Crossing out of the dominant chamber kills a branch.  A positivity pass then
subtracts self-dual multiples of lower canonical elements until the result is
triangular with lower coefficients in v*Z[v], which pins down the canonical
element at the new anchor.

Chaining the two along a planned path transports canonical elements to
arbitrary dominant points.  This is dramatically cheaper than the alcove
recursion near chamber walls because points on walls stand for whole groups of
alcoves at once; the strategy is to stay on large stabilizers for as long as
possible (ride the walls, only stepping off at the very end).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from .alcove import (
    Alcove,
    Facet,
    a_plus,
    alcoves_containing,
    facet_of,
    facet_point_orbit,
    fold_to_fundamental,
    leaving_walls,
    right_stabilizer,
    segment_events,
)
from .heckemod import Memo, NVector
from .laurent import LaurentPoly
from .rootdata import Point, RootSystem, mat_apply, pt_add, pt_scale, pt_sub


class NonElementarySegmentError(ValueError):
    """The segment crosses more than one cell boundary pattern."""


class NotInSameOrbitError(ValueError):
    """Transport requested between points of different affine orbits."""


NO_CROSSING = "no_crossing"
START_ON = "start_on"
END_ON = "end_on"
GENERIC = "generic"


class MVector:
    """A finite formal sum of shifted dominant points with Laurent
    coefficients, optionally carrying a distinguished anchor point."""

    __slots__ = ("_terms", "anchor")

    def __init__(
        self,
        terms: Iterable[tuple[Point, LaurentPoly]] | dict = (),
        anchor: Point | None = None,
    ):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict[Point, LaurentPoly] = {}
        for p, poly in items:
            if not isinstance(poly, LaurentPoly):
                poly = LaurentPoly.monomial(int(poly), 0)
            cur = acc.get(p)
            acc[p] = poly if cur is None else cur + poly
        self._terms = {p: c for p, c in acc.items() if c}
        self.anchor = anchor

    def items(self):
        return self._terms.items()

    def support(self):
        return self._terms.keys()

    def coefficient(self, p: Point) -> LaurentPoly:
        return self._terms.get(p, LaurentPoly.zero())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "MVector") -> "MVector":
        anchor = self.anchor if self.anchor == other.anchor else None
        return MVector(
            list(self._terms.items()) + list(other._terms.items()), anchor=anchor
        )

    def __sub__(self, other: "MVector") -> "MVector":
        anchor = self.anchor if self.anchor == other.anchor else None
        return MVector(
            list(self._terms.items())
            + [(p, -c) for p, c in other._terms.items()],
            anchor=anchor,
        )

    def scaled(self, poly: LaurentPoly) -> "MVector":
        return MVector(
            ((p, c * poly) for p, c in self._terms.items()), anchor=self.anchor
        )

    def with_anchor(self, anchor: Point | None) -> "MVector":
        return MVector(self._terms, anchor=anchor)

    def equal_terms(self, other: "MVector") -> bool:
        return self._terms == other._terms

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MVector)
            and self._terms == other._terms
            and self.anchor == other.anchor
        )

    def __hash__(self):
        return hash((frozenset(self._terms.items()), self.anchor))

    def __repr__(self) -> str:
        inner = " + ".join(
            f"({c})*N[{','.join(str(x) for x in p)}]"
            for p, c in sorted(self._terms.items())
        )
        return f"MVector[{inner or '0'}]"


# -- elementary segments -------------------------------------------------------


def classify_segment(rs: RootSystem, p: Point, delta: Point):
    """Classify the segment from p along delta; returns (kind, crossed facet).

    Elementary means: either no wall activity at all, or the start point sits
    on walls it leaves and nothing else happens, or exactly one crossing time
    exists (an interior crossing, or a landing at t=1).
    """
    leaving = leaving_walls(rs, p, delta)
    events = segment_events(rs, p, delta)
    if not events:
        if leaving:
            return START_ON, facet_of(rs, p)
        return NO_CROSSING, None
    if leaving or len(events) > 1:
        raise NonElementarySegmentError(
            f"segment {p} + t*{delta} is not elementary"
        )
    t, _ = events[0]
    target = pt_add(p, pt_scale(delta, t))
    if t == 1:
        return END_ON, facet_of(rs, target)
    return GENERIC, facet_of(rs, target)


def _counts_b(fac: Facet, witness: Point) -> int:
    rs = fac.rs
    l = rs.level
    return sum(
        1 for alpha, m in fac.walls() if rs.pair(witness, alpha) > m * l
    )


def _counts_a(fac: Facet, witness: Point) -> int:
    rs = fac.rs
    l = rs.level
    return sum(
        1 for alpha, m in fac.walls() if rs.pair(witness, alpha) < m * l
    )


def f_basis(rs: RootSystem, p: Point, delta: Point) -> MVector:
    """One elementary crossing applied to a single basis point.

    Returns the orbit of the endpoint under reflections through the crossed
    cell, weighted by v^(walls above endpoint - walls below start); zero when
    the crossed cell leaves the open dominant chamber.
    """
    endpoint = pt_add(p, delta)
    kind, fac = classify_segment(rs, p, delta)
    if kind == NO_CROSSING:
        return MVector({endpoint: LaurentPoly.one()}, anchor=endpoint)
    assert fac is not None
    if not fac.is_inside_chamber():
        return MVector(anchor=endpoint)
    below = _counts_b(fac, p)
    terms = []
    for q in facet_point_orbit(fac, endpoint):
        above = _counts_a(fac, q)
        terms.append((q, LaurentPoly.v(above - below)))
    return MVector(terms, anchor=endpoint)


def transport_direction(rs: RootSystem, frm: Point, to: Point, delta: Point) -> Point:
    """Carry a direction based at frm to one based at to, via any group
    element mapping frm to to; the two points must share an orbit."""
    if frm == to:
        return delta
    p0a, wa = fold_to_fundamental(rs, frm)
    p0b, wb = fold_to_fundamental(rs, to)
    if p0a != p0b:
        raise NotInSameOrbitError(f"{frm} and {to} are not in the same orbit")
    w = wb.compose(wa.inverse())
    return mat_apply(w.linear, delta)


def f_step(rs: RootSystem, x: MVector, delta: Point, check_anchor: bool = True) -> MVector:
    """One elementary crossing applied to a canonical element: each support
    point crosses along its own transported copy of the direction.

    With check_anchor (the chamber-directed case of the transport theorem) the
    new anchor must come out with coefficient exactly 1; general directions,
    as used by the tensor-product application, may kill or rescale it.
    """
    anchor = x.anchor
    if anchor is None:
        raise ValueError("f_step needs an anchored vector")
    out = MVector(anchor=pt_add(anchor, delta))
    for lam, coeff in x.items():
        dirn = transport_direction(rs, anchor, lam, delta)
        out = out + f_basis(rs, lam, dirn).scaled(coeff).with_anchor(out.anchor)
    if check_anchor and x.coefficient(anchor) == LaurentPoly.one():
        if out.coefficient(out.anchor) != LaurentPoly.one():
            raise RuntimeError(
                f"anchor coefficient is {out.coefficient(out.anchor)} after "
                f"crossing from {anchor} along {delta}; geometry bug"
            )
    return out


def positivity(rs: RootSystem, x: MVector, resolver) -> MVector:
    """Subtract self-dual multiples of lower canonical elements until every
    non-anchor coefficient lies in v*Z[v].  For self-dual input this lands on
    the canonical element of the anchor."""
    anchor = x.anchor
    if anchor is None or x.coefficient(anchor) != LaurentPoly.one():
        raise ValueError("positivity needs anchor coefficient exactly 1")
    last_low = None
    budget = sum(len(c.terms()) for p, c in x.items() if p != anchor) + 2
    for _ in range(max(budget, 4)):
        lower = [(p, c) for p, c in x.items() if p != anchor]
        if not lower:
            return x
        low = min(c.min_exponent() for _, c in lower)
        if low >= 1:
            return x
        if last_low is not None and low <= last_low:
            raise RuntimeError(
                "positivity failed to make progress; input was not self-dual"
            )
        last_low = low
        correction = MVector(anchor=anchor)
        for p, c in lower:
            coef = c.coefficient(low)
            if coef == 0:
                continue
            if low == 0:
                mult = LaurentPoly.monomial(coef, 0)
            else:
                mult = LaurentPoly([(low, coef), (-low, coef)])
            correction = correction + resolver(p).scaled(mult).with_anchor(anchor)
        x = x - correction
        if x.coefficient(anchor) != LaurentPoly.one():
            raise RuntimeError("positivity corrupted the anchor; geometry bug")
    raise RuntimeError("positivity exceeded its iteration budget")


# -- path planning ---------------------------------------------------------------


def _split_leg(rs: RootSystem, p: Point, delta: Point) -> list[tuple[Point, Point]]:
    """Break one straight leg into elementary segments: cut at every crossing
    time, and cut the middle of any piece whose two ends both sit on crossed
    walls (such a piece would leave one cell and land on another)."""
    events = segment_events(rs, p, delta)
    times = [Fraction(0)] + [t for t, _ in events]
    on_wall = [bool(leaving_walls(rs, p, delta))] + [True] * len(events)
    if times[-1] != 1:
        times.append(Fraction(1))
        on_wall.append(False)
    segments = []
    for (t0, w0), (t1, w1) in zip(zip(times, on_wall), zip(times[1:], on_wall[1:])):
        start = pt_add(p, pt_scale(delta, t0))
        end = pt_add(p, pt_scale(delta, t1))
        if w0 and w1:
            mid = pt_add(p, pt_scale(delta, (t0 + t1) / 2))
            segments.append((start, pt_sub(mid, start)))
            segments.append((mid, pt_sub(end, mid)))
        else:
            segments.append((start, pt_sub(end, start)))
    return segments


def plan_path(rs: RootSystem, start: Point, target: Point) -> list[tuple[Point, Point]]:
    """Elementary segments from start to target, one straight leg per
    fundamental weight in index order.  The difference must be a nonnegative
    combination of fundamental weights."""
    diff = pt_sub(target, start)
    if any(c < 0 for c in diff):
        raise ValueError(f"target {target} is not above start {start}")
    segments = []
    cur = start
    for i in range(rs.rank):
        if diff[i] == 0:
            continue
        leg = pt_scale(rs.fundamental_weight(i), diff[i])
        segments.extend(_split_leg(rs, cur, leg))
        cur = pt_add(cur, leg)
    return segments


def straight_path(rs: RootSystem, start: Point, target: Point) -> list[tuple[Point, Point]]:
    """Elementary segments along the single straight line from start to target."""
    diff = pt_sub(target, start)
    if all(c == 0 for c in diff):
        return []
    return _split_leg(rs, start, diff)


# -- the engine -------------------------------------------------------------------


class PathEngine:
    """Computes canonical elements at rational dominant points by planned
    wall-crossing paths, with a memo of finished elements shared across the
    whole run (but never with the alcove-recursion oracle)."""

    def __init__(self, rs: RootSystem, memo: Memo | None = None):
        self.rs = rs
        self.memo = memo if memo is not None else Memo()
        self._resolving: set[Point] = set()

    # -- conversions between point level and alcove level ----------------------

    def upper_alcove(self, p: Point) -> Alcove:
        return a_plus(facet_of(self.rs, p))

    def to_alcove_level(self, x: MVector) -> NVector:
        """Expand each point through its grouped facet sum."""
        terms = []
        for q, coeff in x.items():
            fac = facet_of(self.rs, q)
            stab = right_stabilizer(fac)
            for alc, below in alcoves_containing(fac):
                terms.append((alc, coeff * LaurentPoly.v(stab.ell_p - below)))
        return NVector(terms)

    def from_alcove_level(self, nvec: NVector, p: Point) -> MVector:
        """Read the point-level element for anchor p off an alcove-level one:
        the coefficient at a point is the alcove coefficient at the upper
        alcove of its facet."""
        p0, _ = fold_to_fundamental(self.rs, p)
        terms = []
        for alc, coeff in nvec.items():
            q = alc.element.apply(p0)
            if self.upper_alcove(q) == alc:
                assert all(c > 0 for c in q)
                terms.append((q, coeff))
        out = MVector(terms, anchor=p)
        assert out.coefficient(p) == LaurentPoly.one()
        return out

    # -- canonical elements at points -------------------------------------------

    def resolve(self, p: Point) -> MVector:
        """The canonical element anchored at the rational strictly dominant
        point p, computed by the cheapest valid route and memoized."""
        rs = self.rs
        if not all(c > 0 for c in p):
            raise ValueError(f"{p} is not strictly dominant")
        alc = self.upper_alcove(p)
        cached = self.memo.get(alc)
        if cached is not None:
            return self.from_alcove_level(cached, p)
        if alc.length() == 0:
            return self._finish(MVector({p: LaurentPoly.one()}, anchor=p))
        if p in self._resolving:
            raise RuntimeError(f"resolution cycle at {p}")
        self._resolving.add(p)
        try:
            return self._resolve_route(p)
        finally:
            self._resolving.discard(p)

    def _resolve_route(self, p: Point) -> MVector:
        rs = self.rs
        l = rs.level
        coords = [c * rs.sym_d[i] for i, c in enumerate(p)]  # pairings with simples
        use_box = rs.is_simply_laced() and rs.level >= rs.dual_coxeter
        if use_box:
            if all(c.denominator == 1 and c % l == 0 for c in coords):
                # a critical point: its canonical element is the bare point
                return self._finish(MVector({p: LaurentPoly.one()}, anchor=p))
            if all(c > l for c in coords):
                # jump to the critical corner of the tile containing p
                corner = tuple(
                    Fraction(l * (math.ceil(c / l) - 1), rs.sym_d[i])
                    for i, c in enumerate(coords)
                )
                start = MVector({corner: LaurentPoly.one()}, anchor=corner)
                return self.run_segments(start, plan_path(rs, corner, p))
            if all(c >= 1 for c in p):
                # ride the walls: box point, then wall multiples, then target
                box_pt = tuple(min(c, Fraction(l, rs.sym_d[i])) for i, c in enumerate(p))
                wall_pt = tuple(
                    c if coords[i] < l else Fraction(l * math.floor(coords[i] / l), rs.sym_d[i])
                    for i, c in enumerate(p)
                )
                if box_pt == p:
                    x = MVector({rs.rho: LaurentPoly.one()}, anchor=rs.rho)
                    return self.run_segments(x, plan_path(rs, rs.rho, p))
                x = self.resolve(box_pt)
                x = self.run_segments(x, plan_path(rs, box_pt, wall_pt))
                return self.run_segments(x, plan_path(rs, wall_pt, p))
        if all(c >= 1 for c in p):
            x = MVector({rs.rho: LaurentPoly.one()}, anchor=rs.rho)
            return self.run_segments(x, plan_path(rs, rs.rho, p))
        # low-coordinate rational point: walk out along its own ray
        theta_val = rs.pair(p, rs.theta)
        t0 = Fraction(l, 2) / theta_val
        q0 = pt_scale(p, t0)
        x = MVector({q0: LaurentPoly.one()}, anchor=q0)
        return self.run_segments(x, straight_path(rs, q0, p))

    def _finish(self, x: MVector) -> MVector:
        self.memo.put(self.upper_alcove(x.anchor), self.to_alcove_level(x))
        return x

    def run_segments(self, x: MVector, segments) -> MVector:
        for start, delta in segments:
            assert x.anchor == start, (x.anchor, start)
            x = positivity(self.rs, f_step(self.rs, x, delta), self.resolve)
            self._finish(x)
        return x

    def t_lambda(self, x: MVector, lam: Point, path=None) -> MVector:
        """Transport a canonical element up by a dominant vector along a
        planned (or supplied) path of elementary segments."""
        if path is None:
            path = plan_path(self.rs, x.anchor, pt_add(x.anchor, lam))
        return self.run_segments(x, path)

    # -- the public entry points --------------------------------------------------

    def compute_n(self, mu: Point) -> MVector:
        """The canonical element of a dominant integral weight, as a map from
        shifted points to parabolic affine Kazhdan-Lusztig polynomials."""
        rs = self.rs
        mu = tuple(Fraction(c) for c in mu)
        if len(mu) != rs.rank:
            raise ValueError(f"weight {mu} has wrong rank for {rs.label}")
        if any(c.denominator != 1 or c < 0 for c in mu):
            raise ValueError(f"{mu} is not a dominant integral weight")
        return self.resolve(pt_add(mu, rs.rho))

    def n_poly(self, lam: Point, mu: Point) -> LaurentPoly:
        lam = tuple(Fraction(c) for c in lam)
        return self.compute_n(mu).coefficient(pt_add(lam, self.rs.rho))

    # -- general elements ----------------------------------------------------------

    def expand_canonical(self, x: MVector) -> list[tuple[Point, LaurentPoly]]:
        """Greedy triangular expansion of an arbitrary element over canonical
        elements, highest anchors first."""
        out = []
        work = x
        while work:
            top = max(
                work.support(), key=lambda q: (self.upper_alcove(q).length(), q)
            )
            c = work.coefficient(top)
            out.append((top, c))
            work = work - self.resolve(top).scaled(c).with_anchor(work.anchor)
        return out

    def apply_direction_step(self, x: MVector, delta: Point) -> MVector:
        """Apply one crossing along an arbitrary (possibly non-dominant)
        direction to a general element: split into elementary pieces, and at
        each piece expand over canonical elements and cross each component
        along its own transported direction."""
        rs = self.rs
        anchor = x.anchor
        if anchor is None:
            raise ValueError("apply_direction_step needs an anchored vector")
        for start, piece in straight_path(rs, anchor, pt_add(anchor, delta)):
            new_anchor = pt_add(start, piece)
            acc = MVector(anchor=new_anchor)
            for nu, coeff in self.expand_canonical(x):
                dirn = transport_direction(rs, start, nu, piece)
                step = f_step(rs, self.resolve(nu), dirn, check_anchor=False)
                acc = acc + step.scaled(coeff).with_anchor(new_anchor)
            x = acc
            if not x:
                return x
        return x
