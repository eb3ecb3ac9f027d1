"""The affine hyperplane arrangement at a level, its facets and alcoves.

For a root system at level l the arrangement consists of the hyperplanes
{x . alpha = m*l} over positive roots alpha and integers m.  A facet is a cell
of this arrangement, recorded per positive root as either Wall(m) (the pairing
equals m*l) or Strip(m) (strictly between m*l and (m+1)*l), together with an
exact rational witness point.  Alcoves are the full-dimensional facets; each
carries the affine group element mapping the fundamental alcove onto it, so
the right action is exact composition and no gallery bookkeeping is needed.

All types here are immutable and freely shareable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .laurent import LaurentPoly
from .rootdata import (
    Matrix,
    Point,
    Root,
    RootSystem,
    mat_apply,
    mat_identity,
    mat_inverse,
    mat_mul,
    pt_add,
    pt_scale,
    pt_sub,
)

WALL = "wall"
STRIP = "strip"
ProfileEntry = tuple[str, int]
Profile = tuple[ProfileEntry, ...]


@dataclass(frozen=True)
class AffineElement:
    """An affine-Weyl-group element: x -> linear(x) + trans, in weight coords."""

    linear: Matrix
    trans: Point

    def apply(self, x: Point) -> Point:
        return pt_add(mat_apply(self.linear, x), self.trans)

    def compose(self, other: "AffineElement") -> "AffineElement":
        """self after other: (self * other)(x) = self(other(x))."""
        return AffineElement(
            mat_mul(self.linear, other.linear),
            pt_add(mat_apply(self.linear, other.trans), self.trans),
        )

    def inverse(self) -> "AffineElement":
        inv = mat_inverse(self.linear)
        return AffineElement(inv, pt_scale(mat_apply(inv, self.trans), -1))

    @staticmethod
    def identity(rank: int) -> "AffineElement":
        return AffineElement(mat_identity(rank), tuple(Fraction(0) for _ in range(rank)))

    def is_identity(self) -> bool:
        rank = len(self.trans)
        return self == AffineElement.identity(rank)


def reflection_element(rs: RootSystem, root: Root, value: Fraction) -> AffineElement:
    """The affine reflection in the hyperplane {x . root = value}."""
    coroot = rs.coroot_to_weight_coords(root)
    n = rs.rank
    root_pairing_row = [Fraction(root[j] * rs.sym_d[j]) for j in range(n)]
    linear = tuple(
        tuple(
            (Fraction(1) if r == c else Fraction(0)) - coroot[r] * root_pairing_row[c]
            for c in range(n)
        )
        for r in range(n)
    )
    return AffineElement(linear, pt_scale(coroot, Fraction(value)))


_generators_cache: dict[tuple, tuple[AffineElement, ...]] = {}


def affine_generators(rs: RootSystem) -> tuple[AffineElement, ...]:
    """Generator i>0 is the i-th simple reflection; generator 0 reflects in
    the wall {x . theta = l} of the fundamental alcove."""
    got = _generators_cache.get(rs.key)
    if got is None:
        gens = [reflection_element(rs, rs.theta, Fraction(rs.level))]
        for i in range(rs.rank):
            gens.append(reflection_element(rs, _unit(rs.rank, i), Fraction(0)))
        got = tuple(gens)
        _generators_cache[rs.key] = got
    return got


def _unit(rank: int, i: int) -> Root:
    return tuple(1 if j == i else 0 for j in range(rank))


_barycenter_cache: dict[tuple, Point] = {}


def fundamental_barycenter(rs: RootSystem) -> Point:
    """Barycenter of the fundamental alcove: average of 0 and the vertices
    l/(c_i d_i) * Lambda_i, where c_i is the theta-coefficient of alpha_i."""
    got = _barycenter_cache.get(rs.key)
    if got is None:
        pts = [tuple(Fraction(0) for _ in range(rs.rank))]
        for i in range(rs.rank):
            denom = rs.theta[i] * rs.sym_d[i]
            pts.append(pt_scale(rs.fundamental_weight(i), Fraction(rs.level, denom)))
        acc = pts[0]
        for p in pts[1:]:
            acc = pt_add(acc, p)
        got = pt_scale(acc, Fraction(1, len(pts)))
        _barycenter_cache[rs.key] = got
    return got


class Alcove:
    """An alcove, i.e. the image of the fundamental alcove under an element."""

    __slots__ = ("rs", "element", "_barycenter", "_profile", "_length")

    def __init__(self, rs: RootSystem, element: AffineElement):
        self.rs = rs
        self.element = element
        self._barycenter: Point | None = None
        self._profile: tuple[int, ...] | None = None
        self._length: int | None = None

    @property
    def barycenter(self) -> Point:
        if self._barycenter is None:
            self._barycenter = self.element.apply(fundamental_barycenter(self.rs))
        return self._barycenter

    @property
    def strips(self) -> tuple[int, ...]:
        """The strip index floor(b . alpha / l) for each positive root; a
        complete invariant of the alcove."""
        if self._profile is None:
            b = self.barycenter
            l = self.rs.level
            self._profile = tuple(
                math.floor(self.rs.pair(b, alpha) / l) for alpha in self.rs.positive_roots
            )
        return self._profile

    def length(self) -> int:
        """Number of arrangement hyperplanes separating this alcove from the
        fundamental one: sum over positive roots of |strip index|."""
        if self._length is None:
            self._length = sum(abs(m) for m in self.strips)
        return self._length

    def is_dominant(self) -> bool:
        return all(c > 0 for c in self.barycenter)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Alcove)
            and self.strips == other.strips
            and (self.rs is other.rs or self.rs.key == other.rs.key)
        )

    def __hash__(self) -> int:
        return hash(self.strips)

    def __repr__(self) -> str:
        return f"Alcove{self.strips}"


@dataclass(frozen=True)
class Facet:
    """A cell of the arrangement: per positive root a wall or strip datum,
    plus a rational witness point realizing the profile exactly."""

    rs: RootSystem
    profile: Profile
    witness: Point

    def walls(self) -> list[tuple[Root, int]]:
        return [
            (alpha, entry[1])
            for alpha, entry in zip(self.rs.positive_roots, self.profile)
            if entry[0] == WALL
        ]

    def is_alcove(self) -> bool:
        return all(entry[0] == STRIP for entry in self.profile)

    def is_inside_chamber(self) -> bool:
        """True iff the facet lies in the open dominant chamber."""
        return all(c > 0 for c in self.witness)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Facet)
            and self.profile == other.profile
            and (self.rs is other.rs or self.rs.key == other.rs.key)
        )

    def __hash__(self) -> int:
        return hash(self.profile)

    def __repr__(self) -> str:
        short = ",".join(
            (f"w{m}" if kind == WALL else f"s{m}") for kind, m in self.profile
        )
        return f"Facet({short})"


def facet_of(rs: RootSystem, p: Point) -> Facet:
    l = rs.level
    entries = []
    for alpha in rs.positive_roots:
        val = rs.pair(p, alpha)
        q, r = divmod(val, l)
        if r == 0:
            entries.append((WALL, int(q)))
        else:
            entries.append((STRIP, math.floor(val / l)))
    return Facet(rs, tuple(entries), p)


def fundamental_alcove(rs: RootSystem) -> Alcove:
    return Alcove(rs, AffineElement.identity(rs.rank))


def fold_to_fundamental(rs: RootSystem, p: Point) -> tuple[Point, AffineElement]:
    """Fold p into the closed fundamental alcove by reflections in its walls.

    Returns (p0, w) with w(p0) = p; w is the element whose alcove closure
    contains p.  Deterministic: lowest-index strictly violated wall first.
    """
    gens = affine_generators(rs)
    theta = rs.theta
    l = rs.level
    cur = p
    w = AffineElement.identity(rs.rank)
    guard = 0
    while True:
        idx = next((i for i in range(rs.rank) if cur[i] < 0), None)
        if idx is not None:
            gen = gens[idx + 1]
        elif rs.pair(cur, theta) > l:
            gen = gens[0]
        else:
            return cur, w
        cur = gen.apply(cur)
        w = w.compose(gen)
        guard += 1
        if guard > 10 ** 6:
            raise RuntimeError("folding walk failed to terminate")


def alcove_of(rs: RootSystem, p: Point) -> Alcove:
    """The alcove containing p, with its group element reconstructed by a
    tracked folding walk.  p must lie on no hyperplane of the arrangement."""
    fac = facet_of(rs, p)
    if not fac.is_alcove():
        raise ValueError(f"point {p} lies on a hyperplane of the arrangement")
    _, w = fold_to_fundamental(rs, p)
    return Alcove(rs, w)


def _perturbed(rs: RootSystem, fac: Facet, sign: int) -> Point:
    """Witness nudged off all walls of fac, towards the positive (sign=+1) or
    negative (sign=-1) side of each of them."""
    active = [alpha for alpha, _ in fac.walls()]
    if not active:
        return fac.witness
    direction = tuple(Fraction(0) for _ in range(rs.rank))
    for alpha in active:
        direction = pt_add(direction, rs.root_to_weight_coords(alpha))
    l = rs.level
    eps = None
    for alpha, entry in zip(rs.positive_roots, fac.profile):
        move = rs.pair(direction, alpha)
        if move == 0:
            continue
        if entry[0] == STRIP:
            val = rs.pair(fac.witness, alpha)
            m = entry[1]
            dist = min(val - m * l, (m + 1) * l - val)
        else:
            dist = Fraction(l)
        bound = dist / abs(move)
        eps = bound if eps is None else min(eps, bound)
    assert eps is not None  # the direction pairs nonzero with each active root
    return pt_add(fac.witness, pt_scale(direction, sign * eps / 2))


def a_plus(fac: Facet) -> Alcove:
    """The alcove containing the facet in its closure, on the positive side of
    every hyperplane through the facet."""
    return alcove_of(fac.rs, _perturbed(fac.rs, fac, +1))


def a_minus(fac: Facet) -> Alcove:
    return alcove_of(fac.rs, _perturbed(fac.rs, fac, -1))


def right_action(alcove: Alcove, gen_index: int) -> Alcove:
    """Right action by an affine simple generator: w*A+ maps to (w s)*A+."""
    gen = affine_generators(alcove.rs)[gen_index]
    return Alcove(alcove.rs, alcove.element.compose(gen))


# -- stabilizers ---------------------------------------------------------------


@dataclass(frozen=True)
class ParabolicData:
    """The right stabilizer of a facet: a standard parabolic subgroup of the
    affine Weyl group, enumerated with lengths and reduced words."""

    generators: tuple[int, ...]
    # (element, length, reduced word) triples, sorted by length
    elements: tuple[tuple[AffineElement, int, tuple[int, ...]], ...]
    ell_p: int

    @property
    def order(self) -> int:
        return len(self.elements)

    def v_order(self) -> LaurentPoly:
        """v^{-ell_P} * sum over the subgroup of v^{2*length}."""
        return LaurentPoly((2 * ln - self.ell_p, 1) for _, ln, _ in self.elements)


_stabilizer_cache: dict[tuple, ParabolicData] = {}


def right_stabilizer(fac: Facet) -> ParabolicData:
    cached = _stabilizer_cache.get((fac.rs.key, fac.profile))
    if cached is not None:
        return cached
    rs = fac.rs
    gens = affine_generators(rs)
    w_f = a_plus(fac).element
    w_f_inv = w_f.inverse()
    stab_gens = []
    for s_idx, gen in enumerate(gens):
        conj = w_f.compose(gen).compose(w_f_inv)
        if conj.apply(fac.witness) == fac.witness:
            stab_gens.append(s_idx)
    identity = AffineElement.identity(rs.rank)
    elements = {identity: (0, ())}
    frontier = [identity]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for el in frontier:
            word = elements[el][1]
            for s_idx in stab_gens:
                new = el.compose(gens[s_idx])
                if new not in elements:
                    elements[new] = (depth, word + (s_idx,))
                    nxt.append(new)
        frontier = nxt
    triples = sorted(
        ((el, ln, word) for el, (ln, word) in elements.items()),
        key=lambda t: (t[1], t[2]),
    )
    data = ParabolicData(tuple(stab_gens), tuple(triples), triples[-1][1])
    _stabilizer_cache[(fac.rs.key, fac.profile)] = data
    return data


_alcoves_containing_cache: dict[tuple, list] = {}


def alcoves_containing(fac: Facet) -> list[tuple[Alcove, int]]:
    """All alcoves with the facet in their closure, as (alcove, b) where b is
    the number of walls of the facet below the alcove (= the stabilizer length
    of the element carrying the lower alcove to it)."""
    key = (fac.rs.key, fac.profile)
    cached = _alcoves_containing_cache.get(key)
    if cached is None:
        base = a_minus(fac)
        cached = [
            (Alcove(fac.rs, base.element.compose(el)), ln)
            for el, ln, _ in right_stabilizer(fac).elements
        ]
        _alcoves_containing_cache[key] = cached
    return cached


def counts_ab(fac: Facet, other_witness: Point) -> tuple[int, int]:
    """(a, b): how many hyperplanes through the facet lie above / below the
    facet containing other_witness.  Above means the witness sits on the
    negative side."""
    rs = fac.rs
    l = rs.level
    a = b = 0
    for alpha, m in fac.walls():
        val = rs.pair(other_witness, alpha)
        if val < m * l:
            a += 1
        elif val > m * l:
            b += 1
    return a, b


# -- the point stabilizer generated by reflections through a facet's walls -----


def facet_wall_reflections(fac: Facet) -> list[AffineElement]:
    rs = fac.rs
    return [
        reflection_element(rs, alpha, Fraction(m * rs.level))
        for alpha, m in fac.walls()
    ]


def facet_point_orbit(fac: Facet, q: Point) -> list[Point]:
    """Orbit of q under the group generated by reflections in the hyperplanes
    through the facet.  Finite: the group is a finite reflection group."""
    refls = facet_wall_reflections(fac)
    seen = {q}
    frontier = [q]
    while frontier:
        nxt = []
        for p in frontier:
            for r in refls:
                img = r.apply(p)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return sorted(seen)


def facet_stabilizer_linear_parts(fac: Facet) -> list[Matrix]:
    """Linear parts of the group generated by reflections through the facet's
    walls; these act on directions based at any point of the facet."""
    refls = [r.linear for r in facet_wall_reflections(fac)]
    ident = mat_identity(fac.rs.rank)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for r in refls:
                img = mat_mul(r, m)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return sorted(seen)


# -- segments -------------------------------------------------------------------


def segment_events(rs: RootSystem, p: Point, delta: Point):
    """Wall crossings along t -> p + t*delta for t in (0, 1], grouped by time.

    Returns an ascending list of (t, [(root, m), ...]) with t rational.
    """
    if all(c == 0 for c in delta):
        raise ValueError("segment direction must be nonzero")
    l = rs.level
    by_time: dict[Fraction, list[tuple[Root, int]]] = {}
    for alpha in rs.positive_roots:
        da = rs.pair(delta, alpha)
        if da == 0:
            continue
        pa = rs.pair(p, alpha)
        if da > 0:
            m_lo = math.floor(pa / l) + 1
            m_hi = math.floor((pa + da) / l)
        else:
            m_lo = math.ceil((pa + da) / l)
            m_hi = math.ceil(pa / l) - 1
        for m in range(m_lo, m_hi + 1):
            t = Fraction(m * l - pa, da)
            by_time.setdefault(t, []).append((alpha, m))
    return sorted(by_time.items())


def leaving_walls(rs: RootSystem, p: Point, delta: Point) -> list[tuple[Root, int]]:
    """Hyperplanes through p that the segment leaves immediately."""
    l = rs.level
    out = []
    for alpha in rs.positive_roots:
        if rs.pair(delta, alpha) == 0:
            continue
        q, r = divmod(rs.pair(p, alpha), l)
        if r == 0:
            out.append((alpha, int(q)))
    return out
