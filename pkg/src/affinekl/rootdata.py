"""Finite root-system data for the simple Lie types.

Conventions.  The symmetric bilinear form is normalized so that short roots
have squared length 2.  Points of the ambient space are stored as tuples of
exact ``Fraction`` coordinates in the fundamental-weight basis, so the i-th
coordinate of a point x is its pairing with the i-th simple coroot.  Roots are
stored as integer vectors in the simple-root basis.  With these choices

    x . (sum_j a_j alpha_j)  =  sum_j a_j d_j x_j,

where d_j is half the squared length of alpha_j, and no floating point ever
enters a geometric predicate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

Point = tuple[Fraction, ...]
Root = tuple[int, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


# -- small exact vector helpers ---------------------------------------------

def pt(*coords) -> Point:
    return tuple(Fraction(c) for c in coords)


def pt_add(a: Point, b: Point) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def pt_sub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def pt_scale(a: Point, s) -> Point:
    s = Fraction(s)
    return tuple(s * x for x in a)


def pt_is_zero(a: Point) -> bool:
    return all(x == 0 for x in a)


def mat_apply(m: Matrix, x: Point) -> Point:
    return tuple(sum(row[j] * x[j] for j in range(len(x))) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def mat_identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
        for i in range(n)
    )


def mat_inverse(m: Matrix) -> Matrix:
    """Exact Gauss-Jordan inverse; ranks here are at most 8."""
    n = len(m)
    aug = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = aug[col][col]
        aug[col] = [v / scale for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


# -- Cartan data --------------------------------------------------------------

def _chain(rank: int) -> list[list[int]]:
    a = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        a[i][i] = 2
        if i + 1 < rank:
            a[i][i + 1] = -1
            a[i + 1][i] = -1
    return a


def _cartan_and_symmetrizer(letter: str, rank: int) -> tuple[list[list[int]], list[int]]:
    if letter == "A" and rank >= 1:
        return _chain(rank), [1] * rank
    if letter == "B" and rank >= 2:
        a = _chain(rank)
        a[rank - 1][rank - 2] = -2
        return a, [2] * (rank - 1) + [1]
    if letter == "C" and rank >= 2:
        a = _chain(rank)
        a[rank - 2][rank - 1] = -2
        return a, [1] * (rank - 1) + [2]
    if letter == "D" and rank >= 3:
        a = _chain(rank)
        a[rank - 1][rank - 2] = 0
        a[rank - 2][rank - 1] = 0
        a[rank - 3][rank - 1] = -1
        a[rank - 1][rank - 3] = -1
        return a, [1] * rank
    if letter == "E" and rank in (6, 7, 8):
        # nodes 0..rank-2 form a chain, the last node hangs off node 2
        a = _chain(rank)
        a[rank - 1][rank - 2] = 0
        a[rank - 2][rank - 1] = 0
        a[2][rank - 1] = -1
        a[rank - 1][2] = -1
        return a, [1] * rank
    if letter == "F" and rank == 4:
        a = _chain(4)
        a[2][1] = -2
        return a, [2, 2, 1, 1]
    if letter == "G" and rank == 2:
        a = [[2, -1], [-3, 2]]
        return a, [3, 1]
    raise ValueError(f"invalid Cartan type {letter}{rank}")


def parse_cartan_label(label: str) -> tuple[str, int]:
    """Parse labels like "A2", "D4", "E6" into (letter, rank)."""
    label = label.strip()
    if len(label) < 2 or label[0].upper() not in "ABCDEFG":
        raise ValueError(f"cannot parse Cartan type {label!r}")
    try:
        rank = int(label[1:])
    except ValueError as exc:
        raise ValueError(f"cannot parse Cartan type {label!r}") from exc
    return label[0].upper(), rank


@dataclass(frozen=True)
class RootSystem:
    """Immutable root-system and level data shared by the whole computation."""

    letter: str
    rank: int
    level: int
    cartan: tuple[tuple[int, ...], ...]
    sym_d: tuple[int, ...]
    positive_roots: tuple[Root, ...]
    theta: Root
    dual_coxeter: int
    level_warning: bool = field(compare=False, default=False)

    # -- construction --------------------------------------------------------

    @staticmethod
    def build(letter: str, rank: int, level: int) -> "RootSystem":
        if level < 2:
            raise ValueError(f"level must be at least 2, got {level}")
        cartan, sym_d = _cartan_and_symmetrizer(letter.upper(), rank)
        positives = _positive_roots(cartan)
        theta = _highest_root(cartan, sym_d, positives)
        rho = tuple(Fraction(1) for _ in range(rank))
        pair_rho_theta = sum(theta[j] * sym_d[j] * rho[j] for j in range(rank))
        theta_normsq = _root_normsq(cartan, sym_d, theta)
        hdual = 1 + Fraction(2 * pair_rho_theta, theta_normsq)
        assert hdual.denominator == 1
        return RootSystem(
            letter=letter.upper(),
            rank=rank,
            level=level,
            cartan=tuple(tuple(row) for row in cartan),
            sym_d=tuple(sym_d),
            positive_roots=tuple(positives),
            theta=theta,
            dual_coxeter=int(hdual),
            level_warning=level <= int(hdual),
        )

    @staticmethod
    def from_label(label: str, level: int) -> "RootSystem":
        letter, rank = parse_cartan_label(label)
        return RootSystem.build(letter, rank, level)

    @property
    def label(self) -> str:
        return f"{self.letter}{self.rank}"

    @property
    def key(self) -> tuple[str, int, int]:
        """Cheap identity for caches: (letter, rank, level) determines the
        whole structure."""
        return (self.letter, self.rank, self.level)

    def is_simply_laced(self) -> bool:
        return all(d == 1 for d in self.sym_d)

    # -- the bilinear form ----------------------------------------------------

    def pair(self, x: Point, root: Root) -> Fraction:
        """x . alpha for a point in weight coordinates and a root."""
        return sum(root[j] * self.sym_d[j] * x[j] for j in range(self.rank))

    def root_normsq(self, root: Root) -> int:
        return _root_normsq(self.cartan, self.sym_d, root)

    def root_to_weight_coords(self, root: Root) -> Point:
        """The root as a point, i.e. its coordinates in the weight basis."""
        return tuple(
            Fraction(sum(self.cartan[i][j] * root[j] for j in range(self.rank)))
            for i in range(self.rank)
        )

    def coroot_to_weight_coords(self, root: Root) -> Point:
        v = self.root_to_weight_coords(root)
        return pt_scale(v, Fraction(2, self.root_normsq(root)))

    @property
    def rho(self) -> Point:
        return tuple(Fraction(1) for _ in range(self.rank))

    def fundamental_weight(self, i: int) -> Point:
        return tuple(Fraction(1 if j == i else 0) for j in range(self.rank))

    # -- reflections and the finite Weyl group --------------------------------

    def reflect(self, x: Point, root: Root, value: Fraction = Fraction(0)) -> Point:
        """Reflect x in the hyperplane {y . root = value}."""
        excess = self.pair(x, root) - value
        if excess == 0:
            return x
        return pt_sub(x, pt_scale(self.coroot_to_weight_coords(root), excess))

    def simple_reflection_matrix(self, i: int) -> Matrix:
        root_w = self.root_to_weight_coords(_unit_root(self.rank, i))
        n = self.rank
        return tuple(
            tuple(
                Fraction(1 if r == c else 0) - (root_w[r] if c == i else Fraction(0))
                for c in range(n)
            )
            for r in range(n)
        )

    def is_dominant(self, x: Point, strict: bool = False) -> bool:
        if strict:
            return all(c > 0 for c in x)
        return all(c >= 0 for c in x)

    def normalize_to_chamber(self, x: Point) -> tuple[Point, Matrix]:
        """Fold x into the closed dominant chamber by simple reflections.

        Returns (x_dom, w) with w a product of simple reflection matrices and
        w(x) = x_dom.  Deterministic: always reflects at the lowest-index
        simple root with a negative pairing.
        """
        w = mat_identity(self.rank)
        cur = x
        guard = 0
        while True:
            i = next((j for j in range(self.rank) if cur[j] < 0), None)
            if i is None:
                return cur, w
            m = self.simple_reflection_matrix(i)
            cur = mat_apply(m, cur)
            w = mat_mul(m, w)
            guard += 1
            if guard > 100000:
                raise RuntimeError("normalize_to_chamber failed to terminate")

    # -- Weyl dimension formula ------------------------------------------------

    def weyl_dim(self, lam: Point) -> int:
        lam = tuple(Fraction(c) for c in lam)
        if not self.is_dominant(lam) or any(c.denominator != 1 for c in lam):
            raise ValueError(f"weyl_dim needs a dominant integral weight, got {lam}")
        shifted = pt_add(lam, self.rho)
        dim = Fraction(1)
        for alpha in self.positive_roots:
            dim *= self.pair(shifted, alpha) / self.pair(self.rho, alpha)
        assert dim.denominator == 1
        return int(dim)


def _unit_root(rank: int, i: int) -> Root:
    return tuple(1 if j == i else 0 for j in range(rank))


def _root_normsq(cartan, sym_d, root: Root) -> int:
    rank = len(root)
    # alpha_j . alpha_k = d_j * cartan[j][k]
    return sum(
        root[j] * root[k] * sym_d[j] * cartan[j][k]
        for j in range(rank)
        for k in range(rank)
    )


def _positive_roots(cartan) -> list[Root]:
    """All positive roots, by reflection closure from the simple ones."""
    rank = len(cartan)
    seen: set[Root] = set()
    frontier: list[Root] = [_unit_root(rank, i) for i in range(rank)]
    roots: set[Root] = set(frontier)
    while frontier:
        nxt: list[Root] = []
        for r in frontier:
            for i in range(rank):
                pairing = sum(cartan[i][j] * r[j] for j in range(len(r)))
                image = list(r)
                image[i] -= pairing
                image_t = tuple(image)
                if image_t not in roots:
                    roots.add(image_t)
                    nxt.append(image_t)
        frontier = nxt
    positives = sorted(r for r in roots if all(c >= 0 for c in r))
    return positives


def _highest_root(cartan, sym_d, positives: Sequence[Root]) -> Root:
    rank = len(cartan)
    dominant = [
        r for r in positives
        if all(sum(cartan[i][j] * r[j] for j in range(rank)) >= 0 for i in range(rank))
    ]
    return max(dominant, key=lambda r: _root_normsq(cartan, sym_d, r))
