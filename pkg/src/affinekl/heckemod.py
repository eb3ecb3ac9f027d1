"""The parabolic module over dominant alcoves and its canonical basis.

The module has a standard basis indexed by the alcoves in the dominant
chamber.  An affine simple generator s acts on a basis element through the
three-case wall-crossing rule: crossing up contributes the new alcove plus v
times the old one, crossing down contributes the new alcove plus v^-1 times
the old one, and crossing out of the dominant chamber kills the term.

The canonical basis is the unique self-dual family triangular with respect to
the geometric order with lower coefficients in v*Z[v]; it is computed by the
classical recursion (cross a descent wall, then subtract constant terms of
lower canonical elements).  Its coefficients are the parabolic affine
Kazhdan-Lusztig polynomials; everything produced by the path method elsewhere
in the package is cross-checked against this recursion.
"""

from __future__ import annotations

from typing import Callable, Iterable

from .alcove import (
    Alcove,
    Facet,
    ParabolicData,
    STRIP,
    WALL,
    alcoves_containing,
    fundamental_alcove,
    right_action,
)
from .laurent import LaurentPoly
from .rootdata import RootSystem

_V = LaurentPoly.v(1)
_VINV = LaurentPoly.v(-1)


class NVector:
    """A finite formal sum of dominant alcoves with Laurent coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[Alcove, LaurentPoly]] | dict = ()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict[Alcove, LaurentPoly] = {}
        for alc, poly in items:
            cur = acc.get(alc)
            acc[alc] = poly if cur is None else cur + poly
        self._terms = {a: p for a, p in acc.items() if p}

    @staticmethod
    def basis(alcove: Alcove) -> "NVector":
        return NVector({alcove: LaurentPoly.one()})

    @staticmethod
    def zero() -> "NVector":
        return NVector()

    def items(self):
        return self._terms.items()

    def support(self):
        return self._terms.keys()

    def coefficient(self, alcove: Alcove) -> LaurentPoly:
        return self._terms.get(alcove, LaurentPoly.zero())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "NVector") -> "NVector":
        return NVector(list(self._terms.items()) + list(other._terms.items()))

    def __sub__(self, other: "NVector") -> "NVector":
        return self + other.scaled(LaurentPoly.monomial(-1, 0))

    def scaled(self, poly: LaurentPoly) -> "NVector":
        return NVector((a, p * poly) for a, p in self._terms.items())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NVector) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset((a, p) for a, p in self._terms.items()))

    def __repr__(self) -> str:
        inner = " + ".join(f"({p})*N{a.strips}" for a, p in sorted(
            self._terms.items(), key=lambda t: (t[0].length(), t[0].strips)))
        return f"NVector[{inner or '0'}]"


def act_cs(rs: RootSystem, x: NVector, gen_index: int) -> NVector:
    """Right action of the self-dual generator attached to an affine simple
    reflection, extended linearly."""
    acc: list[tuple[Alcove, LaurentPoly]] = []
    for alc, poly in x.items():
        image = right_action(alc, gen_index)
        if not image.is_dominant():
            continue
        up = image.length() > alc.length()
        acc.append((image, poly))
        acc.append((alc, poly * (_V if up else _VINV)))
    return NVector(acc)


def act_hs(rs: RootSystem, x: NVector, gen_index: int) -> NVector:
    """Right action of the standard generator H_s = C_s - v."""
    return act_cs(rs, x, gen_index) - x.scaled(_V)


def act_hword(rs: RootSystem, x: NVector, word: Iterable[int]) -> NVector:
    for s in word:
        x = act_hs(rs, x, s)
    return x


def act_parabolic_naive(rs: RootSystem, x: NVector, p: ParabolicData) -> NVector:
    """Multiply by the longest-element canonical element of the parabolic,
    term by term from its defining sum over the subgroup."""
    out = NVector.zero()
    for _, length, word in p.elements:
        out = out + act_hword(rs, x, word).scaled(LaurentPoly.v(p.ell_p - length))
    return out


def facet_in_closure(fac: Facet, alcove: Alcove) -> bool:
    strips = alcove.strips
    for i, (kind, m) in enumerate(fac.profile):
        if kind == WALL:
            if strips[i] not in (m - 1, m):
                return False
        else:
            if strips[i] != m:
                return False
    return True


def facet_sum(fac: Facet) -> NVector:
    """The grouped element over all alcoves around a facet, each weighted by
    v to the number of facet walls above it."""
    ell_p = right_stabilizer_cached(fac).ell_p
    return NVector(
        (alc, LaurentPoly.v(ell_p - below)) for alc, below in alcoves_containing(fac)
    )


_stab_cache: dict[tuple, ParabolicData] = {}


def right_stabilizer_cached(fac: Facet) -> ParabolicData:
    key = (fac.rs.key, fac.profile)
    got = _stab_cache.get(key)
    if got is None:
        from .alcove import right_stabilizer

        got = right_stabilizer(fac)
        _stab_cache[key] = got
    return got


def act_parabolic_closed(rs: RootSystem, alcove: Alcove, fac: Facet) -> NVector:
    """Closed form for N_A times the facet's parabolic canonical element:
    zero when the facet leaves the open dominant chamber, otherwise v^{-b}
    times the grouped facet sum."""
    if not facet_in_closure(fac, alcove):
        raise ValueError(f"{fac} is not in the closure of {alcove}")
    if not fac.is_inside_chamber():
        return NVector.zero()
    below = next(b for alc, b in alcoves_containing(fac) if alc == alcove)
    return facet_sum(fac).scaled(LaurentPoly.v(-below))


class Memo:
    """Cache of canonical elements keyed by their top alcove.

    One instance per computation method; sharing an instance between the path
    method and the alcove recursion would make cross-verification vacuous.
    Reads may race freely, inserts are deterministic so last-write-wins is
    safe; ``on_insert`` is the hook the CLI uses to stream a cache file.
    """

    def __init__(self, on_insert: Callable[[Alcove, NVector], None] | None = None):
        self._store: dict[Alcove, NVector] = {}
        self.inserts = 0
        self.terms_inserted = 0
        self.on_insert = on_insert

    def get(self, alcove: Alcove) -> NVector | None:
        return self._store.get(alcove)

    def put(self, alcove: Alcove, value: NVector) -> None:
        if alcove in self._store:
            return
        self._store[alcove] = value
        self.inserts += 1
        self.terms_inserted += len(value)
        if self.on_insert is not None:
            self.on_insert(alcove, value)

    def preload(self, alcove: Alcove, value: NVector) -> None:
        """Insert without touching counters (cache file loads)."""
        self._store.setdefault(alcove, value)

    def __len__(self) -> int:
        return len(self._store)

    def __contains__(self, alcove: Alcove) -> bool:
        return alcove in self._store


def canonical_alcove(rs: RootSystem, alcove: Alcove, memo: Memo) -> NVector:
    """The canonical basis element of a dominant alcove, by the descent
    recursion.  Lowest-index valid descent generator, memoized."""
    got = memo.get(alcove)
    if got is not None:
        return got
    if not alcove.is_dominant():
        raise ValueError(f"{alcove} is not dominant")
    if alcove.length() == 0:
        result = NVector.basis(alcove)
        memo.put(alcove, result)
        return result
    descent = None
    for s in range(rs.rank + 1):
        image = right_action(alcove, s)
        if image.is_dominant() and image.length() < alcove.length():
            descent = s
            break
    if descent is None:
        raise RuntimeError(f"no dominant descent for {alcove}")
    lower = canonical_alcove(rs, right_action(alcove, descent), memo)
    x = act_cs(rs, lower, descent)
    assert x.coefficient(alcove) == LaurentPoly.one()
    for other, poly in list(x.items()):
        if other == alcove:
            continue
        c = poly.constant_term()
        if c != 0:
            x = x - canonical_alcove(rs, other, memo).scaled(
                LaurentPoly.monomial(c, 0)
            )
    memo.put(alcove, x)
    return x


def express_in_canonical(
    rs: RootSystem, x: NVector, memo: Memo
) -> dict[Alcove, LaurentPoly]:
    """Greedy triangular change of basis into the canonical family, from the
    longest support alcove downward."""
    out: dict[Alcove, LaurentPoly] = {}
    work = x
    while work:
        top = max(work.support(), key=lambda a: (a.length(), a.strips))
        c = work.coefficient(top)
        out[top] = c
        work = work - canonical_alcove(rs, top, memo).scaled(c)
    return out
