"""Type-A applications: tensoring tilting modules with the vector
representation, and dimensions of simple modules of finite Hecke algebras at a
root of unity.

Tensoring the indecomposable tilting module of highest weight mu with the
k-dimensional vector representation amounts to adding every weight of that
representation to mu+rho exactly once.  When mu+rho sits on walls, a single
crossing step from the wall already sweeps a whole stabilizer orbit of
weights, so only one representative per orbit may be applied.  Expanding the
result over canonical elements and evaluating at v=1 yields the tilting
multiplicities; iterating against powers of the vector representation counts
tilting multiplicities in tensor powers, which are exactly the simple-module
dimensions of the type-A Hecke algebra at an l-th root of unity.
"""

from __future__ import annotations

from .alcove import facet_of, facet_stabilizer_linear_parts
from .heckemod import Memo
from .pathops import MVector, PathEngine
from .rootdata import Point, RootSystem, mat_apply, pt_sub


def vector_rep_weights(rs: RootSystem) -> list[Point]:
    """The k weights of the vector representation of sl_k, highest first."""
    if rs.letter != "A":
        raise ValueError(f"vector representation weights need type A, got {rs.label}")
    weights = [rs.fundamental_weight(0)]
    for i in range(rs.rank):
        simple = tuple(1 if j == i else 0 for j in range(rs.rank))
        weights.append(pt_sub(weights[-1], rs.root_to_weight_coords(simple)))
    return weights


def weight_orbit_representatives(rs: RootSystem, anchor: Point) -> list[Point]:
    """Representatives of the vector-representation weights modulo the
    stabilizer of the facet of the anchor point, smallest index first."""
    linear_parts = facet_stabilizer_linear_parts(facet_of(rs, anchor))
    reps: list[Point] = []
    covered: set[Point] = set()
    for eps in vector_rep_weights(rs):
        if eps in covered:
            continue
        reps.append(eps)
        covered.update(mat_apply(m, eps) for m in linear_parts)
    return reps


def tensor_with_vector(engine: PathEngine, mu: Point) -> dict[Point, int]:
    """Multiplicities of indecomposable tilting summands in T_mu tensor V."""
    rs = engine.rs
    base = engine.compute_n(mu)
    total = MVector()
    for eps in weight_orbit_representatives(rs, base.anchor):
        total = total + engine.apply_direction_step(base, eps).with_anchor(None)
    out: dict[Point, int] = {}
    for point, coeff in engine.expand_canonical(total):
        if not coeff.is_self_dual():
            raise RuntimeError(
                f"tilting multiplicity {coeff} at {point} is not self-dual"
            )
        mult = coeff.value_at_one()
        if mult < 0:
            raise RuntimeError(f"negative tilting multiplicity {mult} at {point}")
        if mult:
            out[pt_sub(point, rs.rho)] = mult
    return out


def tilting_dim(engine: PathEngine, mu: Point) -> int:
    """Dimension of the indecomposable tilting module: its Weyl-filtration
    multiplicities at v=1 against classical Weyl dimensions."""
    rs = engine.rs
    total = 0
    for point, coeff in engine.compute_n(mu).items():
        total += coeff.value_at_one() * rs.weyl_dim(pt_sub(point, rs.rho))
    return total


def hecke_simple_dims(
    k: int, level: int, n: int, engine: PathEngine | None = None
) -> dict[Point, int]:
    """Dimensions of the simple modules of the Hecke algebra of the symmetric
    group on n letters at a primitive level-th root of unity, keyed by the
    highest weight of the corresponding tilting module in V^(tensor n)."""
    if k < 2:
        raise ValueError("need k >= 2")
    if n < 1:
        raise ValueError("need n >= 1")
    if engine is None:
        engine = PathEngine(RootSystem.build("A", k - 1, level), Memo())
    rs = engine.rs
    zero = tuple(rs.rho[i] - rs.rho[i] for i in range(rs.rank))
    state: dict[Point, int] = {zero: 1}
    tensor_cache: dict[Point, dict[Point, int]] = {}
    for _ in range(n):
        nxt: dict[Point, int] = {}
        for mu, mult in state.items():
            summands = tensor_cache.get(mu)
            if summands is None:
                summands = tensor_with_vector(engine, mu)
                tensor_cache[mu] = summands
            for nu, m in summands.items():
                nxt[nu] = nxt.get(nu, 0) + mult * m
        state = nxt
    return state
