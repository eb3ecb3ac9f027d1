"""Exact Laurent polynomials over the integers in one variable v.

Everything downstream is linear algebra over Z[v, v^-1], so this module is
deliberately small and boring: a canonical sparse representation (no stored
zero coefficients, terms sorted by exponent), exact integer arithmetic, the
bar involution v -> v^-1, and the self-duality predicate for elements fixed
by it.

Values are immutable and hashable, hence safe as dict keys and safe to share
between threads.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class LaurentPoly:
    """An integer Laurent polynomial, stored as sorted (exponent, coeff) pairs."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[int, int]] = ()):
        merged: dict[int, int] = {}
        for e, c in terms:
            merged[e] = merged.get(e, 0) + c
        self._terms: tuple[tuple[int, int], ...] = tuple(
            sorted((e, c) for e, c in merged.items() if c != 0)
        )

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return _ZERO

    @staticmethod
    def one() -> "LaurentPoly":
        return _ONE

    @staticmethod
    def monomial(coeff: int, exponent: int) -> "LaurentPoly":
        return LaurentPoly([(exponent, coeff)])

    @staticmethod
    def v(exponent: int = 1) -> "LaurentPoly":
        return LaurentPoly([(exponent, 1)])

    # -- inspection --------------------------------------------------------

    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms)

    def coefficient(self, exponent: int) -> int:
        for e, c in self._terms:
            if e == exponent:
                return c
        return 0

    def constant_term(self) -> int:
        return self.coefficient(0)

    def min_exponent(self) -> int:
        if not self._terms:
            raise ValueError("min_exponent of the zero polynomial")
        return self._terms[0][0]

    def max_exponent(self) -> int:
        if not self._terms:
            raise ValueError("max_exponent of the zero polynomial")
        return self._terms[-1][0]

    def value_at_one(self) -> int:
        return sum(c for _, c in self._terms)

    def is_self_dual(self) -> bool:
        return self.bar() == self

    def in_v_times_positive_part(self) -> bool:
        """True iff every exponent is >= 1 (the polynomial lies in v*Z[v])."""
        return not self._terms or self._terms[0][0] >= 1

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(self._terms + other._terms)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(self._terms + tuple((e, -c) for e, c in other._terms))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly((e, -c) for e, c in self._terms)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly((e, c * other) for e, c in self._terms)
        acc: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly(acc.items())

    __rmul__ = __mul__

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiply by v^k."""
        return LaurentPoly((e + k, c) for e, c in self._terms)

    def bar(self) -> "LaurentPoly":
        """The involution sending v to v^-1."""
        return LaurentPoly((-e, c) for e, c in self._terms)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ValueError when other does not divide self."""
        if not other:
            raise ValueError("division by zero polynomial")
        if not self:
            return _ZERO
        rem = dict(self._terms)
        lead_e, lead_c = other._terms[-1]
        out: dict[int, int] = {}
        while rem:
            e = max(rem)
            q, r = divmod(rem[e], lead_c)
            if r != 0:
                raise ValueError("not divisible")
            out[e - lead_e] = q
            for e2, c2 in other._terms:
                e3 = e - lead_e + e2
                c3 = rem.get(e3, 0) - q * c2
                if c3 == 0:
                    rem.pop(e3, None)
                else:
                    rem[e3] = c3
        return LaurentPoly(out.items())

    # -- comparisons, hashing, display --------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms:
            if e == 0:
                parts.append(f"{c}")
            else:
                mono = "v" if e == 1 else f"v^{e}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    # -- serialization -------------------------------------------------------

    def to_pairs(self) -> list[list[int]]:
        """Sorted [exponent, coefficient] pairs, the wire format of the CLI."""
        return [[e, c] for e, c in self._terms]

    @staticmethod
    def from_pairs(pairs: Iterable[Iterable[int]]) -> "LaurentPoly":
        return LaurentPoly((int(e), int(c)) for e, c in pairs)


_ZERO = LaurentPoly()
_ONE = LaurentPoly([(0, 1)])
