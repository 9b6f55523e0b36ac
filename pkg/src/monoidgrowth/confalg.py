"""Truncated configuration algebra.

Elements are finite rational linear combinations of monomials, a monomial
being a multiset of connected configurations with disjoint union as the
product.  Everything is truncated at a total vertex-count degree and all
arithmetic is exact.

The subgraph-sum element of a finite graph, its logarithm, and the
inverse-transform (kabi) coefficients give the base change into the phi
basis, whose member phi(S) has leading term S with coefficient one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from monoidgrowth.cayley import Subgraph
from monoidgrowth.configurations import (
    Configuration,
    ConfigurationRecord,
    canonicalize,
    count_embeddings,
    enumerate_connected,
)
from monoidgrowth.words import BudgetExceededError, ElementStore

Monomial = tuple[Configuration, ...]

UNIT: Monomial = ()


def monomial_degree(monomial: Monomial) -> int:
    return sum(c.size for c in monomial)


def monomial_product(a: Monomial, b: Monomial) -> Monomial:
    return tuple(sorted(a + b))


class ConfPoly:
    """Graded finite combination of monomials with exact rational
    coefficients, truncated at degree deg_cut."""

    __slots__ = ("deg_cut", "terms")

    def __init__(self, deg_cut: int, terms: dict[Monomial, Fraction] | None = None):
        self.deg_cut = deg_cut
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff and monomial_degree(mono) <= deg_cut:
                    self.terms[mono] = Fraction(coeff)

    @staticmethod
    def zero(deg_cut: int) -> "ConfPoly":
        return ConfPoly(deg_cut)

    @staticmethod
    def one(deg_cut: int) -> "ConfPoly":
        return ConfPoly(deg_cut, {UNIT: Fraction(1)})

    @staticmethod
    def single(config: Configuration, deg_cut: int) -> "ConfPoly":
        return ConfPoly(deg_cut, {(config,): Fraction(1)})

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self.terms.get(monomial, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.coefficient(UNIT)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ConfPoly)
            and self.deg_cut == other.deg_cut
            and self.terms == other.terms
        )

    def __hash__(self) -> int:  # pragma: no cover - not used as dict key
        raise TypeError("ConfPoly is mutable in spirit; do not hash")

    def __add__(self, other: "ConfPoly") -> "ConfPoly":
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            new = out.get(mono, Fraction(0)) + coeff
            if new:
                out[mono] = new
            else:
                out.pop(mono, None)
        return ConfPoly(self.deg_cut, out)

    def __sub__(self, other: "ConfPoly") -> "ConfPoly":
        return self + other.scale(Fraction(-1))

    def scale(self, factor: Fraction | int) -> "ConfPoly":
        factor = Fraction(factor)
        if not factor:
            return ConfPoly.zero(self.deg_cut)
        return ConfPoly(
            self.deg_cut, {m: c * factor for m, c in self.terms.items()}
        )

    def __mul__(self, other: "ConfPoly") -> "ConfPoly":
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            d1 = monomial_degree(m1)
            for m2, c2 in other.terms.items():
                if d1 + monomial_degree(m2) > self.deg_cut:
                    continue
                mono = monomial_product(m1, m2)
                new = out.get(mono, Fraction(0)) + c1 * c2
                if new:
                    out[mono] = new
                else:
                    out.pop(mono, None)
        return ConfPoly(self.deg_cut, out)

    def positive_part(self) -> "ConfPoly":
        return ConfPoly(
            self.deg_cut, {m: c for m, c in self.terms.items() if m != UNIT}
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for mono, coeff in sorted(self.terms.items()):
            name = "*".join(f"[{c.size}:{c.edges}]" for c in mono) or "1"
            bits.append(f"{coeff}*{name}")
        return " + ".join(bits)


def _components(store: ElementStore, vertices: tuple[int, ...]) -> list[frozenset[int]]:
    vs = set(vertices)
    sub = Subgraph(store, vs)
    comps = []
    while vs:
        start = min(vs)
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in sub.neighbors(v):
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
        vs -= comp
    return comps


def a_poly(sub: Subgraph, deg_cut: int, max_subsets: int = 500_000) -> ConfPoly:
    """Sum over all full subgraphs with at most deg_cut vertices of the
    monomial of their connected components; constant term 1 for the empty
    subgraph."""
    verts = sub.sorted_vertices()
    total = sum(
        math.comb(len(verts), k) for k in range(0, min(deg_cut, len(verts)) + 1)
    )
    if total > max_subsets:
        raise BudgetExceededError(
            f"subset enumeration of size {total} exceeds the budget {max_subsets}"
        )
    store = sub.store
    terms: dict[Monomial, Fraction] = {UNIT: Fraction(1)}
    for k in range(1, min(deg_cut, len(verts)) + 1):
        for combo in combinations(verts, k):
            mono = tuple(
                sorted(
                    canonicalize(Subgraph(store, comp))
                    for comp in _components(store, combo)
                )
            )
            terms[mono] = terms.get(mono, Fraction(0)) + 1
    return ConfPoly(deg_cut, terms)


def log_poly(poly: ConfPoly) -> ConfPoly:
    """log(1 + x) = sum (-1)^(k+1) x^k / k, truncated; requires constant
    term 1."""
    if poly.constant_term() != 1:
        raise ValueError("logarithm needs constant term 1")
    x = poly.positive_part()
    out = ConfPoly.zero(poly.deg_cut)
    power = ConfPoly.one(poly.deg_cut)
    for k in range(1, poly.deg_cut + 1):
        power = power * x
        if power.is_zero():
            break
        out = out + power.scale(Fraction((-1) ** (k + 1), k))
    return out


def m_poly(sub: Subgraph, deg_cut: int) -> ConfPoly:
    """Logarithm of the subgraph sum; its point coefficient is the vertex
    count and it is Lie-like up to truncation."""
    return log_poly(a_poly(sub, deg_cut))


class MissingConfigurationsError(RuntimeError):
    """Some configuration first occurs only at the boundary of the scan
    ball, so the table is probably missing configurations; enlarge the
    ball radius."""


@dataclass
class KabiTable:
    """Embedding-count matrix over connected configurations up to max_deg
    and its inverse-transform coefficients.

    A[i][j] counts embeddings of configs[i] into a representative of
    configs[j]; the matrix is unitriangular in the (size, form) order and
    K[i][j] = (-1)^(#j - #i) * inverse(A)[i][j] is nonnegative.
    """

    store: ElementStore
    max_deg: int
    ball_radius: int
    records: list[ConfigurationRecord]
    A: list[list[int]]
    K: list[list[int]]
    index: dict[Configuration, int] = field(init=False)

    def __post_init__(self) -> None:
        self.index = {rec.config: i for i, rec in enumerate(self.records)}

    @property
    def configs(self) -> list[Configuration]:
        return [rec.config for rec in self.records]

    def representative(self, config: Configuration) -> Subgraph:
        return Subgraph(
            self.store, self.records[self.index[config]].representative
        )

    def kabi(self, t: Configuration, s: Configuration) -> int:
        return self.K[self.index[t]][self.index[s]]

    def embedding_count(self, s: Configuration, t: Configuration) -> int:
        return self.A[self.index[s]][self.index[t]]


def build_kabi_table(
    store: ElementStore, max_deg: int, ball_radius: int
) -> KabiTable:
    """Build the embedding-count matrix on all connected configurations of
    size <= max_deg found in the ball and invert it exactly.

    A configuration first occurring exactly at the scan radius suggests
    the ball is too small to have seen everything, and is rejected.
    """
    from monoidgrowth.cayley import build_ball

    records = enumerate_connected(build_ball(store, ball_radius), max_deg)
    late = [r for r in records if r.first_radius >= ball_radius]
    if late:
        raise MissingConfigurationsError(
            f"{len(late)} configurations first occur at radius {ball_radius}; "
            "increase the ball radius"
        )
    n = len(records)
    reps = [Subgraph(store, rec.representative) for rec in records]
    A = [
        [count_embeddings(records[i].config, reps[j]) for j in range(n)]
        for i in range(n)
    ]
    for i in range(n):
        if A[i][i] != 1:
            raise AssertionError("embedding matrix is not unitriangular")
        for j in range(i):
            if A[i][j] != 0:
                raise AssertionError("embedding matrix is not upper triangular")
    # exact inverse of a unitriangular integer matrix, by back substitution
    B = [[0] * n for _ in range(n)]
    for j in range(n):
        B[j][j] = 1
        for i in range(j - 1, -1, -1):
            B[i][j] = -sum(A[i][k] * B[k][j] for k in range(i + 1, j + 1))
    K = [[0] * n for _ in range(n)]
    sizes = [rec.config.size for rec in records]
    for i in range(n):
        for j in range(n):
            K[i][j] = (-1) ** (sizes[j] - sizes[i]) * B[i][j]
            if K[i][j] < 0:
                raise AssertionError("kabi coefficient came out negative")
    return KabiTable(store, max_deg, ball_radius, records, A, K)


def phi(table: KabiTable, config: Configuration, deg_cut: int) -> ConfPoly:
    """Basis element with leading term `config`, as a combination of
    logarithms of representative subgraph sums."""
    j = table.index[config]
    out = ConfPoly.zero(deg_cut)
    for i, rec in enumerate(table.records):
        k = table.K[i][j]
        if k == 0:
            continue
        sign = (-1) ** (rec.config.size - config.size)
        out = out + m_poly(table.representative(rec.config), deg_cut).scale(sign * k)
    return out


def lie_coordinates(
    table: KabiTable, poly: ConfPoly
) -> tuple[dict[Configuration, Fraction], ConfPoly]:
    """Express a polynomial in the phi basis by triangular peeling.

    Returns the coordinates on the basis elements of size <= deg_cut and
    the residual; the residual is zero exactly when the input is in the
    phi span up to truncation.
    """
    if poly.deg_cut > table.max_deg:
        raise ValueError(
            f"need kabi table to degree {poly.deg_cut}, have {table.max_deg}"
        )
    remainder = poly
    coords: dict[Configuration, Fraction] = {}
    for rec in table.records:
        coeff = remainder.coefficient((rec.config,))
        if coeff:
            coords[rec.config] = coeff
            remainder = remainder - phi(table, rec.config, poly.deg_cut).scale(coeff)
    return coords, remainder
