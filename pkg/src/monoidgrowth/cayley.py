"""Colored directed Cayley balls and their full subgraphs.

Subgraphs are vertex sets; edges are always the induced ones, looked up
through the element store's product table.  Per vertex and label there is
at most one outgoing and one incoming edge (cancellativity), which makes
label-preserving isomorphisms rigid: an isomorphism of connected
subgraphs is determined by the image of a single vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from monoidgrowth.words import NO_ELEMENT, ElementStore, HorizonExceededError


class Subgraph:
    """A full subgraph of the Cayley graph, given by its vertex set."""

    __slots__ = ("store", "vertices")

    def __init__(self, store: ElementStore, vertices: Iterable[int]) -> None:
        self.store = store
        self.vertices = frozenset(vertices)

    @property
    def rank(self) -> int:
        return self.store.rank

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    def sorted_vertices(self) -> list[int]:
        return sorted(self.vertices)

    def out(self, v: int, g: int) -> int | None:
        """Target of the induced edge v --g-->, if any."""
        t = self.store.product[v][g]
        if t != NO_ELEMENT and t in self.vertices:
            return t
        return None

    def inn(self, v: int, g: int) -> int | None:
        """Source of the induced edge --g--> v, if any."""
        for u, h in self.store.predecessors(v):
            if h == g and u in self.vertices:
                return u
        return None

    def neighbors(self, v: int) -> list[int]:
        """Undirected neighbors inside the subgraph, sorted."""
        near = set()
        for g in range(self.rank):
            t = self.out(v, g)
            if t is not None and t != v:
                near.add(t)
            u = self.inn(v, g)
            if u is not None and u != v:
                near.add(u)
        return sorted(near)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Induced edges in deterministic (source, label) order."""
        for v in self.sorted_vertices():
            for g in range(self.rank):
                t = self.out(v, g)
                if t is not None:
                    yield (v, g, t)

    def is_connected(self) -> bool:
        verts = self.vertices
        if not verts:
            return True
        start = next(iter(verts))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(verts)


class CayleyBall(Subgraph):
    """The full subgraph on all elements of length <= radius."""

    __slots__ = ("radius",)

    def __init__(self, store: ElementStore, radius: int) -> None:
        size = store.ball_size(radius)
        super().__init__(store, range(size))
        self.radius = radius


def build_ball(store: ElementStore, radius: int) -> CayleyBall:
    if radius > store.horizon:
        raise HorizonExceededError(
            f"ball of radius {radius} exceeds horizon {store.horizon}"
        )
    return CayleyBall(store, radius)


def edge_list_text(graph: Subgraph) -> str:
    """Plain-text export: vertex-count header, one `source label target`
    line per edge, ordered by (source, label)."""
    names = graph.store.presentation.generators
    lines = [f"vertices {len(graph)}"]
    lines.extend(f"{u} {names[g]} {v}" for u, g, v in graph.edges())
    return "\n".join(lines) + "\n"


def right_extend(subgraph: Subgraph, host: Subgraph) -> Subgraph:
    """The full subgraph on S union S*G inside the host.

    Extending a subgraph of the n-ball needs the (n+1)-ball as host.
    """
    store = subgraph.store
    vertices = set(subgraph.vertices)
    for v in subgraph.vertices:
        if v not in host.vertices:
            raise HorizonExceededError("subgraph does not lie in the host")
        for g in range(store.rank):
            t = store.product[v][g]
            if t == NO_ELEMENT or t not in host.vertices:
                raise HorizonExceededError(
                    "host ball too small for the right extension"
                )
            vertices.add(t)
    return Subgraph(store, vertices)


# -- connected vertex-set enumeration --------------------------------------


def connected_vertex_sets(graph: Subgraph, max_size: int) -> Iterator[frozenset[int]]:
    """All connected vertex subsets with 1..max_size vertices, each exactly
    once, in a deterministic order (ESU-style extension)."""
    verts = graph.sorted_vertices()
    adj = {v: graph.neighbors(v) for v in verts}

    def extend(
        sub: tuple[int, ...], ext: list[int], root: int, closed: set[int]
    ) -> Iterator[frozenset[int]]:
        yield frozenset(sub)
        if len(sub) == max_size:
            return
        ext = list(ext)
        while ext:
            w = ext.pop(0)
            fresh = [
                u for u in adj[w] if u > root and u not in closed
            ]
            new_closed = closed | set(fresh)
            yield from extend(sub + (w,), ext + fresh, root, new_closed)

    for v in verts:
        ext0 = [u for u in adj[v] if u > v]
        yield from extend((v,), ext0, v, {v, *ext0})


# -- isomorphisms ----------------------------------------------------------


def _propagation_order(graph: Subgraph, verts: list[int]) -> list[tuple[int, int, int, bool]]:
    """Steps (known_vertex, label, new_vertex, via_out) covering all of
    `verts` from verts[0], following edges in label order."""
    known = {verts[0]}
    steps: list[tuple[int, int, int, bool]] = []
    frontier = [verts[0]]
    while frontier:
        nxt: list[int] = []
        for v in frontier:
            for g in range(graph.rank):
                t = graph.out(v, g)
                if t is not None and t not in known:
                    known.add(t)
                    steps.append((v, g, t, True))
                    nxt.append(t)
                u = graph.inn(v, g)
                if u is not None and u not in known:
                    known.add(u)
                    steps.append((v, g, u, False))
                    nxt.append(u)
        frontier = nxt
    if len(known) != len(verts):
        raise ValueError("subgraph is not connected")
    return steps


def isomorphisms(g1: Subgraph, g2: Subgraph) -> list[dict[int, int]]:
    """All label-preserving isomorphisms g1 -> g2 between connected full
    subgraphs.  Rigidity makes this a scan over anchor images."""
    if len(g1) != len(g2):
        return []
    v1 = g1.sorted_vertices()
    steps = _propagation_order(g1, v1)
    e1 = sum(1 for _ in g1.edges())
    e2 = sum(1 for _ in g2.edges())
    if e1 != e2:
        return []
    found: list[dict[int, int]] = []
    for anchor in g2.sorted_vertices():
        phi = {v1[0]: anchor}
        ok = True
        for v, g, w, via_out in steps:
            t = g2.out(phi[v], g) if via_out else g2.inn(phi[v], g)
            if t is None:
                ok = False
                break
            phi[w] = t
        if not ok or len(set(phi.values())) != len(v1):
            continue
        # full edge correspondence; equal counts make inclusion equality
        if all(
            g2.out(phi[u], g) == phi[v] for u, g, v in g1.edges()
        ):
            found.append(phi)
    return found


# -- extension property (isomorphism extension along S |-> S * ball_1) -----


@dataclass(frozen=True)
class ExtensionReport:
    radius: int
    max_size: int
    classes: int
    pairs_checked: int
    isomorphisms_checked: int
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def _extension_of(phi: dict[int, int], sub1: Subgraph, host: Subgraph) -> dict[int, int] | None:
    """Extend phi along alpha*beta |-> phi(alpha)*beta; None when the
    assignments clash (the extension is not well defined)."""
    store = sub1.store
    ext: dict[int, int] = dict(phi)
    for a in sub1.sorted_vertices():
        for g in range(store.rank):
            t = store.product[a][g]
            u = store.product[phi[a]][g]
            if t == NO_ELEMENT or u == NO_ELEMENT:
                raise HorizonExceededError("extension leaves the enumerated ball")
            if t in ext and ext[t] != u:
                return None
            ext[t] = u
    return ext


def check_extension_property(
    store: ElementStore, radius: int, max_size: int
) -> ExtensionReport:
    """For every isomorphism between connected full subgraphs of the
    radius-ball with at most max_size vertices, check that it extends to
    an isomorphism of the right extensions, and that every isomorphism of
    the extensions restricts to one of the original subgraphs.

    Checking (representative, member) pairs suffices: isomorphisms
    compose, so failures elsewhere would show up here too.
    """
    if radius + 1 > store.horizon:
        raise HorizonExceededError("extension check needs horizon > radius")
    ball = build_ball(store, radius)
    host = build_ball(store, radius + 1)
    failures: list[str] = []
    # bucket by a cheap invariant before trying isomorphisms
    buckets: dict[tuple, list[tuple[Subgraph, Subgraph]]] = {}
    pairs = 0
    isos = 0
    for vs in connected_vertex_sets(ball, max_size):
        sub = Subgraph(store, vs)
        sub_ext = right_extend(sub, host)
        key = (len(vs), tuple(sorted(g for _, g, _ in sub.edges())))
        rep = rep_ext = None
        for cand, cand_ext in buckets.get(key, ()):
            if isomorphisms(cand, sub):
                rep, rep_ext = cand, cand_ext
                break
        if rep is None:
            buckets.setdefault(key, []).append((sub, sub_ext))
            rep, rep_ext = sub, sub_ext
        pairs += 1
        rep_ext_edges = list(rep_ext.edges())
        sub_ext_edge_count = sum(1 for _ in sub_ext.edges())
        for phi in isomorphisms(rep, sub):
            isos += 1
            ext = _extension_of(phi, rep, host)
            if ext is None:
                failures.append(
                    f"extension of {sorted(phi.items())} is not well defined"
                )
                continue
            image = set(ext.values())
            if image != sub_ext.vertices or len(image) != len(ext):
                failures.append(
                    f"extension of {sorted(phi.items())} is not a bijection onto S*ball_1"
                )
                continue
            if len(rep_ext_edges) != sub_ext_edge_count or not all(
                sub_ext.out(ext[u], g) == ext[v] for u, g, v in rep_ext_edges
            ):
                failures.append(
                    f"extension of {sorted(phi.items())} does not preserve edges"
                )
        for psi in isomorphisms(rep_ext, sub_ext):
            isos += 1
            restricted = {psi[v] for v in rep.vertices}
            if restricted != sub.vertices:
                failures.append(
                    f"isomorphism of extensions does not restrict: "
                    f"{sorted(rep.vertices)} maps onto {sorted(restricted)}"
                )
    classes = sum(len(v) for v in buckets.values())
    return ExtensionReport(
        radius, max_size, classes, pairs, isos, tuple(failures)
    )
