"""Canonical forms of connected configurations and embedding counts.

A configuration is the isomorphism class of a finite connected full
subgraph of the Cayley graph.  Because every vertex has at most one in-
and one out-edge per label, a traversal from a fixed root is forced; the
canonical form is the minimum over root choices of the traversal
serialization.  No general graph-isomorphism machinery is needed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from monoidgrowth.cayley import CayleyBall, Subgraph, build_ball, connected_vertex_sets
from monoidgrowth.words import ElementStore


class DisconnectedError(ValueError):
    """Canonical forms exist for connected subgraphs only."""


class NoRepresentativeError(ValueError):
    """No representative of the configuration lies in the horizon ball."""


Edge = tuple[int, int, int]  # (source index, label, target index)


@dataclass(frozen=True, order=True)
class Configuration:
    """Canonical form of a connected colored digraph: vertex count plus
    the induced edges over traversal indices, sorted."""

    size: int
    edges: tuple[Edge, ...]

    def labels(self) -> tuple[int, ...]:
        return tuple(sorted(g for _, g, _ in self.edges))

    def to_text(self, generators: tuple[str, ...]) -> str:
        if not self.edges:
            return f"{self.size}:"
        body = ",".join(f"{u}-{generators[g]}->{v}" for u, g, v in self.edges)
        return f"{self.size}:{body}"


POINT = Configuration(1, ())


def _traversal_from(sub: Subgraph, root: int) -> list[int]:
    """Forced BFS order: out-edges then in-edges, labels ascending."""
    order = [root]
    seen = {root}
    pos = 0
    while pos < len(order):
        v = order[pos]
        pos += 1
        for g in range(sub.rank):
            t = sub.out(v, g)
            if t is not None and t not in seen:
                seen.add(t)
                order.append(t)
            u = sub.inn(v, g)
            if u is not None and u not in seen:
                seen.add(u)
                order.append(u)
    return order


def canonicalize(sub: Subgraph) -> Configuration:
    """Canonical form; equal forms exactly characterize label-preserving
    isomorphism of connected full subgraphs."""
    verts = sub.sorted_vertices()
    if not verts:
        raise DisconnectedError("empty subgraph has no configuration")
    best: tuple[Edge, ...] | None = None
    for root in verts:
        order = _traversal_from(sub, root)
        if len(order) != len(verts):
            raise DisconnectedError("subgraph is not connected")
        index = {v: i for i, v in enumerate(order)}
        edges = sorted(
            (index[u], g, index[t]) for u, g, t in sub.edges()
        )
        cand = tuple(edges)
        if best is None or cand < best:
            best = cand
    return Configuration(len(verts), best or ())


def _discovery_plan(config: Configuration) -> list[tuple[int, int, int, bool]]:
    """Steps (known, label, new, via_out) that determine an embedding from
    the image of vertex 0."""
    known = {0}
    steps: list[tuple[int, int, int, bool]] = []
    while len(known) < config.size:
        progressed = False
        for i, g, j in config.edges:
            if i in known and j not in known:
                steps.append((i, g, j, True))
                known.add(j)
                progressed = True
            elif j in known and i not in known:
                steps.append((j, g, i, False))
                known.add(i)
                progressed = True
        if not progressed:
            raise DisconnectedError("configuration is not connected")
    return steps


def embeddings(config: Configuration, target: Subgraph) -> set[frozenset[int]]:
    """Vertex sets of all full subgraphs of the target with this
    configuration.  An embedding of a connected configuration is
    determined by the image of one vertex; fullness is verified
    explicitly."""
    plan = _discovery_plan(config)
    rank = target.rank
    n_edges = len(config.edges)
    images: set[frozenset[int]] = set()
    image: list[int | None] = [None] * config.size
    for anchor in target.sorted_vertices():
        image[0] = anchor
        ok = True
        for i, g, j, via_out in plan:
            t = target.out(image[i], g) if via_out else target.inn(image[i], g)
            if t is None:
                ok = False
                break
            image[j] = t
        if not ok:
            continue
        vertex_set = set(image)
        if len(vertex_set) != config.size:
            continue
        if not all(target.out(image[i], g) == image[j] for i, g, j in config.edges):
            continue
        induced = sum(
            1
            for v in vertex_set
            for g in range(rank)
            if target.out(v, g) in vertex_set
        )
        if induced == n_edges:
            images.add(frozenset(vertex_set))
    return images


def count_embeddings(config: Configuration, target: Subgraph) -> int:
    return len(embeddings(config, target))


def embedding_counts_by_radius(
    store: ElementStore, config: Configuration, max_radius: int
) -> list[int]:
    """A(S, ball(n)) for n = 0..max_radius, from one enumeration: an image
    lies in the n-ball iff its maximal vertex length is at most n."""
    ball = build_ball(store, max_radius)
    hist = [0] * (max_radius + 1)
    for image in embeddings(config, ball):
        hist[max(store.length(v) for v in image)] += 1
    counts = []
    total = 0
    for n in range(max_radius + 1):
        total += hist[n]
        counts.append(total)
    return counts


@dataclass(frozen=True)
class ConfigurationRecord:
    config: Configuration
    first_radius: int
    representative: frozenset[int]


def enumerate_connected(ball: CayleyBall, max_size: int) -> list[ConfigurationRecord]:
    """All connected configurations with at most max_size vertices that
    occur in the ball, each with its first-occurrence radius
    min{n : A(S, ball(n)) != 0} and a smallest representative.  Output is
    sorted by (size, canonical form)."""
    store = ball.store
    found: dict[Configuration, tuple[int, tuple[int, ...]]] = {}
    for vs in connected_vertex_sets(ball, max_size):
        config = canonicalize(Subgraph(store, vs))
        radius = max(store.length(v) for v in vs)
        key = (radius, tuple(sorted(vs)))
        old = found.get(config)
        if old is None or key < old:
            found[config] = key
    return [
        ConfigurationRecord(config, radius, frozenset(vs))
        for config, (radius, vs) in sorted(found.items())
    ]


# -- class-C invariants -----------------------------------------------------


def _first_images(
    store: ElementStore, config: Configuration, limit: int, radius: int | None = None
) -> list[frozenset[int]]:
    """Up to `limit` distinct embedding images in the given ball (the
    horizon ball by default), found in anchor order."""
    ball = build_ball(store, store.horizon if radius is None else radius)
    plan = _discovery_plan(config)
    images: list[frozenset[int]] = []
    image: list[int | None] = [None] * config.size
    for anchor in ball.sorted_vertices():
        image[0] = anchor
        ok = True
        for i, g, j, via_out in plan:
            t = ball.out(image[i], g) if via_out else ball.inn(image[i], g)
            if t is None:
                ok = False
                break
            image[j] = t
        if not ok:
            continue
        vertex_set = frozenset(image)
        if len(vertex_set) != config.size or vertex_set in images:
            continue
        if not all(ball.out(image[i], g) == image[j] for i, g, j in config.edges):
            continue
        induced = sum(
            1
            for v in vertex_set
            for g in range(ball.rank)
            if ball.out(v, g) in vertex_set
        )
        if induced == len(config.edges):
            images.append(vertex_set)
            if len(images) >= limit:
                break
    return images


def _reduce_by_gcd(store: ElementStore, image: frozenset[int]) -> frozenset[int]:
    g = store.gcd_l(image)
    return frozenset(store.left_quotient(g, v) for v in image)


def minimal_representative(store: ElementStore, config: Configuration) -> Subgraph:
    """The unique representative whose vertex set has left gcd e.

    Computed as gcd^-1 * S for a representative S; when a second
    representative is available the independence of the choice is
    asserted, which guards against presentations without unique left
    gcds."""
    images = _first_images(store, config, limit=2)
    if not images:
        raise NoRepresentativeError(
            f"no representative of {config} within horizon {store.horizon}"
        )
    minimal = _reduce_by_gcd(store, images[0])
    if len(images) > 1:
        other = _reduce_by_gcd(store, images[1])
        if other != minimal:
            raise ValueError(
                "minimal representative depends on the representative; "
                "presentation is outside the left-gcd class"
            )
    assert store.gcd_l(minimal) == 0
    return Subgraph(store, minimal)


def radius_L(store: ElementStore, config: Configuration) -> int:
    """Maximal vertex length of the minimal representative."""
    rep = minimal_representative(store, config)
    return max(store.length(v) for v in rep.vertices)


def diameter_d(config: Configuration) -> int:
    """Graph diameter with edges taken undirected."""
    adj: dict[int, set[int]] = {i: set() for i in range(config.size)}
    for i, _, j in config.edges:
        adj[i].add(j)
        adj[j].add(i)
    best = 0
    for start in range(config.size):
        dist = {start: 0}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        best = max(best, max(dist.values()))
    return best


# -- the counting identity behind the partition function --------------------


@dataclass(frozen=True)
class FormulaReport:
    config: Configuration
    radius: int
    extended_count: int
    inner_count: int
    dead_bound: int

    @property
    def difference(self) -> int:
        return self.extended_count - self.inner_count

    @property
    def passed(self) -> bool:
        return 0 <= self.difference <= self.dead_bound


def check_counting_formula(
    store: ElementStore, config: Configuration, n: int
) -> FormulaReport:
    """Check 0 <= A(S*ball_1, ball(n)) - A(S, ball(n-1)) <= #S * #dead on
    the n-sphere; with no dead elements this is an equality."""
    from monoidgrowth.cayley import right_extend

    if n < 1 or n >= store.horizon:
        raise ValueError(f"radius {n} must be in 1..{store.horizon - 1}")
    images = _first_images(store, config, limit=1, radius=store.horizon - 1)
    if not images:
        raise NoRepresentativeError(
            f"no representative of {config} inside ball({store.horizon - 1})"
        )
    host = build_ball(store, store.horizon)
    extended = canonicalize(right_extend(Subgraph(store, images[0]), host))
    extended_count = count_embeddings(extended, build_ball(store, n))
    inner_count = count_embeddings(config, build_ball(store, n - 1))
    sphere_dead = sum(
        1 for d in store.dead_elements(n) if store.length(d) == n
    )
    return FormulaReport(
        config, n, extended_count, inner_count, config.size * sphere_dead
    )
