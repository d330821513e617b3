"""Weighted multigraphs, shortest-path distance fields and short-edge contraction.

Edge lengths drive every distance computation; edge weights (by default the
reciprocal of the length) drive every cost computation.  Keeping the two
separate lets callers re-weight a graph without touching its metric.
"""
from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

#: Relative tolerance used when testing ``dist(u) + d(u, v) == dist(v)``.
REL_TOL = 1e-9


class GraphError(ValueError):
    """Malformed graph or violated precondition."""


class DisconnectedGraphError(GraphError):
    """An operation that needs a connected graph received a disconnected one."""


class WeightedMultigraph:
    """Immutable undirected multigraph with positive edge lengths.

    Edge ids are positions in the edge sequence.  Parallel edges and
    self-loops are kept as given.  ``adj[v]`` lists ``(neighbor, length,
    edge_id)`` for every edge incident to ``v``; a self-loop appears once.
    """

    __slots__ = ("n", "_u", "_v", "_len", "_w", "_adj", "_unit")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int, float]],
        weights: Sequence[float] | None = None,
    ):
        if n < 1:
            raise GraphError(f"vertex count must be >= 1, got {n}")
        us, vs, lens = [], [], []
        for i, (u, v, length) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {i}: endpoint out of range for n={n}: ({u}, {v})")
            length = float(length)
            if not (length > 0.0 and math.isfinite(length)):
                raise GraphError(f"edge {i}: length must be positive and finite, got {length!r}")
            us.append(int(u))
            vs.append(int(v))
            lens.append(length)
        if weights is None:
            ws = tuple(1.0 / d for d in lens)
        else:
            ws = tuple(float(w) for w in weights)
            if len(ws) != len(lens):
                raise GraphError(f"expected {len(lens)} weights, got {len(ws)}")
            for i, w in enumerate(ws):
                if not (w > 0.0 and math.isfinite(w)):
                    raise GraphError(f"edge {i}: weight must be positive and finite, got {w!r}")
        self._fill(n, us, vs, lens, ws)

    def _fill(self, n, us, vs, lens, ws) -> None:
        adj: list[list[tuple[int, float, int]]] = [[] for _ in range(n)]
        for eid, (u, v, d) in enumerate(zip(us, vs, lens)):
            adj[u].append((v, d, eid))
            if v != u:
                adj[v].append((u, d, eid))
        self.n = n
        self._u = tuple(us)
        self._v = tuple(vs)
        self._len = tuple(lens)
        self._w = tuple(ws)
        self._adj = tuple(tuple(a) for a in adj)
        self._unit = all(d == 1.0 for d in lens)

    @classmethod
    def _trusted(cls, n, us, vs, lens, ws) -> "WeightedMultigraph":
        """Build from columns already known to be valid, skipping the checks."""
        g = cls.__new__(cls)
        g._fill(n, us, vs, lens, ws)
        return g

    @property
    def m(self) -> int:
        return len(self._len)

    @property
    def tails(self) -> tuple[int, ...]:
        return self._u

    @property
    def heads(self) -> tuple[int, ...]:
        return self._v

    @property
    def lengths(self) -> tuple[float, ...]:
        return self._len

    @property
    def weights(self) -> tuple[float, ...]:
        return self._w

    @property
    def adj(self) -> tuple[tuple[tuple[int, float, int], ...], ...]:
        return self._adj

    @property
    def is_unit(self) -> bool:
        """True when every edge has length exactly 1."""
        return self._unit

    @property
    def has_default_weights(self) -> bool:
        return all(w == 1.0 / d for w, d in zip(self._w, self._len))

    def edge(self, eid: int) -> tuple[int, int, float]:
        return self._u[eid], self._v[eid], self._len[eid]

    def edges(self) -> list[tuple[int, int, float]]:
        return list(zip(self._u, self._v, self._len))

    def other_end(self, eid: int, x: int) -> int:
        u = self._u[eid]
        return self._v[eid] if u == x else u

    def is_connected(self) -> bool:
        seen = [False] * self.n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for w, _, _ in self._adj[u]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    queue.append(w)
        return count == self.n

    def with_weights(self, weights: Sequence[float]) -> "WeightedMultigraph":
        """Same vertices, edges and lengths; new per-edge weights."""
        return WeightedMultigraph(self.n, self.edges(), weights)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedMultigraph):
            return NotImplemented
        return (
            self.n == other.n
            and self._u == other._u
            and self._v == other._v
            and self._len == other._len
            and self._w == other._w
        )

    def __hash__(self) -> int:
        return hash((self.n, self._u, self._v, self._len))

    def __repr__(self) -> str:
        return f"WeightedMultigraph(n={self.n}, m={self.m})"


def build_graph(n: int, edge_list: Iterable[tuple[int, int, float]]) -> WeightedMultigraph:
    """Build a multigraph on vertices ``0..n-1`` with edges in the given order."""
    return WeightedMultigraph(n, edge_list)


def require_connected(g: WeightedMultigraph) -> None:
    if not g.is_connected():
        raise DisconnectedGraphError(f"graph with n={g.n}, m={g.m} is not connected")


# ---------------------------------------------------------------------------
# shortest paths


def _shortest_paths(
    g: WeightedMultigraph,
    sources: Iterable[int],
    alive: Sequence[bool] | None = None,
) -> list[float]:
    """Multi-source distances; vertices with ``alive[v]`` false are skipped.

    Unit-length graphs use breadth-first search.  Otherwise Dijkstra with a
    binary heap keyed on ``(dist, vertex)`` so equal keys pop lowest id first.
    """
    n = g.n
    adj = g._adj
    dist = [math.inf] * n
    if g._unit:
        queue = deque()
        for s in sorted(set(sources)):
            dist[s] = 0.0
            queue.append(s)
        while queue:
            u = queue.popleft()
            du = dist[u] + 1.0
            for w, _, _ in adj[u]:
                if du < dist[w] and (alive is None or alive[w]):
                    dist[w] = du
                    queue.append(w)
        return dist

    heap = []
    for s in sorted(set(sources)):
        dist[s] = 0.0
        heap.append((0.0, s))
    heapq.heapify(heap)
    done = [False] * n
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        d, u = pop(heap)
        if done[u]:
            continue
        done[u] = True
        for w, length, _ in adj[u]:
            nd = d + length
            if nd < dist[w] and (alive is None or alive[w]):
                dist[w] = nd
                push(heap, (nd, w))
    return dist


def tolerance_for(dist: Iterable[float]) -> float:
    """Absolute tolerance for tight-edge tests, scaled by the largest finite distance."""
    scale = max((d for d in dist if d != math.inf), default=0.0)
    return REL_TOL * max(1.0, scale)


@dataclass(frozen=True)
class DistanceField:
    """Distances to a source set plus the induced forward-arc orientation.

    ``forward[e] = (a, b)`` where ``a`` marks arc ``tails[e] -> heads[e]`` and
    ``b`` marks the reverse arc.
    """

    sources: frozenset[int]
    dist: tuple[float, ...]
    forward: tuple[tuple[bool, bool], ...]
    tol: float

    def is_forward(self, g: WeightedMultigraph, eid: int, tail: int) -> bool:
        a, b = self.forward[eid]
        return a if g._u[eid] == tail else b

    def forward_arcs(self, g: WeightedMultigraph) -> set[tuple[int, int]]:
        arcs = set()
        for eid, (a, b) in enumerate(self.forward):
            if a:
                arcs.add((g._u[eid], g._v[eid]))
            if b:
                arcs.add((g._v[eid], g._u[eid]))
        return arcs


def _forward_marks(g: WeightedMultigraph, dist: Sequence[float], tol: float):
    marks = []
    for u, v, d in zip(g._u, g._v, g._len):
        du, dv = dist[u], dist[v]
        if u == v or du == math.inf or dv == math.inf:
            marks.append((False, False))
        else:
            marks.append((abs(du + d - dv) <= tol, abs(dv + d - du) <= tol))
    return tuple(marks)


def _field(g, sources, alive=None) -> DistanceField:
    dist = _shortest_paths(g, sources, alive)
    tol = tolerance_for(dist)
    return DistanceField(frozenset(sources), tuple(dist), _forward_marks(g, dist, tol), tol)


def multi_source_distances(g: WeightedMultigraph, sources: Iterable[int]) -> DistanceField:
    """Shortest-path distances from the set ``sources`` and forward marks.

    Arc ``u -> v`` is forward when ``|dist(u) + d(u, v) - dist(v)| <= tol``.
    Self-loops are never forward.
    """
    sources = frozenset(sources)
    if not sources:
        raise GraphError("source set must be nonempty")
    for s in sources:
        if not 0 <= s < g.n:
            raise GraphError(f"source {s} out of range")
    return _field(g, sources)


def radius_from(g: WeightedMultigraph, x: int) -> float:
    """Largest shortest-path distance from ``x``."""
    dist = _shortest_paths(g, (x,))
    rho = max(dist)
    if rho == math.inf:
        raise DisconnectedGraphError(f"vertex {x} does not reach every vertex")
    return rho


def _shell(g: WeightedMultigraph, dist: Sequence[float], inside: Sequence[bool], tol: float) -> list[int]:
    shell = []
    adj = g._adj
    for u in range(g.n):
        if inside[u] or dist[u] == math.inf:
            continue
        du = dist[u]
        for w, length, _ in adj[u]:
            if inside[w] and abs(dist[w] + length - du) <= tol:
                shell.append(u)
                break
    return shell


def ball(g: WeightedMultigraph, x: int, r: float) -> set[int]:
    """Vertices within distance ``r`` of ``x``."""
    dist = _shortest_paths(g, (x,))
    return {v for v, d in enumerate(dist) if d <= r}


def ball_shell(g: WeightedMultigraph, x: int, r: float) -> set[int]:
    """Vertices outside ``ball(g, x, r)`` reached from it by a tight edge."""
    dist = _shortest_paths(g, (x,))
    inside = [d <= r for d in dist]
    return set(_shell(g, dist, inside, tolerance_for(dist)))


# ---------------------------------------------------------------------------
# subgraphs, volume, cost


@dataclass(frozen=True)
class Subgraph:
    """Induced subgraph with id maps back to the parent graph.

    Local vertex ids follow increasing parent id; edges keep parent order.
    """

    graph: WeightedMultigraph
    vertices: tuple[int, ...]
    edge_origin: tuple[int, ...]

    @property
    def index(self) -> dict[int, int]:
        return {p: i for i, p in enumerate(self.vertices)}


def induced_subgraphs(g: WeightedMultigraph, parts: Sequence[Iterable[int]]) -> list[Subgraph]:
    """Induced subgraphs for pairwise disjoint vertex sets, in one pass over the edges."""
    label = [-1] * g.n
    local = [0] * g.n
    verts = []
    for i, part in enumerate(parts):
        members = sorted(set(part))
        if not members:
            raise GraphError(f"part {i} is empty")
        for j, v in enumerate(members):
            if label[v] != -1:
                raise GraphError(f"vertex {v} appears in more than one part")
            label[v] = i
            local[v] = j
        verts.append(members)
    k = len(verts)
    cols = [([], [], [], [], []) for _ in range(k)]
    w = g._w
    for eid, (u, v, d) in enumerate(zip(g._u, g._v, g._len)):
        lu = label[u]
        if lu != -1 and lu == label[v]:
            us, vs, ls, ws, origin = cols[lu]
            us.append(local[u])
            vs.append(local[v])
            ls.append(d)
            ws.append(w[eid])
            origin.append(eid)
    return [
        Subgraph(WeightedMultigraph._trusted(len(verts[i]), *cols[i][:4]), tuple(verts[i]), tuple(cols[i][4]))
        for i in range(k)
    ]


def induced_subgraph(g: WeightedMultigraph, vertices: Iterable[int]) -> Subgraph:
    """Subgraph induced by ``vertices``; may be disconnected."""
    vertices = set(vertices)
    if not vertices:
        raise GraphError("vertex set must be nonempty")
    for v in vertices:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
    return induced_subgraphs(g, [vertices])[0]


def _membership(g: WeightedMultigraph, vertices: Iterable[int]) -> list[bool]:
    inside = [False] * g.n
    for v in vertices:
        inside[v] = True
    return inside


def volume_of(g: WeightedMultigraph, vertices: Iterable[int]) -> int:
    """Number of edges with at least one endpoint in the set."""
    inside = _membership(g, vertices)
    return sum(1 for u, v in zip(g._u, g._v) if inside[u] or inside[v])


def volume_of_internal(g: WeightedMultigraph, vertices: Iterable[int]) -> int:
    """Number of edges with both endpoints in the set (self-loops included)."""
    inside = _membership(g, vertices)
    return sum(1 for u, v in zip(g._u, g._v) if inside[u] and inside[v])


def boundary_of(g: WeightedMultigraph, vertices: Iterable[int]) -> set[int]:
    """Edge ids with exactly one endpoint in the set."""
    inside = _membership(g, vertices)
    return {eid for eid, (u, v) in enumerate(zip(g._u, g._v)) if inside[u] != inside[v]}


def cost_of(g: WeightedMultigraph, edge_ids: Iterable[int]) -> float:
    """Sum of the weights of the given edges."""
    w = g._w
    return math.fsum(w[e] for e in edge_ids)


def partition_boundary(g: WeightedMultigraph, parts: Sequence[Iterable[int]]) -> set[int]:
    """Edge ids whose endpoints lie in different parts."""
    label = [-1] * g.n
    for i, part in enumerate(parts):
        for v in part:
            label[v] = i
    return {eid for eid, (u, v) in enumerate(zip(g._u, g._v)) if label[u] != label[v]}


# ---------------------------------------------------------------------------
# contraction


class UnionFind:
    """Disjoint sets over ``0..n-1`` with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


@dataclass(frozen=True)
class ContractionResult:
    """Quotient graph after merging the endpoints of every short edge.

    Super-vertices are numbered by their smallest original member.
    """

    quotient: WeightedMultigraph
    preimage: tuple[tuple[int, ...], ...]
    vertex_map: tuple[int, ...]
    edge_origin: tuple[int, ...]
    threshold: float


def contract_short_edges(g: WeightedMultigraph, threshold: float) -> ContractionResult:
    """Contract every edge shorter than ``threshold`` and drop resulting self-loops."""
    if not threshold >= 0:
        raise GraphError(f"threshold must be >= 0, got {threshold!r}")
    uf = UnionFind(g.n)
    for u, v, d in zip(g._u, g._v, g._len):
        if d < threshold:
            uf.union(u, v)
    label = [-1] * g.n
    preimage: list[list[int]] = []
    for v in range(g.n):
        r = uf.find(v)
        if label[r] == -1:
            label[r] = len(preimage)
            preimage.append([])
        label[v] = label[r]
        preimage[label[v]].append(v)
    us, vs, lens, weights, origin = [], [], [], [], []
    for eid, (u, v, d) in enumerate(zip(g._u, g._v, g._len)):
        if d < threshold:
            continue
        a, b = label[u], label[v]
        if a == b:
            continue
        us.append(a)
        vs.append(b)
        lens.append(d)
        weights.append(g._w[eid])
        origin.append(eid)
    quotient = WeightedMultigraph._trusted(len(preimage), us, vs, lens, weights)
    return ContractionResult(
        quotient,
        tuple(tuple(p) for p in preimage),
        tuple(label),
        tuple(origin),
        threshold,
    )
