"""Recursive low-stretch spanning tree construction by star decomposition."""
from __future__ import annotations

import bisect
import math
from collections import deque
from dataclasses import dataclass, field

from .decomposition import DELTA, imp_star_decomp, star_decomp
from .graph import (
    GraphError,
    WeightedMultigraph,
    contract_short_edges,
    induced_subgraphs,
    radius_from,
    require_connected,
)

ALGORITHMS = ("unweighted", "weighted", "improved")


@dataclass(frozen=True)
class SpanningTree:
    """Spanning tree given by edge ids of its host graph, rooted at ``root``.

    ``parent[root] == parent_edge[root] == -1``; ``depth_len[v]`` is the tree
    distance from the root.
    """

    edge_ids: tuple[int, ...]
    root: int
    parent: tuple[int, ...]
    parent_edge: tuple[int, ...]
    depth_len: tuple[float, ...]

    @classmethod
    def from_edges(cls, g: WeightedMultigraph, edge_ids, root: int) -> "SpanningTree":
        edge_ids = tuple(sorted(edge_ids))
        n = g.n
        if len(edge_ids) != n - 1:
            raise GraphError(f"a spanning tree on {n} vertices needs {n - 1} edges, got {len(edge_ids)}")
        nbrs = [[] for _ in range(n)]
        for eid in edge_ids:
            u, v, d = g.edge(eid)
            if u == v:
                raise GraphError(f"edge {eid} is a self-loop")
            nbrs[u].append((v, d, eid))
            nbrs[v].append((u, d, eid))
        parent = [-1] * n
        parent_edge = [-1] * n
        depth = [0.0] * n
        seen = [False] * n
        seen[root] = True
        queue = deque([root])
        reached = 1
        while queue:
            u = queue.popleft()
            for v, d, eid in nbrs[u]:
                if not seen[v]:
                    seen[v] = True
                    reached += 1
                    parent[v] = u
                    parent_edge[v] = eid
                    depth[v] = depth[u] + d
                    queue.append(v)
        if reached != n:
            raise GraphError(f"edges reach only {reached} of {n} vertices")
        return cls(edge_ids, root, tuple(parent), tuple(parent_edge), tuple(depth))

    @property
    def radius(self) -> float:
        """Largest tree distance from the root."""
        return max(self.depth_len)

    def to_json(self) -> dict:
        return {"root": self.root, "edge_ids": list(self.edge_ids)}


@dataclass(frozen=True)
class BuilderParams:
    """Parameters fixed from the size of the top-level graph."""

    n_hat: int
    m_hat: int
    t: int
    alpha: float
    beta: float

    @classmethod
    def for_graph(cls, g: WeightedMultigraph, t: int | None = None) -> "BuilderParams":
        n_hat, m_hat = g.n, g.m
        alpha = 1.0 / (2.0 * math.log(n_hat + 6, 4 / 3))
        beta = 1.0 / (2.0 * math.log(n_hat + 32, 4 / 3))
        assert alpha <= 1 / 12 and beta <= 1 / 24
        if t is None:
            t = default_t(n_hat)
        if t < 1:
            raise GraphError(f"t must be >= 1, got {t}")
        return cls(n_hat, m_hat, t, alpha, beta)

    @property
    def max_edge_lifetime(self) -> float:
        """Most recursion levels an uncontracted edge may survive."""
        return math.log(2 * self.n_hat / self.beta + 1, 4 / 3)


def default_t(n_hat: int) -> int:
    """``max(1, ceil(log2 log2 n_hat))``."""
    lg = math.log2(n_hat) if n_hat > 0 else 0.0
    return max(1, math.ceil(math.log2(lg))) if lg > 1 else 1


@dataclass
class BuildStats:
    """Recursion statistics.

    ``presence[e]`` counts the recursion levels where original edge ``e``
    survives contraction inside a graph that is decomposed; ``quotient_vertices``
    sums the vertex counts of all decomposed graphs.
    """

    presence: list[int] = field(default_factory=list)
    quotient_vertices: int = 0
    decompositions: int = 0
    max_depth: int = 0


def _base_edge(h: WeightedMultigraph, shortest: bool) -> int:
    best = None
    for eid, (u, v, d) in enumerate(h.edges()):
        if u == v:
            continue
        key = (d, eid) if shortest else (0.0, eid)
        if best is None or key < best:
            best = key
    if best is None:
        raise GraphError("two-vertex graph without a connecting edge")
    return best[1]


def _build(g: WeightedMultigraph, x0: int, algo: str, params: BuilderParams, stats: BuildStats | None) -> SpanningTree:
    if not 0 <= x0 < g.n:
        raise GraphError(f"root {x0} out of range")
    require_connected(g)
    if stats is not None:
        stats.presence = [0] * g.m
    weighted = algo != "unweighted"
    tree_edges: list[int] = []
    # (graph, local root, local->original edge ids, depth)
    stack = [(g, x0, None, 0)]
    while stack:
        h, root, emap, depth = stack.pop()
        if h.n == 1:
            continue
        if h.n == 2:
            eid = _base_edge(h, shortest=weighted)
            tree_edges.append(eid if emap is None else emap[eid])
            continue

        if not weighted:
            sd = star_decomp(h, root, DELTA, params.alpha)
            parts = sd.parts
            roots = [root, *sd.anchors]
            bridges = list(sd.bridge_edges)
            present = [e for e, (u, v) in enumerate(zip(h.tails, h.heads)) if u != v]
            qn = h.n
        else:
            rho = radius_from(h, root)
            c = contract_short_edges(h, params.beta * rho / params.n_hat)
            q = c.quotient
            qroot = c.vertex_map[root]
            if algo == "improved":
                sd = imp_star_decomp(q, qroot, DELTA, params.beta, params.t, params.m_hat)
            else:
                sd = star_decomp(q, qroot, DELTA, params.beta)
            parts = [[v for sv in part for v in c.preimage[sv]] for part in sd.parts]
            roots = [root]
            bridges = []
            for xq, yq in sd.bridges:
                best = min((length, c.edge_origin[qe]) for y, length, qe in q.adj[xq] if y == yq)
                heid = best[1]
                hu = h.tails[heid]
                roots.append(hu if c.vertex_map[hu] == xq else h.heads[heid])
                bridges.append(heid)
            present = c.edge_origin
            qn = q.n

        if stats is not None:
            for e in present:
                stats.presence[e if emap is None else emap[e]] += 1
            stats.quotient_vertices += qn
            stats.decompositions += 1
            stats.max_depth = max(stats.max_depth, depth)
        tree_edges.extend(bridges if emap is None else (emap[e] for e in bridges))

        for sub, r in zip(induced_subgraphs(h, parts), roots):
            local_root = bisect.bisect_left(sub.vertices, r)
            ce = sub.edge_origin if emap is None else tuple(emap[e] for e in sub.edge_origin)
            stack.append((sub.graph, local_root, ce, depth + 1))

    return SpanningTree.from_edges(g, tree_edges, x0)


def unweighted_low_stretch_tree(
    g: WeightedMultigraph,
    x0: int = 0,
    params: BuilderParams | None = None,
    stats: BuildStats | None = None,
) -> SpanningTree:
    """Spanning tree of a unit-length graph by recursive star decomposition.

    Every level decomposes with ``epsilon = alpha = 1 / (2 log_{4/3}(n_hat + 6))``.
    """
    if not g.is_unit:
        raise GraphError("unweighted builder needs every edge length equal to 1")
    return _build(g, x0, "unweighted", params or BuilderParams.for_graph(g), stats)


def low_stretch_tree(
    g: WeightedMultigraph,
    x0: int = 0,
    params: BuilderParams | None = None,
    stats: BuildStats | None = None,
) -> SpanningTree:
    """Spanning tree of a weighted graph by contraction plus star decomposition.

    Each level contracts edges shorter than ``beta * rho / n_hat``, decomposes
    the quotient with ``epsilon = beta``, lifts the parts back and bridges them
    with the shortest original edge between the bridge super-vertices.
    """
    return _build(g, x0, "weighted", params or BuilderParams.for_graph(g), stats)


def imp_low_stretch_tree(
    g: WeightedMultigraph,
    x0: int = 0,
    t: int | None = None,
    m_hat: int | None = None,
    params: BuilderParams | None = None,
    stats: BuildStats | None = None,
) -> SpanningTree:
    """As :func:`low_stretch_tree` but decomposing with the volume-tiered cone cut."""
    if params is None:
        params = BuilderParams.for_graph(g, t)
    if m_hat is not None:
        if m_hat < g.m:
            raise GraphError(f"m_hat={m_hat} is smaller than the edge count {g.m}")
        params = BuilderParams(params.n_hat, m_hat, params.t, params.alpha, params.beta)
    return _build(g, x0, "improved", params, stats)


def build_tree(g: WeightedMultigraph, root: int = 0, algo: str = "improved", t: int | None = None) -> SpanningTree:
    """Dispatch to one of the three builders by name."""
    if algo == "unweighted":
        return unweighted_low_stretch_tree(g, root)
    if algo == "weighted":
        return low_stretch_tree(g, root)
    if algo == "improved":
        return imp_low_stretch_tree(g, root, t)
    raise GraphError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")
