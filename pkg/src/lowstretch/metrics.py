"""Stretch measurement, bound formulas and validators for decompositions and trees."""
from __future__ import annotations

import csv
import io
import math
from collections import defaultdict
from dataclasses import dataclass, field

from .decomposition import StarDecomposition
from .graph import (
    GraphError,
    UnionFind,
    WeightedMultigraph,
    _shortest_paths,
    cost_of,
    induced_subgraph,
    partition_boundary,
    tolerance_for,
)
from .tree import SpanningTree

SQRT_E = math.sqrt(math.e)


def stretch_bound(n_hat: int, m_hat: int) -> float:
    """``24 sqrt(e) log2(m_hat + 1) log_{4/3}(n_hat) log_{4/3}(n_hat + 6)``."""
    if n_hat < 2:
        return 1.0
    return 24 * SQRT_E * math.log2(m_hat + 1) * math.log(n_hat, 4 / 3) * math.log(n_hat + 6, 4 / 3)


def radius_factor(algo: str) -> float:
    """Allowed ratio of tree radius to graph radius for each builder."""
    return SQRT_E if algo == "unweighted" else 2 * SQRT_E


def star_cost_bound(m: int, epsilon: float, rho: float) -> float:
    return 6 * m * math.log2(m + 1) / (epsilon * rho)


# ---------------------------------------------------------------------------
# tree distances


def _lca_offline(tree: SpanningTree, pairs: list[tuple[int, int]]) -> list[int]:
    """Tarjan's offline lowest common ancestors over the rooted tree."""
    n = len(tree.parent)
    children = [[] for _ in range(n)]
    for v, p in enumerate(tree.parent):
        if p >= 0:
            children[p].append(v)
    queries = defaultdict(list)
    for i, (u, v) in enumerate(pairs):
        queries[u].append((v, i))
        queries[v].append((u, i))
    uf = UnionFind(n)
    ancestor = list(range(n))
    black = [False] * n
    answer = [-1] * len(pairs)
    stack = [(tree.root, 0)]
    while stack:
        u, i = stack[-1]
        if i < len(children[u]):
            stack[-1] = (u, i + 1)
            stack.append((children[u][i], 0))
            continue
        stack.pop()
        black[u] = True
        for v, qi in queries.get(u, ()):
            if black[v]:
                answer[qi] = ancestor[uf.find(v)]
        if stack:
            p = stack[-1][0]
            uf.union(p, u)
            ancestor[uf.find(p)] = p
    return answer


def tree_distances_for_edges(g: WeightedMultigraph, tree: SpanningTree) -> list[float]:
    """Tree distance between the endpoints of every edge of ``g``."""
    if len(tree.depth_len) != g.n:
        raise GraphError("tree does not span the graph")
    pairs = list(zip(g.tails, g.heads))
    lca = _lca_offline(tree, pairs)
    depth = tree.depth_len
    return [depth[u] + depth[v] - 2 * depth[a] for (u, v), a in zip(pairs, lca)]


def tree_distance_pairs(tree: SpanningTree, pairs: list[tuple[int, int]]) -> list[float]:
    depth = tree.depth_len
    return [depth[u] + depth[v] - 2 * depth[a] for (u, v), a in zip(pairs, _lca_offline(tree, pairs))]


def graph_distances_for_edges(g: WeightedMultigraph) -> list[float]:
    """``dist_G(u, v)`` for every edge, one shortest-path run per distinct tail."""
    by_tail = defaultdict(list)
    for eid, (u, v) in enumerate(zip(g.tails, g.heads)):
        by_tail[u].append(eid)
    out = [0.0] * g.m
    for u, eids in by_tail.items():
        dist = _shortest_paths(g, (u,))
        for eid in eids:
            out[eid] = dist[g.heads[eid]]
    return out


def reweight_for_metric_stretch(g: WeightedMultigraph) -> WeightedMultigraph:
    """Same graph with each edge weighted ``1 / dist_G(u, v)`` instead of ``1 / d(e)``.

    Self-loops keep their weight.  Decomposition costs on the result measure
    stretch relative to graph distance rather than edge length.
    """
    dist = graph_distances_for_edges(g)
    weights = [1.0 / d if d > 0 else w for d, w in zip(dist, g.weights)]
    return g.with_weights(weights)


@dataclass(frozen=True)
class StretchReport:
    per_edge: tuple[tuple[int, float], ...]
    tree_dist: tuple[float, ...]
    denominators: tuple[float, ...]
    total: float
    average: float
    max: float
    akpw: bool = False

    def to_json(self) -> dict:
        return {
            "mode": "akpw" if self.akpw else "length",
            "m": len(self.per_edge),
            "average": self.average,
            "total": self.total,
            "max": self.max,
            "per_edge": [s for _, s in self.per_edge],
        }

    def to_csv(self, g: WeightedMultigraph) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["edge_id", "u", "v", "length", "tree_dist", "stretch"])
        for (eid, s), td in zip(self.per_edge, self.tree_dist):
            u, v, d = g.edge(eid)
            w.writerow([eid, u, v, repr(d), repr(td), repr(s)])
        return buf.getvalue()


def stretch_report(g: WeightedMultigraph, tree: SpanningTree, akpw: bool = False) -> StretchReport:
    """Per-edge stretch of ``g`` in ``tree`` with aggregates.

    By default stretch is ``dist_T(u, v) / d(e)``; with ``akpw=True`` the
    denominator is ``dist_G(u, v)``.  Tree edges have stretch exactly 1 and
    self-loops stretch 0.  Each parallel copy counts separately.
    """
    td = tree_distances_for_edges(g, tree)
    denom = graph_distances_for_edges(g) if akpw else list(g.lengths)
    in_tree = set(tree.edge_ids)
    per_edge = []
    for eid, (t, d) in enumerate(zip(td, denom)):
        if eid in in_tree and not akpw:
            s = 1.0
        elif g.tails[eid] == g.heads[eid]:
            s = 0.0
        else:
            s = t / d
        per_edge.append((eid, s))
    values = [s for _, s in per_edge]
    total = math.fsum(values)
    return StretchReport(
        tuple(per_edge),
        tuple(td),
        tuple(denom),
        total,
        total / g.m if g.m else 0.0,
        max(values, default=0.0),
        akpw,
    )


# ---------------------------------------------------------------------------
# validators


@dataclass
class Report:
    """Outcome of a validator: ``ok`` plus every violated check, first one first."""

    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append((name, bool(passed), detail))
        return passed

    @property
    def ok(self) -> bool:
        return all(p for _, p, _ in self.checks)

    @property
    def failures(self) -> list[str]:
        return [f"{n}: {d}" if d else n for n, p, d in self.checks if not p]

    @property
    def first_failure(self) -> str | None:
        f = self.failures
        return f[0] if f else None

    def __bool__(self) -> bool:
        return self.ok


def _radius_within(g: WeightedMultigraph, members, x: int) -> float:
    sub = induced_subgraph(g, members)
    dist = _shortest_paths(sub.graph, (sub.index[x],))
    return max(dist)


def _close_le(a: float, b: float) -> bool:
    return a <= b + 1e-9 * max(1.0, abs(b))


def validate_star_decomposition(
    g: WeightedMultigraph,
    sd: StarDecomposition,
    delta: float = 1 / 3,
    epsilon: float | None = None,
) -> Report:
    """Check partition, connectivity, bridges, both radius conditions and the cost bound.

    ``r0`` in the radius conditions is the cut radius recorded in ``sd``; the
    center part's own radius must not exceed it.
    """
    eps = sd.epsilon if epsilon is None else epsilon
    rep = Report()
    seen = [0] * g.n
    for part in sd.parts:
        for v in part:
            if 0 <= v < g.n:
                seen[v] += 1
    if not rep.check("partition", all(c == 1 for c in seen) and all(sd.parts), "parts must cover V exactly once"):
        return rep
    rep.check("center", sd.center in sd.parts[0], f"x0={sd.center} not in V_0")
    radii = []
    for i, part in enumerate(sd.parts):
        root = sd.center if i == 0 else sd.anchors[i - 1] if i - 1 < len(sd.anchors) else part[0]
        r = _radius_within(g, part, root) if root in part else math.inf
        radii.append(r)
        if not rep.check("part connectivity", r != math.inf, f"part {i} is disconnected or lacks its root"):
            return rep
    if not rep.check("anchors", len(sd.anchors) == len(sd.parts) - 1 == len(sd.bridges) == len(sd.bridge_edges),
                     "need one anchor and bridge per satellite"):
        return rep
    v0 = set(sd.parts[0])
    for i, ((x, y), eid) in enumerate(zip(sd.bridges, sd.bridge_edges), start=1):
        rep.check("anchors", x == sd.anchors[i - 1] and x in sd.parts[i], f"anchor of part {i}")
        ok = 0 <= eid < g.m and {g.tails[eid], g.heads[eid]} == {x, y} and y in v0
        rep.check("bridges", ok, f"bridge {i} ({x}, {y}) via edge {eid}")
    rho = _shortest_paths(g, (sd.center,))
    rho = max(rho)
    rep.check("radius", math.isclose(rho, sd.radius, rel_tol=1e-12), f"recorded {sd.radius}, actual {rho}")
    r0 = sd.r0
    rep.check("center radius", _close_le(delta * rho, r0) and _close_le(r0, (1 - delta) * rho),
              f"r0={r0} outside [{delta * rho}, {(1 - delta) * rho}]")
    rep.check("center radius", _close_le(radii[0], r0), f"radius of V_0 {radii[0]} exceeds r0={r0}")
    for i, eid in enumerate(sd.bridge_edges, start=1):
        total = r0 + g.lengths[eid] + radii[i]
        rep.check("satellite radius", _close_le(total, (1 + eps) * rho),
                  f"part {i}: r0 + d + r_i = {total} > {(1 + eps) * rho}")
    cost = cost_of(g, partition_boundary(g, sd.parts))
    bound = star_cost_bound(g.m, eps, rho)
    rep.check("cost", _close_le(cost, bound), f"cost {cost} > {bound}")
    return rep


def validate_tree(g: WeightedMultigraph, tree: SpanningTree) -> Report:
    """Check that ``tree.edge_ids`` is a spanning tree of ``g`` with consistent depths."""
    rep = Report()
    ids = list(tree.edge_ids)
    if not rep.check("subgraph", all(0 <= e < g.m for e in ids) and len(set(ids)) == len(ids),
                     "edge ids must be distinct edges of the graph"):
        return rep
    rep.check("spanning", len(ids) == g.n - 1, f"{len(ids)} edges for {g.n} vertices")
    uf = UnionFind(g.n)
    acyclic = all(uf.union(g.tails[e], g.heads[e]) for e in ids)
    rep.check("acyclic", acyclic, "edges contain a cycle or self-loop")
    roots = {uf.find(v) for v in range(g.n)}
    rep.check("spanning", len(roots) == 1, f"edges leave {len(roots)} components")
    if not rep.ok:
        return rep
    id_set = set(ids)
    ok = len(tree.parent) == g.n and tree.parent[tree.root] == -1
    for v in range(g.n):
        if not ok:
            break
        if v == tree.root:
            continue
        eid = tree.parent_edge[v]
        p = tree.parent[v]
        ok = eid in id_set and {g.tails[eid], g.heads[eid]} == {v, p} and math.isclose(
            tree.depth_len[v], tree.depth_len[p] + g.lengths[eid], rel_tol=1e-12, abs_tol=1e-12
        )
    rep.check("parent structure", ok, "parent pointers or depths disagree with the edges")
    return rep
