"""Shared graph factories and brute-force oracles for the test suite."""
from __future__ import annotations

import math
import random

import numpy as np
from hypothesis import strategies as st

from lowstretch.decomposition import cone
from lowstretch.generators import random_multigraph
from lowstretch.graph import (
    WeightedMultigraph,
    _shortest_paths,
    boundary_of,
    cost_of,
    induced_subgraph,
    multi_source_distances,
    volume_of,
    volume_of_internal,
)


def floyd_warshall(g: WeightedMultigraph, edge_ids=None) -> np.ndarray:
    """All-pairs distances over the given edges (default: all), O(n^3)."""
    n = g.n
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    ids = range(g.m) if edge_ids is None else edge_ids
    for eid in ids:
        u, v, length = g.edge(eid)
        if u != v and length < d[u, v]:
            d[u, v] = d[v, u] = length
    for k in range(n):
        d = np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :])
    return d


def tree_path_length(tree, g, u: int, v: int) -> float:
    """Walk both endpoints up to their meeting point using parent pointers only."""
    up = {}
    x, acc = u, 0.0
    while True:
        up[x] = acc
        if tree.parent[x] < 0:
            break
        acc += g.lengths[tree.parent_edge[x]]
        x = tree.parent[x]
    x, acc = v, 0.0
    while x not in up:
        acc += g.lengths[tree.parent_edge[x]]
        x = tree.parent[x]
    return up[x] + acc


def cone_oracle(g: WeightedMultigraph, dist, v: int, l: float, tol: float) -> set[int]:
    """Cone by Bellman-Ford relaxation over arc costs taken from raw distances."""
    cost = [math.inf] * g.n
    cost[v] = 0.0
    for _ in range(g.n):
        changed = False
        for u, w, length in g.edges():
            for a, b in ((u, w), (w, u)):
                step = 0.0 if abs(dist[a] + length - dist[b]) <= tol else length
                if cost[a] + step < cost[b]:
                    cost[b] = cost[a] + step
                    changed = True
        if not changed:
            break
    return {x for x in range(g.n) if cost[x] <= l}


def random_connected(rng: random.Random, n_max: int = 200, m_max: int = 1000, weighted: bool = True):
    n = rng.randint(2, n_max)
    m = rng.randint(n - 1, min(m_max, max(n - 1, 5 * n)))
    max_length = rng.choice([10.0, 100.0, 1e4]) if weighted else 1.0
    return random_multigraph(n, m, rng.randrange(2**31), max_length)


@st.composite
def connected_graphs(draw, max_n: int = 24, unit: bool | None = None, min_n: int = 1):
    n = draw(st.integers(min_n, max_n))
    extra = draw(st.integers(0, 2 * n)) if n > 1 else 0
    seed = draw(st.integers(0, 2**31 - 1))
    if unit is None:
        unit = draw(st.booleans())
    return random_multigraph(n, n - 1 + extra, seed, 1.0 if unit else draw(st.sampled_from([3.0, 50.0, 1e3])))


def c4() -> WeightedMultigraph:
    return WeightedMultigraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)])


def _le(a: float, b: float) -> bool:
    return a <= b + 1e-9 * max(1.0, abs(b))


def audit_cut(rec) -> str | None:
    """Re-derive a traced ball or cone cut from scratch; return a problem description or None."""
    if not rec.lam <= rec.r < rec.lam_prime:
        return f"{rec.kind} r={rec.r} outside [{rec.lam}, {rec.lam_prime})"
    if rec.kind == "ball":
        g = rec.graph
        dist = _shortest_paths(g, (rec.center,))
        members = {v for v, d in enumerate(dist) if d <= rec.r}
        if members != set(rec.members):
            return "ball members differ from the ball at r"
        bound = (volume_of(g, members) + 1) * math.log2(g.m + 1) / (rec.lam_prime - rec.lam)
        cost = cost_of(g, boundary_of(g, members))
        return None if _le(cost, bound) else f"ball cost {cost} > {bound}"

    sub = induced_subgraph(rec.graph, rec.alive)
    idx = sub.index
    h = sub.graph
    if h.m != rec.m:
        return f"edge count {rec.m} recorded, {h.m} present"
    field = multi_source_distances(h, [idx[s] for s in rec.sources])
    members = cone(h, field, idx[rec.center], rec.r)
    if {sub.vertices[v] for v in members} != set(rec.members):
        return "cone members differ from a fresh cone at r"
    e_lam = volume_of_internal(h, cone(h, field, idx[rec.center], rec.lam))
    tau = 1 if e_lam == 0 else 0
    mu = max(1.0, math.log2((h.m + tau) / (e_lam + tau)))
    bound = (volume_of(h, members) + tau) * mu / (rec.lam_prime - rec.lam)
    cost = cost_of(h, boundary_of(h, members))
    return None if _le(cost, bound) else f"cone cost {cost} > {bound}"


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
