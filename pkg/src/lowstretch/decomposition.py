"""Ball and cone growing, cone decompositions and star decompositions.

Cones live in cone-cost space: walking a forward arc (one that lies on a
shortest path away from the source set) is free, any other arc costs its
length.  A cone of width ``l`` around ``v`` is everything reachable from
``v`` for total cost at most ``l``.  Both ball and cone cutting advance the
radius one vertex at a time until the weight of the boundary is small
compared to the volume enclosed.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import (
    DisconnectedGraphError,
    DistanceField,
    GraphError,
    WeightedMultigraph,
    _field,
    _shell,
    _shortest_paths,
    induced_subgraph,
    tolerance_for,
)

DELTA = 1.0 / 3.0

_FREE, _IN, _GONE = 0, 1, 2


class CutInvariantError(RuntimeError):
    """A cutting loop ran past the end of its window.

    Exact arithmetic rules this out, so hitting it means
    a bug or a numerical breakdown.
    """


@dataclass(frozen=True)
class CutRecord:
    """One ball or cone cut, kept for post-hoc auditing.

    For cone cuts ``alive`` is the vertex set of the graph the cut ran in and
    ``sources`` the source set at that time; ``m`` counts edges inside
    ``alive``.
    """

    kind: str
    graph: WeightedMultigraph
    alive: frozenset
    sources: frozenset
    center: int
    lam: float
    lam_prime: float
    r: float
    members: frozenset
    m: int
    p: int | None = None


@dataclass(frozen=True)
class ConePartition:
    parts: tuple[tuple[int, ...], ...]
    anchors: tuple[int, ...]
    radii: tuple[float, ...]
    index_mapping: tuple[int, ...] | None = None


@dataclass(frozen=True)
class StarDecomposition:
    """Center part ``parts[0]`` plus satellites hooked to it by one bridge each.

    ``anchors[i-1]`` and ``bridges[i-1] = (x_i, y_i)`` belong to ``parts[i]``;
    ``bridge_edges[i-1]`` is the edge id joining them.  ``r0`` is the ball
    radius chosen by the ball cut and ``radius`` the radius of the whole graph
    from ``center``.
    """

    parts: tuple[tuple[int, ...], ...]
    center: int
    anchors: tuple[int, ...]
    bridges: tuple[tuple[int, int], ...]
    bridge_edges: tuple[int, ...]
    r0: float
    radius: float
    epsilon: float
    cone_radii: tuple[float, ...] = ()
    index_mapping: tuple[int, ...] | None = None

    @property
    def k(self) -> int:
        return len(self.parts) - 1

    def to_json(self) -> dict:
        return {
            "center": self.center,
            "parts": [list(p) for p in self.parts],
            "anchors": list(self.anchors),
            "bridges": [list(b) for b in self.bridges],
            "bridge_edges": list(self.bridge_edges),
            "r0": self.r0,
            "radius": self.radius,
            "epsilon": self.epsilon,
            "cone_radii": list(self.cone_radii),
            "index_mapping": None if self.index_mapping is None else list(self.index_mapping),
        }

    @classmethod
    def from_json(cls, data: dict) -> "StarDecomposition":
        im = data.get("index_mapping")
        return cls(
            parts=tuple(tuple(p) for p in data["parts"]),
            center=data["center"],
            anchors=tuple(data["anchors"]),
            bridges=tuple(tuple(b) for b in data["bridges"]),
            bridge_edges=tuple(data["bridge_edges"]),
            r0=data["r0"],
            radius=data["radius"],
            epsilon=data["epsilon"],
            cone_radii=tuple(data.get("cone_radii", ())),
            index_mapping=None if im is None else tuple(im),
        )


class _Growth:
    """Vertex set grown one vertex at a time with running volume and boundary.

    ``state`` is shared with the caller: ``_FREE`` vertices are available,
    ``_IN`` are in this set, ``_GONE`` are deleted from the graph.
    """

    __slots__ = ("adj", "w", "state", "members", "vol", "internal", "bcost", "bcount")

    def __init__(self, g: WeightedMultigraph, state: list[int]):
        self.adj = g.adj
        self.w = g.weights
        self.state = state
        self.members: list[int] = []
        self.vol = 0
        self.internal = 0
        self.bcost = 0.0
        self.bcount = 0

    def add(self, u: int) -> None:
        state = self.state
        w = self.w
        state[u] = _IN
        self.members.append(u)
        for x, _, eid in self.adj[u]:
            sx = state[x]
            if sx == _GONE:
                continue
            if x == u:
                self.vol += 1
                self.internal += 1
            elif sx == _IN:
                self.bcost -= w[eid]
                self.bcount -= 1
                self.internal += 1
            else:
                self.bcost += w[eid]
                self.bcount += 1
                self.vol += 1
        if self.bcount == 0:
            self.bcost = 0.0


class _Cone(_Growth):
    """Cone around ``center`` grown in increasing cone-cost order."""

    __slots__ = ("tails", "forward", "heap", "best")

    def __init__(self, g, state, forward, center):
        super().__init__(g, state)
        self.tails = g.tails
        self.forward = forward
        self.heap = [(0.0, center)]
        self.best = {center: 0.0}

    def absorb_upto(self, r: float) -> None:
        heap, best, state = self.heap, self.best, self.state
        tails, forward = self.tails, self.forward
        pop, push = heapq.heappop, heapq.heappush
        while heap and heap[0][0] <= r:
            c, u = pop(heap)
            if state[u] != _FREE:
                continue
            self.add(u)
            for x, length, eid in self.adj[u]:
                if state[x] != _FREE:
                    continue
                a, b = forward[eid]
                nc = c if (a if tails[eid] == u else b) else c + length
                if nc < best.get(x, math.inf):
                    best[x] = nc
                    push(heap, (nc, x))

    def next_key(self) -> float | None:
        heap, state = self.heap, self.state
        while heap and state[heap[0][1]] != _FREE:
            heapq.heappop(heap)
        return heap[0][0] if heap else None


# ---------------------------------------------------------------------------
# ball cutting


def _check_delta(delta: float) -> None:
    if not 0.0 < delta < 0.5:
        raise GraphError(f"delta must lie in (0, 1/2), got {delta!r}")


def _ball_cut(g: WeightedMultigraph, dist: Sequence[float], rho: float, delta: float):
    n = g.n
    lam, lam_prime = delta * rho, (1.0 - delta) * rho
    bound = math.log2(g.m + 1) / ((1.0 - 2.0 * delta) * rho)
    order = sorted(range(n), key=lambda v: (dist[v], v))
    ball = _Growth(g, [_FREE] * n)
    i = 0
    r = lam
    while True:
        while i < n and dist[order[i]] <= r:
            ball.add(order[i])
            i += 1
        if ball.bcost <= (ball.vol + 1) * bound:
            return r, ball
        if i >= n:
            raise CutInvariantError("ball cut swallowed the whole graph")
        r = dist[order[i]]
        if r >= lam_prime:
            raise CutInvariantError(f"ball cut reached r={r} >= {lam_prime}")


def ball_cut(g: WeightedMultigraph, x0: int, rho: float, delta: float = DELTA, trace: list | None = None) -> float:
    """Grow a ball around ``x0`` from radius ``delta * rho`` until its boundary is cheap.

    Stops at the first radius where
    ``cost(boundary) <= (vol + 1) * log2(m + 1) / ((1 - 2 delta) rho)``;
    the result lies in ``[delta rho, (1 - delta) rho)``.
    """
    _check_delta(delta)
    if not rho > 0:
        raise GraphError(f"rho must be positive, got {rho!r}")
    dist = _shortest_paths(g, (x0,))
    if math.inf in dist:
        raise DisconnectedGraphError("ball cut needs a connected graph")
    r, grown = _ball_cut(g, dist, rho, delta)
    if trace is not None:
        trace.append(_ball_record(g, x0, rho, delta, r, grown))
    return r


def _ball_record(g, x0, rho, delta, r, grown) -> CutRecord:
    return CutRecord(
        "ball", g, frozenset(range(g.n)), frozenset((x0,)), x0,
        delta * rho, (1.0 - delta) * rho, r, frozenset(grown.members), g.m,
    )


# ---------------------------------------------------------------------------
# cones


def cone(g: WeightedMultigraph, field: DistanceField, v: int, l: float) -> set[int]:
    """Vertices reachable from ``v`` paying at most ``l`` over non-forward arcs."""
    best = {v: 0.0}
    heap = [(0.0, v)]
    done = set()
    tails, forward = g.tails, field.forward
    while heap:
        c, u = heapq.heappop(heap)
        if c > l:
            break
        if u in done:
            continue
        done.add(u)
        for x, length, eid in g.adj[u]:
            if x in done:
                continue
            a, b = forward[eid]
            nc = c if (a if tails[eid] == u else b) else c + length
            if nc < best.get(x, math.inf):
                best[x] = nc
                heapq.heappush(heap, (nc, x))
    return done


def _cone_cut(grower: _Cone, lam: float, lam_prime: float, m: int) -> float:
    r = lam
    grower.absorb_upto(r)
    e_lam = grower.internal
    tau = 1 if e_lam == 0 else 0
    factor = max(1.0, math.log2((m + tau) / (e_lam + tau))) / (lam_prime - lam)
    while grower.bcount and grower.bcost > (grower.vol + tau) * factor:
        nxt = grower.next_key()
        if nxt is None:
            raise CutInvariantError("boundary without frontier")
        if nxt >= lam_prime:
            raise CutInvariantError(f"cone cut reached r={nxt} >= {lam_prime}")
        r = nxt
        grower.absorb_upto(r)
    return r


def cone_cut(
    g: WeightedMultigraph,
    v: int,
    lam: float,
    lam_prime: float,
    sources: Iterable[int],
    trace: list | None = None,
) -> float:
    """Grow the cone around ``v`` induced by ``sources`` within ``[lam, lam_prime)``.

    Returns the first cone width ``r`` (starting at ``lam`` and advancing to
    the next vertex's cone cost) where
    ``cost(boundary) <= (vol + tau) / (lam_prime - lam) * max(1, log2((m + tau) / (|E(C_lam)| + tau)))``
    with ``tau = 1`` exactly when the cone at ``lam`` spans no edge.
    """
    if not 0 <= lam < lam_prime:
        raise GraphError(f"need 0 <= lam < lam_prime, got [{lam}, {lam_prime})")
    sources = frozenset(sources)
    if not sources:
        raise GraphError("source set must be nonempty")
    f = _field(g, sources)
    grower = _Cone(g, [_FREE] * g.n, f.forward, v)
    r = _cone_cut(grower, lam, lam_prime, g.m)
    if trace is not None:
        trace.append(CutRecord(
            "cone", g, frozenset(range(g.n)), sources, v, lam, lam_prime, r,
            frozenset(grower.members), g.m,
        ))
    return r


def _volume_threshold(m: int, m_hat: int, p: int, t: int) -> float:
    return m / 2.0 ** (math.log2(m_hat) ** (p / t)) if m_hat > 1 else float(m)


def _cone_decomp(
    g: WeightedMultigraph,
    sources: Iterable[int],
    width: float,
    t: int | None = None,
    m_hat: int | None = None,
    recompute_field: bool = False,
    trace: list | None = None,
) -> ConePartition:
    if not width > 0:
        raise GraphError(f"cone width must be positive, got {width!r}")
    srcs = sorted(set(sources))
    if not srcs:
        raise GraphError("source set must be nonempty")
    n = g.n
    f = _field(g, srcs)
    if math.inf in f.dist:
        raise GraphError("some vertex cannot reach the source set")
    forward = f.forward
    state = [_FREE] * n
    m0 = m_cur = g.m
    parts, anchors, radii, pmap = [], [], [], []
    ptr = 0
    while True:
        while ptr < len(srcs) and state[srcs[ptr]] == _GONE:
            ptr += 1
        if ptr == len(srcs):
            break
        x = srcs[ptr]
        if recompute_field or trace is not None:
            remaining = [s for s in srcs[ptr:] if state[s] != _GONE]
        if recompute_field:
            alive_mask = [s != _GONE for s in state]
            forward = _field(g, remaining, alive_mask).forward
        if trace is not None:
            alive = frozenset(v for v in range(n) if state[v] != _GONE)
        grower = _Cone(g, state, forward, x)
        windows = [(None, 0.0, width)] if t is None else [
            (p, (t - p - 1) * width / t, (t - p) * width / t) for p in range(t - 1, -1, -1)
        ]
        for p, lam, lam_prime in windows:
            r = _cone_cut(grower, lam, lam_prime, m_cur)
            if trace is not None:
                trace.append(CutRecord(
                    "cone", g, alive, frozenset(remaining), x, lam, lam_prime, r,
                    frozenset(grower.members), m_cur, p,
                ))
            if p is None or p == 0 or grower.internal <= _volume_threshold(m0, m_hat, p, t):
                break
        for u in grower.members:
            state[u] = _GONE
        m_cur -= grower.vol
        parts.append(tuple(sorted(grower.members)))
        anchors.append(x)
        radii.append(r)
        pmap.append(p)
    if any(s != _GONE for s in state):
        raise GraphError("cone decomposition left vertices uncovered")
    return ConePartition(tuple(parts), tuple(anchors), tuple(radii), None if t is None else tuple(pmap))


def cone_decomp(
    g: WeightedMultigraph,
    sources: Iterable[int],
    width: float,
    *,
    recompute_field: bool = False,
    trace: list | None = None,
) -> ConePartition:
    """Carve the graph into cones around source vertices, lowest id first.

    Each cone is cut with :func:`cone_cut` on ``[0, width)`` in the graph that
    remains after deleting earlier cones.  The distance field to the sources
    is computed once; deleting a cone never changes the remaining distances.
    ``recompute_field=True`` recomputes it before every cone instead.
    """
    return _cone_decomp(g, sources, width, recompute_field=recompute_field, trace=trace)


def imp_cone_decomp(
    g: WeightedMultigraph,
    sources: Iterable[int],
    width: float,
    t: int,
    m_hat: int,
    *,
    recompute_field: bool = False,
    trace: list | None = None,
) -> ConePartition:
    """Cone decomposition that trades cone volume against boundary cost.

    For each cone the window ``[0, width)`` is split into ``t`` slices.  Going
    through tiers ``p = t-1, ..., 1`` the cone is cut in slice ``t-p-1`` and
    accepted once it spans at most ``m / 2 ** (log2(m_hat) ** (p / t))``
    edges; tier 0 (the last slice) is accepted unconditionally.  The
    accepted tier is recorded per part in ``index_mapping``.
    """
    if t < 1:
        raise GraphError(f"t must be >= 1, got {t}")
    if m_hat < g.m:
        raise GraphError(f"m_hat={m_hat} is smaller than the edge count {g.m}")
    return _cone_decomp(g, sources, width, t, m_hat, recompute_field, trace)


# ---------------------------------------------------------------------------
# star decompositions


def _star_decomp(g, x0, delta, epsilon, t=None, m_hat=None, recompute_field=False, trace=None):
    if not math.isclose(delta, DELTA, rel_tol=1e-12):
        raise GraphError(f"only delta = 1/3 is supported, got {delta!r}")
    if not 0.0 < epsilon <= 0.5:
        raise GraphError(f"epsilon must lie in (0, 1/2], got {epsilon!r}")
    if g.n < 2:
        raise GraphError("star decomposition needs at least two vertices")
    dist = _shortest_paths(g, (x0,))
    rho = max(dist)
    if rho == math.inf:
        raise DisconnectedGraphError("star decomposition needs a connected graph")
    r0, ball = _ball_cut(g, dist, rho, delta)
    if trace is not None:
        trace.append(_ball_record(g, x0, rho, delta, r0, ball))
    inside = [s == _IN for s in ball.state]
    tol = tolerance_for(dist)
    shell = _shell(g, dist, inside, tol)
    rest = [v for v in range(g.n) if not inside[v]]
    sub = induced_subgraph(g, rest)
    local = sub.index
    width = epsilon * rho / 2.0
    cones = _cone_decomp(
        sub.graph, [local[s] for s in shell], width, t, m_hat, recompute_field, trace,
    )
    verts = sub.vertices
    anchors, bridges, bridge_edges = [], [], []
    for a in cones.anchors:
        x = verts[a]
        best = None
        for y, length, eid in g.adj[x]:
            if inside[y] and abs(dist[y] + length - dist[x]) <= tol:
                if best is None or (y, eid) < best:
                    best = (y, eid)
        if best is None:
            raise GraphError(f"anchor {x} has no tight edge into the center")
        anchors.append(x)
        bridges.append((x, best[0]))
        bridge_edges.append(best[1])
    parts = [tuple(sorted(ball.members))]
    parts.extend(tuple(verts[v] for v in p) for p in cones.parts)
    return StarDecomposition(
        parts=tuple(parts),
        center=x0,
        anchors=tuple(anchors),
        bridges=tuple(bridges),
        bridge_edges=tuple(bridge_edges),
        r0=r0,
        radius=rho,
        epsilon=epsilon,
        cone_radii=cones.radii,
        index_mapping=cones.index_mapping,
    )


def star_decomp(
    g: WeightedMultigraph,
    x0: int,
    delta: float = DELTA,
    epsilon: float = 0.5,
    *,
    recompute_field: bool = False,
    trace: list | None = None,
) -> StarDecomposition:
    """Low-cost star decomposition of a connected graph around ``x0``.

    The center part is a ball cut at radius ``r0`` in ``[rho/3, 2 rho/3)``.
    The rest is cut into cones of width below ``epsilon * rho / 2`` grown
    from the vertices just outside the ball.  Each cone's anchor is bridged
    to the lowest-id center vertex that precedes it on a shortest path from
    ``x0``.
    """
    return _star_decomp(g, x0, delta, epsilon, recompute_field=recompute_field, trace=trace)


def imp_star_decomp(
    g: WeightedMultigraph,
    x0: int,
    delta: float,
    epsilon: float,
    t: int,
    m_hat: int,
    *,
    recompute_field: bool = False,
    trace: list | None = None,
) -> StarDecomposition:
    """As :func:`star_decomp` with the cones cut by :func:`imp_cone_decomp`."""
    if t < 1:
        raise GraphError(f"t must be >= 1, got {t}")
    if m_hat < g.m:
        raise GraphError(f"m_hat={m_hat} is smaller than the edge count {g.m}")
    return _star_decomp(g, x0, delta, epsilon, t, m_hat, recompute_field, trace)
