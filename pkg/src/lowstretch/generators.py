"""Deterministic graph generators.

All randomness comes from ``random.Random(seed)`` (Mersenne Twister
MT19937); ``RNG_ALGORITHM`` is written into output headers so runs can be
reproduced elsewhere.
"""
from __future__ import annotations

import random

from .graph import GraphError, WeightedMultigraph

RNG_ALGORITHM = "python-random-mt19937"
GENERATORS = ("path", "cycle", "grid", "torus", "complete", "gnp_connected", "random_multigraph")


def path(n: int) -> WeightedMultigraph:
    if n < 1:
        raise GraphError(f"path needs n >= 1, got {n}")
    return WeightedMultigraph(n, [(i, i + 1, 1.0) for i in range(n - 1)])


def cycle(n: int) -> WeightedMultigraph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return WeightedMultigraph(n, [(i, (i + 1) % n, 1.0) for i in range(n)])


def grid(rows: int, cols: int) -> WeightedMultigraph:
    """Vertex ``r * cols + c``; each vertex lists its right edge then its down edge."""
    if rows < 1 or cols < 1:
        raise GraphError(f"grid needs positive dimensions, got {rows}x{cols}")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1, 1.0))
            if r + 1 < rows:
                edges.append((v, v + cols, 1.0))
    return WeightedMultigraph(rows * cols, edges)


def torus(rows: int, cols: int) -> WeightedMultigraph:
    if rows < 3 or cols < 3:
        raise GraphError(f"torus needs both dimensions >= 3, got {rows}x{cols}")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            edges.append((v, r * cols + (c + 1) % cols, 1.0))
            edges.append((v, ((r + 1) % rows) * cols + c, 1.0))
    return WeightedMultigraph(rows * cols, edges)


def complete(n: int) -> WeightedMultigraph:
    if n < 1:
        raise GraphError(f"complete graph needs n >= 1, got {n}")
    return WeightedMultigraph(n, [(u, v, 1.0) for u in range(n) for v in range(u + 1, n)])


def gnp_connected(n: int, p: float, seed: int, max_tries: int = 100) -> WeightedMultigraph:
    """Erdos-Renyi G(n, p) with unit lengths, redrawn until connected."""
    if n < 1 or not 0.0 <= p <= 1.0:
        raise GraphError(f"need n >= 1 and 0 <= p <= 1, got n={n} p={p}")
    rng = random.Random(seed)
    for _ in range(max_tries):
        edges = [(u, v, 1.0) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        g = WeightedMultigraph(n, edges)
        if g.is_connected():
            return g
    raise GraphError(f"G({n}, {p}) was disconnected in all {max_tries} draws; raise p")


def random_weights(g: WeightedMultigraph, max_length: float, seed: int) -> WeightedMultigraph:
    """Same topology with lengths ``max_length ** U`` for uniform ``U``, i.e. log-uniform in [1, max_length]."""
    if not max_length >= 1.0:
        raise GraphError(f"max_length must be >= 1, got {max_length}")
    rng = random.Random(seed)
    return WeightedMultigraph(g.n, [(u, v, max_length ** rng.random()) for u, v, _ in g.edges()])


def random_multigraph(n: int, m: int, seed: int, max_length: float = 1.0) -> WeightedMultigraph:
    """Connected multigraph: a random recursive tree plus ``m - n + 1`` random non-loop edges.

    Parallel edges may occur.  Edge order is shuffled and lengths are
    log-uniform in [1, max_length].
    """
    if n < 1 or m < n - 1:
        raise GraphError(f"need n >= 1 and m >= n - 1, got n={n} m={m}")
    if n == 1 and m > 0:
        raise GraphError("a single vertex admits no non-loop edges")
    rng = random.Random(seed)
    pairs = [(v, rng.randrange(v)) for v in range(1, n)]
    while len(pairs) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            pairs.append((u, v))
    rng.shuffle(pairs)
    if max_length == 1.0:
        return WeightedMultigraph(n, [(u, v, 1.0) for u, v in pairs])
    return WeightedMultigraph(n, [(u, v, max_length ** rng.random()) for u, v in pairs])


def generate(kind: str, params: dict, seed: int = 0) -> WeightedMultigraph:
    """Build a graph by generator name.

    ``params`` holds the generator's size arguments.  An optional
    ``max_length`` key applies :func:`random_weights` afterwards (for
    ``random_multigraph`` it is passed through).
    """
    params = dict(params)
    max_length = params.pop("max_length", None)
    if kind == "path":
        g = path(int(params["n"]))
    elif kind == "cycle":
        g = cycle(int(params["n"]))
    elif kind == "grid":
        g = grid(int(params["rows"]), int(params.get("cols", params["rows"])))
    elif kind == "torus":
        g = torus(int(params["rows"]), int(params.get("cols", params["rows"])))
    elif kind == "complete":
        g = complete(int(params["n"]))
    elif kind == "gnp_connected":
        g = gnp_connected(int(params["n"]), float(params["p"]), seed)
    elif kind == "random_multigraph":
        return random_multigraph(int(params["n"]), int(params["m"]), seed, float(max_length or 1.0))
    else:
        raise GraphError(f"unknown generator {kind!r}; choose from {', '.join(GENERATORS)}")
    if max_length is not None:
        # offset so the weights do not repeat the topology draw
        g = random_weights(g, float(max_length), seed + 1)
    return g
