"""Seeded random instances for the benchmark command and the randomized
verification suites.

Weights stay on the half-integer grid in [1, 10] so every path weight is
exact in binary floating point; updates keep weights on the same grid.
"""

from __future__ import annotations

import random

from .graph import DELETE, Edge, Graph, UpdateOp


def random_graph(rng: random.Random, n: int, m: int) -> Graph:
    """Digraph with ``n`` vertices and ``m`` distinct non-loop edges."""
    g = Graph(n, [str(i) for i in range(n)])
    candidates = [(u, v) for u in range(n) for v in range(n) if u != v]
    m = min(m, len(candidates))
    for u, v in rng.sample(candidates, m):
        g.add_edge(u, v, rng.randrange(2, 21) / 2.0)
    return g


def random_dense_graph(rng: random.Random, n: int, density: float) -> Graph:
    m = max(1, round(density * n * (n - 1)))
    return random_graph(rng, n, m)


def random_update(rng: random.Random, g: Graph,
                  p_delete: float = 0.3) -> UpdateOp | None:
    """A valid decremental update on a random vertex with incident edges;
    None if the graph has no edges left."""
    incident: dict[int, list[Edge]] = {}
    for e in g.weights:
        incident.setdefault(e[0], []).append(e)
        incident.setdefault(e[1], []).append(e)
    if not incident:
        return None
    v = rng.choice(sorted(incident))
    edges = sorted(set(incident[v]))
    k = rng.randint(1, len(edges))
    changes: dict[Edge, float | str] = {}
    for e in rng.sample(edges, k):
        if rng.random() < p_delete:
            changes[e] = DELETE
        else:
            changes[e] = g.weights[e] + rng.randrange(0, 11) / 2.0
    return UpdateOp(v, changes)
