"""From-scratch ground truth for the tuple system.

Everything here is recomputed directly from the graph: counting Dijkstra,
the closed-form locally-shortest-tuple condition, full system construction
for initialization and verification, and a brute-force path enumerator that
validates the closed form itself on tiny graphs.

A multi-edge key (x, a, b, y) is stored iff

    w(x, a) + d(a, b) = d(x, b)   and   d(a, b) + w(b, y) = d(a, y)

with sigma(a, b) > 0; its weight is w(x, a) + d(a, b) + w(b, y) and its count
sigma(a, b).  Single-edge keys exist for every edge.  Pairs with x = y are
never stored: a positively weighted cycle can neither be nor extend into a
shortest path.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .graph import Graph
from .tuples import TupleSystem, Triple, TupleKey, single_edge_key

INF = math.inf


class ExplosionGuard(Exception):
    """Brute-force enumeration would exceed the configured path cap."""


def dijkstra_counting(g: Graph, s: int) -> tuple[list[float], list[int]]:
    """Exact distances and shortest-path counts from ``s``.

    Ties accumulate counts under exact weight equality; sound here because
    all path weights are sums of the input weights.
    """
    dist = [INF] * g.n
    sigma = [0] * g.n
    dist[s] = 0.0
    sigma[s] = 1
    done = [False] * g.n
    heap: list[tuple[float, int]] = [(0.0, s)]
    while heap:
        du, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for z in g.out_adj[u]:
            nd = du + g.weights[(u, z)]
            if nd < dist[z]:
                dist[z] = nd
                sigma[z] = sigma[u]
                heapq.heappush(heap, (nd, z))
            elif nd == dist[z]:
                sigma[z] += sigma[u]
    return dist, sigma


@dataclass
class OracleResult:
    d: list[list[float]]
    sigma: list[list[int]]
    lst: dict[TupleKey, tuple[float, int]]


def static_apasp(g: Graph) -> OracleResult:
    """All distances, path counts, and locally shortest tuples of ``g``."""
    d: list[list[float]] = []
    sigma: list[list[int]] = []
    for s in range(g.n):
        ds, ss = dijkstra_counting(g, s)
        d.append(ds)
        sigma.append(ss)

    lst: dict[TupleKey, tuple[float, int]] = {}
    for (u, v), w in g.weights.items():
        lst[single_edge_key(u, v)] = (w, 1)
    for a in range(g.n):
        for b in range(g.n):
            if sigma[a][b] == 0:
                continue
            dab = d[a][b]
            for x in g.in_adj[a]:
                wxa = g.weights[(x, a)]
                if wxa + dab != d[x][b]:
                    continue
                for y in g.out_adj[b]:
                    if x == y:
                        continue  # origin = destination never stored
                    wby = g.weights[(b, y)]
                    if dab + wby != d[a][y]:
                        continue
                    lst[(x, a, b, y)] = (wxa + dab + wby, sigma[a][b])
    return OracleResult(d, sigma, lst)


def build_tuple_system(g: Graph, oracle: OracleResult | None = None) -> TupleSystem:
    """Construct the full tuple system for ``g`` from scratch."""
    if oracle is None:
        oracle = static_apasp(g)
    d = oracle.d
    ts = TupleSystem(g.n)
    for key, (w, count) in oracle.lst.items():
        x, a, b, y = key
        triple = Triple(key, w, count)
        ts.dict[key] = triple
        ts.P.setdefault((x, y), {})[(a, b)] = triple
        if key != single_edge_key(x, y):
            ts.l_add(a, b, y, x)
            ts.r_add(x, a, b, y)
        if w == d[x][y]:
            ts.Pstar.setdefault((x, y), {})[(a, b)] = count
    for x in range(g.n):
        for y in range(g.n):
            if d[x][y] == INF:
                continue
            for xp in g.in_adj[x]:
                if d[xp][y] == g.weights[(xp, x)] + d[x][y]:
                    ts.lstar_add(x, y, xp)
            for yp in g.out_adj[y]:
                if d[x][yp] == d[x][y] + g.weights[(y, yp)]:
                    ts.rstar_add(x, y, yp)
    return ts


def enumerate_lsps_bruteforce(
        g: Graph, max_hops: int | None = None,
        cap: int = 500_000) -> list[tuple[tuple[int, ...], float, bool, bool]]:
    """Enumerate every simple path of >= 1 edge, up to ``max_hops`` edges,
    classifying each as shortest / locally shortest by the literal
    definitions.  Second-level oracle; tiny graphs only.
    """
    oracle = static_apasp(g)
    d = oracle.d
    if max_hops is None:
        max_hops = g.n - 1

    def path_weight(path: tuple[int, ...]) -> float:
        return sum(g.weights[(path[i], path[i + 1])] for i in range(len(path) - 1))

    def is_sp(path: tuple[int, ...]) -> bool:
        return path_weight(path) == d[path[0]][path[-1]]

    out: list[tuple[tuple[int, ...], float, bool, bool]] = []

    def dfs(path: list[int], on_path: set[int]) -> None:
        if len(out) > cap:
            raise ExplosionGuard(f"more than {cap} paths")
        if len(path) >= 2:
            p = tuple(path)
            w = path_weight(p)
            sp = w == d[p[0]][p[-1]]
            # Locally shortest: both one-edge truncations are shortest
            # (single edges are locally shortest by definition).
            lsp = len(p) == 2 or (is_sp(p[1:]) and is_sp(p[:-1]))
            out.append((p, w, sp, lsp))
        if len(path) - 1 >= max_hops:
            return
        for z in g.out_adj[path[-1]]:
            if z in on_path:
                continue
            path.append(z)
            on_path.add(z)
            dfs(path, on_path)
            on_path.discard(z)
            path.pop()

    for s in range(g.n):
        dfs([s], {s})
    return out


def lsp_counts_from_paths(
        paths: list[tuple[tuple[int, ...], float, bool, bool]],
        require_lsp: bool = True,
        avoid: int | None = None) -> dict[tuple[TupleKey, float], int]:
    """Aggregate brute-force paths into per-(tuple, weight) counts."""
    counts: dict[tuple[TupleKey, float], int] = {}
    for p, w, _sp, lsp in paths:
        if require_lsp and not lsp:
            continue
        if avoid is not None and avoid in p:
            continue
        if len(p) == 2:
            key = single_edge_key(p[0], p[1])
        else:
            key = (p[0], p[1], p[-2], p[-1])
        counts[(key, w)] = counts.get((key, w), 0) + 1
    return counts


def assert_equivalent(ts: TupleSystem, g: Graph,
                      limit: int = 100) -> list[str]:
    """Compare ``ts`` against a freshly built system for ``g``.

    Returns a list of discrepancy lines (empty means equivalent).
    """
    fresh = build_tuple_system(g)
    got = ts.dump(g.labels)
    want = fresh.dump(g.labels)
    if got == want:
        return []
    got_lines = set(got.splitlines())
    want_lines = set(want.splitlines())
    diffs = sorted(f"unexpected: {l}" for l in got_lines - want_lines)
    diffs += sorted(f"missing: {l}" for l in want_lines - got_lines)
    return diffs[:limit]


def sp_params(g: Graph, oracle: OracleResult | None = None) -> tuple[int, int]:
    """(nu_star, m_star): the maximum number of edges on shortest paths
    through any one vertex, and the number of edges on any shortest path."""
    if oracle is None:
        oracle = static_apasp(g)
    d = oracle.d
    m_star = sum(1 for (p, q), w in g.weights.items() if w == d[p][q])
    nu_star = 0
    for u in range(g.n):
        du = d[u]
        count = 0
        for (p, q), w in g.weights.items():
            if du[p] != INF and du[p] + w == du[q]:
                count += 1
            elif d[q][u] != INF and w + d[q][u] == d[p][u]:
                count += 1
        nu_star = max(nu_star, count)
    return nu_star, m_star
