"""Betweenness centrality.

Two independent routes to the same scores: dependency accumulation over the
per-source shortest-path dags held by the tuple system, and the O(n^3)
pair formula computed straight from an oracle's distance and count
matrices.  The suite keeps them in agreement.
"""

from __future__ import annotations

from .oracle import OracleResult
from .tuples import TupleSystem

BCScores = dict[int, float]


def bc_from_dags(ts: TupleSystem) -> BCScores:
    """Accumulate per-source dependencies over each shortest-path dag.

    Vertices are processed by decreasing distance from the source (ties by
    vertex id), so every dag successor is final when its predecessor is
    read.  Runs in O(sum of dag sizes + n^2).
    """
    scores: BCScores = {u: 0.0 for u in range(ts.n)}
    for s in range(ts.n):
        dag = ts.extract_sp_dag(s)
        if not dag.edges:
            continue
        order = sorted(dag.dist, key=lambda u: (-dag.dist[u], u))
        delta = {u: 0.0 for u in dag.dist}
        for u in order:
            su = dag.sigma[u]
            acc = 0.0
            for z in dag.successors.get(u, ()):
                acc += (su / dag.sigma[z]) * (1.0 + delta[z])
            delta[u] = acc
            if u != s:
                scores[u] += acc
    return scores


def bc_pair_formula(oracle: OracleResult) -> BCScores:
    """Reference scores: BC(v) = sum over s, t != v of
    sigma_sv * sigma_vt / sigma_st where v lies on a shortest s-t path."""
    n = len(oracle.d)
    d = oracle.d
    sigma = oracle.sigma
    scores: BCScores = {v: 0.0 for v in range(n)}
    for s in range(n):
        ds = d[s]
        sig_s = sigma[s]
        for t in range(n):
            if t == s or sig_s[t] == 0:
                continue
            dst = ds[t]
            st = sig_s[t]
            for v in range(n):
                if v == s or v == t:
                    continue
                if ds[v] + d[v][t] == dst:
                    scores[v] += sig_s[v] * sigma[v][t] / st
    return scores
