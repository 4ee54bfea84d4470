import os
import random
from dataclasses import dataclass, field

import pytest

from apasp import (UpdateAudit, build_tuple_system, decremental_update,
                   load_graph, load_trace, sp_params, static_apasp)
from apasp.centrality import bc_from_dags, bc_pair_formula
from apasp.randgen import random_dense_graph, random_update

DATA = os.path.join(os.path.dirname(__file__), "data")


def data_path(name: str) -> str:
    return os.path.join(DATA, name)


@pytest.fixture(scope="session")
def fixture_g_text() -> str:
    with open(data_path("fixture_g.txt")) as fh:
        return fh.read()


@pytest.fixture
def fixture_g(fixture_g_text):
    return load_graph(fixture_g_text)


@pytest.fixture
def fig4_op(fixture_g):
    with open(data_path("fig4.trace")) as fh:
        return load_trace(fh.read(), fixture_g)[0]


@pytest.fixture
def ids(fixture_g):
    return {lab: i for i, lab in enumerate(fixture_g.labels)}


@dataclass
class CorpusResult:
    """Everything the acceptance criteria need from one randomized run of
    graphs with decremental update traces."""

    graphs: int = 0
    updates: int = 0
    dump_mismatches: list = field(default_factory=list)
    bc_max_delta: float = 0.0
    bc_mismatches: list = field(default_factory=list)
    inv1_mismatches: list = field(default_factory=list)
    inv1_missing_pairs: list = field(default_factory=list)
    cleanup_bound_violations: list = field(default_factory=list)
    fixup_mean_violations: list = field(default_factory=list)
    engine_bugs: list = field(default_factory=list)
    seed_collisions: int = 0


def run_corpus(n_graphs: int, seed: int = 20240817,
               updates_per_graph: int = 10) -> CorpusResult:
    """Replay random decremental traces, verifying each update against a
    freshly built system and collecting counter/invariant evidence."""
    import math

    rng = random.Random(seed)
    res = CorpusResult()
    for trial in range(n_graphs):
        n = rng.randint(4, 30)
        density = rng.uniform(0.1, 0.5)
        g = random_dense_graph(rng, n, density)
        oracle = static_apasp(g)
        nu0, m0 = sp_params(g, oracle)
        ts = build_tuple_system(g, oracle)
        res.graphs += 1
        created = []
        for step in range(updates_per_graph):
            op = random_update(rng, g)
            if op is None:
                break
            nu_pre, _ = sp_params(g, oracle)
            audit = UpdateAudit()
            try:
                g, stats = decremental_update(ts, g, op, audit)
            except Exception as exc:  # noqa: BLE001 - recorded, then fatal
                res.engine_bugs.append(f"trial {trial} step {step}: {exc!r}")
                return res
            res.updates += 1
            res.seed_collisions += audit.seed_collisions
            created.append(stats.new_triples_created)

            oracle = static_apasp(g)
            rebuilt = build_tuple_system(g, oracle)
            got, want = ts.dump(), rebuilt.dump()
            if got != want:
                got_l, want_l = set(got.splitlines()), set(want.splitlines())
                res.dump_mismatches.append(
                    (trial, step, sorted(got_l ^ want_l)[:5]))

            for (x, y), wt in audit.first_extraction.items():
                if oracle.d[x][y] != wt:
                    res.inv1_mismatches.append((trial, step, x, y, wt,
                                                oracle.d[x][y]))
            for x in range(g.n):
                for y in range(g.n):
                    if (x != y and oracle.d[x][y] < math.inf
                            and (x, y) not in audit.first_extraction):
                        res.inv1_missing_pairs.append((trial, step, x, y))

            bound = 8 * (nu_pre ** 2 + 2 * g.n * nu_pre)
            if stats.triples_touched_cleanup > bound:
                res.cleanup_bound_violations.append(
                    (trial, step, stats.triples_touched_cleanup, bound))

            scores_dag = bc_from_dags(ts)
            scores_ref = bc_pair_formula(oracle)
            delta = max(abs(scores_dag[u] - scores_ref[u])
                        for u in range(g.n))
            res.bc_max_delta = max(res.bc_max_delta, delta)
            if delta > 1e-9:
                res.bc_mismatches.append((trial, step, delta))

        if created and nu0 > 0 and len(created) > m0 / nu0:
            mean = sum(created) / len(created)
            if mean > 8 * nu0 ** 2:
                res.fixup_mean_violations.append((trial, mean, 8 * nu0 ** 2))
    return res


@pytest.fixture(scope="session")
def corpus():
    return run_corpus(n_graphs=200)
