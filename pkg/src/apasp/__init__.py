"""Decremental all-pairs all-shortest-paths maintenance and betweenness
centrality, with a from-scratch oracle for verification."""

from .centrality import bc_from_dags, bc_pair_formula
from .engine import (UpdateAudit, UpdateStats, cleanup, decremental_update,
                     fixup)
from .graph import (DELETE, Graph, GraphError, NonIncidentEdge, UnknownEdge,
                    UpdateError, UpdateOp, WeightDecrease, apply_weights,
                    load_graph, load_trace, serialize_graph, validate_update)
from .oracle import (ExplosionGuard, OracleResult, assert_equivalent,
                     build_tuple_system, dijkstra_counting,
                     enumerate_lsps_bruteforce, sp_params, static_apasp)
from .tuples import (EngineBug, OverDecrement, SPDag, Triple, TupleSystem,
                     UnknownTuple, WeightMismatch, single_edge_key)

__all__ = [
    "DELETE", "EngineBug", "ExplosionGuard", "Graph", "GraphError",
    "NonIncidentEdge", "OracleResult", "OverDecrement", "SPDag", "Triple",
    "TupleSystem", "UnknownEdge", "UnknownTuple", "UpdateAudit", "UpdateError",
    "UpdateOp", "UpdateStats", "WeightDecrease", "WeightMismatch",
    "apply_weights", "assert_equivalent", "bc_from_dags", "bc_pair_formula",
    "build_tuple_system", "cleanup", "decremental_update",
    "dijkstra_counting", "enumerate_lsps_bruteforce", "fixup", "load_graph",
    "load_trace", "serialize_graph", "single_edge_key", "sp_params",
    "static_apasp", "validate_update",
]
