import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apasp.graph import (DELETE, GraphError, NonIncidentEdge, UpdateOp,
                         WeightDecrease, apply_weights, load_graph,
                         load_trace, serialize_graph, validate_update)


def test_load_fixture(fixture_g):
    assert fixture_g.n == 12
    assert fixture_g.m == 16
    assert fixture_g.weights[(fixture_g.vertex("a1"), fixture_g.vertex("b1"))] == 4.0


def test_load_empty_edge_list():
    g = load_graph("vertices 3\n")
    assert g.n == 3
    assert g.m == 0


def test_non_positive_weight_rejected():
    with pytest.raises(GraphError, match="non-positive"):
        load_graph("x a1 0.0\n")


def test_self_loop_rejected():
    with pytest.raises(GraphError, match="self-loop"):
        load_graph("u u 1\n")


def test_duplicate_edge_rejected():
    with pytest.raises(GraphError, match="duplicate"):
        load_graph("u w 1\nu w 2\n")


def test_parse_error_carries_line_number():
    with pytest.raises(GraphError, match="line 2"):
        load_graph("u w 1\nbogus line here extra\n")


def test_comments_and_blank_lines():
    g = load_graph("# header\n\nu w 1  # trailing\n")
    assert g.m == 1


def test_validate_fig4_update_ok(fixture_g, fig4_op):
    validate_update(fixture_g, fig4_op)


def test_validate_weight_decrease(fixture_g, ids):
    op = UpdateOp(ids["v"], {(ids["a1"], ids["v"]): 0.5})
    with pytest.raises(WeightDecrease):
        validate_update(fixture_g, op)


def test_validate_non_incident(fixture_g, ids):
    op = UpdateOp(ids["v"], {(ids["x"], ids["a1"]): 7.0})
    with pytest.raises(NonIncidentEdge):
        validate_update(fixture_g, op)


def test_apply_weights_fig4(fixture_g, fig4_op):
    g2 = apply_weights(fixture_g, fig4_op)
    assert g2.weights[(fixture_g.vertex("a1"), fixture_g.vertex("v"))] == 10.0
    assert g2.weights[(fixture_g.vertex("a2"), fixture_g.vertex("v"))] == 5.0
    assert g2.m == fixture_g.m
    # original untouched
    assert fixture_g.weights[(fixture_g.vertex("a1"), fixture_g.vertex("v"))] == 1.0


def test_apply_weights_empty_op(fixture_g, ids):
    g2 = apply_weights(fixture_g, UpdateOp(ids["v"], {}))
    assert g2.weights == fixture_g.weights


def test_apply_weights_delete(fixture_g, ids):
    e = (ids["v"], ids["b1"])
    g2 = apply_weights(fixture_g, UpdateOp(ids["v"], {e: DELETE}))
    assert e not in g2.weights
    assert len(g2.in_adj[ids["b1"]]) == len(fixture_g.in_adj[ids["b1"]]) - 1


def test_apply_never_decreases_or_adds(fixture_g, fig4_op):
    g2 = apply_weights(fixture_g, fig4_op)
    assert set(g2.weights) <= set(fixture_g.weights)
    for e, w in g2.weights.items():
        assert w >= fixture_g.weights[e]


def test_trace_parsing(fixture_g):
    ops = load_trace("update v a1 v 10 a2 v 5\nupdate v v b1 del\n", fixture_g)
    assert len(ops) == 2
    assert ops[0].changes[(fixture_g.vertex("a1"), fixture_g.vertex("v"))] == 10.0
    assert ops[1].changes[(fixture_g.vertex("v"), fixture_g.vertex("b1"))] == DELETE


@st.composite
def graphs(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    text = [f"vertices {n}"]
    for u, v in chosen:
        w = draw(st.integers(min_value=2, max_value=20)) / 2.0
        text.append(f"{u} {v} {w}")
    return load_graph("\n".join(text) + "\n")


@settings(max_examples=50, deadline=None)
@given(graphs())
def test_serialize_round_trip(g):
    g2 = load_graph(serialize_graph(g))
    assert g2.n == g.n
    assert g2.weights == g.weights
    assert serialize_graph(g2) == serialize_graph(g)
