"""Core graph container: construction, queries, validation."""

import pytest

from ptgraph.errors import CyclicGraph, UnknownNode
from ptgraph.graph import (
    CausalGraph,
    Edge,
    Node,
    Role,
    directed,
    undirected,
)


def g_simple():
    return CausalGraph(
        [
            Node("A", role=Role.TREATMENT),
            Node("Y0", role=Role.OUTCOME0),
            Node("Y1", role=Role.OUTCOME1),
            Node("U", latent=True),
        ],
        [
            directed("U", "Y0"),
            directed("U", "A"),
            directed("U", "Y1"),
            directed("A", "Y1"),
        ],
    )


def test_basic_queries():
    g = g_simple()
    assert g.node_names == ("A", "U", "Y0", "Y1")
    assert g.treatment() == "A"
    assert g.outcome(0) == "Y0"
    assert g.outcome(1) == "Y1"
    assert g.parents("Y1") == frozenset({"U", "A"})
    assert g.children("U") == frozenset({"A", "Y0", "Y1"})
    assert "U" in g and "V" not in g
    with pytest.raises(UnknownNode):
        g.parents("V")


def test_undirected_edges_canonicalized():
    e = undirected("B", "A")
    assert (e.tail, e.head) == ("A", "B")
    # duplicates after canonicalization collapse
    g = CausalGraph(
        [Node("A"), Node("B")], [undirected("B", "A"), undirected("A", "B")]
    )
    assert len(g.edges) == 1


def test_descendants_and_ancestors():
    g = g_simple()
    assert g.descendants("U") == frozenset({"U", "A", "Y0", "Y1"})
    assert g.descendants("A") == frozenset({"A", "Y1"})
    assert g.ancestors("Y1") == frozenset({"Y1", "A", "U"})


def test_topological_order_respects_tiers():
    g = CausalGraph(
        [Node("A"), Node("B"), Node("C")],
        [directed("A", "C")],
        tiers={"B": 0, "A": 1},
    )
    order = g.topological_order()
    assert order.index("B") < order.index("A") < order.index("C")


def test_cycle_detection():
    g = CausalGraph(
        [Node("A"), Node("B")], [directed("A", "B"), directed("B", "A")]
    )
    assert not g.is_acyclic()
    with pytest.raises(CyclicGraph) as exc:
        g.topological_order()
    assert set(exc.value.cycle) >= {"A", "B"}


def test_validate_flags_time_order():
    g = CausalGraph(
        [
            Node("A", role=Role.TREATMENT),
            Node("Y0", role=Role.OUTCOME0),
            Node("Y1", role=Role.OUTCOME1),
        ],
        [directed("A", "Y0"), directed("A", "Y1")],
    )
    codes = {v.code for v in g.validate()}
    assert "TimeOrderViolation" in codes


def test_validate_flags_duplicate_roles_and_unknown_endpoints():
    g = CausalGraph(
        [Node("A", role=Role.TREATMENT), Node("B", role=Role.TREATMENT)], []
    )
    assert {v.code for v in g.validate()} == {"RoleCardinalityViolation"}
    g2 = CausalGraph([Node("A")], [Edge("A", "Z", True)])
    assert "EdgeViolation" in {v.code for v in g2.validate()}


def test_valid_graph_has_empty_report():
    assert g_simple().validate() == []


def test_with_edges_and_without_node():
    g = g_simple()
    g2 = g.with_edges(remove=[directed("A", "Y1")])
    assert g2.parents("Y1") == frozenset({"U"})
    g3 = g.without_node("U")
    assert "U" not in g3
    assert all("U" not in (e.tail, e.head) for e in g3.edges)
    assert g == g  # equality is structural
    assert g != g2
