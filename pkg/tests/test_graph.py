import pytest
from hypothesis import given, settings, strategies as st

from pnsdag.errors import (
    CycleDetected,
    DuplicateEdge,
    DuplicateNode,
    GraphFormatError,
    InternalWithoutChildren,
    LeafWithChildren,
    MissingRoot,
    MixWithoutEdgeLabels,
    NotPure,
    UnknownNode,
)
from pnsdag.generators import comb_lattice, fixture, lattice, random_dag, random_tree
from pnsdag.graph import (
    AndOrDag,
    Kind,
    Status,
    normalize_mixed,
    parse_graph,
    revert,
    serialize_graph,
    topo_order,
)
from pnsdag.sat import parse_dimacs, reduce_cnf

from conftest import GOLDEN

FIG3 = """\
andor v1
# same shape as the fig3 fixture
node A OR open
node B AND open
node C AND open
node D OR leaf
node E OR leaf
node F OR leaf

edge A B
edge A C
edge B D
edge B E
edge C E
edge C F
root A
"""


def test_parse_fig3():
    g = parse_graph(FIG3)
    assert len(g) == 6
    assert g.num_edges == 6
    assert g.root == "A"
    assert g.children("B") == ("D", "E")
    assert g == fixture("fig3")


def _with(extra, base="andor v1\nnode A OR open\nnode B OR leaf\nedge A B\nroot A\n"):
    return base + extra


@pytest.mark.parametrize(
    "text, exc",
    [
        (_with("edge A Z\n"), UnknownNode),
        ("andor v1\nnode A OR open\nnode B OR open\nedge A B\nedge B A\nroot A\n", CycleDetected),
        (_with("node A OR leaf\n"), DuplicateNode),
        (_with("edge A B\n"), DuplicateEdge),
        ("andor v1\nnode A OR open\nnode B OR leaf\nedge A B\n", MissingRoot),
        ("andor v1\nnode A OR leaf\nnode B OR leaf\nedge A B\nroot A\n", LeafWithChildren),
        ("andor v1\nnode A OR open\nroot A\n", InternalWithoutChildren),
        ("andor v1\nnode A MIX open\nnode B OR leaf\nedge A B\nroot A\n", MixWithoutEdgeLabels),
        ("node A OR leaf\nroot A\n", GraphFormatError),
        (_with("root B\n"), GraphFormatError),
        (_with("node bad-id OR leaf\n"), GraphFormatError),
        (_with("node X__y OR leaf\n"), GraphFormatError),
        (_with("node Q XOR leaf\n"), GraphFormatError),
        (_with("edge A B OR\n", "andor v1\nnode A OR open\nnode B OR leaf\nroot A\n"), GraphFormatError),
        ("andor v1\nnode A OR open\nnode B OR leaf\nedge A B\nroot Z\n", UnknownNode),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_graph(text)


def test_self_loop_is_a_cycle():
    with pytest.raises(CycleDetected):
        parse_graph("andor v1\nnode A OR open\nedge A A\nroot A\n")


@pytest.mark.parametrize(
    "g",
    [
        fixture("fig3"),
        fixture("fig1_left"),
        lattice(7),
        comb_lattice(5),
        reduce_cnf(parse_dimacs((GOLDEN / "fig6.cnf").read_text())),
    ],
    ids=["fig3", "fig1_left", "lattice7", "comb5", "fig6"],
)
def test_round_trip(g):
    text = serialize_graph(g)
    again = parse_graph(text)
    assert again == g
    assert serialize_graph(again) == text


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_round_trip_random(seed):
    g = random_dag(seed, 14)
    assert parse_graph(serialize_graph(g)) == g


def test_normalize_fig1():
    out = normalize_mixed(fixture("fig1_left"))
    assert out == fixture("fig1_right")
    assert out.kind("A") is Kind.OR
    assert out.kind("A__and") is Kind.AND
    assert out.children("A") == ("A__and", "D")


def test_normalize_pure_is_identity():
    g = fixture("fig3")
    assert normalize_mixed(g) is g


def test_normalize_all_and_labels():
    g = parse_graph(
        "andor v1\nnode A MIX open\nnode B OR leaf\nnode C OR leaf\n"
        "edge A B AND\nedge A C AND\nroot A\n"
    )
    out = normalize_mixed(g)
    assert out.kind("A") is Kind.AND
    assert len(out) == 3
    assert out.children("A") == ("B", "C")


def test_normalize_single_and_child_still_splits():
    g = parse_graph(
        "andor v1\nnode A MIX open\nnode B OR leaf\nnode C OR leaf\n"
        "edge A B OR\nedge A C AND\nroot A\n"
    )
    out = normalize_mixed(g)
    assert out.children("A") == ("B", "A__and")
    assert out.children("A__and") == ("C",)


def test_normalize_fresh_id_collision():
    g = parse_graph(
        "andor v1\nnode A MIX open\nnode A__and OR leaf\nnode C OR leaf\n"
        "edge A A__and OR\nedge A C AND\nroot A\n"
    )
    with pytest.raises(DuplicateNode):
        normalize_mixed(g)


def test_normalize_output_is_pure_and_bounded():
    g = parse_graph(
        "andor v1\nnode R MIX open\nnode S MIX open\nnode a OR leaf\nnode b OR leaf\nnode c OR leaf\n"
        "edge R S OR\nedge R a AND\nedge R b AND\nedge S b OR\nedge S c AND\nroot R\n"
    )
    out = normalize_mixed(g)
    assert out.is_pure
    assert len(out) <= len(g) + 2


def test_revert_fig2():
    r = revert(fixture("fig2"))
    assert [r.kind(n) for n in "ABC"] == [Kind.AND, Kind.OR, Kind.AND]


def test_revert_swaps_terminals():
    g = AndOrDag(
        [("A", "OR", "open"), ("B", "OR", "proven"), ("C", "OR", "disproven")],
        [("A", "B"), ("A", "C")],
        "A",
    )
    r = revert(g)
    assert r.status("B") is Status.DISPROVEN
    assert r.status("C") is Status.PROVEN


def test_revert_fig6_root():
    g = reduce_cnf(parse_dimacs((GOLDEN / "fig6.cnf").read_text()))
    assert g.kind("P") is Kind.AND
    assert revert(g).kind("P") is Kind.OR


def test_revert_rejects_mix():
    with pytest.raises(NotPure):
        revert(fixture("fig1_left"))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_revert_involution(seed):
    g = random_dag(seed, 14)
    r = revert(g)
    assert revert(r) == g
    assert len(r) == len(g) and r.num_edges == g.num_edges


def test_topo_single():
    g = AndOrDag([("A", "OR", "leaf")], [], "A")
    assert topo_order(g) == ["A"]


def test_topo_chain():
    g = AndOrDag(
        [("A", "OR", "open"), ("B", "AND", "open"), ("C", "OR", "leaf")],
        [("A", "B"), ("B", "C")],
        "A",
    )
    assert topo_order(g) == ["C", "B", "A"]


def test_topo_fig3():
    order = topo_order(fixture("fig3"))
    pos = {n: i for i, n in enumerate(order)}
    assert max(pos[n] for n in "DEF") < min(pos["B"], pos["C"])
    assert max(pos["B"], pos["C"]) < pos["A"]
    assert order == ["D", "E", "F", "B", "C", "A"]


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_topo_property(seed):
    g = random_tree(seed, 20) if seed % 2 else random_dag(seed, 14)
    order = topo_order(g)
    assert len(order) == len(g)
    pos = {n: i for i, n in enumerate(order)}
    for p, c, _ in g.edges():
        assert pos[c] < pos[p]
    assert order == topo_order(g)


def test_with_statuses():
    g = fixture("fig2").with_statuses({"E": Status.PROVEN})
    assert g.status("E") is Status.PROVEN
    with pytest.raises(LeafWithChildren):
        fixture("fig2").with_statuses({"B": Status.PROVEN})
