import random
from datetime import datetime, timezone

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import closure_matrix, closure_reach
from wikimap.errors import RootMissing
from wikimap.hierarchy import (
    CategoryGraph,
    Cycle,
    build_category_graph,
    depth_listing,
    disconnected_from_root,
    find_cycles,
    hierarchy_report,
    listing_text,
    reachable_to_root,
    undirected_disconnected,
)
from wikimap.records import AuthorRef, CategoryAssignment, PageRecord
from wikimap.store import CorpusSnapshot

T = datetime(2005, 1, 1, tzinfo=timezone.utc)
A = AuthorRef.registered("A")


def test_build_from_category_members_only():
    pages = (PageRecord(1, "Algebra", "Category", T, A), PageRecord(2, "Apple", "Main", T, A))
    links = (CategoryAssignment(1, "Mathematics"), CategoryAssignment(2, "Fruit"))
    g = build_category_graph(CorpusSnapshot(pages, links))
    assert g.parents["Algebra"] == {"Mathematics"}
    assert g.n_edges == 1
    # the article's category is a node but has no edges
    assert "Fruit" in g and not g.parents["Fruit"]


def test_no_category_members_gives_edgeless_graph():
    pages = (PageRecord(2, "Apple", "Main", T, A),)
    g = build_category_graph(CorpusSnapshot(pages, (CategoryAssignment(2, "Fruit"),)))
    assert g.n_edges == 0


def test_disconnected_chain_and_isolate():
    g = CategoryGraph.from_edges([("A", "B"), ("B", "Categories")], extra_nodes=["Z"])
    assert disconnected_from_root(g) == {"Z"}
    assert reachable_to_root(g) == {"A", "B", "Categories"}


def test_root_only_graph():
    g = CategoryGraph.from_edges([], extra_nodes=["Categories"])
    assert disconnected_from_root(g) == set()


def test_directed_and_undirected_disconnection_differ():
    # Up reaches the root's parent side only through a wrong-way edge
    g = CategoryGraph.from_edges([("A", "Categories"), ("A", "Up")])
    assert disconnected_from_root(g) == {"Up"}
    assert undirected_disconnected(g) == set()


def test_depth_listing_fixture():
    g = CategoryGraph.from_edges([
        ("Culture", "Categories"), ("Science", "Categories"), ("Archaeology", "Culture"),
        ("Deep", "Archaeology"),
    ])
    tree = depth_listing(g, "Categories", depth=2)
    assert listing_text(tree) == "Categories\n  Culture\n    Archaeology\n  Science\n"
    assert tree.count() == 4


def test_depth_zero_is_root_only():
    g = CategoryGraph.from_edges([("Culture", "Categories")])
    assert depth_listing(g, depth=0).to_dict() == {"title": "Categories", "children": []}


def test_depth_listing_guards_cycles():
    g = CategoryGraph.from_edges([("A", "Categories"), ("B", "A"), ("A", "B")])
    tree = depth_listing(g, depth=10)
    assert listing_text(tree) == "Categories\n  A\n    B\n      A (cycle)\n"


def test_missing_root():
    g = CategoryGraph.from_edges([("A", "B")])
    with pytest.raises(RootMissing):
        depth_listing(g, "Categories")
    assert reachable_to_root(g) == set()


def test_three_cycle():
    g = CategoryGraph.from_edges([("A", "B"), ("B", "C"), ("C", "A")])
    assert find_cycles(g) == [Cycle(("A", "B", "C"))]


def test_acyclic_chain():
    assert find_cycles(CategoryGraph.from_edges([("A", "B"), ("B", "C")])) == []


def test_self_loop():
    g = CategoryGraph.from_edges([("D", "D"), ("D", "E")])
    assert find_cycles(g) == [Cycle(("D",), self_loop=True)]
    assert g.n_edges == 2


def test_report_shape():
    g = CategoryGraph.from_edges([("A", "Categories"), ("Z", "Z")])
    r = hierarchy_report(g)
    assert r["disconnected"] == ["Z"] and r["disconnected_count"] == 1
    assert r["cycles"] == [{"members": ["Z"], "self_loop": True}]


def _random_graph(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 40)
    nodes = ["Categories"] + [f"N{i}" for i in range(1, n)]
    edges = [(rng.choice(nodes), rng.choice(nodes)) for _ in range(rng.randint(0, 3 * n))]
    return nodes, edges


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_against_closure_oracle(seed):
    nodes, edges = _random_graph(seed)
    g = CategoryGraph.from_edges(edges, extra_nodes=nodes)
    reach = reachable_to_root(g)
    assert reach == closure_reach(nodes, edges, "Categories")
    assert reach | disconnected_from_root(g) == set(nodes)
    assert not reach & disconnected_from_root(g)

    r = closure_matrix(nodes, edges)
    for cyc in find_cycles(g):
        idx = [nodes.index(m) for m in cyc.members]
        assert all(r[i, j] for i in idx for j in idx)
    in_cycle = {m for c in find_cycles(g) for m in c.members}
    for i, v in enumerate(nodes):
        on_cycle = any(r[i, j] and r[j, i] for j in range(len(nodes)) if j != i) or (v, v) in edges
        assert (v in in_cycle) == on_cycle
    depth_listing(g, depth=5)
