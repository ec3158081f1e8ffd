"""Subcategory -> supercategory graph analyses."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .errors import RootMissing
from .records import CATEGORY

DEFAULT_ROOT = "Categories"


@dataclass
class CategoryGraph:
    """Directed child -> parent edges between category titles.

    Self-loops are kept in ``self_loops`` and excluded from ``parents``.
    """

    nodes: list = field(default_factory=list)
    parents: dict = field(default_factory=dict)
    children: dict = field(default_factory=dict)
    self_loops: set = field(default_factory=set)

    @classmethod
    def from_edges(cls, edges, extra_nodes=()) -> "CategoryGraph":
        g = cls()
        seen = set()
        for t in extra_nodes:
            g._add_node(t, seen)
        for child, parent in edges:
            g._add_node(child, seen)
            g._add_node(parent, seen)
            if child == parent:
                g.self_loops.add(child)
            else:
                g.parents[child].add(parent)
                g.children[parent].add(child)
        g.nodes.sort()
        return g

    def _add_node(self, t, seen):
        if t not in seen:
            seen.add(t)
            self.nodes.append(t)
            self.parents[t] = set()
            self.children[t] = set()

    def __contains__(self, title) -> bool:
        return title in self.parents

    @property
    def n_edges(self) -> int:
        return sum(len(p) for p in self.parents.values()) + len(self.self_loops)


def build_category_graph(snapshot) -> CategoryGraph:
    """Edges from Category-namespace members to their categories.

    Nodes are every category title seen: category pages and assignment
    targets of any namespace.
    """
    cat_pages = {p.page_id: p.title for p in snapshot.pages if p.namespace == CATEGORY}
    titles = set(cat_pages.values())
    edges = []
    for a in snapshot.assignments:
        titles.add(a.category_title)
        child = cat_pages.get(a.member_page_id)
        if child is not None:
            edges.append((child, a.category_title))
    return CategoryGraph.from_edges(edges, extra_nodes=sorted(titles))


def reachable_to_root(graph: CategoryGraph, root: str = DEFAULT_ROOT) -> set:
    """Nodes with a child -> parent path to ``root`` (root included)."""
    if root not in graph:
        return set()
    seen = {root}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        for child in graph.children[node]:
            if child not in seen:
                seen.add(child)
                queue.append(child)
    return seen


def disconnected_from_root(graph: CategoryGraph, root: str = DEFAULT_ROOT) -> set:
    return set(graph.nodes) - reachable_to_root(graph, root)


def undirected_disconnected(graph: CategoryGraph, root: str = DEFAULT_ROOT) -> set:
    """Nodes outside the weakly connected component containing ``root``."""
    if root not in graph:
        return set(graph.nodes)
    seen = {root}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        for nxt in graph.children[node] | graph.parents[node]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return set(graph.nodes) - seen


@dataclass
class TreeNode:
    title: str
    children: list = field(default_factory=list)
    cycle: bool = False  # already on the path from the root; not expanded

    def to_dict(self) -> dict:
        out = {"title": self.title, "children": [c.to_dict() for c in self.children]}
        if self.cycle:
            out["cycle"] = True
        return out

    def count(self) -> int:
        return 1 + sum(c.count() for c in self.children)


def depth_listing(graph: CategoryGraph, root: str = DEFAULT_ROOT, depth: int = 3) -> TreeNode:
    """Expand subcategories of ``root`` down to ``depth`` levels.

    A category with several parents appears under each of them; one that
    is already on its own root path is listed once more, flagged, and not
    expanded.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if root not in graph:
        raise RootMissing(root)
    tree = TreeNode(root)
    # iterative DFS: (tree node, remaining depth, titles on the path)
    stack = [(tree, depth, frozenset((root,)))]
    while stack:
        node, remaining, path = stack.pop()
        if remaining == 0:
            continue
        for child in sorted(graph.children[node.title]):
            sub = TreeNode(child, cycle=child in path)
            node.children.append(sub)
            if not sub.cycle:
                stack.append((sub, remaining - 1, path | {child}))
    return tree


def listing_text(tree: TreeNode, indent: str = "  ") -> str:
    lines = []
    stack = [(tree, 0)]
    while stack:
        node, level = stack.pop()
        mark = " (cycle)" if node.cycle else ""
        lines.append(f"{indent * level}{node.title}{mark}")
        stack.extend((c, level + 1) for c in reversed(node.children))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Cycle:
    members: tuple
    self_loop: bool = False

    def to_dict(self) -> dict:
        return {"members": list(self.members), "self_loop": self.self_loop}


def strongly_connected_components(graph: CategoryGraph) -> list:
    """Tarjan's algorithm without recursion; components as sorted tuples."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    components = []
    counter = 0
    for start in graph.nodes:
        if start in index:
            continue
        work = [(start, iter(sorted(graph.parents[start])))]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(sorted(graph.parents[nxt]))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                components.append(tuple(sorted(comp)))
    return components


def find_cycles(graph: CategoryGraph) -> list:
    """Strongly connected components of size >= 2 plus self-looped nodes.

    Ordered by smallest member title. A self-loop on a node that is part
    of a larger component is reported with that component only.
    """
    cycles = []
    for comp in strongly_connected_components(graph):
        if len(comp) >= 2:
            cycles.append(Cycle(comp))
        elif comp[0] in graph.self_loops:
            cycles.append(Cycle(comp, self_loop=True))
    cycles.sort(key=lambda c: c.members[0])
    return cycles


def hierarchy_report(graph: CategoryGraph, root: str = DEFAULT_ROOT, depth: int = 3) -> dict:
    directed = disconnected_from_root(graph, root)
    undirected = undirected_disconnected(graph, root)
    return {
        "root": root,
        "nodes": len(graph.nodes),
        "edges": graph.n_edges,
        "disconnected": sorted(directed),
        "disconnected_count": len(directed),
        "undirected_disconnected_count": len(undirected),
        "cycles": [c.to_dict() for c in find_cycles(graph)],
    }


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
