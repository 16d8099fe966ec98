"""Finite simplicial graphs with a planar embedding, and their DFS ordering.

A :class:`Graph` stores, for every vertex, its neighbours in cyclic
(embedding) order.  :func:`order_graph` picks a rooted maximal tree and
numbers the vertices ``0, 1, ..., n`` along the walk that always takes the
leftmost unvisited branch; all later constructions work with those numbers.
"""

from __future__ import annotations

import dataclasses
import functools
from collections import deque
from typing import Hashable, Iterable, Mapping, Sequence

Vertex = Hashable
Edge = tuple[int, int]


class GraphError(ValueError):
    """Invalid graph input (parse errors, non-simplicial or disconnected graphs, bad trees)."""


@dataclasses.dataclass(frozen=True)
class Graph:
    vertices: tuple
    adjacency: Mapping[Vertex, tuple]

    def __post_init__(self):
        if not self.vertices:
            raise GraphError("graph has no vertices")
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise GraphError("duplicate vertex ids")
        if set(self.adjacency) != vs:
            raise GraphError("adjacency keys do not match the vertex list")
        for v, nbrs in self.adjacency.items():
            if v in nbrs:
                raise GraphError(f"loop at vertex {v!r}; subdivide first")
            if len(set(nbrs)) != len(nbrs):
                raise GraphError(f"parallel edges at vertex {v!r}; subdivide first")
            for u in nbrs:
                if u not in vs:
                    raise GraphError(f"vertex {v!r} lists unknown neighbour {u!r}")
                if v not in self.adjacency[u]:
                    raise GraphError(f"inconsistent adjacency: {v!r} lists {u!r} but not conversely")
        if not self._connected():
            raise GraphError("graph is disconnected")

    @classmethod
    def from_adjacency(cls, adjacency: Mapping[Vertex, Sequence[Vertex]]) -> "Graph":
        return cls(tuple(adjacency), {v: tuple(nbrs) for v, nbrs in adjacency.items()})

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[Vertex, Vertex]], vertices: Sequence[Vertex] = ()) -> "Graph":
        """Build a graph whose embedding order is the order in which edges are listed."""
        adj: dict = {v: [] for v in vertices}
        for u, v in edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        return cls.from_adjacency(adj)

    def _connected(self) -> bool:
        seen = {self.vertices[0]}
        queue = deque(seen)
        while queue:
            v = queue.popleft()
            for u in self.adjacency[v]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return len(seen) == len(self.vertices)

    @functools.cached_property
    def edges(self) -> frozenset:
        return frozenset(frozenset((u, v)) for u in self.vertices for v in self.adjacency[u])

    def degree(self, v: Vertex) -> int:
        return len(self.adjacency[v])

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges)

    def betti_number(self) -> int:
        return 1 - self.euler_characteristic()


def subdivide_to_simplicial(edges: Sequence[tuple[Vertex, Vertex]], vertices: Sequence[Vertex] = ()) -> Graph:
    """Subdivide a multigraph (loops and parallel edges allowed) into a simplicial graph.

    A loop gets two new vertices and every edge of a parallel class of size at
    least two gets one.  New vertices are named ``("s", i)``.
    """
    if not edges and not vertices:
        raise GraphError("empty graph")
    counter = 0

    def fresh():
        nonlocal counter
        counter += 1
        return ("s", counter)

    multiplicity: dict = {}
    for u, v in edges:
        multiplicity[frozenset((u, v))] = multiplicity.get(frozenset((u, v)), 0) + 1
    out: list[tuple[Vertex, Vertex]] = []
    for u, v in edges:
        if u == v:
            a, b = fresh(), fresh()
            out += [(u, a), (a, b), (b, u)]
        elif multiplicity[frozenset((u, v))] > 1:
            m = fresh()
            out += [(u, m), (m, v)]
        else:
            out.append((u, v))
    return Graph.from_edges(out, vertices)


def parse_graph(text: str) -> tuple[Graph, list[tuple[int, str]]]:
    """Parse the line format ``graph <n>`` followed by ``v <id>: <neighbours>`` lines.

    Lines that are neither ``graph`` nor ``v`` lines (for instance ``tau``
    lines of an involution file) are returned with their line numbers.
    Vertex ids that are all integers are converted to ``int``.
    """
    declared = None
    rows: dict[str, list[str]] = {}
    line_of: dict[str, int] = {}
    extra: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split(None, 1)[0]
        if head == "graph":
            try:
                declared = int(line.split()[1])
            except (IndexError, ValueError):
                raise GraphError(f"line {lineno}: expected 'graph <n>'") from None
        elif head == "v":
            body = line[1:].strip()
            if ":" not in body:
                raise GraphError(f"line {lineno}: expected 'v <id>: <neighbours>'")
            vid, _, nbrs = body.partition(":")
            vid = vid.strip()
            if not vid:
                raise GraphError(f"line {lineno}: missing vertex id")
            if vid in rows:
                raise GraphError(f"line {lineno}: vertex {vid} listed twice")
            rows[vid] = nbrs.replace(",", " ").split()
            line_of[vid] = lineno
        else:
            extra.append((lineno, line))
    if declared is None:
        raise GraphError("missing 'graph <n>' header")
    if declared != len(rows):
        raise GraphError(f"header declares {declared} vertices but {len(rows)} are listed")
    for v, nbrs in rows.items():
        for u in nbrs:
            if u not in rows:
                raise GraphError(f"line {line_of[v]}: neighbour {u} of {v} is not a listed vertex")
            if v not in rows[u]:
                raise GraphError(f"line {line_of[u]}: vertex {u} does not list its neighbour {v}")
    tokens = set(rows)
    convert = int if all(t.lstrip("-").isdigit() for t in tokens) else str
    adjacency = {convert(v): [convert(u) for u in nbrs] for v, nbrs in rows.items()}
    return Graph.from_adjacency(adjacency), extra


def read_graph(path) -> Graph:
    with open(path) as fh:
        graph, extra = parse_graph(fh.read())
    if extra:
        lineno, line = extra[0]
        raise GraphError(f"{path}: line {lineno}: unexpected line {line!r}")
    return graph


def format_graph(g: Graph) -> str:
    lines = [f"graph {len(g.vertices)}"]
    for v in g.vertices:
        lines.append(f"v {v}: " + " ".join(str(u) for u in g.adjacency[v]))
    return "\n".join(lines) + "\n"


@dataclasses.dataclass(frozen=True)
class OrderedGraph:
    """A graph numbered along its rooted maximal tree.

    Everything is expressed in the new numbering ``0..n``: ``adjacency``,
    ``parent`` (so ``e_v = (parent[v], v)``), ``tree_edges`` and the deleted
    edges ``(x, y)`` with ``x < y``, sorted by ``y``.
    """

    base: Graph
    order: Mapping[Vertex, int]
    adjacency: Mapping[int, tuple[int, ...]]
    parent: Mapping[int, int]
    tree_edges: frozenset
    deleted_edges: tuple[Edge, ...]

    @property
    def n_vertices(self) -> int:
        return len(self.order)

    @property
    def vertices(self) -> range:
        return range(self.n_vertices)

    @property
    def root(self) -> Vertex:
        return self.label(0)

    def label(self, i: int) -> Vertex:
        return self._labels[i]

    @functools.cached_property
    def _labels(self) -> dict:
        return {i: v for v, i in self.order.items()}

    @functools.cached_property
    def _children(self) -> dict:
        kids: dict = {v: [] for v in self.vertices}
        for v, p in sorted(self.parent.items()):
            kids[p].append(v)
        return kids

    @property
    def edges(self) -> list[Edge]:
        """All edges ``(u, v)`` with ``u < v``, tree edges first by ``v``, then deleted edges."""
        tree = sorted(self.tree_edges, key=lambda e: e[1])
        return tree + list(self.deleted_edges)

    def tree_edge(self, v: int) -> Edge:
        """The edge ``e_v`` joining ``v`` to its parent."""
        return (self.parent[v], v)

    def is_deleted(self, e: Edge) -> bool:
        return e not in self.tree_edges

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def children(self, v: int) -> list[int]:
        return list(self._children[v])

    def tree_path_to_root(self, v: int) -> list[int]:
        path = [v]
        while path[-1] != 0:
            path.append(self.parent[path[-1]])
        return path

    def is_ancestor(self, u: int, v: int) -> bool:
        return u in self.tree_path_to_root(v)

    def z_name(self, e: Edge) -> str:
        return f"z{self.deleted_edges.index(e) + 1}"

    def tree_in_labels(self) -> set:
        lab = self._labels
        return {(lab[u], lab[v]) for u, v in self.tree_edges}


def _cyclic_after(nbrs: Sequence, arrival) -> list:
    """Neighbours in embedding order, starting just after ``arrival`` (or at the start)."""
    if arrival is None or arrival not in nbrs:
        return list(nbrs)
    i = nbrs.index(arrival)
    return list(nbrs[i + 1:]) + list(nbrs[:i + 1])


def dfs_tree(g: Graph, root: Vertex) -> set:
    """Depth-first spanning tree from ``root`` taking branches in embedding order."""
    visited = {root}
    tree: set = set()
    stack = [(root, iter(_cyclic_after(g.adjacency[root], None)))]
    while stack:
        v, it = stack[-1]
        for u in it:
            if u not in visited:
                visited.add(u)
                tree.add(frozenset((v, u)))
                stack.append((u, iter(_cyclic_after(g.adjacency[u], v))))
                break
        else:
            stack.pop()
    return tree


def _check_tree(g: Graph, tree: set) -> None:
    for e in tree:
        if len(e) != 2 or e not in g.edges:
            raise GraphError(f"tree edge {tuple(e)} is not an edge of the graph")
    if len(tree) != len(g.vertices) - 1:
        raise GraphError(f"proposed tree has {len(tree)} edges, a spanning tree needs {len(g.vertices) - 1}")
    adj: dict = {v: [] for v in g.vertices}
    for e in tree:
        u, v = tuple(e)
        adj[u].append(v)
        adj[v].append(u)
    seen = {g.vertices[0]}
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    if len(seen) != len(g.vertices):
        raise GraphError("proposed tree is not spanning (or contains a cycle)")


def _tree_degree(tree: set, v: Vertex) -> int:
    return sum(1 for e in tree if v in e)


def order_graph(g: Graph, root: Vertex | None = None, tree: Iterable | None = None) -> OrderedGraph:
    """Number the vertices of ``g`` along its rooted maximal tree.

    ``tree`` is an optional iterable of edges (pairs of vertex ids); the
    default is :func:`dfs_tree` from the root.  Without an explicit root the
    first vertex (in declaration order) that is a leaf of the tree is used.
    """
    if len(g.vertices) < 2:
        raise GraphError("need at least two vertices to choose a degree-1 root")
    tree_set = None if tree is None else {frozenset(e) for e in tree}
    if tree_set is not None:
        _check_tree(g, tree_set)
    if root is None:
        for v in g.vertices:
            t = tree_set if tree_set is not None else dfs_tree(g, v)
            if _tree_degree(t, v) == 1:
                root, tree_set = v, t
                break
    else:
        if root not in g.adjacency:
            raise GraphError(f"root {root!r} is not a vertex")
        if tree_set is None:
            tree_set = dfs_tree(g, root)
    if _tree_degree(tree_set, root) != 1:
        raise GraphError(f"root {root!r} must have degree 1 in the maximal tree")

    tree_adj: dict = {v: [u for u in g.adjacency[v] if frozenset((u, v)) in tree_set] for v in g.vertices}
    order: dict = {root: 0}
    parent_lbl: dict = {}
    stack = [(root, iter(tree_adj[root]))]
    while stack:
        v, it = stack[-1]
        for u in it:
            if u not in order:
                order[u] = len(order)
                parent_lbl[u] = v
                stack.append((u, iter(_cyclic_after(tree_adj[u], v))))
                break
        else:
            stack.pop()

    adjacency = {order[v]: tuple(order[u] for u in g.adjacency[v]) for v in g.vertices}
    parent = {order[v]: order[p] for v, p in parent_lbl.items()}
    tree_edges = frozenset((parent[v], v) for v in parent)
    for v, p in parent.items():
        if p >= v:
            raise AssertionError("walk numbering must increase along tree edges")
    deleted = set()
    for u, nbrs in adjacency.items():
        for v in nbrs:
            if u < v and (u, v) not in tree_edges:
                deleted.add((u, v))
    # Ties on the larger endpoint put the larger smaller endpoint first, so that
    # z_1 = (0, n) only when it is the only deleted edge ending at n.
    deleted_edges = tuple(sorted(deleted, key=lambda e: (e[1], -e[0])))
    for x, y in deleted_edges:
        if not x + 1 < y:
            raise GraphError(f"deleted edge ({x},{y}) violates x+1<y; subdivide the graph")
    return OrderedGraph(
        base=g,
        order=order,
        adjacency=adjacency,
        parent=parent,
        tree_edges=tree_edges,
        deleted_edges=deleted_edges,
    )


def essential_vertex(og: OrderedGraph) -> tuple[int, int, int] | None:
    """Smallest vertex with at least two tree children, with its two smallest children."""
    for v in og.vertices:
        kids = og.children(v)
        if len(kids) >= 2:
            return v, kids[0], kids[1]
    return None
