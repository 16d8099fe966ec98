"""Farley-Sabalka discrete gradient field on D_2(G) and UD_2(G).

Ingredient criticality:

* a vertex ``v`` is critical when ``v == 0`` or replacing it by its tree
  edge ``e_v`` would meet the other ingredient;
* an edge is critical when it is deleted, or it is ``e_v`` and the other
  ingredient is a vertex ``u`` adjacent to ``tau(e_v)`` with
  ``tau(e_v) < u < v``.

A cell with both ingredients critical is critical.  Otherwise the smallest
non-critical ingredient decides: a vertex ``v`` makes the cell redundant,
matched upward with ``v -> e_v``; an edge ``e_v`` makes it collapsible,
matched downward with ``e_v -> v``.  Vertices compare by their number and
``e_v`` compares as ``v``.
"""

from __future__ import annotations

import dataclasses
import enum
import graphlib
from collections import deque
from typing import Sequence

from .config_complex import Cell, CellComplex, Ingredient, Step, disjoint, is_vertex, path_end, reverse_path
from .graph_model import OrderedGraph, essential_vertex
from .words import Word


class Status(enum.Enum):
    CRITICAL = "critical"
    REDUNDANT = "redundant"
    COLLAPSIBLE = "collapsible"


class MorseError(RuntimeError):
    """An internal inconsistency in the gradient field or its trees."""


def _flow_key(x: Ingredient) -> int:
    return x if is_vertex(x) else x[1]


def _other(c: Cell, x: Ingredient) -> Ingredient:
    return c.second if c.first == x else c.first


def vertex_is_critical(og: OrderedGraph, c: Cell, v: int) -> bool:
    return v == 0 or not disjoint(og.tree_edge(v), _other(c, v))


def edge_is_critical(og: OrderedGraph, c: Cell, e: tuple) -> bool:
    if og.is_deleted(e):
        return True
    tau, v = e
    u = _other(c, e)
    return is_vertex(u) and og.adjacent(u, tau) and tau < u < v


def ingredient_is_critical(og: OrderedGraph, c: Cell, x: Ingredient) -> bool:
    return vertex_is_critical(og, c, x) if is_vertex(x) else edge_is_critical(og, c, x)


def _check_cell(og: OrderedGraph, c: Cell) -> None:
    for x in c.ingredients:
        if is_vertex(x):
            ok = 0 <= x < og.n_vertices
        else:
            ok = len(x) == 2 and x[0] < x[1] and og.adjacent(x[0], x[1])
        if not ok:
            raise ValueError(f"{c} is not a cell of the configuration complex: bad ingredient {x!r}")
    if not c.is_valid():
        raise ValueError(f"{c} is not a cell of the configuration complex: ingredients meet")


def classify_cell(og: OrderedGraph, c: Cell) -> tuple[Status, Cell | None]:
    """Return the status of ``c`` and its matched partner (``None`` when critical)."""
    _check_cell(og, c)
    noncritical = [x for x in c.ingredients if not ingredient_is_critical(og, c, x)]
    if not noncritical:
        return Status.CRITICAL, None
    x = min(noncritical, key=_flow_key)
    if is_vertex(x):
        return Status.REDUNDANT, c.replace(x, og.tree_edge(x))
    return Status.COLLAPSIBLE, c.replace(x, x[1])


class GradientField:
    def __init__(self, complex: CellComplex):
        self.complex = complex
        self.og = complex.og
        self.status: dict[Cell, Status] = {}
        self.partner: dict[Cell, Cell] = {}
        for c in complex:
            st, p = classify_cell(self.og, c)
            self.status[c] = st
            if p is not None:
                self.partner[c] = p

    def critical(self, dim: int | None = None) -> list[Cell]:
        cells = self.complex if dim is None else self.complex.cells[dim]
        return [c for c in cells if self.status[c] is Status.CRITICAL]

    def census(self) -> tuple[int, int, int]:
        return tuple(len(self.critical(d)) for d in range(3))

    def morse_euler_characteristic(self) -> int:
        c0, c1, c2 = self.census()
        return c0 - c1 + c2

    def modified_hasse(self) -> dict[Cell, set[Cell]]:
        """Successor sets of H_F(W): face arrows point down, matched arrows are reversed."""
        succ: dict[Cell, set[Cell]] = {c: set() for c in self.complex}
        for c in self.complex:
            for f in self.complex.faces[c]:
                if self.partner.get(f) == c and self.status[f] is Status.REDUNDANT:
                    succ[f].add(c)
                else:
                    succ[c].add(f)
        return succ

    def verify(self) -> None:
        """Check that the matching is well formed and acyclic; raise MorseError otherwise."""
        for c, p in self.partner.items():
            if p not in self.complex:
                raise MorseError(f"partner {p} of {c} is not a cell")
            if self.partner.get(p) != c:
                raise MorseError(f"partners not mutual: {c} -> {p} -> {self.partner.get(p)}")
            st, pst = self.status[c], self.status[p]
            if st is Status.REDUNDANT and not (pst is Status.COLLAPSIBLE and p.dim == c.dim + 1):
                raise MorseError(f"redundant {c} matched with {pst.value} {p}")
            if st is Status.COLLAPSIBLE and not (pst is Status.REDUNDANT and p.dim == c.dim - 1):
                raise MorseError(f"collapsible {c} matched with {pst.value} {p}")
        try:
            deps = {c: set() for c in self.complex}
            for c, succ in self.modified_hasse().items():
                for d in succ:
                    deps[d].add(c)
            tuple(graphlib.TopologicalSorter(deps).static_order())
        except graphlib.CycleError as exc:
            raise MorseError(f"modified Hasse diagram has a cycle: {exc.args[1]}") from None


def build_field(complex: CellComplex) -> GradientField:
    field = GradientField(complex)
    field.verify()
    return field


def select_connecting_cell(og: OrderedGraph) -> Cell:
    """The critical 1-cell ``(a,(b,c))`` with ``b < a < c`` that joins the two trees of DF."""
    ess = essential_vertex(og)
    if ess is not None:
        v, v1, v2 = ess
        cell = Cell(v1, (v, v2))
    elif og.deleted_edges:
        x1, y1 = og.deleted_edges[0]
        cell = Cell(x1 + 1, (x1, y1))
    else:
        raise ValueError("G is homeomorphic to an interval: D_2(G) is disconnected")
    a, (b, c) = cell.first, cell.second
    if not b < a < c:
        raise MorseError(f"connecting cell {cell} does not satisfy b<a<c")
    st, _ = classify_cell(og, cell)
    if st is not Status.CRITICAL:
        raise MorseError(f"connecting cell {cell} is {st.value}, not critical")
    return cell


@dataclasses.dataclass
class CollapsedTrees:
    """A maximal tree of the 1-skeleton made of collapsible cells (plus the connecting cell in D_2)."""

    field: GradientField
    base: Cell
    tree_cells: frozenset
    connecting: Cell | None
    forest_components: list
    beta: dict
    _edge_words: dict = dataclasses.field(default_factory=dict, repr=False)

    @property
    def ordered(self) -> bool:
        return self.field.complex.ordered

    @property
    def generators(self) -> list[Cell]:
        """Critical 1-cells outside the tree, in canonical order."""
        return [c for c in self.field.critical(1) if c not in self.tree_cells]

    def beta_path(self, u: Cell) -> list[Step]:
        return list(self.beta[u])

    def edge_word(self, cell: Cell) -> Word:
        """Word in the generators for the positively traversed 1-cell ``cell``."""
        memo = self._edge_words
        if cell in memo:
            return memo[cell]
        stack = [cell]
        active = set()
        while stack:
            c = stack[-1]
            if c in memo:
                stack.pop()
                continue
            st = self.field.status[c]
            if c in self.tree_cells:
                memo[c] = Word()
            elif st is Status.CRITICAL:
                memo[c] = Word.gen(c)
            else:
                rest = _boundary_rest(self.field.partner[c], c)
                pending = [d for d, _ in rest if d not in memo]
                if pending:
                    if c in active:
                        raise MorseError(f"cyclic rewriting through {c}")
                    active.add(c)
                    stack.extend(pending)
                    continue
                sign = rest.sign
                memo[c] = Word.product(memo[d] if s > 0 else memo[d].inverse() for d, s in rest) ** (-sign)
            active.discard(c)
            stack.pop()
        return memo[cell]

    def normalize(self, loop: Sequence[Step]) -> Word:
        return normalize_loop(self.field, self, loop)


class _Rest(list):
    sign: int = 1


def boundary_cycle(d: Cell) -> list[Step]:
    """The boundary of a 2-cell as a closed 4-step edge path."""
    e, f = d.first, d.second

    def mk(x, y):
        return Cell(x, y, d.ordered)

    return [(mk(e, f[0]), 1), (mk(e[1], f), 1), (mk(e, f[1]), -1), (mk(e[0], f), -1)]


def _boundary_rest(d: Cell, r: Cell) -> _Rest:
    """Steps following ``r`` around the boundary of ``d``; ``r^sign * rest = 1``."""
    cycle = boundary_cycle(d)
    i = next(i for i, (c, _) in enumerate(cycle) if c == r)
    rest = _Rest(cycle[i + 1:] + cycle[:i])
    rest.sign = cycle[i][1]
    return rest


def build_trees(field: GradientField, connecting: Cell | None = None) -> CollapsedTrees:
    complex = field.complex
    og = field.og
    if len(complex.components) != 1:
        raise ValueError(f"1-skeleton has {len(complex.components)} components; G is homeomorphic to an interval")
    zero = complex.cells[0]
    forest = [c for c in complex.cells[1] if field.status[c] is Status.COLLAPSIBLE]

    parent = {c: c for c in zero}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in forest:
        a, b = (find(f) for f in complex.faces[e])
        if a == b:
            raise MorseError(f"collapsible 1-cells contain a cycle through {e}")
        parent[a] = b
    comps: dict = {}
    for c in zero:
        comps.setdefault(find(c), set()).add(c)
    components = sorted(comps.values(), key=min)
    critical0 = field.critical(0)
    if len(components) != len(critical0):
        raise MorseError(f"forest has {len(components)} components but {len(critical0)} critical 0-cells")

    tree = set(forest)
    if complex.ordered:
        base = Cell(0, 1)
        up = next(s for s in components if base in s)
        down = next(s for s in components if Cell(1, 0) in s)
        if any(c.first > c.second for c in up) or any(c.first < c.second for c in down):
            raise MorseError("forest components are not separated by coordinate order")
        components = [up, down]
        if connecting is None:
            connecting = select_connecting_cell(og)
        if field.status.get(connecting) is not Status.CRITICAL:
            raise ValueError(f"connecting cell {connecting} is not a critical 1-cell")
        tail, head = connecting.endpoints()
        if not (tail in down and head in up):
            raise ValueError(f"connecting cell {connecting} does not run from DT_d to DT_u")
        tree.add(connecting)
    else:
        base = Cell(0, 1, ordered=False)
        connecting = None
    if len(tree) != len(zero) - 1:
        raise MorseError("tree is not spanning")

    adjacency: dict = {c: [] for c in zero}
    for e in tree:
        tail, head = e.endpoints()
        adjacency[tail].append((e, 1, head))
        adjacency[head].append((e, -1, tail))
    beta = {base: ()}
    queue = deque([base])
    while queue:
        u = queue.popleft()
        for e, s, w in sorted(adjacency[u], key=lambda t: t[0].sort_key()):
            if w not in beta:
                beta[w] = beta[u] + ((e, s),)
                queue.append(w)
    if len(beta) != len(zero):
        raise MorseError("tree does not reach every 0-cell")
    return CollapsedTrees(
        field=field,
        base=base,
        tree_cells=frozenset(tree),
        connecting=connecting,
        forest_components=components,
        beta=beta,
    )


def normalize_loop(field: GradientField, trees: CollapsedTrees, loop: Sequence[Step]) -> Word:
    """Rewrite an edge loop at the base point as a reduced word in critical 1-cells."""
    if path_end(loop, trees.base) != trees.base:
        raise ValueError("loop is not closed at the base point")
    return Word.product(trees.edge_word(c) if s > 0 else trees.edge_word(c).inverse() for c, s in loop)


def represent(trees: CollapsedTrees, cell: Cell) -> list[Step]:
    """The loop beta_{u1} * e * beta_{u2}^-1 representing a critical 1-cell outside the tree."""
    if cell in trees.tree_cells:
        raise ValueError(f"{cell} lies in the collapsed tree and represents the identity")
    if trees.field.status.get(cell) is not Status.CRITICAL:
        raise ValueError(f"{cell} is not a critical 1-cell")
    tail, head = cell.endpoints()
    return list(trees.beta[tail]) + [(cell, 1)] + reverse_path(trees.beta[head])
