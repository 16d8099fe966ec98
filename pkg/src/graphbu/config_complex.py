"""Abrams' discrete models D_2(G) and UD_2(G) of two-point configuration spaces.

A cell is a pair of disjoint closed cells of G (vertices are ints, edges are
pairs ``(u, v)`` with ``u < v``).  Ordered cells keep the pair as given;
unordered cells are stored with their ingredients in canonical order, vertex
before edge.  A 1-cell with edge ingredient ``(v1, v2)`` runs from the
0-cell containing ``v1`` to the 0-cell containing ``v2``.

Edge paths in the 1-skeleton are sequences of steps ``(cell, sign)`` where
``sign = +1`` traverses the 1-cell along its orientation.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
from typing import Iterable, Sequence, Union

from .graph_model import OrderedGraph

Ingredient = Union[int, tuple]
Step = tuple["Cell", int]


def is_vertex(x: Ingredient) -> bool:
    return isinstance(x, int)


def closure(x: Ingredient) -> frozenset:
    return frozenset((x,)) if is_vertex(x) else frozenset(x)


def disjoint(x: Ingredient, y: Ingredient) -> bool:
    return not (closure(x) & closure(y))


def ingredient_key(x: Ingredient) -> tuple:
    """Vertex ``u`` sorts as ``u``; edge ``(u, v)`` sorts as ``v`` (then ``u``), after all vertices at equal dimension."""
    return (0, x, 0) if is_vertex(x) else (1, x[1], x[0])


def ingredient_str(x: Ingredient) -> str:
    return str(x) if is_vertex(x) else f"({x[0]},{x[1]})"


@dataclasses.dataclass(frozen=True)
class Cell:
    first: Ingredient
    second: Ingredient
    ordered: bool = True

    def __post_init__(self):
        if not self.ordered and ingredient_key(self.first) > ingredient_key(self.second):
            a, b = self.second, self.first
            object.__setattr__(self, "first", a)
            object.__setattr__(self, "second", b)

    @property
    def ingredients(self) -> tuple[Ingredient, Ingredient]:
        return (self.first, self.second)

    @property
    def dim(self) -> int:
        return (not is_vertex(self.first)) + (not is_vertex(self.second))

    def is_valid(self) -> bool:
        return disjoint(self.first, self.second)

    def swap(self) -> "Cell":
        return Cell(self.second, self.first, self.ordered)

    def replace(self, old: Ingredient, new: Ingredient) -> "Cell":
        if self.first == old:
            return Cell(new, self.second, self.ordered)
        if self.second == old:
            return Cell(self.first, new, self.ordered)
        raise ValueError(f"{old!r} is not an ingredient of {self}")

    def faces(self) -> list["Cell"]:
        """Codimension-one faces; for a 1-cell these are ``[tail, head]``."""
        out = []
        for x in self.ingredients:
            if not is_vertex(x):
                out.extend((self.replace(x, x[0]), self.replace(x, x[1])))
        return out

    def endpoints(self) -> tuple["Cell", "Cell"]:
        if self.dim != 1:
            raise ValueError(f"{self} is not a 1-cell")
        tail, head = self.faces()
        return tail, head

    @property
    def vertex(self) -> int:
        """The vertex ingredient of a 1-cell."""
        return self.first if is_vertex(self.first) else self.second

    @property
    def edge(self) -> tuple:
        """The edge ingredient of a 1-cell."""
        return self.second if is_vertex(self.first) else self.first

    def sort_key(self) -> tuple:
        return (self.dim, ingredient_key(self.first), ingredient_key(self.second))

    def __lt__(self, other: "Cell") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        inner = f"{ingredient_str(self.first)},{ingredient_str(self.second)}"
        return f"({inner})" if self.ordered else "{" + inner + "}"

    def __repr__(self) -> str:
        return f"Cell<{self}>"


def project(c: Cell) -> Cell:
    """The image of an ordered cell under the double covering D_2(G) -> UD_2(G)."""
    return Cell(c.first, c.second, ordered=False)


def lifts(c: Cell) -> tuple[Cell, Cell]:
    return Cell(c.first, c.second), Cell(c.second, c.first)


def step_tail(step: Step) -> Cell:
    cell, sign = step
    tail, head = cell.endpoints()
    return tail if sign > 0 else head


def step_head(step: Step) -> Cell:
    cell, sign = step
    tail, head = cell.endpoints()
    return head if sign > 0 else tail


def path_end(path: Sequence[Step], start: Cell) -> Cell:
    current = start
    for step in path:
        if step_tail(step) != current:
            raise ValueError(f"path is not connected at {current}: next step {step[0]} starts at {step_tail(step)}")
        current = step_head(step)
    return current


def reverse_path(path: Sequence[Step]) -> list[Step]:
    return [(c, -s) for c, s in reversed(path)]


def project_path(path: Sequence[Step]) -> list[Step]:
    return [(project(c), s) for c, s in path]


def lift_path(path: Sequence[Step], start: Cell) -> list[Step]:
    """Lift an edge path of UD_2(G) to D_2(G) starting at the ordered 0-cell ``start``."""
    if not start.ordered or start.dim != 0:
        raise ValueError("start must be an ordered 0-cell")
    if path and project(start) != step_tail(path[0]):
        raise ValueError(f"start {start} does not lie over the initial 0-cell {step_tail(path[0])}")
    current = start
    out: list[Step] = []
    for cell, sign in path:
        u, e = cell.vertex, cell.edge
        lifted = Cell(u, e) if current.first == u else Cell(e, u)
        step = (lifted, sign)
        if step_tail(step) != current:
            raise ValueError(f"path is not connected at {project(current)}")
        out.append(step)
        current = step_head(step)
    return out


class CellComplex:
    """All cells of D_2(G) (``ordered=True``) or UD_2(G), with their face relation."""

    def __init__(self, og: OrderedGraph, ordered: bool):
        self.og = og
        self.ordered = ordered
        g_cells: list[Ingredient] = list(og.vertices) + og.edges
        found: set[Cell] = set()
        for x, y in itertools.permutations(g_cells, 2):
            if disjoint(x, y):
                found.add(Cell(x, y, ordered))
        by_dim: list[list[Cell]] = [[], [], []]
        for c in found:
            by_dim[c.dim].append(c)
        self.cells: tuple[tuple[Cell, ...], ...] = tuple(tuple(sorted(cs)) for cs in by_dim)
        self._cellset = found
        self.faces: dict[Cell, tuple[Cell, ...]] = {c: tuple(c.faces()) for c in found}
        cofaces: dict[Cell, list[Cell]] = {c: [] for c in found}
        for c, fs in self.faces.items():
            for f in fs:
                cofaces[f].append(c)
        self.cofaces = {c: tuple(sorted(cs)) for c, cs in cofaces.items()}

    def __contains__(self, c: object) -> bool:
        return c in self._cellset

    def __iter__(self):
        return itertools.chain.from_iterable(self.cells)

    def __len__(self) -> int:
        return len(self._cellset)

    def counts(self) -> tuple[int, int, int]:
        return tuple(len(cs) for cs in self.cells)

    def euler_characteristic(self) -> int:
        c0, c1, c2 = self.counts()
        return c0 - c1 + c2

    @property
    def hasse(self) -> list[tuple[Cell, Cell]]:
        """Arrows ``(a, b)`` for every codimension-one face ``b`` of ``a``."""
        return [(c, f) for c in self for f in self.faces[c]]

    @functools.cached_property
    def components(self) -> list[set[Cell]]:
        """Connected components of the 1-skeleton, as sets of 0-cells."""
        parent = {c: c for c in self.cells[0]}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.cells[1]:
            a, b = (find(f) for f in self.faces[e])
            if a != b:
                parent[a] = b
        comps: dict = {}
        for c in self.cells[0]:
            comps.setdefault(find(c), set()).add(c)
        return sorted(comps.values(), key=lambda s: min(s))

    def dump(self) -> str:
        return "\n".join(sorted(f"{c}:{c.dim}" for c in self)) + "\n"


def build_ordered(og: OrderedGraph) -> CellComplex:
    return CellComplex(og, ordered=True)


def build_unordered(og: OrderedGraph) -> CellComplex:
    return CellComplex(og, ordered=False)


def loop_is_closed(path: Iterable[Step], base: Cell) -> bool:
    return path_end(list(path), base) == base
