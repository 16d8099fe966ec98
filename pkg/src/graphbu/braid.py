"""Morse generators of P_2(G) and B_2(G) and the homomorphisms between them.

Generators are critical 1-cells, named by the cells themselves: ``(r,(s,t))``
and ``((s,t),r)`` for P_2(G), ``{r,(s,t)}`` for B_2(G).  Deleted edges of G
are the generators ``z1, ..., zk`` of pi_1(G).

Each closed-form table (``iota``, ``conjugate_by_sigma``, ``theta``, ``p1``)
has an independent counterpart computed from edge loops in the complexes
(``*_via_loops``), used by the test-suite and ``graphbu verify``.
"""

from __future__ import annotations

import ast
from typing import Hashable

from .config_complex import Cell, Step, build_ordered, build_unordered, is_vertex, lift_path, path_end, project, project_path, reverse_path
from .graph_model import OrderedGraph
from .morse import CollapsedTrees, build_field, build_trees, normalize_loop, represent
from .words import Word, parse_word, schreier_rewrite, unknown_generator_message


class BraidError(ValueError):
    pass


def parse_cell(text: str) -> Cell:
    """Parse ``(r,(s,t))``, ``((s,t),r)``, ``(u,v)`` or ``{r,(s,t)}`` into a cell."""
    try:
        value = ast.literal_eval(text)
    except (ValueError, SyntaxError):
        raise BraidError(f"cannot parse cell {text!r}") from None

    def ingredient(x):
        if isinstance(x, int) and not isinstance(x, bool):
            return x
        if isinstance(x, tuple) and len(x) == 2 and all(isinstance(i, int) for i in x) and x[0] < x[1]:
            return x
        raise BraidError(f"bad ingredient {x!r} in {text!r}")

    if isinstance(value, tuple) and len(value) == 2:
        return Cell(ingredient(value[0]), ingredient(value[1]))
    if isinstance(value, set) and len(value) == 2:
        a, b = value
        return Cell(ingredient(a), ingredient(b), ordered=False)
    raise BraidError(f"cannot parse cell {text!r}")


def _rst(cell: Cell) -> tuple[int, int, int]:
    """``(r, s, t)`` for a 1-cell with vertex ingredient ``r`` and edge ``(s, t)``."""
    s, t = cell.edge
    return cell.vertex, s, t


class Braids:
    """Complexes, gradient fields, trees and generator tables of one ordered graph."""

    def __init__(self, og: OrderedGraph, connecting: Cell | None = None):
        self.og = og
        self.d2 = build_ordered(og)
        self.ud2 = build_unordered(og)
        self.d2_field = build_field(self.d2)
        self.ud2_field = build_field(self.ud2)
        self.d2_trees: CollapsedTrees = build_trees(self.d2_field, connecting)
        self.ud2_trees: CollapsedTrees = build_trees(self.ud2_field)
        self.connecting: Cell = self.d2_trees.connecting
        a, (b, c) = self.connecting.first, self.connecting.second
        self.sigma = Cell(a, (b, c), ordered=False)
        self.rho = Cell((b, c), a)
        self.p2_gens: list[Cell] = self.d2_trees.generators
        self.b2_gens: list[Cell] = self.ud2_trees.generators
        self.z_gens: list[str] = [og.z_name(e) for e in og.deleted_edges]
        self._p2 = set(self.p2_gens)
        self._b2 = set(self.b2_gens)
        self._z_of_edge = {e: og.z_name(e) for e in og.deleted_edges}

    # -- parsing -----------------------------------------------------------

    def resolve(self, token: str, alphabet: str) -> Hashable:
        """Resolve a generator name in the ``p2``, ``b2`` or ``z`` alphabet."""
        aliases = {"sigma": self.sigma, "rho": self.rho}
        known = {"p2": self.p2_gens, "b2": self.b2_gens, "z": self.z_gens}[alphabet]
        if token in aliases and aliases[token] in known:
            return aliases[token]
        if alphabet == "z":
            if token in known:
                return token
        else:
            try:
                cell = parse_cell(token)
            except BraidError:
                cell = None
            if cell is not None and cell in known:
                return cell
        if alphabet == "p2" and token == str(self.connecting):
            raise BraidError(f"{token} is the connecting cell; it lies in the tree DT and is trivial in P_2")
        raise BraidError(unknown_generator_message(token, [str(g) for g in known]))

    def parse(self, text: str, alphabet: str) -> Word:
        return parse_word(text, lambda tok: self.resolve(tok, alphabet))

    def _require(self, w: Word, gens: set, what: str) -> None:
        for g, _ in w:
            if g not in gens:
                raise BraidError(f"{g} is not a {what} generator")

    # -- closed forms -----------------------------------------------------

    def iota(self, w: Word) -> Word:
        """The inclusion P_2(G) -> B_2(G) induced by the double covering."""
        self._require(w, self._p2, "P_2")
        return w.substitute(self._iota_gen)

    def _iota_gen(self, g: Cell) -> Word:
        sig = Word.gen(self.sigma)
        x = Word.gen(project(g))
        r, s, t = _rst(g)
        if is_vertex(g.first):
            if r < s:
                return x
            if r < t:
                return ~sig * x
            return ~sig * x * sig
        if r < s:
            return ~sig * x * sig
        if r < t:
            return x * sig
        return x

    def conjugate_by_sigma(self, w: Word) -> Word:
        """``sigma * w * sigma^-1`` expressed again in P_2 generators."""
        for g, _ in w:
            if g == self.connecting:
                raise BraidError(f"{g} is the connecting cell and is excluded")
        self._require(w, self._p2, "P_2")
        return w.substitute(self._conj_gen)

    def _conj_gen(self, g: Cell) -> Word:
        rho = Word.gen(self.rho)
        swapped = Word.gen(g.swap())
        r, s, t = _rst(g)
        if is_vertex(g.first):
            if r < s:
                return rho * swapped * ~rho
            if r < t:
                return swapped * ~rho
            return swapped
        if r < s:
            return swapped
        if r < t:
            if g.swap() == self.connecting:
                return rho
            return rho * swapped
        return rho * swapped * ~rho

    def theta_gen(self, x: Cell) -> int:
        if x.ordered or x.dim != 1:
            raise BraidError(f"{x} is not an unordered 1-cell")
        r, s, t = _rst(x)
        return 1 if s < r < t else 0

    def theta(self, w: Word) -> int:
        """The classifying map B_2(G) -> Z/2 of the double covering."""
        return sum(self.theta_gen(x) for x, _ in w) % 2

    def p1(self, w: Word) -> Word:
        """The map P_2(G) -> pi_1(G) induced by projecting to the first point."""
        self._require(w, self._p2, "P_2")
        return w.substitute(self._p1_gen)

    def _p1_gen(self, g: Cell) -> Word:
        if is_vertex(g.first):
            return Word()
        z = self._z_of_edge.get(g.first)
        return Word.gen(z) if z is not None else Word()

    def sigma_parity_rewrite(self, w: Word) -> Word:
        """Rewrite a theta-even word of B_2(G) in P_2 generators (transversal {1, sigma})."""
        self._require(w, self._b2, "B_2")
        if self.theta(w):
            raise BraidError(f"{w} has theta = 1 and does not lie in P_2(G)")
        return schreier_rewrite(w, self.theta_gen, self._schreier)

    def _schreier(self, coset: int, x: Cell) -> Word:
        rho = Word.gen(self.rho)
        r, s, t = _rst(x)
        vertex_first = Cell(r, (s, t))
        edge_first = Cell((s, t), r)
        if r < s:
            return Word.gen(vertex_first) if coset == 0 else rho * Word.gen(edge_first) * ~rho
        if t < r:
            return Word.gen(edge_first) if coset == 0 else rho * Word.gen(vertex_first) * ~rho
        if coset == 0:
            return Word.gen(edge_first) * ~rho
        if vertex_first == self.connecting:
            return rho
        return rho * Word.gen(vertex_first)

    # -- loop-based counterparts -------------------------------------------

    def represent(self, cell: Cell) -> list[Step]:
        trees = self.d2_trees if cell.ordered else self.ud2_trees
        return represent(trees, cell)

    def iota_via_loops(self, g: Cell) -> Word:
        return normalize_loop(self.ud2_field, self.ud2_trees, project_path(self.represent(g)))

    def loop_of_word(self, w: Word) -> list[Step]:
        """Concatenate the representing loops of the letters of ``w``."""
        loop: list[Step] = []
        for g, e in w:
            piece = self.represent(g)
            loop += piece if e > 0 else reverse_path(piece)
        return loop

    def theta_of_loop(self, loop: list[Step]) -> int:
        """Sheet-swap parity of an edge loop in UD_2 based at {0,1}."""
        lifted = lift_path(loop, Cell(0, 1))
        return 0 if path_end(lifted, Cell(0, 1)) == Cell(0, 1) else 1

    def theta_via_loops(self, x: Cell) -> int:
        return self.theta_of_loop(self.represent(x))

    def p1_of_loop(self, loop: list[Step]) -> Word:
        """Project an ordered edge loop to its first point and read off deleted edges."""
        letters = []
        for cell, sign in loop:
            if not is_vertex(cell.first):
                z = self._z_of_edge.get(cell.first)
                if z is not None:
                    letters.append((z, sign))
        return Word(letters)

    def p1_via_loops(self, g: Cell) -> Word:
        return self.p1_of_loop(self.represent(g))

    # -- reporting ---------------------------------------------------------

    def table(self) -> list[tuple[str, str]]:
        rows = [
            ("connecting", str(self.connecting)),
            ("sigma", str(self.sigma)),
            ("rho", str(self.rho)),
            ("p2_gens", " ".join(str(g) for g in self.p2_gens)),
            ("b2_gens", " ".join(str(g) for g in self.b2_gens)),
            ("z_gens", " ".join(f"{z}=({x},{y})" for z, (x, y) in zip(self.z_gens, self.og.deleted_edges)) or "none"),
        ]
        return rows
