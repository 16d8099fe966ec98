"""Free involutions on graphs, quotient graphs and adapted bases.

Quotients of simplicial graphs by free involutions can have parallel edges
(the antipodal 4-cycle has a 2-cycle as quotient), so this module works with
a small edge-indexed :class:`MultiGraph`.  Loops are lists of steps
``(edge_id, sign)`` together with their start vertex.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from typing import Hashable, Mapping, Sequence

from .graph_model import Graph, GraphError, parse_graph
from .words import Word, reduced_words, schreier_rewrite

GStep = tuple[int, int]


class InvolutionError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class MultiGraph:
    vertices: tuple
    edges: tuple  # edge id -> (u, v)

    @classmethod
    def from_graph(cls, g: Graph) -> "MultiGraph":
        seen, edges = set(), []
        for u in g.vertices:
            for v in g.adjacency[u]:
                if frozenset((u, v)) not in seen:
                    seen.add(frozenset((u, v)))
                    edges.append((u, v))
        return cls(tuple(g.vertices), tuple(edges))

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges)

    def step_ends(self, step: GStep) -> tuple:
        u, v = self.edges[step[0]]
        return (u, v) if step[1] > 0 else (v, u)

    def walk(self, start, steps: Sequence[GStep]):
        current = start
        for step in steps:
            a, b = self.step_ends(step)
            if a != current:
                raise ValueError(f"step {step} does not start at {current!r}")
            current = b
        return current

    def spanning_tree(self, base) -> dict:
        """BFS tree: vertex -> path of steps from ``base``."""
        incident: dict = {v: [] for v in self.vertices}
        for i, (u, v) in enumerate(self.edges):
            incident[u].append((i, 1, v))
            incident[v].append((i, -1, u))
        paths = {base: ()}
        queue = deque([base])
        while queue:
            x = queue.popleft()
            for i, s, y in incident[x]:
                if y not in paths:
                    paths[y] = paths[x] + ((i, s),)
                    queue.append(y)
        if len(paths) != len(self.vertices):
            raise GraphError("graph is disconnected")
        return paths


def _reverse(steps: Sequence[GStep]) -> tuple:
    return tuple((i, -s) for i, s in reversed(steps))


def fundamental_basis(g: MultiGraph, base) -> list[tuple[GStep, ...]]:
    """One loop at ``base`` per edge outside a BFS spanning tree."""
    paths = g.spanning_tree(base)
    tree_edges = {i for p in paths.values() for i, _ in p}
    basis = []
    for i, (u, v) in enumerate(g.edges):
        if i not in tree_edges:
            basis.append(tuple(paths[u]) + ((i, 1),) + _reverse(paths[v]))
    return basis


def loop_word(g: MultiGraph, base, loop: Sequence[GStep]) -> Word:
    """Read a loop as a reduced word in the basis of :func:`fundamental_basis` (generators are edge ids)."""
    paths = g.spanning_tree(base)
    tree_edges = {i for p in paths.values() for i, _ in p}
    return Word((i, s) for i, s in loop if i not in tree_edges)


@dataclasses.dataclass(frozen=True)
class InvolutionGraph:
    gamma: MultiGraph
    tau_vertex: Mapping[Hashable, Hashable]
    tau_edge: Mapping[int, int]
    quotient: MultiGraph
    vertex_orbit: Mapping[Hashable, Hashable]  # Gamma vertex -> quotient vertex
    edge_orbit: Mapping[int, int]  # Gamma edge id -> quotient edge id
    quotient_lift: Mapping[int, int]  # quotient edge id -> representative Gamma edge id

    @property
    def m(self) -> int:
        return -self.gamma.euler_characteristic() // 2

    @property
    def base(self):
        return self.gamma.vertices[0]

    @property
    def quotient_base(self):
        return self.vertex_orbit[self.base]

    def lift_loop(self, steps: Sequence[GStep], start=None) -> tuple[GStep, ...]:
        """Lift a quotient edge path to Gamma starting at ``start`` (default: the base vertex)."""
        current = self.base if start is None else start
        out = []
        for q, sign in steps:
            e = self.quotient_lift[q]
            u, v = self.gamma.edges[e]
            t = self.tau_edge[e]
            # the partner edge may be stored as (tau v, tau u)
            t_sign = sign if self.gamma.edges[t] == (self.tau_vertex[u], self.tau_vertex[v]) else -sign
            for c, s in ((e, sign), (t, t_sign)):
                a, b = self.gamma.step_ends((c, s))
                if a == current:
                    out.append((c, s))
                    current = b
                    break
            else:
                raise ValueError(f"quotient step {(q, sign)} does not start under {current!r}")
        return tuple(out)

    def theta1(self, steps: Sequence[GStep]) -> int:
        """1 when the lift of a quotient loop at the base ends on the other sheet."""
        lifted = self.lift_loop(steps)
        return 0 if self.gamma.walk(self.base, lifted) == self.base else 1


def quotient(gamma: Graph | MultiGraph, tau: Mapping) -> InvolutionGraph:
    """Quotient of ``gamma`` by the vertex involution ``tau`` (extended to edges)."""
    mg = gamma if isinstance(gamma, MultiGraph) else MultiGraph.from_graph(gamma)
    problems = []
    if set(tau) != set(mg.vertices):
        problems.append("tau must be defined on every vertex")
    else:
        for v in mg.vertices:
            if tau[v] not in tau or tau[tau[v]] != v:
                problems.append(f"tau is not an involution at {v!r}")
            elif tau[v] == v:
                problems.append(f"tau fixes vertex {v!r}")
    if problems:
        raise InvolutionError("; ".join(problems))
    index: dict = {}
    for i, (u, v) in enumerate(mg.edges):
        index.setdefault(frozenset((u, v)), []).append(i)
    tau_edge: dict = {}
    for i, (u, v) in enumerate(mg.edges):
        image = index.get(frozenset((tau[u], tau[v])))
        if not image:
            problems.append(f"tau does not map edge {u!r}-{v!r} to an edge")
            continue
        if len(image) > 1:
            problems.append(f"edge {u!r}-{v!r} is parallel to another edge; tau is ambiguous")
            continue
        if image[0] == i:
            problems.append(f"tau reverses edge {u!r}-{v!r}, fixing its midpoint")
        tau_edge[i] = image[0]
    if problems:
        raise InvolutionError("; ".join(problems))

    qv: list = []
    vertex_orbit: dict = {}
    for v in mg.vertices:
        if v not in vertex_orbit:
            vertex_orbit[v] = vertex_orbit[tau[v]] = v
            qv.append(v)
    qe: list = []
    edge_orbit: dict = {}
    quotient_lift: dict = {}
    for i, (u, v) in enumerate(mg.edges):
        if i not in edge_orbit:
            edge_orbit[i] = edge_orbit[tau_edge[i]] = len(qe)
            quotient_lift[len(qe)] = i
            qe.append((vertex_orbit[u], vertex_orbit[v]))
    ig = InvolutionGraph(
        gamma=mg,
        tau_vertex=dict(tau),
        tau_edge=tau_edge,
        quotient=MultiGraph(tuple(qv), tuple(qe)),
        vertex_orbit=vertex_orbit,
        edge_orbit=edge_orbit,
        quotient_lift=quotient_lift,
    )
    chi, qchi = mg.euler_characteristic(), ig.quotient.euler_characteristic()
    if chi != 2 * qchi or chi > 0:
        raise InvolutionError(f"Euler characteristics inconsistent with a free involution: {chi} vs {qchi}")
    return ig


def parse_involution(text: str) -> tuple[Graph, InvolutionGraph]:
    """Parse a graph file with appended ``tau v a b`` and ``tau e a-b c-d`` lines."""
    graph, extra = parse_graph(text)
    convert = type(graph.vertices[0])
    tau: dict = {}
    edge_pairs = []
    for lineno, line in extra:
        parts = line.split()
        if len(parts) != 4 or parts[0] != "tau" or parts[1] not in ("v", "e"):
            raise GraphError(f"line {lineno}: expected 'tau v <a> <b>' or 'tau e <a>-<b> <c>-<d>'")
        try:
            if parts[1] == "v":
                a, b = convert(parts[2]), convert(parts[3])
                for x, y in ((a, b), (b, a)):
                    if tau.get(x, y) != y:
                        raise GraphError(f"line {lineno}: conflicting image for {x}")
                    tau[x] = y
            else:
                e1 = tuple(convert(x) for x in parts[2].split("-"))
                e2 = tuple(convert(x) for x in parts[3].split("-"))
                if len(e1) != 2 or len(e2) != 2:
                    raise ValueError
                edge_pairs.append((lineno, e1, e2))
        except ValueError as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"line {lineno}: bad vertex id in {line!r}") from None
    if not tau:
        raise GraphError("no 'tau v' lines: the involution is missing")
    ig = quotient(graph, tau)
    for lineno, (a, b), (c, d) in edge_pairs:
        if {tau.get(a), tau.get(b)} != {c, d}:
            raise InvolutionError(f"line {lineno}: edge orbit {a}-{b} {c}-{d} disagrees with the vertex involution")
    return graph, ig


def read_involution(path) -> tuple[Graph, InvolutionGraph]:
    with open(path) as fh:
        return parse_involution(fh.read())


@dataclasses.dataclass
class AdaptedBasis:
    """Bases {c, c_1..c_m} of pi_1(Gamma/tau) and {a, a_i, a'_i} of pi_1(Gamma).

    ``quotient_loops`` maps ``"c"``, ``"c1"``, ... to edge loops in the
    quotient; ``gamma_words`` maps ``"a"``, ``"a1"``, ``"a1'"``, ... to words
    in the quotient basis; ``gamma_loops`` holds their lifts to Gamma.
    """

    ig: InvolutionGraph
    quotient_loops: dict
    theta1: dict
    gamma_words: dict
    gamma_loops: dict

    @property
    def m(self) -> int:
        return len(self.quotient_loops) - 1

    @property
    def quotient_names(self) -> list[str]:
        return ["c"] + [f"c{i}" for i in range(1, self.m + 1)]

    @property
    def gamma_names(self) -> list[str]:
        names = ["a"]
        for i in range(1, self.m + 1):
            names += [f"a{i}", f"a{i}'"]
        return names

    def loop_of(self, w: Word) -> tuple[GStep, ...]:
        """Concatenate quotient loops along a word in ``c, c1, ...``."""
        out: list = []
        for g, e in w:
            loop = self.quotient_loops[g]
            out.extend(loop if e > 0 else _reverse(loop))
        return tuple(out)

    def rewrite(self, w: Word) -> Word:
        """Express a theta1-even word in ``c, c_i`` in the generators ``a, a_i, a'_i``."""
        return schreier_rewrite(w, self.theta1.__getitem__, _schreier_a)


def _schreier_a(coset: int, x: str) -> Word:
    # transversal {1, c}: 1*c*c^-1 = 1, c*c = a, 1*c_i = a_i, c*c_i*c^-1 = a_i'
    if x == "c":
        return Word() if coset == 0 else Word.gen("a")
    i = x[1:]
    return Word.gen(f"a{i}") if coset == 0 else Word.gen(f"a{i}'")


def adapt_basis(ig: InvolutionGraph) -> AdaptedBasis:
    """Choose c, c_i with theta1(c)=1, theta1(c_i)=0 and derive a, a_i, a'_i by Reidemeister-Schreier."""
    q = ig.quotient
    base = ig.quotient_base
    initial = fundamental_basis(q, base)
    if len(initial) != 1 - q.euler_characteristic():
        raise InvolutionError("quotient basis has the wrong rank")
    bits = [ig.theta1(loop) for loop in initial]
    if 1 not in bits:
        raise RuntimeError("theta1 vanishes on a basis; the involution cannot be free")
    j = bits.index(1)
    order = [j] + [i for i in range(len(initial)) if i != j]
    c = initial[j]
    loops = {"c": tuple(c)}
    for n, i in enumerate(order[1:], 1):
        loops[f"c{n}"] = tuple(initial[i]) if bits[i] == 0 else tuple(c) + tuple(initial[i])
    theta1 = {name: ig.theta1(loop) for name, loop in loops.items()}

    m = len(loops) - 1
    cw = Word.gen("c")
    words = {"a": cw * cw}
    for i in range(1, m + 1):
        ci = Word.gen(f"c{i}")
        words[f"a{i}"] = ci
        words[f"a{i}'"] = cw * ci * ~cw
    basis = AdaptedBasis(ig=ig, quotient_loops=loops, theta1=theta1, gamma_words=words, gamma_loops={})
    for name, w in words.items():
        lifted = ig.lift_loop(basis.loop_of(w))
        if ig.gamma.walk(ig.base, lifted) != ig.base:
            raise RuntimeError(f"lift of {name} is not closed")
        basis.gamma_loops[name] = lifted
    if theta1["c"] != 1 or any(theta1[f"c{i}"] != 0 for i in range(1, m + 1)):
        raise RuntimeError(f"adapted basis has wrong parities: {theta1}")
    for name, w in words.items():
        if basis.rewrite(w) != Word.gen(name):
            raise RuntimeError(f"Reidemeister-Schreier rewriting does not return {name}")
    if m != ig.m:
        raise RuntimeError(f"quotient rank {m + 1} disagrees with m = {ig.m}")
    return basis


def check_free_generation(basis: AdaptedBasis, max_len: int = 4) -> bool:
    """Distinct reduced words in a, a_i, a'_i give distinct elements of pi_1(Gamma), up to ``max_len``."""
    gamma = basis.ig.gamma
    images = {name: loop_word(gamma, basis.ig.base, loop) for name, loop in basis.gamma_loops.items()}
    seen = set()
    for w in reduced_words(basis.gamma_names, max_len):
        image = w.substitute(images)
        if image in seen:
            return False
        seen.add(image)
    return True
