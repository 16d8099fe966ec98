"""Named test graphs and a seeded generator of random connected simplicial graphs."""

from __future__ import annotations

import itertools
import random
from pathlib import Path

from .graph_model import Graph, format_graph


def star_y() -> Graph:
    return Graph.from_adjacency({0: [1], 1: [0, 2, 3], 2: [1], 3: [1]})


def h_tree() -> Graph:
    return Graph.from_adjacency({0: [1], 1: [0, 2, 3], 2: [1], 3: [1, 4, 5], 4: [3], 5: [3]})


def path_graph(n: int) -> Graph:
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_adjacency({i: [j for j in range(n) if j != i] for i in range(n)})


def complete_bipartite(p: int, q: int) -> Graph:
    left, right = list(range(p)), list(range(p, p + q))
    adj = {v: list(right) for v in left}
    adj.update({v: list(left) for v in right})
    return Graph.from_adjacency(adj)


def theta_graph() -> Graph:
    """Two trivalent vertices 0 and 1 joined by three paths of length two."""
    return Graph.from_adjacency({0: [2, 3, 4], 1: [2, 3, 4], 2: [0, 1], 3: [0, 1], 4: [0, 1]})


def circle_with_chord() -> Graph:
    """The 4-cycle 0-1-2-3 with the chord 0-2."""
    return Graph.from_adjacency({0: [1, 2, 3], 1: [0, 2], 2: [1, 0, 3], 3: [2, 0]})


def random_graph(rng: random.Random, max_vertices: int = 12, max_extra: int = 3) -> Graph:
    """A random connected simplicial graph that is neither a tree, nor a circle."""
    while True:
        n = rng.randint(4, max_vertices)
        edges = {frozenset((v, rng.randrange(v))) for v in range(1, n)}
        non_edges = [frozenset(p) for p in itertools.combinations(range(n), 2) if frozenset(p) not in edges]
        edges |= set(rng.sample(non_edges, min(len(non_edges), rng.randint(1, max_extra))))
        adj: dict = {v: [] for v in range(n)}
        for e in sorted(edges, key=sorted):
            u, v = sorted(e)
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj.values():
            rng.shuffle(nbrs)
        if len(edges) == n and all(len(nb) == 2 for nb in adj.values()):
            continue
        return Graph.from_adjacency(adj)


def antipodal_cycle(n: int) -> tuple[Graph, dict]:
    """The 2n-cycle with the antipodal involution; the quotient is an n-cycle and m = 0."""
    g = cycle(2 * n)
    return g, {v: (v + n) % (2 * n) for v in range(2 * n)}


def multi_edge_involution(k: int) -> tuple[Graph, dict]:
    """Vertices 0 and 1 joined by ``k`` (even) subdivided edges; tau swaps 0, 1 and pairs the midpoints.

    Euler characteristic 2 - k, so m = (k - 2) / 2.
    """
    if k < 2 or k % 2:
        raise ValueError("k must be an even number >= 2")
    mids = list(range(2, k + 2))
    g = Graph.from_edges([(end, s) for s in mids for end in (0, 1)])
    tau = {0: 1, 1: 0}
    for a, b in zip(mids[::2], mids[1::2]):
        tau[a], tau[b] = b, a
    return g, tau


def format_involution(g: Graph, tau: dict) -> str:
    lines = [format_graph(g).rstrip("\n")]
    done = set()
    for v in g.vertices:
        if v not in done:
            lines.append(f"tau v {v} {tau[v]}")
            done |= {v, tau[v]}
    return "\n".join(lines) + "\n"


def named_graphs() -> dict[str, Graph]:
    return {
        "star_y": star_y(),
        "h_tree": h_tree(),
        "k4": complete(4),
        "k5": complete(5),
        "k33": complete_bipartite(3, 3),
        "theta": theta_graph(),
        "circle_with_chord": circle_with_chord(),
    }


def corpus(seed: int = 0, n_random: int = 20) -> dict[str, Graph]:
    graphs = named_graphs()
    rng = random.Random(seed)
    for i in range(n_random):
        graphs[f"random_{i:02d}"] = random_graph(rng)
    return graphs


def write_corpus(directory, seed: int = 0, n_random: int = 20) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, g in corpus(seed, n_random).items():
        path = directory / f"{name}.graph"
        path.write_text(format_graph(g))
        paths.append(path)
    return paths
