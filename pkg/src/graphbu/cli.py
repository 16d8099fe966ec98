"""``graphbu`` command-line front end."""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .braid import Braids
from .bu_engine import VerificationError, certificate, decide, parse_class
from .config_complex import Cell, lift_path, path_end
from .corpus import write_corpus
from .graph_model import Graph, GraphError, order_graph, read_graph
from .involution import read_involution
from .morse import MorseError
from .report import census_rows, render
from .verification import census_text, verify_corpus
from .words import format_word

EXIT_OK = 0
EXIT_FAILS = 10
EXIT_INPUT = 2
EXIT_INTERNAL = 3

MORPHISMS = ("iota", "theta", "p1", "conj_sigma", "rewrite", "lift")


@dataclasses.dataclass
class RunConfig:
    command: str
    paths: list[str]
    root: str | None = None
    tree: str | None = None
    seed: int = 0
    max_word_len: int = 8
    fuzz: int = 20
    fmt: str = "human"
    morphism: str | None = None
    word: str | None = None


def _vertex(g: Graph, token: str):
    v = type(g.vertices[0])(token) if isinstance(g.vertices[0], int) else token
    if v not in g.adjacency:
        raise GraphError(f"unknown vertex {token!r}")
    return v


def _overrides(g: Graph, cfg: RunConfig):
    root = _vertex(g, cfg.root) if cfg.root is not None else None
    tree = None
    if cfg.tree is not None:
        tree = []
        for item in filter(None, (s.strip() for s in cfg.tree.split(","))):
            ends = item.split("-")
            if len(ends) != 2:
                raise GraphError(f"--tree: expected 'a-b', got {item!r}")
            tree.append(tuple(_vertex(g, x) for x in ends))
    return root, tree


def _ordered(g: Graph, cfg: RunConfig):
    root, tree = _overrides(g, cfg)
    return order_graph(g, root=root, tree=tree)


def cmd_model(cfg: RunConfig) -> tuple[int, list]:
    g = read_graph(cfg.paths[0])
    og = _ordered(g, cfg)
    rows = census_rows(og)
    try:
        rows += Braids(og).table()
    except ValueError:
        # D_2 of an interval is disconnected: no braid generators to list
        pass
    return EXIT_OK, rows


def cmd_map(cfg: RunConfig) -> tuple[int, list]:
    g = read_graph(cfg.paths[0])
    b = Braids(_ordered(g, cfg))
    name, text = cfg.morphism, cfg.word
    rows = [("morphism", name)]
    if name == "iota":
        rows.append(("result", format_word(b.iota(b.parse(text, "p2")))))
    elif name == "p1":
        rows.append(("result", format_word(b.p1(b.parse(text, "p2")))))
    elif name == "conj_sigma":
        rows.append(("result", format_word(b.conjugate_by_sigma(b.parse(text, "p2")))))
    elif name == "theta":
        rows.append(("result", str(b.theta(b.parse(text, "b2")))))
    elif name == "rewrite":
        rows.append(("result", format_word(b.sigma_parity_rewrite(b.parse(text, "b2")))))
    else:
        w = b.parse(text, "b2")
        loop = b.loop_of_word(w)
        start = Cell(0, 1)
        end = path_end(lift_path(loop, start), start) if loop else start
        rows += [
            ("loop length", str(len(loop))),
            ("lift start", str(start)),
            ("lift end", str(end)),
            ("swaps sheets", "yes" if end != start else "no"),
            ("result", str(int(end != start))),
        ]
    return EXIT_OK, rows


def cmd_decide(cfg: RunConfig) -> tuple[int, list]:
    gamma_path, g_path, class_path = cfg.paths
    _, ig = read_involution(gamma_path)
    g = read_graph(g_path)
    alpha = parse_class(Path(class_path).read_text())
    root, tree = _overrides(g, cfg)
    decision = decide(ig, g, alpha, root=root, tree=tree)
    if decision.witness is not None and not decision.witness.verified:
        raise VerificationError("witness diagram failed verification:\n" + render(certificate(decision)))
    return (EXIT_OK if decision.holds else EXIT_FAILS), certificate(decision)


def cmd_verify(cfg: RunConfig) -> tuple[int, list]:
    directory = Path(cfg.paths[0])
    if not directory.is_dir():
        raise FileNotFoundError(f"{directory}: not a directory")
    results = verify_corpus(directory, seed=cfg.seed, fuzz=cfg.fuzz, max_word_len=cfg.max_word_len)
    cases = sorted({r.case for r in results})
    failed = [r for r in results if not r.passed]
    rows = [("cases", str(len(cases))), ("checks", str(len(results))), ("failed", str(len(failed)))]
    for r in results:
        rows.append((f"{r.case} {r.check}", "pass" if r.passed else "FAIL"))
    for r in failed:
        rows.append((f"diff {r.case} {r.check}", "\n" + r.detail if "\n" in r.detail else r.detail))
    return (EXIT_INTERNAL if failed else EXIT_OK), rows


def cmd_corpus(cfg: RunConfig) -> tuple[int, list]:
    paths = write_corpus(cfg.paths[0], seed=cfg.seed)
    for path in paths:
        path.with_suffix(".census").write_text(census_text(read_graph(path)))
    return EXIT_OK, [("written", str(len(paths))), ("directory", cfg.paths[0])]


COMMANDS = {"model": cmd_model, "map": cmd_map, "decide": cmd_decide, "verify": cmd_verify, "corpus": cmd_corpus}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--root", help="root vertex of the maximal tree (must be a leaf of it)")
    common.add_argument("--tree", help="maximal tree as comma-separated edges, e.g. '0-1,1-2'")
    common.add_argument("--seed", type=int, default=0, help="seed for fuzzing and random corpus graphs")
    common.add_argument("--max-word-len", type=int, default=8, help="longest random word used when fuzzing")
    common.add_argument("--fuzz", type=int, default=20, help="fuzzed classes per branch in verify")
    common.add_argument("--format", dest="fmt", choices=("human", "machine"), default="human")

    parser = argparse.ArgumentParser(prog="graphbu", description="Two-strand graph braid groups and the Borsuk-Ulam property for maps into graphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("model", parents=[common], help="cell and critical-cell census of D_2 and UD_2")
    p.add_argument("graph")
    p = sub.add_parser("map", parents=[common], help="apply iota, theta, p1, conj_sigma, rewrite or lift to a word")
    p.add_argument("graph")
    p.add_argument("morphism", choices=MORPHISMS)
    p.add_argument("word")
    p = sub.add_parser("decide", parents=[common], help="decide the Borsuk-Ulam property of a class in [Gamma, G]")
    p.add_argument("gamma", help="graph file of Gamma with 'tau' lines")
    p.add_argument("graph", help="graph file of G")
    p.add_argument("cls", metavar="class", help="class file: one word per line")
    p = sub.add_parser("verify", parents=[common], help="run the oracle-equivalence suite over a corpus directory")
    p.add_argument("directory")
    p = sub.add_parser("corpus", parents=[common], help="write the named and random corpus graphs with golden census files")
    p.add_argument("directory")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    paths = {
        "model": [ns.__dict__.get("graph")],
        "map": [ns.__dict__.get("graph")],
        "decide": [ns.__dict__.get("gamma"), ns.__dict__.get("graph"), ns.__dict__.get("cls")],
    }.get(ns.command, [ns.__dict__.get("directory")])
    return RunConfig(
        command=ns.command,
        paths=paths,
        root=ns.root,
        tree=ns.tree,
        seed=ns.seed,
        max_word_len=ns.max_word_len,
        fuzz=ns.fuzz,
        fmt=ns.fmt,
        morphism=getattr(ns, "morphism", None),
        word=getattr(ns, "word", None),
    )


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        code, rows = COMMANDS[cfg.command](cfg)
    except (VerificationError, MorseError) as exc:
        print(f"internal verification error: {exc}", file=err)
        return EXIT_INTERNAL
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    out.write(render(rows, cfg.fmt))
    return code


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
