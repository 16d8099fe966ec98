"""Oracle-equivalence checks run by ``graphbu verify`` and the acceptance tests."""

from __future__ import annotations

import dataclasses
import difflib
import random
from pathlib import Path

from .braid import Braids
from .bu_engine import build_key_elements, construct_witness, homeomorphism_type, key_identities
from .config_complex import Cell, build_ordered, build_unordered
from .graph_model import Graph, GraphError, OrderedGraph, essential_vertex, order_graph, read_graph
from .morse import build_field
from .report import census_rows, render
from .words import Word, random_word


@dataclasses.dataclass
class CheckResult:
    case: str
    check: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.case} {self.check}" + (f" :: {self.detail}" if self.detail else "")


def check_field(og: OrderedGraph) -> tuple[bool, str]:
    problems = []
    for complex, expected in (
        (build_ordered(og), [Cell(0, 1), Cell(1, 0)]),
        (build_unordered(og), [Cell(0, 1, ordered=False)]),
    ):
        field = build_field(complex)
        if field.critical(0) != expected:
            problems.append(f"critical 0-cells {field.critical(0)}")
    return not problems, "; ".join(problems)


def check_euler(og: OrderedGraph) -> tuple[bool, str]:
    details = []
    ok = True
    for complex in (build_ordered(og), build_unordered(og)):
        field = build_field(complex)
        a, b = complex.euler_characteristic(), field.morse_euler_characteristic()
        ok &= a == b
        details.append(f"{a}={b}")
    return ok, " ".join(details)


def check_iota(b: Braids) -> tuple[bool, str]:
    bad = [str(g) for g in b.p2_gens if b.iota(Word.gen(g)) != b.iota_via_loops(g)]
    sig = Word.gen(b.sigma)
    if b.iota(Word.gen(b.rho)) != sig * sig:
        bad.append("rho != sigma^2")
    return not bad, f"{len(b.p2_gens)} generators" + (f"; mismatches {bad}" if bad else "")


def check_conjugation(b: Braids) -> tuple[bool, str]:
    sig = Word.gen(b.sigma)
    bad = []
    for g in b.p2_gens:
        w = Word.gen(g)
        if b.iota(b.conjugate_by_sigma(w)) != sig * b.iota(w) * ~sig:
            bad.append(str(g))
    return not bad, f"{len(b.p2_gens)} generators" + (f"; mismatches {bad}" if bad else "")


def check_theta(b: Braids, rng: random.Random, n_words: int = 1000, max_len: int = 8) -> tuple[bool, str]:
    bad = [str(x) for x in b.b2_gens if b.theta(Word.gen(x)) != b.theta_via_loops(x)]
    nonzero = 0
    for _ in range(n_words):
        w = random_word(rng, b.p2_gens, max_len)
        if b.theta(b.iota(w)) != 0:
            nonzero += 1
    ok = not bad and nonzero == 0
    return ok, f"{len(b.b2_gens)} generators, {n_words} words" + (f"; mismatches {bad}, {nonzero} nonzero" if not ok else "")


def check_p1(b: Braids) -> tuple[bool, str]:
    bad = [str(g) for g in b.p2_gens if b.p1(Word.gen(g)) != b.p1_via_loops(g)]
    return not bad, f"{len(b.p2_gens)} generators" + (f"; mismatches {bad}" if bad else "")


def check_key_identities(b: Braids) -> tuple[bool, str]:
    key = build_key_elements(b)
    rows = key_identities(key)
    bad = [name for name, ok, _ in rows if not ok]
    return not bad, f"{key.branch}: {len(rows)} identities" + (f"; failed {bad}" if bad else "")


def check_witness_fuzz(b: Braids, rng: random.Random, n: int, max_len: int = 8, max_m: int = 2) -> tuple[bool, str]:
    key = build_key_elements(b)
    failures = 0
    for _ in range(n):
        m = rng.randint(0, max_m)
        alpha = [random_word(rng, b.z_gens, max_len) for _ in range(2 * m + 1)]
        try:
            witness = construct_witness(alpha, key, m=m)
            failures += not witness.verified
        except RuntimeError:
            failures += 1
    return failures == 0, f"{key.branch}: {n - failures}/{n} classes verified"


def branch_orderings(g: Graph) -> dict[str, OrderedGraph]:
    """For each branch (essential/linear), the first root whose DFS tree realises it."""
    found: dict[str, OrderedGraph] = {}
    for v in g.vertices:
        try:
            og = order_graph(g, root=v)
        except GraphError:
            continue
        branch = "essential" if essential_vertex(og) is not None else "linear"
        found.setdefault(branch, og)
    return found


def verify_graph(name: str, g: Graph, seed: int = 0, fuzz: int = 20, max_word_len: int = 8, n_words: int = 200) -> list[CheckResult]:
    rng = random.Random(f"{seed}:{name}")
    results: list[CheckResult] = []

    def run(check: str, fn, *args):
        try:
            ok, detail = fn(*args)
        except (ValueError, RuntimeError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, check, ok, detail))

    og = order_graph(g)
    run("gradient-field", check_field, og)
    run("euler", check_euler, og)
    kind = homeomorphism_type(g)
    if kind in ("point", "interval"):
        return results
    b = Braids(og)
    run("iota-oracle", check_iota, b)
    run("conjugation-oracle", check_conjugation, b)
    run("theta-oracle", check_theta, b, rng, n_words, max_word_len)
    run("p1-oracle", check_p1, b)
    if kind != "general":
        return results
    for branch, bog in sorted(branch_orderings(g).items()):
        bb = b if bog.order == og.order and bog.parent == og.parent else Braids(bog)
        run(f"key-identities[{branch}]", check_key_identities, bb)
        if fuzz:
            run(f"witness-fuzz[{branch}]", check_witness_fuzz, bb, rng, fuzz, max_word_len)
    return results


def census_text(g: Graph) -> str:
    return render(census_rows(order_graph(g)))


def verify_corpus(directory, seed: int = 0, fuzz: int = 20, max_word_len: int = 8) -> list[CheckResult]:
    """Run every check on each ``*.graph`` file; compare against ``*.census`` golden files when present."""
    results: list[CheckResult] = []
    for path in sorted(Path(directory).glob("*.graph")):
        name = path.stem
        try:
            g = read_graph(path)
        except (OSError, ValueError) as exc:
            results.append(CheckResult(name, "parse", False, str(exc)))
            continue
        results += verify_graph(name, g, seed=seed, fuzz=fuzz, max_word_len=max_word_len)
        golden = path.with_suffix(".census")
        if golden.exists():
            expected = golden.read_text()
            actual = census_text(g)
            diff = "".join(difflib.unified_diff(expected.splitlines(True), actual.splitlines(True), str(golden), "computed"))
            results.append(CheckResult(name, "golden-census", not diff, diff.rstrip()))
    return results
