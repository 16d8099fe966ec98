"""Deciding the Borsuk-Ulam property for based classes [Gamma, G].

A class is a tuple ``(w, w1, w1', ..., wm, wm')`` of images of the adapted
basis ``a, a_i, a'_i`` of pi_1(Gamma): words in ``z1..zk`` for a general
target, integers for a circle.  The property fails exactly when there are
``psi: pi_1(Gamma/tau) -> B_2(G)`` over theta and its restriction ``phi``
with ``p1 . phi = alpha``; a :class:`WitnessDiagram` records such a pair
together with the checks it passed.
"""

from __future__ import annotations

import dataclasses
import itertools
from typing import Sequence

from .braid import Braids
from .config_complex import Cell
from .graph_model import Graph, GraphError, OrderedGraph, essential_vertex, order_graph
from .involution import AdaptedBasis, InvolutionGraph, adapt_basis
from .morse import Status, classify_cell
from .words import Word, parse_word


class VerificationError(RuntimeError):
    """An emitted witness failed its own checks (an internal bug)."""


@dataclasses.dataclass
class KeyElements:
    braids: Braids
    branch: str  # "essential" or "linear"
    sigma: Cell
    rho: Cell
    lambdas: list[Cell]
    lambda_primes: list[Word]
    x1_prime: int | None = None

    def lam(self, i: int) -> Word:
        return Word.gen(self.lambdas[i - 1])

    def substitute_lambda(self, w: Word, prefix: str = "z") -> Word:
        """Replace ``z_i`` (or ``t_i``) by ``lambda_i``."""
        return w.substitute(lambda g: self.lam(int(g[len(prefix):])))


@dataclasses.dataclass
class WitnessDiagram:
    case: str
    psi: dict
    phi: dict
    checks: list = dataclasses.field(default_factory=list)

    @property
    def verified(self) -> bool:
        return bool(self.checks) and all(ok for _, ok, _ in self.checks)


@dataclasses.dataclass
class Decision:
    case: str
    holds: bool
    witness: WitnessDiagram | None = None
    reason: str = ""


def homeomorphism_type(g: Graph) -> str:
    """One of ``point``, ``interval``, ``circle``, ``tree`` or ``general``."""
    n, e = len(g.vertices), len(g.edges)
    degrees = [g.degree(v) for v in g.vertices]
    if n == 1:
        return "point"
    if e == n - 1:
        return "interval" if max(degrees) <= 2 else "tree"
    if e == n and all(d == 2 for d in degrees):
        return "circle"
    return "general"


# -- circle and interval ----------------------------------------------------


def classify_interval(alpha=None) -> Decision:
    return Decision("interval", True, reason="every map to an interval satisfies the Borsuk-Ulam property")


def classify_circle(alpha: Sequence[int], m: int) -> Decision:
    alpha = tuple(int(x) for x in alpha)
    if len(alpha) != 2 * m + 1:
        raise ValueError(f"class must have {2 * m + 1} entries, got {len(alpha)}")
    p = alpha[0]
    pairs = [(alpha[2 * i - 1], alpha[2 * i]) for i in range(1, m + 1)]
    broken = []
    if p % 2 == 0:
        broken.append(f"p = {p} is even")
    broken += [f"p{i} = {a} differs from p{i}' = {b}" for i, (a, b) in enumerate(pairs, 1) if a != b]
    if broken:
        return Decision("circle", True, reason="; ".join(broken))
    # B_2(S^1) = Z with P_2(S^1) = 2Z; a P_2 element 2k has p1 = k, so phi is kept in P_2 coordinates
    psi = {"c": p, **{f"c{i}": 2 * a for i, (a, _) in enumerate(pairs, 1)}}
    images = {"a": 2 * p}
    for i in range(1, m + 1):
        images[f"a{i}"] = psi[f"c{i}"]
        images[f"a{i}'"] = psi[f"c{i}"]  # conjugation by psi(c) is trivial in Z
    phi = {name: v // 2 for name, v in images.items()}
    checks = [("theta2(psi(c)) = 1", p % 2 == 1, str(p))]
    checks += [(f"theta2(psi(c{i})) = 0", psi[f"c{i}"] % 2 == 0, str(psi[f"c{i}"])) for i in range(1, m + 1)]
    for name, target in zip(_class_names(m), alpha):
        checks.append((f"p1(phi({name})) = alpha({name})", phi[name] == target, str(phi[name])))
    witness = WitnessDiagram("circle", psi, phi, checks)
    if not witness.verified:
        raise VerificationError(f"circle witness failed: {checks}")
    return Decision("circle", False, witness, reason=f"p = {p} is odd and p_i = p_i' for all i")


def circle_failures_by_search(basis_words: dict, m: int, bound: int) -> set[tuple[int, ...]]:
    """All classes reached by some psi with |psi(c)|, |psi(c_i)| <= bound and theta2 . psi = theta1.

    ``basis_words`` are the words of ``a, a_i, a'_i`` in ``c, c_i``; B_2(S^1) = Z,
    P_2(S^1) = 2Z and p1 halves.
    """
    names = ["a"] + [x for i in range(1, m + 1) for x in (f"a{i}", f"a{i}'")]
    found = set()
    values = range(-bound, bound + 1)
    for p in values:
        for qs in itertools.product(values, repeat=m):
            psi = {"c": p, **{f"c{i}": q for i, q in enumerate(qs, 1)}}
            if p % 2 != 1 or any(q % 2 for q in qs):
                continue
            image = [sum(psi[g] * e for g, e in basis_words[name]) for name in names]
            if any(v % 2 for v in image):
                continue
            found.add(tuple(v // 2 for v in image))
    return found


# -- general graphs -----------------------------------------------------------


def _require_critical(og: OrderedGraph, cell: Cell, what: str) -> None:
    st, _ = classify_cell(og, cell)
    if st is not Status.CRITICAL:
        raise GraphError(
            f"{what} {cell} is {st.value}, not critical; use a depth-first maximal tree "
            "(every deleted edge must join a vertex to one of its tree ancestors)"
        )


def build_key_elements(braids: Braids) -> KeyElements:
    """Pick sigma, rho and lambda_1..lambda_k and check their defining identities."""
    og = braids.og
    if not og.deleted_edges:
        raise ValueError("G is a tree; key elements need a deleted edge")
    for x, y in og.deleted_edges:
        if not og.is_ancestor(x, y):
            raise GraphError(
                f"deleted edge ({x},{y}) does not join a vertex to a tree ancestor; "
                "use a depth-first maximal tree"
            )
    ess = essential_vertex(og)
    x1_prime = None
    if ess is not None:
        v, v1, v2 = ess
        branch = "essential"
        expected = Cell(v1, (v, v2))
        lambdas = [Cell(x + 1, (x, y)) for x, y in og.deleted_edges]
    else:
        branch = "linear"
        x1, y1 = og.deleted_edges[0]
        expected = Cell(x1 + 1, (x1, y1))
        if x1 > 0:
            x1_prime = 0
        else:
            x1_prime = y1 + 1
            if not y1 < og.n_vertices - 1:
                raise ValueError(f"y1 = {y1} must be below the last vertex; G is a circle")
        lambdas = [Cell(x1_prime, (x1, y1))] + [Cell(x + 1, (x, y)) for x, y in og.deleted_edges[1:]]
    if braids.connecting != expected:
        raise ValueError(f"braid data uses connecting cell {braids.connecting}, the {branch} branch needs {expected}")
    for x, y in og.deleted_edges:
        if not x + 1 < y:
            raise GraphError(f"deleted edge ({x},{y}) violates x+1<y")
    for i, lam in enumerate(lambdas, 1):
        _require_critical(og, lam, f"lambda_{i}")
    primes = [braids.conjugate_by_sigma(Word.gen(lam)) for lam in lambdas]
    key = KeyElements(braids, branch, braids.sigma, braids.rho, lambdas, primes, x1_prime)
    failures = [name for name, ok, _ in key_identities(key) if not ok]
    if failures:
        raise VerificationError(f"key element identities failed: {', '.join(failures)}")
    return key


def key_identities(key: KeyElements) -> list[tuple[str, bool, str]]:
    """The identities rho = sigma^2 and the p1 values of rho, lambda_i, lambda'_i."""
    b = key.braids
    sig = Word.gen(key.sigma)
    rho = Word.gen(key.rho)
    z = [Word.gen(name) for name in b.z_gens]
    out = []
    out.append(("rho = sigma^2", b.iota(rho) == sig * sig, str(b.iota(rho))))
    p1rho = b.p1(rho)
    want_rho = Word() if key.branch == "essential" else z[0]
    out.append((f"p1(rho) = {want_rho}", p1rho == want_rho, str(p1rho)))
    for i, lam in enumerate(key.lambdas, 1):
        got = b.p1(Word.gen(lam))
        out.append((f"p1(lambda{i}) = 1", got == Word(), str(got)))
    for i, lp in enumerate(key.lambda_primes, 1):
        got = b.p1(lp)
        if key.branch == "essential" or i == 1:
            want = z[i - 1]
        else:
            want = z[i - 1] * ~z[0]
        out.append((f"p1(lambda'{i}) = {want}", got == want, str(got)))
        conj = b.iota(lp) == sig * b.iota(Word.gen(key.lambdas[i - 1])) * ~sig
        out.append((f"iota(lambda'{i}) = sigma*lambda{i}*sigma^-1", conj, str(b.iota(lp))))
    return out


def z_to_t(w: Word) -> Word:
    """Rewrite a word in z_i in the basis t_1 = z_1, t_i = z_i z_1^-1."""
    t1 = Word.gen("t1")
    return w.substitute(lambda g: t1 if g == "z1" else Word.gen("t" + g[1:]) * t1)


def t_to_z(w: Word) -> Word:
    z1 = Word.gen("z1")
    return w.substitute(lambda g: z1 if g == "t1" else Word.gen("z" + g[1:]) * ~z1)


def _class_names(m: int) -> list[str]:
    names = ["a"]
    for i in range(1, m + 1):
        names += [f"a{i}", f"a{i}'"]
    return names


def construct_witness(alpha: Sequence[Word], key: KeyElements, basis: AdaptedBasis | None = None, m: int | None = None) -> WitnessDiagram:
    """Build psi and phi for the class ``alpha`` and verify the commutative diagram."""
    b = key.braids
    if m is None:
        m = basis.m if basis is not None else (len(alpha) - 1) // 2
    if len(alpha) != 2 * m + 1:
        raise ValueError(f"class must have {2 * m + 1} words, got {len(alpha)}")
    zset = set(b.z_gens)
    for w in alpha:
        for g, _ in w:
            if g not in zset:
                raise ValueError(f"generator {g} is not one of {', '.join(b.z_gens)}")
    sig = Word.gen(key.sigma)
    rho = Word.gen(key.rho)
    iota, conj = b.iota, b.conjugate_by_sigma
    w = alpha[0]
    pairs = [(alpha[2 * i - 1], alpha[2 * i]) for i in range(1, m + 1)]

    psi: dict[str, Word] = {}
    formula: dict[str, Word] = {}
    if key.branch == "essential":
        wl = key.substitute_lambda(w)
        psi["c"] = iota(wl) * sig
        formula["a"] = wl * conj(wl) * rho
        for i, (wi, wpi) in enumerate(pairs, 1):
            wil, wpil = key.substitute_lambda(wi), key.substitute_lambda(wpi)
            psi[f"c{i}"] = sig * iota(wil) * ~sig * iota(wpil)
            formula[f"a{i}"] = conj(wil) * wpil
            formula[f"a{i}'"] = wl * rho * wil * ~rho * conj(wpil) * ~wl
    else:
        z1inv = ~Word.gen("z1")
        lam1 = key.lam(1)
        ell = key.substitute_lambda(z_to_t(w * z1inv), "t")
        psi["c"] = iota(ell) * sig
        formula["a"] = ell * conj(ell) * rho
        for i, (wi, wpi) in enumerate(pairs, 1):
            li = key.substitute_lambda(z_to_t(wi * z1inv), "t")
            lpi = key.substitute_lambda(z_to_t(wpi * z1inv), "t")
            psi[f"c{i}"] = sig * iota(li) * sig * iota(~lam1 * lpi * lam1)
            formula[f"a{i}"] = conj(li) * rho * ~lam1 * lpi * lam1
            formula[f"a{i}'"] = ell * rho * li * conj(~lam1 * lpi * lam1) * ~ell

    psic = psi["c"]
    images = {"a": psic * psic}
    for i in range(1, m + 1):
        images[f"a{i}"] = psi[f"c{i}"]
        images[f"a{i}'"] = psic * psi[f"c{i}"] * ~psic
    theta1 = basis.theta1 if basis is not None else {"c": 1, **{f"c{i}": 0 for i in range(1, m + 1)}}

    checks = []
    for name, word in psi.items():
        got = b.theta(word)
        checks.append((f"theta2(psi({name})) = theta1({name})", got == theta1[name], f"{got}"))
    phi: dict[str, Word] = {}
    for name, target in zip(_class_names(m), alpha):
        phi[name] = b.sigma_parity_rewrite(images[name])
        checks.append((f"iota(phi({name})) = psi({name})", iota(phi[name]) == images[name], ""))
        checks.append((f"iota(formula({name})) = psi({name})", iota(formula[name]) == images[name], str(formula[name])))
        got = b.p1(phi[name])
        checks.append((f"p1(phi({name})) = alpha({name})", got == target, f"{got} vs {target}"))
    witness = WitnessDiagram(key.branch, psi, phi, checks)
    if not witness.verified:
        bad = [(n, d) for n, ok, d in checks if not ok]
        raise VerificationError(f"witness verification failed: {bad}")
    return witness


def classify_tree(braids: Braids, m: int, theta1: dict | None = None) -> Decision:
    """G a tree other than an interval: the trivial class fails, psi(c) = sigma, psi(c_i) = 1."""
    b = braids
    sig = Word.gen(b.sigma)
    psi = {"c": sig, **{f"c{i}": Word() for i in range(1, m + 1)}}
    theta1 = theta1 or {"c": 1, **{f"c{i}": 0 for i in range(1, m + 1)}}
    checks = [(f"theta2(psi({n})) = theta1({n})", b.theta(w) == theta1[n], str(b.theta(w))) for n, w in psi.items()]
    phi = {"a": b.sigma_parity_rewrite(sig * sig)}
    for i in range(1, m + 1):
        phi[f"a{i}"] = Word()
        phi[f"a{i}'"] = Word()
    for name, word in phi.items():
        checks.append((f"p1(phi({name})) = 1", b.p1(word) == Word(), str(b.p1(word))))
    witness = WitnessDiagram("tree", psi, phi, checks)
    if not witness.verified:
        raise VerificationError(f"tree witness failed: {checks}")
    return Decision("tree", False, witness, reason="G is a tree that is not an interval")


# -- classes and dispatch -----------------------------------------------------


def parse_class(text: str) -> list[str]:
    """One word per non-empty line; ``#`` starts a comment; ``1`` is the identity."""
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _circle_entries(entries: Sequence) -> tuple[int, ...]:
    values = []
    for e in entries:
        if isinstance(e, int):
            values.append(e)
            continue
        if isinstance(e, Word):
            w = e
        else:
            try:
                values.append(int(e))
                continue
            except ValueError:
                w = parse_word(e, _circle_generator)
        values.append(w.exponent_sum())
    return tuple(values)


def _circle_generator(tok: str) -> str:
    if tok != "z1":
        raise ValueError(f"unknown generator {tok!r}; a circle has the single generator z1")
    return tok


def decide(ig: InvolutionGraph, g: Graph, alpha: Sequence, root=None, tree=None) -> Decision:
    """Decide the Borsuk-Ulam property for ``alpha`` in [Gamma, G] and certify failures."""
    kind = homeomorphism_type(g)
    m = ig.m
    if len(alpha) != 2 * m + 1:
        raise ValueError(f"class must have 2m+1 = {2 * m + 1} entries (m = {m}), got {len(alpha)}")
    if kind in ("point", "interval"):
        return classify_interval(alpha)
    basis = adapt_basis(ig)
    if kind == "circle":
        return classify_circle(_circle_entries(alpha), m)
    og = order_graph(g, root=root, tree=tree)
    braids = Braids(og)
    words = [a if isinstance(a, Word) else braids.parse(a, "z") for a in alpha]
    if kind == "tree":
        if any(words):
            raise ValueError("G is a tree: the only class is the trivial one")
        return classify_tree(braids, m, basis.theta1)
    key = build_key_elements(braids)
    witness = construct_witness(words, key, basis)
    return Decision("general", False, witness, reason=f"G is neither an interval nor a circle ({key.branch} branch)")


def certificate(decision: Decision) -> list[tuple[str, str]]:
    """Stable key/value listing of a decision and its witness."""
    rows = [("case", decision.case), ("decision", "holds" if decision.holds else "fails")]
    if decision.reason:
        rows.append(("reason", decision.reason))
    w = decision.witness
    if w is not None:
        rows.append(("branch", w.case))
        for k, v in w.psi.items():
            rows.append((f"psi({k})", str(v)))
        for k, v in w.phi.items():
            rows.append((f"phi({k})", str(v)))
        for label, ok, detail in w.checks:
            rows.append(("check", ("pass " if ok else "FAIL ") + label + (f" [{detail}]" if detail else "")))
        rows.append(("verified", "yes" if w.verified else "no"))
    return rows
