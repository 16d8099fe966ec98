"""Freely reduced words over an arbitrary alphabet of hashable generators.

A :class:`Word` is an immutable tuple of ``(generator, exponent)`` letters
with exponents ``+1`` or ``-1``, kept freely reduced at all times.  The same
class carries elements of every free group in the package: pi_1 of graphs,
the Morse generators of graph braid groups and the abstract bases of
pi_1(Gamma) and pi_1(Gamma/tau).
"""

from __future__ import annotations

import difflib
import random
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence, Union

Letter = tuple[Hashable, int]


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for gen, exp in letters:
        if exp not in (1, -1):
            raise ValueError(f"exponent must be +1 or -1, got {exp!r}")
        if out and out[-1][0] == gen and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((gen, exp))
    return tuple(out)


class Word:
    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        self.letters = _reduce(letters)
        self._hash = None

    @classmethod
    def gen(cls, g: Hashable, exp: int = 1) -> "Word":
        if exp == 0:
            return cls()
        letter = (g, 1 if exp > 0 else -1)
        return cls([letter] * abs(exp))

    @classmethod
    def product(cls, words: Iterable["Word"]) -> "Word":
        letters: list[Letter] = []
        for w in words:
            letters.extend(w.letters)
        return cls(letters)

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word((g, -e) for g, e in reversed(self.letters))

    __invert__ = inverse

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n))

    def conjugate(self, by: "Word") -> "Word":
        """Return ``by * self * by^-1``."""
        return by * self * by.inverse()

    def substitute(self, images: Union[Mapping[Hashable, "Word"], Callable[[Hashable], "Word"]]) -> "Word":
        """Apply the homomorphism sending each generator to ``images[g]``."""
        lookup = images.__getitem__ if isinstance(images, Mapping) else images
        letters: list[Letter] = []
        for g, e in self.letters:
            image = lookup(g)
            letters.extend(image.letters if e == 1 else image.inverse().letters)
        return Word(letters)

    def exponent_sum(self, g: Hashable | None = None) -> int:
        return sum(e for h, e in self.letters if g is None or h == g)

    def generators(self) -> set:
        return {g for g, _ in self.letters}

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)


def format_word(w: Word, name: Callable[[Hashable], str] = str) -> str:
    if not w:
        return "1"
    parts = []
    for g, e in w.letters:
        parts.append(name(g) if e == 1 else f"{name(g)}^-1")
    return "*".join(parts)


class WordSyntaxError(ValueError):
    pass


def _split_factors(text: str) -> list[str]:
    factors, depth, current = [], 0, []
    for ch in text:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
            if depth < 0:
                raise WordSyntaxError(f"unbalanced brackets in {text!r}")
        if ch == "*" and depth == 0:
            factors.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise WordSyntaxError(f"unbalanced brackets in {text!r}")
    factors.append("".join(current))
    return factors


def parse_word(text: str, resolve: Callable[[str], Hashable]) -> Word:
    """Parse ``g1*g2^-1*...`` into a word.

    ``resolve`` turns the text of one generator into the generator itself and
    raises ``KeyError`` for unknown names.  Whitespace is ignored, and both the
    empty string and ``1`` denote the identity.  Integer powers ``^n`` are
    accepted.
    """
    text = "".join(text.split())
    if text in ("", "1"):
        return Word()
    letters: list[Letter] = []
    for factor in _split_factors(text):
        if not factor:
            raise WordSyntaxError(f"empty factor in {text!r}")
        exp = 1
        head = factor
        if "^" in factor and not factor.endswith((")", "}")):
            head, _, power = factor.rpartition("^")
            try:
                exp = int(power)
            except ValueError:
                raise WordSyntaxError(f"bad exponent {power!r} in {factor!r}") from None
        if head == "1":
            continue
        g = resolve(head)
        letters.extend([(g, 1 if exp > 0 else -1)] * abs(exp))
    return Word(letters)


def unknown_generator_message(name: str, known: Sequence[str]) -> str:
    close = difflib.get_close_matches(name, known, n=3, cutoff=0.5)
    msg = f"unknown generator {name!r}"
    if close:
        msg += "; did you mean " + ", ".join(close) + "?"
    return msg


def random_word(rng: random.Random, gens: Sequence[Hashable], max_len: int, min_len: int = 0) -> Word:
    """A uniformly random freely reduced word whose length lies in [min_len, max_len]."""
    if not gens:
        return Word()
    length = rng.randint(min_len, max_len)
    letters: list[Letter] = []
    while len(letters) < length:
        g, e = rng.choice(gens), rng.choice((1, -1))
        if letters and letters[-1] == (g, -e):
            continue
        letters.append((g, e))
    return Word(letters)


def reduced_words(gens: Sequence[Hashable], max_len: int) -> Iterator[Word]:
    """Enumerate all freely reduced words of length <= max_len."""
    alphabet = [(g, e) for g in gens for e in (1, -1)]

    def extend(prefix: tuple[Letter, ...], remaining: int) -> Iterator[Word]:
        yield Word(prefix)
        if remaining == 0:
            return
        for g, e in alphabet:
            if prefix and prefix[-1] == (g, -e):
                continue
            yield from extend(prefix + ((g, e),), remaining - 1)

    yield from extend((), max_len)


def schreier_rewrite(
    w: Word,
    parity: Callable[[Hashable], int],
    schreier: Callable[[int, Hashable], Word],
) -> Word:
    """Reidemeister rewriting for an index-2 subgroup with transversal {1, t}.

    ``parity(x)`` is the image of generator ``x`` in Z/2 and
    ``schreier(coset, x)`` returns the subgroup word for ``coset_rep * x *
    rep(coset_rep * x)^-1``.  The input word must have even parity.
    """
    coset = 0
    out: list[Word] = []
    for x, e in w.letters:
        p = parity(x) & 1
        if e == 1:
            out.append(schreier(coset, x))
            coset ^= p
        else:
            coset ^= p
            out.append(schreier(coset, x).inverse())
    if coset != 0:
        raise ValueError(f"word {w} has odd parity; it is not in the index-2 subgroup")
    return Word.product(out)
