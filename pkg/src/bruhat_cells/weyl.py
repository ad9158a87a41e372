"""Weyl group elements, reduced and double reduced words, and the positional
combinatorics of double words (k-, k+, bounded indices, prefix/suffix
elements).

Elements act on the root lattice in the simple-root basis and are compared
by their integer action matrices.  A double word is a sequence of signed
letters: the sign is the epsilon of the letter, the absolute value its node.
All word positions in the public API are 1-based, matching the usual
``[1, m]`` indexing; the sentinel conventions are ``l- = 0`` and
``k+ = m + 1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

from .cartan import CartanMatrix, positive_roots, reflect_root

__all__ = [
    "NotReducedError",
    "GuardError",
    "SignedLetter",
    "DoubleWord",
    "WeylElement",
    "identity",
    "simple_reflection",
    "word_to_element",
    "length",
    "is_reduced",
    "longest_element",
    "reduced_word_of",
    "enumerate_reduced_words",
    "random_reduced_word",
    "validate_double_reduced",
    "l_minus",
    "k_plus",
    "bounded_indices",
    "prefix_suffix",
    "enumerate_double_words",
    "random_double_word",
    "parse_word",
    "reflect_weight",
    "apply_word_to_weight",
]


class NotReducedError(ValueError):
    """A word failed a reducedness requirement."""


class GuardError(RuntimeError):
    """A size guard was exceeded; the request is out of desk scale."""


class SignedLetter(NamedTuple):
    """One letter of a double word: eps(letter) and |letter|."""

    sign: int
    node: int

    @classmethod
    def from_int(cls, letter: int) -> "SignedLetter":
        if letter == 0:
            raise ValueError("letters are nonzero integers")
        return cls(1 if letter > 0 else -1, abs(letter))

    def to_int(self) -> int:
        return self.sign * self.node


@dataclass(frozen=True)
class WeylElement:
    """Group element as its action matrix on the root lattice.

    ``action[k][j]`` is the coefficient of alpha_{k+1} in the image of
    alpha_{j+1}; the identity element corresponds to the identity matrix.
    """

    cartan: CartanMatrix
    action: tuple[tuple[int, ...], ...]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if self.cartan != other.cartan:
            raise ValueError("elements live over different Cartan matrices")
        r = self.cartan.rank
        a, b = self.action, other.action
        prod = tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(r)) for j in range(r))
            for i in range(r)
        )
        return WeylElement(self.cartan, prod)

    def apply(self, vec: tuple[int, ...]) -> tuple[int, ...]:
        """Image of a root-lattice vector (simple-root basis)."""
        r = self.cartan.rank
        return tuple(sum(self.action[i][j] * vec[j] for j in range(r)) for i in range(r))

    def is_identity(self) -> bool:
        r = self.cartan.rank
        return all(self.action[i][j] == (1 if i == j else 0) for i in range(r) for j in range(r))

    def inverse(self) -> "WeylElement":
        # Finite order and integral: invert via the reduced word.
        word = reduced_word_of(self)
        return word_to_element(self.cartan, tuple(reversed(word)))


def identity(cartan: CartanMatrix) -> WeylElement:
    r = cartan.rank
    return WeylElement(cartan, tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r)))


@lru_cache(maxsize=None)
def simple_reflection(cartan: CartanMatrix, i: int) -> WeylElement:
    """s_i acting by alpha_j -> alpha_j - a[i][j] alpha_i."""
    if i not in cartan.nodes():
        raise ValueError(f"node {i} outside rank {cartan.rank}")
    r = cartan.rank
    rows = [[1 if k == j else 0 for j in range(r)] for k in range(r)]
    for j in range(r):
        rows[i - 1][j] -= cartan.entry(i, j + 1)
    return WeylElement(cartan, tuple(tuple(row) for row in rows))


def word_to_element(cartan: CartanMatrix, word: Sequence[int]) -> WeylElement:
    """Product s_{i_1} ... s_{i_m}, left to right; letters are unsigned nodes."""
    w = identity(cartan)
    for i in word:
        w = w * simple_reflection(cartan, i)
    return w


def length(w: WeylElement) -> int:
    """Number of positive roots sent to negative roots."""
    count = 0
    for beta in positive_roots(w.cartan).positive_roots:
        img = w.apply(beta)
        if all(c <= 0 for c in img):
            count += 1
    return count


def is_reduced(cartan: CartanMatrix, word: Sequence[int]) -> bool:
    return length(word_to_element(cartan, word)) == len(word)


def longest_element(cartan: CartanMatrix) -> WeylElement:
    """Greedy ascent: multiply by the least s_i that increases length."""
    w = identity(cartan)
    ell = 0
    while True:
        for i in cartan.nodes():
            cand = w * simple_reflection(cartan, i)
            cand_len = length(cand)
            if cand_len > ell:
                w, ell = cand, cand_len
                break
        else:
            return w


def _descents(w: WeylElement) -> list[int]:
    """Nodes i with l(w s_i) < l(w), i.e. w(alpha_i) < 0."""
    out = []
    for i in w.cartan.nodes():
        alpha = tuple(1 if j == i - 1 else 0 for j in range(w.cartan.rank))
        if all(c <= 0 for c in w.apply(alpha)):
            out.append(i)
    return out


def reduced_word_of(w: WeylElement) -> tuple[int, ...]:
    """Lexicographically least reduced word (greedy on right descents)."""
    letters: list[int] = []
    cur = w
    while not cur.is_identity():
        i = _descents(cur)[0]
        letters.append(i)
        cur = cur * simple_reflection(cur.cartan, i)
    return tuple(reversed(letters))


def enumerate_reduced_words(
    cartan: CartanMatrix, w: WeylElement, guard: int = 16
) -> list[tuple[int, ...]]:
    """All reduced words of w, via DFS over right descents.

    Guarded by word length; R(w) grows super-exponentially with l(w).
    """
    if length(w) > guard:
        raise GuardError(f"l(w) = {length(w)} exceeds the enumeration guard {guard}")

    @lru_cache(maxsize=None)
    def rec(elem: WeylElement) -> tuple[tuple[int, ...], ...]:
        if elem.is_identity():
            return ((),)
        words = []
        for i in _descents(elem):
            shorter = elem * simple_reflection(cartan, i)
            words.extend(prefix + (i,) for prefix in rec(shorter))
        return tuple(words)

    result = sorted(rec(w))
    rec.cache_clear()
    return result


def random_reduced_word(cartan: CartanMatrix, w: WeylElement, rng: random.Random) -> tuple[int, ...]:
    """One uniformly-random-descent reduced word of w."""
    letters: list[int] = []
    cur = w
    while not cur.is_identity():
        i = rng.choice(_descents(cur))
        letters.append(i)
        cur = cur * simple_reflection(cartan, i)
    return tuple(reversed(letters))


@dataclass(frozen=True)
class DoubleWord:
    """A word in the signed alphabet, candidate reduced word for (u, v)."""

    cartan: CartanMatrix
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        for letter in self.letters:
            if letter == 0 or abs(letter) > self.cartan.rank:
                raise ValueError(f"letter {letter} outside the signed alphabet")

    @property
    def m(self) -> int:
        return len(self.letters)

    def letter(self, k: int) -> int:
        """Signed letter at 1-based position k."""
        return self.letters[k - 1]

    def signed(self, k: int) -> SignedLetter:
        return SignedLetter.from_int(self.letter(k))

    def eps(self, k: int) -> int:
        return 1 if self.letter(k) > 0 else -1

    def node(self, k: int) -> int:
        return abs(self.letter(k))

    def negative_subword(self) -> tuple[int, ...]:
        return tuple(-x for x in self.letters if x < 0)

    def positive_subword(self) -> tuple[int, ...]:
        return tuple(x for x in self.letters if x > 0)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.letters)


def parse_word(cartan: CartanMatrix, text: str) -> DoubleWord:
    """Parse "-2,1,-3,..." (or rank-2 letter aliases i/j) into a DoubleWord."""
    from .cartan import RANK2_LETTERS

    letters = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        sign = 1
        if tok[0] in "+-":
            sign = -1 if tok[0] == "-" else 1
            tok = tok[1:]
        if tok in RANK2_LETTERS:
            if cartan.rank != 2:
                raise ValueError("letter aliases i/j are only defined for rank-2 types")
            letters.append(sign * RANK2_LETTERS[tok])
        else:
            letters.append(sign * int(tok))
    return DoubleWord(cartan, tuple(letters))


def validate_double_reduced(cartan: CartanMatrix, word: DoubleWord) -> tuple[WeylElement, WeylElement]:
    """Return (u, v) if both sign-subwords are reduced, else raise.

    The negative subword (absolute values, in order) must be a reduced word
    for u and the positive subword one for v.
    """
    neg, pos = word.negative_subword(), word.positive_subword()
    u = word_to_element(cartan, neg)
    v = word_to_element(cartan, pos)
    if length(u) != len(neg):
        raise NotReducedError(f"negative subword {neg} is not reduced")
    if length(v) != len(pos):
        raise NotReducedError(f"positive subword {pos} is not reduced")
    return u, v


def l_minus(word: DoubleWord, l: int) -> int:
    """Largest k < l with |i_k| = |i_l|, or 0 when there is none."""
    node = word.node(l)
    for k in range(l - 1, 0, -1):
        if word.node(k) == node:
            return k
    return 0


def k_plus(word: DoubleWord, k: int) -> int:
    """Smallest l > k with |i_l| = |i_k|, or m + 1 at the last occurrence."""
    node = word.node(k)
    for l in range(k + 1, word.m + 1):
        if word.node(l) == node:
            return l
    return word.m + 1


def bounded_indices(word: DoubleWord) -> list[int]:
    """Indices n with n- > 0 (the node occurred earlier)."""
    return [n for n in range(1, word.m + 1) if l_minus(word, n) > 0]


def prefix_suffix(cartan: CartanMatrix, word: DoubleWord, k: int) -> tuple[WeylElement, WeylElement]:
    """(u_{>=k}, v_{<k}) for 1 <= k <= m + 1.

    u_{>=k} multiplies the negative letters at positions >= k with the
    position index decreasing; v_{<k} multiplies the positive letters at
    positions < k with the index increasing.
    """
    if not 1 <= k <= word.m + 1:
        raise ValueError(f"position {k} outside [1, m + 1]")
    u = identity(cartan)
    for l in range(word.m, k - 1, -1):
        if word.eps(l) < 0:
            u = u * simple_reflection(cartan, word.node(l))
    v = identity(cartan)
    for l in range(1, k):
        if word.eps(l) > 0:
            v = v * simple_reflection(cartan, word.node(l))
    return u, v


def _shuffles(a: tuple[int, ...], b: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    if not a:
        yield b
        return
    if not b:
        yield a
        return
    for rest in _shuffles(a[1:], b):
        yield (a[0],) + rest
    for rest in _shuffles(a, b[1:]):
        yield (b[0],) + rest


def enumerate_double_words(
    cartan: CartanMatrix, u: WeylElement, v: WeylElement, guard: int = 10
) -> Iterator[DoubleWord]:
    """All reduced words for (u, v): shuffles of R(u) (negated) with R(v)."""
    m = length(u) + length(v)
    if m > guard:
        raise GuardError(f"l(u) + l(v) = {m} exceeds the shuffle guard {guard}")
    for wu in enumerate_reduced_words(cartan, u, guard=guard):
        neg = tuple(-i for i in wu)
        for wv in enumerate_reduced_words(cartan, v, guard=guard):
            for mix in _shuffles(neg, wv):
                yield DoubleWord(cartan, mix)


def random_double_word(
    cartan: CartanMatrix, u: WeylElement, v: WeylElement, rng: random.Random
) -> DoubleWord:
    """A random shuffle of random reduced words for u and v."""
    neg = [-i for i in random_reduced_word(cartan, u, rng)]
    pos = list(random_reduced_word(cartan, v, rng))
    letters: list[int] = []
    while neg or pos:
        take_neg = neg and (not pos or rng.random() < len(neg) / (len(neg) + len(pos)))
        letters.append(neg.pop(0) if take_neg else pos.pop(0))
    return DoubleWord(cartan, tuple(letters))


def reflect_weight(cartan: CartanMatrix, i: int, mu: tuple[int, ...]) -> tuple[int, ...]:
    """s_i on a weight in fundamental-weight coordinates.

    With mu_k = <mu, alpha_k-coroot>, the image has mu_k - a[k][i] mu_i.
    """
    ci = mu[i - 1]
    return tuple(mu[k] - cartan.entry(k + 1, i) * ci for k in range(cartan.rank))


def apply_word_to_weight(
    cartan: CartanMatrix, word: Sequence[int], mu: tuple[int, ...], inverse: bool = False
) -> tuple[int, ...]:
    """Apply s_{i_1} ... s_{i_m} (or its inverse) to weight coordinates."""
    letters = tuple(word)
    if not inverse:
        letters = tuple(reversed(letters))
    out = mu
    for i in letters:
        out = reflect_weight(cartan, i, out)
    return out
