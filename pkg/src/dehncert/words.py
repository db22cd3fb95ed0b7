"""Free group words over a named alphabet.

A word is a tuple of nonzero ints.  Letter ``i + 1`` is the ``i``-th
generator of the alphabet and ``-(i + 1)`` is its inverse, so inversion
of a single letter is plain negation.  The empty tuple is the identity.

Generators are ordered by the alphabet, and each generator comes just
before its own inverse: with generators ``a, b`` the letter order is
``a < a^-1 < b < b^-1``.  All shortlex comparisons in this package use
that order.

Text syntax: a single lowercase character names a one-character
generator and the corresponding uppercase character its inverse, so
``"aBc"`` reads as ``a b^-1 c``.  A generator whose name is longer than
one character must be written in backticks, uppercased for the inverse:
``` `rho`A`RHO` ```.  Whitespace is skipped and the character ``1``
denotes the identity, so ``"1"`` parses to the empty word.
"""

from __future__ import annotations

import itertools
import re

Word = tuple

_NAME_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


class Alphabet:
    """An ordered tuple of generator names.

    Names must match ``[a-z][a-z0-9_]*`` and be pairwise distinct.  The
    alphabet owns parsing and formatting of words; everything else in
    the package works on the int tuples directly.
    """

    __slots__ = ("names", "_index")

    def __init__(self, names):
        names = tuple(names)
        for name in names:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise ValueError(f"bad generator name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator name in {names!r}")
        self.names = names
        self._index = {name: i + 1 for i, name in enumerate(names)}

    @property
    def size(self) -> int:
        return len(self.names)

    def letters(self):
        """Positive letters in order, one per generator."""
        return range(1, len(self.names) + 1)

    def signed_letters(self):
        """All letters in shortlex order: g1, g1^-1, g2, g2^-1, ..."""
        return itertools.chain.from_iterable((i, -i) for i in self.letters())

    def letter(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def name_of(self, letter: int) -> str:
        return self.names[abs(letter) - 1]

    def valid_letter(self, letter) -> bool:
        return isinstance(letter, int) and letter != 0 and abs(letter) <= len(self.names)

    def check_word(self, word) -> Word:
        word = tuple(word)
        for l in word:
            if not self.valid_letter(l):
                raise ValueError(f"letter {l!r} outside alphabet {self.names!r}")
        return word

    def extended(self, name: str) -> "Alphabet":
        """New alphabet with one more generator appended at the end."""
        return Alphabet(self.names + (name,))

    def parse(self, text: str) -> Word:
        word = []
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace() or ch == "1":
                i += 1
                continue
            if ch == "`":
                j = text.find("`", i + 1)
                if j < 0:
                    raise ValueError(f"unterminated backtick in {text!r}")
                token = text[i + 1 : j]
                if token in self._index:
                    word.append(self._index[token])
                elif token == token.upper() and token.lower() in self._index:
                    word.append(-self._index[token.lower()])
                else:
                    raise ValueError(f"unknown generator {token!r} in {text!r}")
                i = j + 1
                continue
            low = ch.lower()
            if ch.isalpha() and low in self._index:
                word.append(self._index[low] if ch.islower() else -self._index[low])
                i += 1
                continue
            raise ValueError(f"cannot read {ch!r} at position {i} in {text!r}")
        return tuple(word)

    def format(self, word) -> str:
        if not word:
            return "1"
        out = []
        for l in word:
            name = self.names[abs(l) - 1]
            if l < 0:
                name = name.upper()
            out.append(name if len(self.names[abs(l) - 1]) == 1 else f"`{name}`")
        return "".join(out)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Alphabet({', '.join(self.names)})"


def inverse(word) -> Word:
    return tuple(-l for l in reversed(word))


def is_reduced(word) -> bool:
    return all(word[i] != -word[i + 1] for i in range(len(word) - 1))


def free_reduce(word) -> Word:
    out = []
    for l in word:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def concat(*words) -> Word:
    """Product of the given words, freely reduced."""
    return free_reduce(itertools.chain.from_iterable(words))


def power(word, n: int) -> Word:
    base = tuple(word) if n >= 0 else inverse(word)
    return concat(*([base] * abs(n)))


def cancellation_length(u, v) -> int:
    """Number of letters cancelled in the product u * v.

    Both inputs must be reduced; the result is the largest k with
    inverse(u-suffix of length k) == v-prefix of length k.
    """
    k, m = 0, min(len(u), len(v))
    while k < m and u[len(u) - 1 - k] == -v[k]:
        k += 1
    return k


def common_prefix_length(u, v) -> int:
    k, m = 0, min(len(u), len(v))
    while k < m and u[k] == v[k]:
        k += 1
    return k


def letter_key(letter: int) -> int:
    """Rank of a letter in the order g1 < g1^-1 < g2 < g2^-1 < ..."""
    return (abs(letter) - 1) * 2 + (0 if letter > 0 else 1)


def shortlex_key(word):
    """Sort key realizing shortlex order on words."""
    return (len(word), tuple(letter_key(l) for l in word))


def rotate(word, k: int) -> Word:
    word = tuple(word)
    if not word:
        return word
    k %= len(word)
    return word[k:] + word[:k]


def cyclic_reduce(word):
    """Split a reduced word as (prefix, core) with word = prefix * core *
    prefix^-1 and core cyclically reduced."""
    word = tuple(word)
    assert is_reduced(word)
    i, j = 0, len(word)
    while j - i >= 2 and word[i] == -word[j - 1]:
        i, j = i + 1, j - 1
    return word[:i], word[i:j]
