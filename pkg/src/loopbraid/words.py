"""Loop braid words: parsing, the defining relations, evaluation.

Grammar (whitespace separated, case-sensitive)::

    word  := token*
    token := ("x" | "s") digits ("^-1")?

``x<i>`` is the pass-through generator sigma_i and ``s<j>`` the exchange
generator s_j; indices are 1-based. A word acts left to right: in
``"x1 s2"`` the letter ``x1`` is applied first, so its matrix is
``S_2 @ X_1`` on column vectors.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, NamedTuple

import numpy as np

if TYPE_CHECKING:
    from .rep import LBRep

SIGMA = "sigma"
S = "s"


class Letter(NamedTuple):
    kind: str  # SIGMA or S
    index: int
    exponent: int = 1

    def inverse(self) -> Letter:
        return Letter(self.kind, self.index, -self.exponent)

    def __str__(self) -> str:
        return ("x" if self.kind == SIGMA else "s") + str(self.index) + ("^-1" if self.exponent < 0 else "")


@dataclass(frozen=True)
class LoopBraidWord:
    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: LoopBraidWord) -> LoopBraidWord:
        return LoopBraidWord(self.letters + other.letters)

    def inverse(self) -> LoopBraidWord:
        return LoopBraidWord(tuple(l.inverse() for l in reversed(self.letters)))

    def max_index(self) -> int:
        return max((l.index for l in self.letters), default=0)

    def __str__(self) -> str:
        return " ".join(str(l) for l in self.letters)


def word(*letters: Iterable) -> LoopBraidWord:
    return LoopBraidWord(tuple(Letter(*l) for l in letters))


class WordParseError(ValueError):
    def __init__(self, offset: int, message: str):
        self.offset = offset
        super().__init__(f"{message} at byte offset {offset}")


class WordIndexError(IndexError):
    pass


_TOKEN = re.compile(rb"(?P<kind>[xs])(?P<index>[0-9]+)(?P<exp>\^-1)?")


def parse_word(text: str) -> LoopBraidWord:
    """Parse ``text``; errors carry the byte offset of the offending token."""
    raw = text.encode("utf-8")
    letters = []
    pos = 0
    while pos < len(raw):
        if raw[pos : pos + 1].isspace():
            pos += 1
            continue
        m = _TOKEN.match(raw, pos)
        end = m.end() if m else pos
        if not m:
            c = raw[pos : pos + 1]
            if c in (b"x", b"s"):
                raise WordParseError(pos + 1, "missing generator index")
            raise WordParseError(pos, f"unknown letter {raw[pos:].decode('utf-8', 'replace')[:1]!r}")
        if end < len(raw) and not raw[end : end + 1].isspace():
            if raw[end : end + 1] == b"^":
                raise WordParseError(end, "malformed exponent (only ^-1 is allowed)")
            raise WordParseError(end, "expected whitespace between tokens")
        index = int(m.group("index"))
        if index < 1:
            raise WordParseError(m.start("index"), "generator index must be at least 1")
        kind = SIGMA if m.group("kind") == b"x" else S
        letters.append(Letter(kind, index, -1 if m.group("exp") else 1))
        pos = end
    return LoopBraidWord(tuple(letters))


# ---------------------------------------------------------------------------
# Defining relations


def relation_instances(n: int) -> dict[str, list[tuple[tuple, LoopBraidWord, LoopBraidWord]]]:
    """Every instance of the loop braid relations valid for ``n`` strands.

    Keys are ``B1 B2 S1 S2 S3 M1 M2 M3 Lemma1``; values are
    ``(indices, lhs, rhs)``.
    """
    x = lambda i: (SIGMA, i)  # noqa: E731
    s = lambda i: (S, i)  # noqa: E731
    gens = range(1, n)
    far = [(i, j) for i in gens for j in gens if abs(i - j) > 1]
    out = {
        "B1": [((i,), word(x(i), x(i + 1), x(i)), word(x(i + 1), x(i), x(i + 1))) for i in range(1, n - 1)],
        "B2": [((i, j), word(x(i), x(j)), word(x(j), x(i))) for i, j in far if i < j],
        "S1": [((i,), word(s(i), s(i + 1), s(i)), word(s(i + 1), s(i), s(i + 1))) for i in range(1, n - 1)],
        "S2": [((i,), word(s(i), s(i)), word()) for i in gens],
        "S3": [((i, j), word(s(i), s(j)), word(s(j), s(i))) for i, j in far if i < j],
        "M1": [((i,), word(s(i), s(i + 1), x(i)), word(x(i + 1), s(i), s(i + 1))) for i in range(1, n - 1)],
        "M2": [((i,), word(x(i), x(i + 1), s(i)), word(s(i + 1), x(i), x(i + 1))) for i in range(1, n - 1)],
        "M3": [((i, j), word(x(i), s(j)), word(s(j), x(i))) for i, j in far],
        "Lemma1": [((i,), word(x(i), x(i + 1)), word(s(i), s(i + 1))) for i in range(1, n - 1)],
    }
    return out


RELATION_NAMES = ("B1", "B2", "S1", "S2", "S3", "M1", "M2", "M3", "Lemma1")


# ---------------------------------------------------------------------------
# Evaluation


def evaluate(rep: LBRep, w: LoopBraidWord) -> np.ndarray:
    """Matrix of ``w`` in ``rep``: the first letter acts first."""
    if w.max_index() > rep.n - 1:
        bad = next(l for l in w.letters if l.index > rep.n - 1)
        raise WordIndexError(f"generator {bad} out of range for n = {rep.n} (indices 1..{rep.n - 1})")
    out = np.eye(rep.dim, dtype=complex)
    for letter in w.letters:
        out = rep.generator(letter.kind, letter.index, letter.exponent) @ out
    return out
