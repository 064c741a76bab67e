"""Alphabets, vertex words and root permutations of the regular rooted tree.

Vertex words are plain tuples of letters; the first letter is the level-1 letter
(nearest the root). Levels are ranked leftmost-significant, so the ranks of level
n+1 refine the ranks of level n by suffix extension.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

from core.errors import LengthMismatchError, LetterError, PermutationError

VertexWord = Tuple[int, ...]

MAX_DEGREE = 1 << 16

_CYCLE_RE = re.compile(r"\(([^()]*)\)")
_CYCLE_SEP_RE = re.compile(r"[,\s]+")
_LETTER_RE = re.compile(r"[0-9]+")
_VERTEX_RE = re.compile(r"[0-9]*")


@dataclass(frozen=True)
class Alphabet:
    """The alphabet {0, 1, ..., d-1}."""

    degree: int

    def __post_init__(self) -> None:
        if self.degree < 2:
            raise LetterError(f"alphabet degree must be >= 2, got {self.degree}")
        if self.degree > MAX_DEGREE:
            raise LetterError(f"alphabet degree must be <= {MAX_DEGREE}, got {self.degree}")

    def letters(self) -> range:
        return range(self.degree)

    def check_letter(self, letter: int) -> int:
        if not 0 <= letter < self.degree:
            raise LetterError(f"letter {letter} out of range for degree {self.degree}")
        return letter

    def check_word(self, word: Sequence[int]) -> VertexWord:
        return tuple(self.check_letter(letter) for letter in word)


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0..d-1}, stored as its image array."""

    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise PermutationError(f"not a permutation: {list(images)}")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def apply(self, letter: int) -> int:
        return self.images[letter]

    def is_identity(self) -> bool:
        return all(image == letter for letter, image in enumerate(self.images))

    def moved_letters(self) -> List[int]:
        return [letter for letter, image in enumerate(self.images) if image != letter]

    def cycles(self) -> List[Tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest letter, ordered by that letter."""
        seen = [False] * self.degree
        result: List[Tuple[int, ...]] = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            current = self.images[start]
            while current != start:
                seen[current] = True
                cycle.append(current)
                current = self.images[current]
            if len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    def cycle_of(self, letter: int) -> Tuple[int, ...]:
        """The orbit of `letter`, starting at `letter` and following the permutation."""
        cycle = [letter]
        current = self.images[letter]
        while current != letter:
            cycle.append(current)
            current = self.images[current]
        return tuple(cycle)

    def to_cycles_text(self) -> str:
        return "".join("(" + " ".join(str(x) for x in cycle) + ")" for cycle in self.cycles())

    def __str__(self) -> str:
        return self.to_cycles_text() or "()"


def compose_perms(p: Permutation, q: Permutation) -> Permutation:
    """Apply `p` first, then `q` (the same convention as group words)."""
    if p.degree != q.degree:
        raise PermutationError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation(tuple(q.images[image] for image in p.images))


def invert_perm(p: Permutation) -> Permutation:
    inverse = [0] * p.degree
    for letter, image in enumerate(p.images):
        inverse[image] = letter
    return Permutation(tuple(inverse))


def perm_from_cycles(text: str, degree: int) -> Permutation:
    """Parse circular notation such as "(0,1)(2 3)"; the empty string is the identity."""
    alphabet = Alphabet(degree)
    images = list(range(degree))
    used: set[int] = set()
    position = 0
    stripped = text.strip()
    while position < len(stripped):
        if stripped[position].isspace():
            position += 1
            continue
        match = _CYCLE_RE.match(stripped, position)
        if match is None:
            raise PermutationError(f"malformed cycle notation at offset {position}: {text!r}")
        body = match.group(1).strip()
        if not body:
            raise PermutationError(f"empty cycle in {text!r}")
        cycle: List[int] = []
        for token in _CYCLE_SEP_RE.split(body):
            if not _LETTER_RE.fullmatch(token):
                raise PermutationError(f"bad letter {token!r} in {text!r}")
            letter = int(token)
            try:
                alphabet.check_letter(letter)
            except LetterError as exc:
                raise PermutationError(str(exc)) from exc
            if letter in used:
                raise PermutationError(f"letter {letter} repeated in {text!r}")
            used.add(letter)
            cycle.append(letter)
        for index, letter in enumerate(cycle):
            images[letter] = cycle[(index + 1) % len(cycle)]
        position = match.end()
    return Permutation(tuple(images))


def rank(word: Sequence[int], n: int, degree: int) -> int:
    """Index of `word` within level n, leftmost letter most significant."""
    if len(word) != n:
        raise LengthMismatchError(f"expected a word of length {n}, got {len(word)}")
    alphabet = Alphabet(degree)
    value = 0
    for letter in word:
        value = value * degree + alphabet.check_letter(letter)
    return value


def unrank(value: int, n: int, degree: int) -> VertexWord:
    if not 0 <= value < degree**n:
        raise LengthMismatchError(f"rank {value} out of range for level {n}")
    letters = [0] * n
    for position in range(n - 1, -1, -1):
        value, letters[position] = divmod(value, degree)
    return tuple(letters)


def level_words(n: int, degree: int) -> Iterator[VertexWord]:
    """All words of length n, in rank order."""
    for value in range(degree**n):
        yield unrank(value, n, degree)


def parse_vertex_word(text: str, degree: int) -> VertexWord:
    """Bare digit string ("0000"); the empty string is the root."""
    stripped = text.strip()
    if not _VERTEX_RE.fullmatch(stripped):
        raise LetterError(f"vertex words are digit strings, got {text!r}")
    return Alphabet(degree).check_word([int(ch) for ch in stripped])


def format_vertex_word(word: Sequence[int]) -> str:
    return "".join(str(letter) for letter in word)
