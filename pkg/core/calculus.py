"""Expansion, action and sections of group words under a recursion system.

Convention: in u = g.h the automorphism g acts first, so
    sigma_{g.h} = sigma_h o sigma_g   and   (g.h)_e = g_e . h_{sigma_g(e)}.
Sections are freely reduced but never rewritten by relators.
"""
from __future__ import annotations

from typing import Iterable, Iterator, List, Sequence

from core.specs import Factor, GroupWord, RecursionSystem, WreathDecomposition
from core.tree import Alphabet, Permutation, VertexWord

__all__ = [
    "GroupWord",
    "RecursionSystem",
    "WreathDecomposition",
    "act",
    "act_many",
    "concat",
    "expand",
    "inverse",
    "reduce",
    "section",
]


def _append_reduced(stack: List[Factor], factors: Sequence[Factor]) -> None:
    for symbol, sign in factors:
        if stack and stack[-1][0] == symbol and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((symbol, sign))


def expand(system: RecursionSystem, word: GroupWord) -> WreathDecomposition:
    """Root permutation and freely reduced sections of `word`."""
    cache = system.expansion_cache
    cached = cache.get(word)
    if cached is not None:
        return cached

    degree = system.degree
    images = list(range(degree))
    sections: List[List[Factor]] = [[] for _ in range(degree)]
    for factor in word.factors:
        step = system.factor_decomposition(factor)
        for letter in range(degree):
            _append_reduced(sections[letter], step.sections[images[letter]].factors)
        images = [step.root.images[image] for image in images]

    result = WreathDecomposition(
        Permutation(tuple(images)),
        tuple(GroupWord._trusted(tuple(stack)) for stack in sections),
    )
    cache.set(word, result)
    return result


def act(system: RecursionSystem, word: GroupWord, vertex: Sequence[int]) -> VertexWord:
    """Image of a vertex word: g(e w) = sigma_g(e) g_e(w)."""
    system.check_word(word)
    letters = Alphabet(system.degree).check_word(vertex)
    image: List[int] = []
    current = word
    for position, letter in enumerate(letters):
        if current.is_identity():
            image.extend(letters[position:])
            break
        decomposition = expand(system, current)
        image.append(decomposition.root.apply(letter))
        current = decomposition.sections[letter]
    return tuple(image)


def act_many(
    system: RecursionSystem, word: GroupWord, vertices: Iterable[Sequence[int]]
) -> Iterator[VertexWord]:
    for vertex in vertices:
        yield act(system, word, vertex)


def section(system: RecursionSystem, word: GroupWord, vertex: Sequence[int]) -> GroupWord:
    """Renormalization R_v(word), one letter at a time."""
    system.check_word(word)
    letters = Alphabet(system.degree).check_word(vertex)
    current = word
    for letter in letters:
        if current.is_identity():
            break
        current = expand(system, current).sections[letter]
    return current


def inverse(word: GroupWord) -> GroupWord:
    return word.inverse()


def concat(left: GroupWord, right: GroupWord) -> GroupWord:
    return left * right


def reduce(word: GroupWord) -> GroupWord:
    # GroupWord is reduced on construction; kept as an explicit operation
    return GroupWord(word.factors)
