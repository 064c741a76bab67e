"""Helpers for building recursion systems programmatically.

These utilities keep the catalog definitions close to the printed notation.
"""
from __future__ import annotations

from typing import List, Optional, Sequence, Union

from core.dsl import parse_word
from core.specs import GeneratorSpec, GroupWord, RecursionSystem
from core.tree import Permutation, perm_from_cycles

WordLike = Union[str, GroupWord]


class SystemBuilder:
    """Fluent API for building recursion systems.

    Example:
        builder = SystemBuilder(2)
        builder.add_generator("a", "(0 1)", ["b", "1"])
        builder.add_generator("b", "", ["a", "1"])
        basilica = builder.build()
    """

    def __init__(self, degree: int):
        """
        Initialize a system builder.

        Args:
            degree: Size of the alphabet
        """
        self.degree = degree
        self._generators: List[GeneratorSpec] = []
        self._relators: List[GroupWord] = []

    def add_generator(
        self,
        name: str,
        cycles: Union[str, Permutation] = "",
        sections: Optional[Sequence[WordLike]] = None,
    ) -> "SystemBuilder":
        """
        Add a generator g = sigma[g_0, ..., g_{d-1}].

        Args:
            name: Generator symbol
            cycles: Root permutation in cycle notation ("" is the identity)
            sections: The d section words, as DSL text or GroupWord (default: all trivial)

        Returns:
            Self for chaining
        """
        root = cycles if isinstance(cycles, Permutation) else perm_from_cycles(cycles, self.degree)
        words = sections if sections is not None else ["1"] * self.degree
        self._generators.append(
            GeneratorSpec(name=name, root=root, sections=tuple(_word(item) for item in words))
        )
        return self

    def add_relator(self, word: WordLike) -> "SystemBuilder":
        self._relators.append(_word(word))
        return self

    def build(self) -> RecursionSystem:
        """
        Build the system.

        Returns:
            RecursionSystem ready for computation

        Raises:
            pydantic.ValidationError: if the definitions are inconsistent
        """
        return RecursionSystem(
            degree=self.degree,
            generators=tuple(self._generators),
            relators=tuple(self._relators),
        )


def _word(item: WordLike) -> GroupWord:
    return item if isinstance(item, GroupWord) else parse_word(item)


def adding_machine(degree: int) -> RecursionSystem:
    """g = (0 1 ... d-1)[1, ..., 1, g]."""
    cycle = "(" + " ".join(str(letter) for letter in range(degree)) + ")"
    return SystemBuilder(degree).add_generator("g", cycle, ["1"] * (degree - 1) + ["g"]).build()


def _pairs_cycles(start: int, degree: int) -> str:
    return "".join(f"({x} {x + 1})" for x in range(start, degree - 1, 2))


def chebyshev(degree: int) -> RecursionSystem:
    """sigma_a = (0 1)(2 3)..., sigma_b = (1 2)(3 4)...; the trailing `a` section
    goes to b when d is even and to a when d is odd."""
    a_sections = ["1"] * degree
    b_sections = ["b"] + ["1"] * (degree - 1)
    if degree % 2 == 0:
        b_sections[-1] = "a"
    else:
        a_sections[-1] = "a"
    return (
        SystemBuilder(degree)
        .add_generator("a", _pairs_cycles(0, degree), a_sections)
        .add_generator("b", _pairs_cycles(1, degree), b_sections)
        .build()
    )
