"""Built-in recursion systems, addressed by name.

Families take the degree as a suffix: `adding_machine_3`, `chebyshev_4`.
Primed generators (`ap`, `bp`, `cp`) are the conjugated pairs published next
to a system, kept in the same system so that conjugacy can be checked.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Tuple

from core.errors import WreathError
from core.specs import GroupWord, RecursionSystem
from core.system_builder import SystemBuilder, adding_machine, chebyshev
from core.tree import MAX_DEGREE

FAMILY_MAX_DEGREE = 16
_FAMILY_RE = re.compile(r"^(adding_machine|chebyshev)_(\d+)$")


class CatalogError(WreathError):
    def __init__(self, name: str):
        super().__init__(f"unknown catalog entry: {name}")
        self.name = name


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    system: RecursionSystem
    notes: str

    @property
    def degree(self) -> int:
        return self.system.degree


def _basilica() -> RecursionSystem:
    return (
        SystemBuilder(2)
        .add_generator("a", "(0 1)", ["b", "1"])
        .add_generator("b", "", ["a", "1"])
        .add_relator("b^-1*a^-1*b^-1*a*b*a^-1*b*a")
        .build()
    )


def _rational_r() -> RecursionSystem:
    return (
        SystemBuilder(2)
        .add_generator("a", "(0 1)", ["b", "1"])
        .add_generator("b", "", ["a", "b^-1*a^-1"])
        .add_generator("g", "", ["g*a", "g"])
        .add_generator("ap", "(0 1)", ["1", "1"])
        .add_generator("bp", "(0 1)", ["ap", "bp^-1"])
        .build()
    )


def _rational_f() -> RecursionSystem:
    return (
        SystemBuilder(2)
        .add_generator("a", "(0 1)", ["1", "a^-1*b^-1"])
        .add_generator("b", "", ["a", "1"])
        .build()
    )


def _hanoi_generators(builder: SystemBuilder, suffix: str = "") -> SystemBuilder:
    return (
        builder.add_generator("a" + suffix, "(1 2)", ["a" + suffix, "1", "1"])
        .add_generator("b" + suffix, "(0 1)", ["1", "1", "b" + suffix])
        .add_generator("c" + suffix, "(0 2)", ["1", "c" + suffix, "1"])
    )


def _hanoi() -> RecursionSystem:
    return _hanoi_generators(SystemBuilder(3)).build()


def _sierpinski() -> RecursionSystem:
    builder = (
        SystemBuilder(3)
        .add_generator("a", "(1 2)", ["a", "1", "1"])
        .add_generator("b", "(0 1)", ["1", "1", "c"])
        .add_generator("c", "(0 2)", ["1", "b", "1"])
        .add_generator("g", "(1 2)", ["h", "h", "h"])
        .add_generator("h", "", ["g", "g", "g"])
    )
    return _hanoi_generators(builder, "p").build()


WITTNER_RELATOR = "b2*a0*a2*b1*a1*b0*a3"


def _wittner() -> RecursionSystem:
    return (
        SystemBuilder(2)
        .add_generator("a0", "", ["a3", "1"])
        .add_generator("a1", "(0 1)", ["b2*a0", "b2^-1"])
        .add_generator("a2", "", ["1", "a1"])
        .add_generator("a3", "", ["1", "a2"])
        .add_generator("b0", "", ["b2", "1"])
        .add_generator("b1", "(0 1)", ["a3^-1", "b0*a3"])
        .add_generator("b2", "", ["1", "b1"])
        .add_relator(WITTNER_RELATOR)
        .build()
    )


# a3 eliminated through the circular relator
WITTNER_A3_SUBSTITUTION: Dict[str, GroupWord] = {
    "a3": GroupWord.from_symbols("b2", "a0", "a2", "b1", "a1", "b0").inverse()
}

WITTNER_BASIS = ("a0", "a1", "a2", "b0", "b1", "b2")


def _chebyshev2_c2() -> RecursionSystem:
    return chebyshev(2)


def _levy_toy() -> RecursionSystem:
    return SystemBuilder(2).add_generator("c", "", ["c", "1"]).build()


_FIXED: Dict[str, Tuple[Callable[[], RecursionSystem], str]] = {
    "basilica": (_basilica, "Basilica group: IMG of z^2 - 1, a=(0 1)[b,1], b=[a,1]"),
    "rational_R": (
        _rational_r,
        "quadratic rational map R with conjugator g=[g*a,g]; ap, bp are the conjugated pair",
    ),
    "rational_F": (_rational_f, "quadratic rational map F, a=(0 1)[1,a^-1*b^-1], b=[a,1]"),
    "chebyshev2_C2": (_chebyshev2_c2, "Chebyshev map C2, a=(0 1)[1,1], b=[b,a]"),
    "hanoi": (_hanoi, "Hanoi Towers group on three pegs"),
    "sierpinski_H": (
        _sierpinski,
        "Sierpinski gasket map; g=(1 2)[h,h,h], h=[g,g,g] conjugate it to Hanoi (ap, bp, cp)",
    ),
    "wittner": (_wittner, f"Wittner example, circular relation {WITTNER_RELATOR}"),
    "levy_toy": (_levy_toy, "toy system c=[c,1] with a self-matching fixed section"),
}

_FAMILY_NOTES = {
    "adding_machine": "adding machine g=(0 1 ... d-1)[1,...,1,g]",
    "chebyshev": "Chebyshev polynomial of degree d, dihedral IMG",
}

_FAMILY_BUILDERS: Dict[str, Callable[[int], RecursionSystem]] = {
    "adding_machine": adding_machine,
    "chebyshev": chebyshev,
}


@lru_cache(maxsize=None)
def get(name: str) -> CatalogEntry:
    if name in _FIXED:
        build, notes = _FIXED[name]
        return CatalogEntry(name, build(), notes)
    match = _FAMILY_RE.match(name)
    if match is None:
        raise CatalogError(name)
    family, degree = match.group(1), int(match.group(2))
    if not 2 <= degree <= min(FAMILY_MAX_DEGREE, MAX_DEGREE):
        raise CatalogError(name)
    notes = f"{_FAMILY_NOTES[family]}, d={degree}"
    return CatalogEntry(name, _FAMILY_BUILDERS[family](degree), notes)


def list_entries() -> List[str]:
    """Fixed entries, then the small family members."""
    names = list(_FIXED)
    for family in _FAMILY_BUILDERS:
        names.extend(f"{family}_{degree}" for degree in (2, 3, 4))
    return names


def basilica_kernel_words(p: int) -> Tuple[GroupWord, GroupWord]:
    """The two kernel-family words of the Basilica group for exponent p."""
    a = GroupWord.generator("a")
    b = GroupWord.generator("b")

    def chain(*parts: Tuple[GroupWord, int]) -> GroupWord:
        word = GroupWord.identity()
        for base, exponent in parts:
            word = word * base.power(exponent)
        return word

    first = chain((b, -p), (a, -p), (b, -p), (a, p), (b, p), (a, -p), (b, p), (a, p))
    second = chain(
        (a, -2 * p), (b, -p), (a, -2 * p), (b, p), (a, 2 * p), (b, -p), (a, 2 * p), (b, p)
    )
    return first, second
