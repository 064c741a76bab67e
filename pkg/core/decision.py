"""Decision procedures: level permutations, bounded triviality, identity certificates.

An identity certificate is a finite set of freely reduced words, closed under
taking sections, in which every member has a trivial root permutation. Such a
set consists of identity automorphisms only, so it proves its first member is
the identity.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Deque, Dict, List, Literal, Optional, Set, Tuple, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field
from sympy.combinatorics import Permutation as SymPermutation

from core.budget import WorkBudget
from core.calculus import expand
from core.config import Settings
from core.errors import WreathError
from core.specs import GroupWord, RecursionSystem
from core.tree import VertexWord


@dataclass(frozen=True)
class LevelPermutation:
    """Induced permutation of level n: images[rank(w)] = rank(u(w))."""

    level: int
    degree: int
    images: Tuple[int, ...]

    def as_sympy(self) -> SymPermutation:
        return SymPermutation(list(self.images))

    def cycle_structure(self) -> Dict[int, int]:
        """Cycle length -> number of cycles (fixed points included)."""
        return dict(self.as_sympy().cycle_structure)

    def cycle_lengths(self) -> List[int]:
        lengths: List[int] = []
        for length, count in self.cycle_structure().items():
            lengths.extend([length] * count)
        return sorted(lengths, reverse=True)

    def order(self) -> int:
        return int(self.as_sympy().order())

    def is_full_cycle(self) -> bool:
        return self.cycle_structure() == {len(self.images): 1}


@dataclass(frozen=True)
class IdentityCertificate:
    word: GroupWord
    members: Tuple[GroupWord, ...]

    def member_set(self) -> Set[GroupWord]:
        return set(self.members)


@dataclass(frozen=True)
class NonIdentityWitness:
    """The section of `word` at `vertex` moves `letter`."""

    word: GroupWord
    vertex: VertexWord
    letter: int


@dataclass(frozen=True)
class Inconclusive:
    word: GroupWord
    reason: str
    explored: int = 0


ProofResult = Union[IdentityCertificate, NonIdentityWitness, Inconclusive]


@dataclass(frozen=True)
class ProofBudget:
    max_closure_size: int = 10_000
    max_section_length: int = 512

    @staticmethod
    def from_settings(settings: Settings) -> "ProofBudget":
        return ProofBudget(settings.max_closure_size, settings.max_section_length)


class EqualityMode(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["prove", "level"] = "level"
    level: int = Field(default=8, ge=0)
    max_closure_size: int = Field(default=10_000, gt=0)
    max_section_length: int = Field(default=512, gt=0)

    @staticmethod
    def up_to_level(level: int) -> "EqualityMode":
        return EqualityMode(kind="level", level=level)

    @staticmethod
    def prove(budget: Optional[ProofBudget] = None) -> "EqualityMode":
        budget = budget or ProofBudget()
        return EqualityMode(
            kind="prove",
            max_closure_size=budget.max_closure_size,
            max_section_length=budget.max_section_length,
        )

    def describe(self) -> str:
        return "proved" if self.kind == "prove" else f"up to level {self.level}"


def _level_images(
    system: RecursionSystem,
    word: GroupWord,
    level: int,
    memo: Dict[Tuple[GroupWord, int], Tuple[int, ...]],
) -> Tuple[int, ...]:
    degree = system.degree
    size = degree**level
    if level == 0:
        return (0,)
    if word.is_identity():
        return tuple(range(size))
    key = (word, level)
    found = memo.get(key)
    if found is not None:
        return found

    decomposition = expand(system, word)
    block = size // degree
    images = [0] * size
    for letter in range(degree):
        below = _level_images(system, decomposition.sections[letter], level - 1, memo)
        base = letter * block
        target = decomposition.root.apply(letter) * block
        for offset, image in enumerate(below):
            images[base + offset] = target + image
    result = tuple(images)
    memo[key] = result
    return result


def level_permutation(
    system: RecursionSystem,
    word: GroupWord,
    n: int,
    settings: Optional[Settings] = None,
    memo: Optional[Dict[Tuple[GroupWord, int], Tuple[int, ...]]] = None,
) -> LevelPermutation:
    if n < 1:
        raise WreathError(f"level must be >= 1, got {n}")
    system.check_word(word)
    settings = settings or Settings()
    WorkBudget(settings.work_unit_cap).require(n * system.degree**n, f"level {n} permutation")
    images = _level_images(system, word, n, memo if memo is not None else {})
    return LevelPermutation(level=n, degree=system.degree, images=images)


def cycle_structure(permutation: LevelPermutation) -> Dict[int, int]:
    return permutation.cycle_structure()


def order(permutation: LevelPermutation) -> int:
    return permutation.order()


def trivial_up_to_level(
    system: RecursionSystem,
    word: GroupWord,
    n: int,
    budget: Optional[WorkBudget] = None,
    settings: Optional[Settings] = None,
) -> bool:
    """True iff `word` fixes every vertex of length <= n.

    Each depth charges the total length of the words still to expand; without an
    explicit `budget` the cap is `settings.work_unit_cap`.
    """
    if n < 0:
        raise WreathError(f"level must be >= 0, got {n}")
    system.check_word(word)
    if budget is None:
        budget = WorkBudget((settings or Settings()).work_unit_cap)
    frontier: Set[GroupWord] = {word} if not word.is_identity() else set()
    for depth in range(n):
        if not frontier:
            break
        budget.charge(
            sum(len(member) for member in frontier), f"triviality check at depth {depth}"
        )
        following: Set[GroupWord] = set()
        for member in frontier:
            decomposition = expand(system, member)
            if not decomposition.has_trivial_root():
                return False
            following.update(s for s in decomposition.sections if not s.is_identity())
        frontier = following
    return True


def prove_identity(
    system: RecursionSystem,
    word: GroupWord,
    budget: Optional[ProofBudget] = None,
) -> ProofResult:
    """Breadth-first section closure of `word`.

    Returns a certificate when the closure stabilizes with trivial root
    permutations only, a witness at the shallowest vertex whose section moves a
    letter, or Inconclusive when the budget runs out first.
    """
    system.check_word(word)
    budget = budget or ProofBudget()
    members: List[GroupWord] = [word]
    seen: Set[GroupWord] = {word}
    queue: Deque[Tuple[GroupWord, VertexWord]] = deque([(word, ())])

    while queue:
        current, vertex = queue.popleft()
        if len(current) > budget.max_section_length:
            logger.debug("closure word exceeds {} letters", budget.max_section_length)
            return Inconclusive(
                word,
                f"section length exceeds {budget.max_section_length}",
                explored=len(members),
            )
        decomposition = expand(system, current)
        moved = decomposition.root.moved_letters()
        if moved:
            return NonIdentityWitness(word, vertex, moved[0])
        for letter, child in enumerate(decomposition.sections):
            if child.is_identity() or child in seen:
                continue
            if len(members) >= budget.max_closure_size:
                logger.debug("closure exceeds {} members", budget.max_closure_size)
                return Inconclusive(
                    word,
                    f"closure exceeds {budget.max_closure_size} members",
                    explored=len(members),
                )
            seen.add(child)
            members.append(child)
            queue.append((child, vertex + (letter,)))

    logger.debug("certificate with {} members", len(members))
    return IdentityCertificate(word, tuple(members))


def verify_certificate(system: RecursionSystem, certificate: IdentityCertificate) -> bool:
    members = certificate.member_set()
    if certificate.word not in members:
        return False
    for member in members:
        decomposition = expand(system, member)
        if not decomposition.has_trivial_root():
            return False
        for child in decomposition.sections:
            if not child.is_identity() and child not in members:
                return False
    return True


@dataclass(frozen=True)
class EqualityVerdict:
    """Outcome of `equal`; `value` is None when the proof search was inconclusive."""

    value: Optional[bool]
    mode: EqualityMode
    inconclusive: Optional[Inconclusive] = None

    def __str__(self) -> str:
        if self.value is None:
            reason = self.inconclusive.reason if self.inconclusive else "budget exhausted"
            return f"inconclusive: {reason}"
        if self.mode.kind == "prove":
            return "proved equal" if self.value else "proved not equal"
        prefix = "equal" if self.value else "not equal"
        return f"{prefix} up to level {self.mode.level}"


def equal(
    system: RecursionSystem,
    left: GroupWord,
    right: GroupWord,
    mode: Optional[EqualityMode] = None,
    settings: Optional[Settings] = None,
) -> EqualityVerdict:
    """u = v as tree automorphisms, decided through u.v^-1."""
    mode = mode or EqualityMode()
    quotient = left * right.inverse()
    if mode.kind == "level":
        trivial = trivial_up_to_level(system, quotient, mode.level, settings=settings)
        return EqualityVerdict(trivial, mode)
    result = prove_identity(
        system, quotient, ProofBudget(mode.max_closure_size, mode.max_section_length)
    )
    if isinstance(result, IdentityCertificate):
        return EqualityVerdict(True, mode)
    if isinstance(result, NonIdentityWitness):
        return EqualityVerdict(False, mode)
    return EqualityVerdict(None, mode, result)
