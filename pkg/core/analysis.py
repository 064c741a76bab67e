"""Higher-level checks built on the calculus and decision procedures.

Odometer criterion, exponent-sum vectors, cycle-section lifts, the algebraic
Levy-cycle condition, Schreier-graph search, order profiles and the level
odometer search used for the mating criterion.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Deque, Dict, Iterator, List, Literal, Mapping, Optional, Sequence, Tuple, Union

from loguru import logger
from sympy.combinatorics import Permutation as SymPermutation
from sympy.combinatorics import PermutationGroup

from core.budget import BudgetExceeded, WorkBudget
from core.calculus import act_many, expand
from core.config import Settings
from core.decision import LevelPermutation, level_permutation, trivial_up_to_level
from core.errors import LengthMismatchError, WreathError
from core.specs import GroupWord, RecursionSystem
from core.tree import Alphabet, VertexWord, level_words, rank


class LiftError(WreathError):
    """The root permutation does not cycle the start letter through the whole alphabet."""

    def __init__(self, step: int, message: str):
        super().__init__(f"lift step {step}: {message}")
        self.step = step


class SubstitutionCycleError(WreathError):
    def __init__(self, chain: Sequence[str]):
        super().__init__("cyclic substitution: " + " -> ".join(chain))
        self.chain = tuple(chain)


class EmptyMultiCurveError(WreathError):
    pass


# ---------------------------------------------------------------------------
# odometer criterion


@dataclass(frozen=True)
class OdometerReport:
    degree: int
    levels: Tuple[Tuple[int, bool], ...]

    @property
    def passed(self) -> bool:
        return all(full for _, full in self.levels)

    @property
    def first_failure(self) -> Optional[int]:
        for level, full in self.levels:
            if not full:
                return level
        return None

    def lines(self) -> List[str]:
        out = [
            f"level {level}: {'full cycle' if full else 'not a full cycle'}"
            for level, full in self.levels
        ]
        if self.passed:
            out.append(f"verdict: acts as a d^n-cycle on levels 1..{len(self.levels)}")
        else:
            out.append(f"verdict: fails at level {self.first_failure}")
        return out


def odometer_check(
    system: RecursionSystem,
    word: GroupWord,
    n_max: int,
    settings: Optional[Settings] = None,
) -> OdometerReport:
    """Check, level by level, that `word` acts as a d^n-cycle on level n."""
    if n_max < 1:
        raise WreathError(f"n_max must be >= 1, got {n_max}")
    memo: Dict[Tuple[GroupWord, int], Tuple[int, ...]] = {}
    levels: List[Tuple[int, bool]] = []
    for level in range(1, n_max + 1):
        permutation = level_permutation(system, word, level, settings, memo)
        levels.append((level, permutation.is_full_cycle()))
    return OdometerReport(system.degree, tuple(levels))


# ---------------------------------------------------------------------------
# exponent sums


@dataclass(frozen=True)
class ExponentVector:
    """Signed exponent sums per symbol; zero entries are never stored."""

    counts: Tuple[Tuple[str, int], ...] = ()

    @classmethod
    def from_counts(cls, counts: Mapping[str, int]) -> "ExponentVector":
        return cls(tuple(sorted((s, c) for s, c in counts.items() if c != 0)))

    def as_dict(self) -> Dict[str, int]:
        return dict(self.counts)

    def get(self, symbol: str) -> int:
        return self.as_dict().get(symbol, 0)

    def __getitem__(self, symbol: str) -> int:
        return self.get(symbol)

    def __add__(self, other: "ExponentVector") -> "ExponentVector":
        total = self.as_dict()
        for symbol, count in other.counts:
            total[symbol] = total.get(symbol, 0) + count
        return ExponentVector.from_counts(total)

    def is_zero(self) -> bool:
        return not self.counts


def _check_substitutions(substitutions: Mapping[str, GroupWord]) -> None:
    # depth-first search for a cycle through substituted symbols
    state: Dict[str, int] = {}
    path: List[str] = []

    def visit(symbol: str) -> None:
        state[symbol] = 1
        path.append(symbol)
        for target in sorted(substitutions[symbol].symbols()):
            if target not in substitutions:
                continue
            if state.get(target) == 1:
                start = path.index(target)
                raise SubstitutionCycleError(path[start:] + [target])
            if target not in state:
                visit(target)
        path.pop()
        state[symbol] = 2

    for symbol in sorted(substitutions):
        if symbol not in state:
            visit(symbol)


def exponent_vector(
    system: RecursionSystem,
    word: GroupWord,
    substitutions: Optional[Mapping[str, GroupWord]] = None,
) -> ExponentVector:
    """Signed exponent counts after eliminating every substituted symbol."""
    system.check_word(word)
    substitutions = dict(substitutions or {})
    for symbol, replacement in substitutions.items():
        system.generator(symbol)
        system.check_word(replacement)
    _check_substitutions(substitutions)

    resolved: Dict[str, Dict[str, int]] = {}

    def counts_of(symbol: str) -> Dict[str, int]:
        if symbol not in substitutions:
            return {symbol: 1}
        if symbol not in resolved:
            total: Dict[str, int] = {}
            for inner, sign in substitutions[symbol].factors:
                for target, count in counts_of(inner).items():
                    total[target] = total.get(target, 0) + sign * count
            resolved[symbol] = total
        return resolved[symbol]

    totals: Dict[str, int] = {}
    for symbol, sign in word.factors:
        for target, count in counts_of(symbol).items():
            totals[target] = totals.get(target, 0) + sign * count
    return ExponentVector.from_counts(totals)


# ---------------------------------------------------------------------------
# lifts


def cycle_section_product(system: RecursionSystem, word: GroupWord, start: int) -> GroupWord:
    """Product of the sections of `word` along the root cycle through `start`."""
    system.check_word(word)
    Alphabet(system.degree).check_letter(start)
    decomposition = expand(system, word)
    product = GroupWord.identity()
    for letter in decomposition.root.cycle_of(start):
        product = product * decomposition.sections[letter]
    return product


def iterate_lift(
    system: RecursionSystem, word: GroupWord, start: int = 0, k: int = 1
) -> GroupWord:
    if k < 0:
        raise WreathError(f"iteration count must be >= 0, got {k}")
    system.check_word(word)
    Alphabet(system.degree).check_letter(start)
    current = word
    for step in range(1, k + 1):
        cycle = expand(system, current).root.cycle_of(start)
        if len(cycle) != system.degree:
            raise LiftError(
                step,
                f"root permutation of {current} moves {start} through a "
                f"{len(cycle)}-cycle, not a {system.degree}-cycle",
            )
        current = cycle_section_product(system, current, start)
        logger.debug("lift step {}: {} letters", step, len(current))
    return current


# ---------------------------------------------------------------------------
# Levy cycles


@dataclass(frozen=True)
class MultiCurve:
    curves: Tuple[GroupWord, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "curves", tuple(self.curves))
        if not self.curves:
            raise EmptyMultiCurveError("a multicurve needs at least one curve")

    def __len__(self) -> int:
        return len(self.curves)

    def __iter__(self) -> Iterator[GroupWord]:
        return iter(self.curves)


@dataclass(frozen=True)
class LevyCurveCheck:
    index: int
    fixed_letters: Tuple[int, ...]
    matching_letters: Tuple[int, ...]

    @property
    def holds(self) -> bool:
        return bool(self.matching_letters)


NECESSARY_ONLY_NOTE = "necessary condition only; it does not prove a Levy cycle exists"


@dataclass(frozen=True)
class LevyReport:
    level: int
    checks: Tuple[LevyCurveCheck, ...]

    @property
    def holds(self) -> bool:
        return all(check.holds for check in self.checks)

    @property
    def verdict(self) -> str:
        if self.holds:
            return f"condition holds up to level {self.level} ({NECESSARY_ONLY_NOTE})"
        return "no Levy cycle of this multicurve representable by these exact words"

    def lines(self) -> List[str]:
        out = [
            f"curve {check.index + 1}: letters "
            f"[{', '.join(str(letter) for letter in check.matching_letters)}]"
            for check in self.checks
        ]
        out.append(f"verdict: {self.verdict}")
        return out


def levy_necessary_condition(
    system: RecursionSystem,
    curves: Union[MultiCurve, Sequence[GroupWord]],
    level: int,
    settings: Optional[Settings] = None,
) -> LevyReport:
    """For each curve k, look for a fixed letter whose section equals curve k-1 up to `level`."""
    if level < 1:
        raise WreathError(f"level must be >= 1, got {level}")
    budget = WorkBudget((settings or Settings()).work_unit_cap)
    multicurve = curves if isinstance(curves, MultiCurve) else MultiCurve(tuple(curves))
    words = multicurve.curves
    checks: List[LevyCurveCheck] = []
    for index, curve in enumerate(words):
        system.check_word(curve)
        previous = words[index - 1]
        decomposition = expand(system, curve)
        fixed = tuple(
            letter for letter in range(system.degree) if decomposition.root.apply(letter) == letter
        )
        matching = tuple(
            letter
            for letter in fixed
            if trivial_up_to_level(
                system, decomposition.sections[letter] * previous.inverse(), level, budget
            )
        )
        checks.append(LevyCurveCheck(index, fixed, matching))
    return LevyReport(level, tuple(checks))


# ---------------------------------------------------------------------------
# Schreier graphs


@dataclass(frozen=True)
class NotReachable:
    source: VertexWord
    target: VertexWord
    explored: int

    def __str__(self) -> str:
        return "not reachable"


@dataclass(frozen=True)
class SchreierEdge:
    source: VertexWord
    target: VertexWord
    label: str


def _edge_labels(
    system: RecursionSystem,
    gens: Sequence[GroupWord],
    level: int,
    settings: Optional[Settings] = None,
) -> List[GroupWord]:
    """Generators in order, then the inverses of the non-involutive ones."""
    budget = WorkBudget((settings or Settings()).work_unit_cap)
    labels = [gen for gen in gens if not gen.is_identity()]
    inverses = [
        gen.inverse()
        for gen in labels
        if not trivial_up_to_level(system, gen * gen, level, budget)
    ]
    seen: set[GroupWord] = set()
    ordered: List[GroupWord] = []
    for label in labels + inverses:
        if label not in seen:
            seen.add(label)
            ordered.append(label)
    return ordered


def _check_vertex_budget(system: RecursionSystem, level: int, settings: Settings) -> None:
    vertices = system.degree**level
    if vertices > settings.max_schreier_vertices:
        raise BudgetExceeded(
            f"level {level} has {vertices} vertices, budget allows "
            f"{settings.max_schreier_vertices}"
        )


def schreier_path(
    system: RecursionSystem,
    gens: Sequence[GroupWord],
    source: Sequence[int],
    target: Sequence[int],
    settings: Optional[Settings] = None,
) -> Union[GroupWord, NotReachable]:
    """Shortest word u over gens and inverses with act(u, source) = target."""
    settings = settings or Settings()
    alphabet = Alphabet(system.degree)
    start = alphabet.check_word(source)
    goal = alphabet.check_word(target)
    if len(start) != len(goal):
        raise LengthMismatchError(
            f"source has length {len(start)}, target has length {len(goal)}"
        )
    for gen in gens:
        system.check_word(gen)
    if start == goal:
        return GroupWord.identity()

    level = len(start)
    _check_vertex_budget(system, level, settings)
    labels = _edge_labels(system, gens, level, settings)
    tables = [level_permutation(system, label, level, settings).images for label in labels]

    origin = rank(start, level, system.degree)
    wanted = rank(goal, level, system.degree)
    parent: Dict[int, Tuple[int, int]] = {origin: (-1, -1)}
    queue: Deque[int] = deque([origin])
    while queue:
        vertex = queue.popleft()
        for index, table in enumerate(tables):
            image = table[vertex]
            if image in parent:
                continue
            parent[image] = (vertex, index)
            if image == wanted:
                return _walk_back(parent, labels, wanted)
            queue.append(image)

    logger.debug("schreier search exhausted orbit of {} vertices", len(parent))
    return NotReachable(start, goal, len(parent))


def _walk_back(
    parent: Dict[int, Tuple[int, int]], labels: Sequence[GroupWord], vertex: int
) -> GroupWord:
    steps: List[GroupWord] = []
    while True:
        previous, index = parent[vertex]
        if previous < 0:
            break
        steps.append(labels[index])
        vertex = previous
    word = GroupWord.identity()
    for label in reversed(steps):
        word = word * label
    return word


def schreier_graph(
    system: RecursionSystem,
    gens: Sequence[GroupWord],
    level: int,
    settings: Optional[Settings] = None,
) -> List[SchreierEdge]:
    """Edge list of the level-n Schreier graph, one edge per generator and vertex."""
    settings = settings or Settings()
    _check_vertex_budget(system, level, settings)
    edges: List[SchreierEdge] = []
    vertices = list(level_words(level, system.degree))
    for gen in gens:
        system.check_word(gen)
        for vertex, image in zip(vertices, act_many(system, gen, vertices)):
            edges.append(SchreierEdge(vertex, image, str(gen)))
    return edges


# ---------------------------------------------------------------------------
# finite invariants of level actions


def _reduced_words(count: int, max_length: int) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """Freely reduced words over `count` letters and their inverses, by length."""
    layer: List[Tuple[Tuple[int, int], ...]] = [()]
    yield ()
    letters = [(index, sign) for index in range(count) for sign in (1, -1)]
    for _ in range(max_length):
        following: List[Tuple[Tuple[int, int], ...]] = []
        for word in layer:
            for index, sign in letters:
                if word and word[-1] == (index, -sign):
                    continue
                following.append(word + ((index, sign),))
        yield from following
        layer = following


def order_profile(
    system: RecursionSystem,
    gens: Sequence[GroupWord],
    max_length: int,
    level: int,
    settings: Optional[Settings] = None,
) -> Dict[int, int]:
    """Multiset of level-n orders over all reduced words of length <= max_length in gens.

    Words are formal words in the generator list, so distinct words with equal
    values are each counted.
    """
    if max_length < 0:
        raise WreathError(f"max_length must be >= 0, got {max_length}")
    for gen in gens:
        system.check_word(gen)
    memo: Dict[Tuple[GroupWord, int], Tuple[int, ...]] = {}
    profile: Dict[int, int] = {}
    for formal in _reduced_words(len(gens), max_length):
        word = GroupWord.identity()
        for index, sign in formal:
            word = word * (gens[index] if sign > 0 else gens[index].inverse())
        value = level_permutation(system, word, level, settings, memo).order()
        profile[value] = profile.get(value, 0) + 1
    return dict(sorted(profile.items()))


@dataclass(frozen=True)
class LevelOdometerSearch:
    level: int
    status: Literal["found", "obstructed", "inconclusive"]
    explored: int
    word: Optional[GroupWord] = None
    group_order: Optional[int] = None

    def lines(self) -> List[str]:
        if self.status == "found":
            return [f"level {self.level}: odometer {self.word}"]
        if self.status == "obstructed":
            return [
                f"level {self.level}: no element acts as a d^n-cycle "
                f"(group order {self.group_order})",
                "verdict: not a formal mating",
            ]
        return [f"inconclusive: element budget exhausted after {self.explored} elements"]


def find_level_odometer(
    system: RecursionSystem,
    gens: Sequence[GroupWord],
    level: int,
    max_elements: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> LevelOdometerSearch:
    """Breadth-first search of the level-n group for an element acting as a d^n-cycle."""
    settings = settings or Settings()
    limit = max_elements if max_elements is not None else settings.max_group_elements
    for gen in gens:
        system.check_word(gen)
    labels = _edge_labels(system, gens, level, settings)
    permutations: List[LevelPermutation] = [
        level_permutation(system, label, level, settings) for label in labels
    ]
    size = system.degree**level
    full_cycle = {size: 1}

    identity = tuple(range(size))
    words: Dict[Tuple[int, ...], GroupWord] = {identity: GroupWord.identity()}
    queue: Deque[Tuple[int, ...]] = deque([identity])
    while queue:
        current = queue.popleft()
        for label, permutation in zip(labels, permutations):
            # current acts first, then the label
            images = tuple(permutation.images[image] for image in current)
            if images in words:
                continue
            word = words[current] * label
            words[images] = word
            if dict(SymPermutation(list(images)).cycle_structure) == full_cycle:
                return LevelOdometerSearch(level, "found", len(words), word=word)
            if len(words) >= limit:
                logger.debug("level odometer search stopped at {} elements", len(words))
                return LevelOdometerSearch(level, "inconclusive", len(words))
            queue.append(images)

    group = PermutationGroup([p.as_sympy() for p in permutations] or [SymPermutation(size - 1)])
    return LevelOdometerSearch(
        level, "obstructed", len(words), group_order=int(group.order())
    )


__all__ = [
    "EmptyMultiCurveError",
    "ExponentVector",
    "LevelOdometerSearch",
    "LevyCurveCheck",
    "LevyReport",
    "LiftError",
    "MultiCurve",
    "NotReachable",
    "OdometerReport",
    "SchreierEdge",
    "SubstitutionCycleError",
    "cycle_section_product",
    "exponent_vector",
    "find_level_odometer",
    "iterate_lift",
    "levy_necessary_condition",
    "odometer_check",
    "order_profile",
    "schreier_graph",
    "schreier_path",
]
