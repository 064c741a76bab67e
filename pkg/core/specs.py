from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, PrivateAttr, field_validator, model_validator

from core.cache import ExpansionCache
from core.errors import UndefinedSymbolError, WreathError
from core.tree import Permutation, invert_perm

Factor = Tuple[str, int]

IDENTITY_SYMBOL = "1"
NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


def free_reduce(factors: Iterable[Factor]) -> Tuple[Factor, ...]:
    stack: List[Factor] = []
    for symbol, sign in factors:
        if stack and stack[-1][0] == symbol and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((symbol, sign))
    return tuple(stack)


@dataclass(frozen=True)
class GroupWord:
    """Freely reduced word over generator symbols; the empty word is the identity."""

    factors: Tuple[Factor, ...] = ()

    def __post_init__(self) -> None:
        for symbol, sign in self.factors:
            if sign not in (1, -1):
                raise WreathError(f"factor exponents must be +1 or -1, got {symbol}^{sign}")
            if symbol == IDENTITY_SYMBOL:
                raise WreathError("the identity symbol '1' is not stored in words")
        object.__setattr__(self, "factors", free_reduce(self.factors))

    @classmethod
    def _trusted(cls, factors: Tuple[Factor, ...]) -> "GroupWord":
        # factors already reduced and well formed
        word = object.__new__(cls)
        object.__setattr__(word, "factors", factors)
        return word

    @classmethod
    def identity(cls) -> "GroupWord":
        return _IDENTITY

    @classmethod
    def generator(cls, symbol: str, exponent: int = 1) -> "GroupWord":
        sign = 1 if exponent >= 0 else -1
        return cls(tuple((symbol, sign) for _ in range(abs(exponent))))

    @classmethod
    def from_symbols(cls, *symbols: str) -> "GroupWord":
        """Build from names with an optional "^-1" suffix, e.g. ("a3^-1", "b1")."""
        factors: List[Factor] = []
        for item in symbols:
            if item.endswith("^-1"):
                factors.append((item[:-3], -1))
            else:
                factors.append((item, 1))
        return cls(tuple(factors))

    def is_identity(self) -> bool:
        return not self.factors

    def inverse(self) -> "GroupWord":
        return GroupWord._trusted(tuple((symbol, -sign) for symbol, sign in reversed(self.factors)))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord._trusted(free_reduce(self.factors + other.factors))

    def power(self, exponent: int) -> "GroupWord":
        base = self if exponent >= 0 else self.inverse()
        result = _IDENTITY
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __len__(self) -> int:
        return len(self.factors)

    def symbols(self) -> FrozenSet[str]:
        return frozenset(symbol for symbol, _ in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return IDENTITY_SYMBOL
        parts: List[str] = []
        index = 0
        while index < len(self.factors):
            symbol, sign = self.factors[index]
            run = 1
            while index + run < len(self.factors) and self.factors[index + run] == (symbol, sign):
                run += 1
            exponent = sign * run
            parts.append(symbol if exponent == 1 else f"{symbol}^{exponent}")
            index += run
        return "*".join(parts)


_IDENTITY = GroupWord._trusted(())


@dataclass(frozen=True)
class WreathDecomposition:
    """Root permutation and the d sections of a tree automorphism."""

    root: Permutation
    sections: Tuple[GroupWord, ...]

    @property
    def degree(self) -> int:
        return self.root.degree

    def has_trivial_root(self) -> bool:
        return self.root.is_identity()


class GeneratorSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    root: Permutation
    sections: Tuple[GroupWord, ...]

    @field_validator("name")
    @classmethod
    def validate_name(cls, value: str) -> str:
        if value == IDENTITY_SYMBOL or not NAME_RE.match(value):
            raise ValueError(f"invalid generator name {value!r}")
        return value

    def decomposition(self) -> WreathDecomposition:
        return WreathDecomposition(self.root, self.sections)


class RecursionSystem(BaseModel):
    """Generator symbols bound to wreath recursions g = sigma_g[g_0, ..., g_{d-1}].

    Self-reference and forward reference are allowed (g = [g*a, g]); nothing is
    unfolded eagerly, so every operation terminates one letter at a time.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    degree: int
    generators: Tuple[GeneratorSpec, ...]
    relators: Tuple[GroupWord, ...] = ()

    _table: Dict[Factor, WreathDecomposition] = PrivateAttr(default_factory=dict)
    _cache: ExpansionCache[GroupWord, WreathDecomposition] = PrivateAttr(
        default_factory=ExpansionCache
    )

    @model_validator(mode="after")
    def validate_structure(self) -> "RecursionSystem":
        from core.validator import SystemValidationError, validate_system

        errors = validate_system(self)
        if errors:
            raise SystemValidationError(errors)
        return self

    def model_post_init(self, __context: object) -> None:
        for spec in self.generators:
            if spec.root.degree != self.degree or len(spec.sections) != self.degree:
                # rejected by validate_structure
                continue
            forward = spec.decomposition()
            backward_root = invert_perm(spec.root)
            backward = WreathDecomposition(
                backward_root,
                tuple(
                    spec.sections[backward_root.apply(letter)].inverse()
                    for letter in range(self.degree)
                ),
            )
            self._table[(spec.name, 1)] = forward
            self._table[(spec.name, -1)] = backward

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RecursionSystem):
            return NotImplemented
        return (self.degree, self.generators, self.relators) == (
            other.degree,
            other.generators,
            other.relators,
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.generators, self.relators))

    @property
    def symbols(self) -> Tuple[str, ...]:
        return tuple(spec.name for spec in self.generators)

    @property
    def expansion_cache(self) -> ExpansionCache[GroupWord, WreathDecomposition]:
        return self._cache

    def generator(self, name: str) -> GeneratorSpec:
        for spec in self.generators:
            if spec.name == name:
                return spec
        raise UndefinedSymbolError(name)

    def generator_word(self, name: str) -> GroupWord:
        self.generator(name)
        return GroupWord.generator(name)

    def factor_decomposition(self, factor: Factor) -> WreathDecomposition:
        """Decomposition of a single generator or generator inverse."""
        try:
            return self._table[factor]
        except KeyError:
            raise UndefinedSymbolError(factor[0]) from None

    def decomposition(self, symbol: str) -> WreathDecomposition:
        return self.factor_decomposition((symbol, 1))

    def check_word(self, word: GroupWord) -> GroupWord:
        for symbol, sign in word.factors:
            if (symbol, sign) not in self._table:
                raise UndefinedSymbolError(symbol)
        return word

    def with_generators(
        self, extra: Iterable[GeneratorSpec], relators: Optional[Iterable[GroupWord]] = None
    ) -> "RecursionSystem":
        return RecursionSystem(
            degree=self.degree,
            generators=self.generators + tuple(extra),
            relators=self.relators + tuple(relators or ()),
        )
