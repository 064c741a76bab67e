"""Exception hierarchy shared by the library and the CLI."""
from __future__ import annotations


class WreathError(ValueError):
    """Base class for every domain error (CLI exit code 1)."""


class LetterError(WreathError):
    """A letter is outside the alphabet {0, ..., d-1}."""


class PermutationError(WreathError):
    """Malformed permutation or cycle notation."""


class LengthMismatchError(WreathError):
    """A vertex word does not have the expected length."""


class UndefinedSymbolError(WreathError):
    """A group word mentions a symbol the recursion system does not define."""

    def __init__(self, symbol: str):
        super().__init__(f"undefined symbol: {symbol}")
        self.symbol = symbol


class ConfigError(WreathError):
    """Invalid configuration value (CLI exit code 2)."""
