from __future__ import annotations

from loguru import logger

from core.errors import WreathError


class BudgetExceeded(WreathError, RuntimeError):
    """Raised when an operation would exceed its allowed amount of work."""


class WorkBudget:
    def __init__(self, max_units: int) -> None:
        if max_units <= 0:
            raise ValueError("max_units must be positive")
        self.max_units = max_units
        self._spent = 0

    @property
    def spent(self) -> int:
        return self._spent

    @property
    def remaining(self) -> int:
        return self.max_units - self._spent

    def require(self, units: int, what: str) -> None:
        """Fail up front when a computation of `units` work units cannot fit."""
        if units > self.remaining:
            logger.debug("budget refused {} ({} units, {} left)", what, units, self.remaining)
            raise BudgetExceeded(
                f"{what} needs {units} work units, budget allows {self.remaining}"
            )

    def charge(self, units: int, what: str) -> None:
        self.require(units, what)
        self._spent += units
