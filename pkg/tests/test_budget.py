from __future__ import annotations

import pytest

from core.budget import BudgetExceeded, WorkBudget
from core.catalog import get
from core.config import Settings
from core.decision import level_permutation, trivial_up_to_level
from core.dsl import parse_word
from core.errors import WreathError


def test_budget_allows_within_limit() -> None:
    budget = WorkBudget(max_units=10)
    budget.charge(4, "first")
    budget.charge(6, "second")
    assert budget.spent == 10
    assert budget.remaining == 0


def test_budget_raises_when_exceeded() -> None:
    budget = WorkBudget(max_units=5)
    budget.charge(5, "all of it")
    with pytest.raises(BudgetExceeded):
        budget.charge(1, "one more")


def test_require_does_not_spend() -> None:
    budget = WorkBudget(max_units=5)
    budget.require(5, "probe")
    assert budget.spent == 0
    with pytest.raises(BudgetExceeded, match="needs 6 work units"):
        budget.require(6, "probe")


def test_budget_exceeded_is_a_domain_error() -> None:
    assert issubclass(BudgetExceeded, WreathError)
    assert issubclass(BudgetExceeded, RuntimeError)


def test_invalid_budget() -> None:
    with pytest.raises(ValueError):
        WorkBudget(max_units=0)


def test_level_permutation_respects_work_cap() -> None:
    system = get("adding_machine_2").system
    small = Settings(work_unit_cap=100)
    # 5 * 2^5 = 160 work units
    with pytest.raises(BudgetExceeded):
        level_permutation(system, parse_word("g"), 5, small)
    assert level_permutation(system, parse_word("g"), 4, small).order() == 16


def test_trivial_up_to_level_charges_frontier() -> None:
    system = get("basilica").system
    budget = WorkBudget(max_units=1)
    with pytest.raises(BudgetExceeded):
        trivial_up_to_level(system, parse_word("a^2"), 5, budget)
