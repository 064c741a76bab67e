from __future__ import annotations

import os
from dataclasses import dataclass

from core.errors import ConfigError

BUDGET_ENV_VAR = "WREATH_BUDGET"


@dataclass(frozen=True)
class Settings:
	"""Budgets and defaults for the decision procedures."""

	# work-unit cap for level permutations (n * d^n)
	work_unit_cap: int = 100_000_000

	# identity certificates
	max_closure_size: int = 10_000
	max_section_length: int = 512
	# factors a parsed word may expand to (`x^k` counts k)
	max_word_length: int = 100_000

	# ops
	default_equal_level: int = 8
	max_schreier_vertices: int = 1_000_000
	max_group_elements: int = 200_000
	log_level: str = "warning"

	@staticmethod
	def load_from_env() -> "Settings":
		raw = os.getenv(BUDGET_ENV_VAR)
		if raw is None or not raw.strip():
			return Settings()

		try:
			cap = int(raw.strip().replace("_", ""))
		except ValueError:
			raise ConfigError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from None
		if cap <= 0:
			raise ConfigError(f"{BUDGET_ENV_VAR} must be positive, got {cap}")

		return Settings(work_unit_cap=cap)
