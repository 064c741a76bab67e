from __future__ import annotations

from typing import TYPE_CHECKING, List, Set

from core.errors import WreathError
from core.tree import MAX_DEGREE

if TYPE_CHECKING:
    from core.specs import RecursionSystem


class SystemValidationError(WreathError):
    def __init__(self, errors: List[str]):
        super().__init__("; ".join(errors))
        self.errors = errors


def validate_system(system: "RecursionSystem") -> List[str]:
    """
    Validate a recursion system.

    Args:
        system: The system to validate

    Returns:
        List of validation error messages (empty if valid)
    """
    errors: List[str] = []
    degree = system.degree

    if degree < 2 or degree > MAX_DEGREE:
        errors.append(f"degree must be in 2..{MAX_DEGREE}, got {degree}")
    if not system.generators:
        errors.append("system must define at least one generator")

    names: Set[str] = set()
    for spec in system.generators:
        if spec.name in names:
            errors.append(f"duplicate generator: {spec.name}")
        names.add(spec.name)

    for spec in system.generators:
        if spec.root.degree != degree:
            errors.append(
                f"generator {spec.name}: permutation acts on {spec.root.degree} letters, "
                f"expected {degree}"
            )
        if len(spec.sections) != degree:
            errors.append(
                f"generator {spec.name}: expected {degree} sections, got {len(spec.sections)}"
            )
        for section in spec.sections:
            for symbol in sorted(section.symbols() - names):
                errors.append(f"generator {spec.name}: undefined symbol {symbol}")

    for relator in system.relators:
        for symbol in sorted(relator.symbols() - names):
            errors.append(f"relator {relator}: undefined symbol {symbol}")

    return errors
