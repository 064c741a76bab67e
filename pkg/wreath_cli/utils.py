"""Shared argument helpers for CLI commands."""
from __future__ import annotations

from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from core.catalog import get as catalog_get
from core.dsl import parse_document, parse_word
from core.errors import WreathError
from core.specs import GroupWord, RecursionSystem
from core.tree import VertexWord, parse_vertex_word


def split_list(text: str) -> List[str]:
    """Split a comma-separated argument, dropping empty items."""
    return [item.strip() for item in text.split(",") if item.strip()]


def load_system(
    catalog: Optional[str],
    path: Optional[str],
    raise_fn: Callable[[str], Exception] = WreathError,
) -> RecursionSystem:
    """Resolve the system source of an invocation.

    Args:
        catalog: Catalog entry name, or None
        path: Path to a `.wrs` file, or None
        raise_fn: Function to create the exception for a missing source

    Returns:
        The recursion system

    Raises:
        WreathError: for unknown names, unreadable files or invalid documents
    """
    if catalog is not None:
        return catalog_get(catalog).system
    if path is None:
        raise raise_fn("a system source is required (--catalog NAME or --system PATH)")
    return load_system_file(path)


def load_system_file(path: str) -> RecursionSystem:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise WreathError(f"cannot read {path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError as exc:
        raise WreathError(f"{path}: not valid UTF-8 (byte offset {exc.start})") from None
    document = parse_document(text)
    if not document.ok:
        raise WreathError("\n".join(f"{path}: {item}" for item in document.diagnostics))
    assert document.system is not None
    return document.system


def word_arg(system: RecursionSystem, text: str) -> GroupWord:
    return parse_word(text, known=system.symbols)


def words_arg(system: RecursionSystem, text: str) -> List[GroupWord]:
    words = [word_arg(system, item) for item in split_list(text)]
    if not words:
        raise WreathError("expected a comma-separated list of words")
    return words


def vertex_arg(system: RecursionSystem, text: str) -> VertexWord:
    return parse_vertex_word(text, system.degree)


def substitution_args(system: RecursionSystem, items: Sequence[str]) -> Dict[str, GroupWord]:
    """Parse repeated NAME=WORD arguments."""
    result: Dict[str, GroupWord] = {}
    for item in items:
        name, separator, word = item.partition("=")
        name = name.strip()
        if not separator or not name:
            raise WreathError(f"substitution must look like NAME=WORD, got {item!r}")
        system.generator(name)
        result[name] = word_arg(system, word)
    return result


def format_counts(pairs: Sequence[Tuple[str, int]]) -> List[str]:
    return [f"{name}={count}" for name, count in pairs] or ["0"]
