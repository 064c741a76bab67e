"""Line-oriented text format for recursion systems (`.wrs` files).

    # comment
    degree 2
    gen a = (0 1) [b, 1]
    gen b = [a, 1]
    rel a^2

Words: `1` or factors `name[^k]` joined by `*` (`.` is accepted too).
Forward and self references between generators are allowed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Collection, Dict, List, Optional, Tuple

from pydantic import ValidationError

from core.config import Settings
from core.errors import PermutationError, WreathError
from core.specs import (
    IDENTITY_SYMBOL,
    NAME_RE,
    Factor,
    GeneratorSpec,
    GroupWord,
    RecursionSystem,
    WreathDecomposition,
)
from core.tree import MAX_DEGREE, Permutation, perm_from_cycles

_FACTOR_RE = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*)\s*(?:\^\s*([+-]?[0-9]+))?\s*$")
_SEPARATOR_RE = re.compile(r"[*.]")
_DEGREE_RE = re.compile(r"^degree\s+(\S+)\s*$")
_DIGITS_RE = re.compile(r"[0-9]+")
_GEN_RE = re.compile(
    r"^gen\s+(?P<name>[^=\s]+)\s*=\s*(?P<perm>[^\[]*?)\s*\[(?P<body>[^\[\]]*)\]\s*$"
)
_REL_RE = re.compile(r"^rel\s+(?P<word>.+?)\s*$")


class DslError(WreathError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}, col {self.col}: {self.message}"

    def to_error(self) -> DslError:
        return DslError(self.message, self.line, self.col)


@dataclass(frozen=True)
class SystemDocument:
    source: str
    system: Optional[RecursionSystem]
    diagnostics: Tuple[Diagnostic, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return self.system is not None and not self.diagnostics


def _normalize(text: str) -> str:
    if text.startswith("\ufeff"):
        text = text[1:]
    return text.replace("\r\n", "\n").replace("\r", "\n")


def parse_word(
    text: str,
    known: Optional[Collection[str]] = None,
    line: int = 1,
    offset: int = 0,
    max_length: Optional[int] = None,
) -> GroupWord:
    """Parse `1` or `x*y^-1*z^3` (`.` also separates factors).

    `offset` is the column of `text` within its line, for error positions.
    `max_length` caps the number of factors after expanding exponents
    (default: `Settings.max_word_length`).
    """
    limit = max_length if max_length is not None else Settings().max_word_length
    stripped = text.strip()
    if not stripped:
        raise DslError("empty word", line, offset + 1)
    if stripped == IDENTITY_SYMBOL:
        return GroupWord.identity()

    factors: List[Factor] = []
    position = 0
    for piece in _SEPARATOR_RE.split(text):
        col = offset + position + 1
        position += len(piece) + 1
        match = _FACTOR_RE.match(piece)
        if match is None:
            raise DslError(f"malformed factor {piece.strip()!r}", line, col)
        name, exponent_text = match.group(1), match.group(2)
        if known is not None and name not in known:
            raise DslError(f"undefined symbol: {name}", line, col)
        exponent = int(exponent_text) if exponent_text is not None else 1
        if len(factors) + abs(exponent) > limit:
            raise DslError(f"word expands to more than {limit} factors", line, col)
        sign = 1 if exponent >= 0 else -1
        factors.extend((name, sign) for _ in range(abs(exponent)))
    return GroupWord(tuple(factors))


@dataclass
class _PendingGenerator:
    name: str
    root: Permutation
    sections: Tuple[GroupWord, ...]
    line: int
    col: int


def parse_document(text: str) -> SystemDocument:
    """Parse a whole document, collecting every diagnostic instead of stopping at the first."""
    source = _normalize(text)
    diagnostics: List[Diagnostic] = []
    degree: Optional[int] = None
    pending: List[_PendingGenerator] = []
    relators: List[Tuple[GroupWord, int]] = []
    names: Dict[str, int] = {}
    last_line = 1

    for number, raw in enumerate(source.split("\n"), start=1):
        content = raw.split("#", 1)[0].rstrip()
        if not content.strip():
            continue
        last_line = number
        indent = len(content) - len(content.lstrip())
        statement = content.strip()
        keyword = statement.split(None, 1)[0]

        if degree is None and keyword != "degree":
            diagnostics.append(Diagnostic(number, indent + 1, "degree missing"))
            return SystemDocument(source, None, tuple(diagnostics))

        if keyword == "degree":
            match = _DEGREE_RE.match(statement)
            if degree is not None:
                diagnostics.append(Diagnostic(number, indent + 1, "duplicate degree line"))
            elif match is None or not _DIGITS_RE.fullmatch(match.group(1)):
                diagnostics.append(Diagnostic(number, indent + 1, "degree must be an integer"))
                return SystemDocument(source, None, tuple(diagnostics))
            else:
                value = int(match.group(1))
                if not 2 <= value <= MAX_DEGREE:
                    diagnostics.append(
                        Diagnostic(number, indent + 8, f"degree must be in 2..{MAX_DEGREE}")
                    )
                    return SystemDocument(source, None, tuple(diagnostics))
                degree = value
            continue

        assert degree is not None
        if keyword == "gen":
            generator = _parse_gen(statement, degree, number, indent, diagnostics)
            if generator is None:
                continue
            if generator.name in names:
                diagnostics.append(
                    Diagnostic(
                        number,
                        generator.col,
                        f"duplicate generator: {generator.name} "
                        f"(first defined on line {names[generator.name]})",
                    )
                )
                continue
            names[generator.name] = number
            pending.append(generator)
        elif keyword == "rel":
            match = _REL_RE.match(statement)
            if match is None:
                diagnostics.append(Diagnostic(number, indent + 1, "rel needs a word"))
                continue
            try:
                word = parse_word(match.group("word"), None, number, indent + match.start("word"))
            except DslError as exc:
                diagnostics.append(Diagnostic(exc.line, exc.col, exc.message))
                continue
            relators.append((word, number))
        else:
            diagnostics.append(Diagnostic(number, indent + 1, f"unknown statement {keyword!r}"))

    if degree is None:
        diagnostics.append(Diagnostic(last_line, 1, "degree missing"))
        return SystemDocument(source, None, tuple(diagnostics))

    # forward references are resolved once every generator is known
    for generator in pending:
        for section in generator.sections:
            for symbol in sorted(section.symbols() - set(names)):
                diagnostics.append(
                    Diagnostic(generator.line, generator.col, f"undefined symbol: {symbol}")
                )
    for relator, number in relators:
        for symbol in sorted(relator.symbols() - set(names)):
            diagnostics.append(Diagnostic(number, 1, f"undefined symbol: {symbol}"))
    if not pending and not diagnostics:
        diagnostics.append(Diagnostic(last_line, 1, "no generators defined"))

    if diagnostics:
        return SystemDocument(source, None, tuple(diagnostics))

    try:
        system = RecursionSystem(
            degree=degree,
            generators=tuple(
                GeneratorSpec(name=g.name, root=g.root, sections=g.sections) for g in pending
            ),
            relators=tuple(word for word, _ in relators),
        )
    except ValidationError as exc:
        messages = [str(error.get("msg", error)) for error in exc.errors()]
        return SystemDocument(
            source, None, tuple(Diagnostic(1, 1, message) for message in messages)
        )
    return SystemDocument(source, system, ())


def _parse_gen(
    statement: str,
    degree: int,
    number: int,
    indent: int,
    diagnostics: List[Diagnostic],
) -> Optional[_PendingGenerator]:
    match = _GEN_RE.match(statement)
    if match is None:
        diagnostics.append(
            Diagnostic(number, indent + 1, "expected: gen NAME = [PERM] [w0, ..., w_{d-1}]")
        )
        return None

    name = match.group("name")
    name_col = indent + match.start("name") + 1
    if name == IDENTITY_SYMBOL or not NAME_RE.match(name):
        diagnostics.append(Diagnostic(number, name_col, f"invalid generator name {name!r}"))
        return None

    try:
        root = perm_from_cycles(match.group("perm"), degree)
    except PermutationError as exc:
        diagnostics.append(Diagnostic(number, indent + match.start("perm") + 1, str(exc)))
        return None

    body = match.group("body")
    body_col = indent + match.start("body")
    pieces = body.split(",") if body.strip() else []
    if len(pieces) != degree:
        diagnostics.append(
            Diagnostic(
                number, body_col, f"expected {degree} sections, got {len(pieces)}"
            )
        )
        return None

    sections: List[GroupWord] = []
    position = body_col
    for piece in pieces:
        try:
            sections.append(parse_word(piece, None, number, position))
        except DslError as exc:
            diagnostics.append(Diagnostic(exc.line, exc.col, exc.message))
            return None
        position += len(piece) + 1
    return _PendingGenerator(name, root, tuple(sections), number, name_col)


def parse(text: str) -> RecursionSystem:
    """Parse a document; the first diagnostic is raised as DslError."""
    document = parse_document(text)
    if document.diagnostics:
        raise document.diagnostics[0].to_error()
    assert document.system is not None
    return document.system


def format_decomposition(decomposition: WreathDecomposition) -> str:
    """Canonical `PERM [s0, ..., s_{d-1}]`; the identity permutation is omitted."""
    sections = "[" + ", ".join(str(word) for word in decomposition.sections) + "]"
    cycles = decomposition.root.to_cycles_text()
    return f"{cycles} {sections}" if cycles else sections


def serialize(system: RecursionSystem) -> str:
    lines = [f"degree {system.degree}"]
    for spec in system.generators:
        lines.append(f"gen {spec.name} = {format_decomposition(spec.decomposition())}")
    for relator in system.relators:
        lines.append(f"rel {relator}")
    return "\n".join(lines)
