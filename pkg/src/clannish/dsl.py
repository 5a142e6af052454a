"""Line-oriented text format for presentations.

::

    vertex 1 2 3 4
    arrow a: 1 -> 2
    loop f: 2 special
    arrow b: 2 -> 3
    arrow c: 3 -> 4
    relations
    zero b*a
    zero c*b*f*a
    idem f

Words compose right to left.  ``rel`` lines hold linear combinations
``[coef] word + [coef] word ...`` with integer or ``p/q`` coefficients.
"""

from __future__ import annotations

import logging
import re
from fractions import Fraction

from .quiver import (
    Arrow,
    IdempotentLoop,
    LinearCombination,
    Path,
    Presentation,
    PresentationError,
    Quiver,
    ZeroPath,
)

log = logging.getLogger(__name__)

IDENT = r"[A-Za-z0-9_+\-'.]+"
_ident_re = re.compile(rf"^{IDENT}$")
_arrow_re = re.compile(rf"^arrow\s+({IDENT}?)\s*:\s*({IDENT}?)\s*->\s*({IDENT})\s*$")
_loop_re = re.compile(rf"^loop\s+({IDENT}?)\s*:\s*({IDENT})(\s+special)?\s*$")
_coef_re = re.compile(r"^-?\d+(/\d+)?$")


class DSLSyntaxError(PresentationError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def parse_presentation(text: str, name: str = "presentation") -> Presentation:
    vertices: list[str] = []
    arrows: list[Arrow] = []
    rel_lines: list[tuple[int, str]] = []
    in_relations = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        keyword = stripped.split()[0]
        if keyword == "relations":
            if stripped != "relations":
                raise DSLSyntaxError("'relations' takes no arguments", lineno, col)
            in_relations = True
            continue
        if in_relations:
            if keyword not in ("zero", "rel", "idem"):
                raise DSLSyntaxError(f"unexpected {keyword!r} in relations block", lineno, col)
            rel_lines.append((lineno, stripped))
            continue
        if keyword == "vertex":
            ids = stripped.split()[1:]
            if not ids:
                raise DSLSyntaxError("'vertex' needs at least one id", lineno, col)
            for v in ids:
                if not _ident_re.match(v):
                    raise DSLSyntaxError(f"bad vertex id {v!r}", lineno, raw.index(v) + 1)
            vertices.extend(ids)
        elif keyword == "arrow":
            m = _arrow_re.match(stripped)
            if not m:
                raise DSLSyntaxError("expected 'arrow <id>: <tail> -> <head>'", lineno, col)
            arrows.append(Arrow(m.group(1), m.group(2), m.group(3)))
        elif keyword == "loop":
            m = _loop_re.match(stripped)
            if not m:
                raise DSLSyntaxError("expected 'loop <id>: <vertex> [special]'", lineno, col)
            arrows.append(Arrow(m.group(1), m.group(2), m.group(2), bool(m.group(3))))
        else:
            raise DSLSyntaxError(f"unknown keyword {keyword!r}", lineno, col)

    quiver = Quiver(tuple(vertices), tuple(arrows))
    if not quiver.is_connected():
        log.warning("quiver %s is not connected", name)

    relations = []
    for lineno, line in rel_lines:
        try:
            relations.append(_parse_relation(quiver, line, lineno))
        except DSLSyntaxError:
            raise
        except PresentationError as exc:
            raise PresentationError(f"line {lineno}: {exc}") from None
    declared = {r.arrow for r in relations if isinstance(r, IdempotentLoop)}
    for a in quiver.special_loops:
        if a.name not in declared:
            relations.append(IdempotentLoop(a.name))
    return Presentation(quiver, tuple(relations), "user", name)


def _parse_relation(quiver: Quiver, line: str, lineno: int):
    keyword, _, rest = line.partition(" ")
    rest = rest.strip()
    if not rest:
        raise DSLSyntaxError(f"'{keyword}' needs an argument", lineno)
    if keyword == "zero":
        if len(rest.split()) != 1:
            raise DSLSyntaxError("'zero' takes a single word", lineno)
        path = _word(quiver, rest)
        if len(path) < 2:
            raise PresentationError(f"zero relation {rest} has length < 2")
        return ZeroPath(path)
    if keyword == "idem":
        if not _ident_re.match(rest):
            raise DSLSyntaxError(f"bad loop id {rest!r}", lineno)
        return IdempotentLoop(rest)
    terms = []
    for chunk in _split_terms(rest, lineno):
        if len(chunk) == 1:
            coef, word = Fraction(1), chunk[0]
        elif len(chunk) == 2 and _coef_re.match(chunk[0]):
            coef, word = Fraction(chunk[0]), chunk[1]
        else:
            raise DSLSyntaxError(f"bad term {' '.join(chunk)!r}", lineno)
        terms.append((coef, _word(quiver, word)))
    return LinearCombination(tuple(terms))


def _split_terms(text: str, lineno: int) -> list[list[str]]:
    chunks: list[list[str]] = [[]]
    for tok in text.split():
        if tok == "+":
            chunks.append([])
        else:
            chunks[-1].append(tok)
    if any(not c for c in chunks):
        raise DSLSyntaxError("empty term in linear combination", lineno)
    return chunks


def _word(quiver: Quiver, word: str) -> Path:
    parts = word.split("*")
    if any(not p for p in parts):
        raise PresentationError(f"malformed word {word!r}")
    return Path.from_word(quiver, word)


def _coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def serialize_presentation(p: Presentation) -> str:
    q = p.quiver
    lines = []
    if q.vertices:
        lines.append("vertex " + " ".join(q.vertices))
    for a in q.arrows:
        if a.special:
            lines.append(f"loop {a.name}: {a.tail} special")
        elif a.is_loop:
            lines.append(f"loop {a.name}: {a.tail}")
        else:
            lines.append(f"arrow {a.name}: {a.tail} -> {a.head}")
    lines.append("relations")
    for r in p.relations:
        if isinstance(r, ZeroPath):
            lines.append(f"zero {r.path.word}")
        elif isinstance(r, IdempotentLoop):
            lines.append(f"idem {r.arrow}")
        else:
            terms = [p_.word if c == 1 else f"{_coef(c)} {p_.word}" for c, p_ in r.terms]
            lines.append("rel " + " + ".join(terms))
    return "\n".join(lines) + "\n"


def load_presentation(path) -> Presentation:
    from pathlib import Path as FsPath

    path = FsPath(path)
    return parse_presentation(path.read_text(encoding="utf-8"), name=path.stem)
