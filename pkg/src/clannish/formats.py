"""Plain-text formats for representations and stable decompositions.

Representation file::

    rep <name> over Q|F<p>
    dim 1=1 2=2 3=1
    mat a 2 1
    1
    0

Arrows without a ``mat`` block get the zero matrix.  A matrix with zero
columns has no row lines.  Rationals are written
``p/q``.

Decomposition file, one factor per line::

    factor band:a*b^ m=2 c=1

``c`` may be omitted for ``band:`` (defaults to 1) and ``string:``
(defaults to 0) descriptors.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path as FsPath

from .linalg import Field, Matrix
from .quiver import Presentation
from .repvar import Representation

log = logging.getLogger(__name__)


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_rep(text: str, presentation: Presentation) -> Representation:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty representation file")
    lineno, header = lines[0]
    m = re.fullmatch(r"rep\s+(\S+)\s+over\s+(\S+)", header)
    if not m:
        raise FormatError("expected 'rep <name> over Q|F<p>'", lineno)
    if m.group(1) != presentation.name:
        log.warning("representation names presentation %r, loaded %r", m.group(1), presentation.name)
    try:
        field = Field.from_tag(m.group(2))
    except ValueError as exc:
        raise FormatError(str(exc), lineno) from None

    dim: dict[str, int] = {}
    mats: dict[str, Matrix] = {}
    i = 1
    while i < len(lines):
        lineno, line = lines[i]
        head, *rest = line.split()
        if head == "dim":
            for item in rest:
                v, eq, x = item.partition("=")
                if not eq or not re.fullmatch(r"\d+", x):
                    raise FormatError(f"bad dimension entry {item!r}", lineno)
                if v not in presentation.quiver.vertices:
                    raise FormatError(f"unknown vertex {v!r}", lineno)
                dim[v] = int(x)
            i += 1
        elif head == "mat":
            if len(rest) != 3 or not rest[1].isdigit() or not rest[2].isdigit():
                raise FormatError("expected 'mat <arrow> <rows> <cols>'", lineno)
            name, nr, nc = rest[0], int(rest[1]), int(rest[2])
            if name in mats:
                raise FormatError(f"duplicate matrix for {name}", lineno)
            if not presentation.quiver.has_arrow(name):
                raise FormatError(f"unknown arrow {name!r}", lineno)
            rows = []
            if nc == 0:  # empty rows are not written out
                rows, nr = [()] * nr, 0
            for k in range(nr):
                if i + 1 + k >= len(lines):
                    raise FormatError(f"matrix {name} is missing rows", lineno)
                rl, row = lines[i + 1 + k]
                entries = row.split()
                if len(entries) != nc:
                    raise FormatError(f"expected {nc} entries, got {len(entries)}", rl)
                try:
                    rows.append(tuple(field(x) for x in entries))
                except (ValueError, ZeroDivisionError) as exc:
                    raise FormatError(str(exc), rl) from None
            mats[name] = Matrix(len(rows), nc, tuple(rows))
            i += 1 + nr
        else:
            raise FormatError(f"unexpected {head!r}", lineno)
    try:
        return Representation(presentation, field, dim, mats)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_rep(m: Representation, name: str | None = None) -> str:
    q = m.presentation.quiver
    out = [f"rep {name or m.presentation.name} over {m.field.tag}",
           "dim " + " ".join(f"{v}={m.dim[v]}" for v in q.vertices)]
    for a in q.arrows:
        mat = m.matrices[a.name]
        out.append(f"mat {a.name} {mat.nrows} {mat.ncols}")
        out += [" ".join(m.field.render(x) for x in row) for row in mat.rows]
    return "\n".join(out) + "\n"


def load_rep(path, presentation: Presentation) -> Representation:
    return parse_rep(FsPath(path).read_text(), presentation)


@dataclass(frozen=True)
class Factor:
    descriptor: str
    multiplicity: int
    c_value: int | None
    stable: bool = True
    representation: Representation | None = None

    @property
    def kind(self) -> str:
        return self.descriptor.split(":", 1)[0] if ":" in self.descriptor else "rep"


@dataclass(frozen=True)
class StableDecompositionInput:
    factors: tuple[Factor, ...]

    def __post_init__(self):
        seen = set()
        for f in self.factors:
            if f.multiplicity < 1:
                raise ValueError(f"multiplicity of {f.descriptor} must be positive")
            if f.c_value not in (None, 0, 1):
                raise ValueError(f"c value of {f.descriptor} must be 0 or 1")
            if f.descriptor in seen:
                raise ValueError(f"factor {f.descriptor} listed twice")
            seen.add(f.descriptor)


_DEFAULT_C = {"band": 1, "string": 0}


def parse_decomposition(text: str) -> StableDecompositionInput:
    factors = []
    for lineno, line in _content_lines(text):
        parts = line.split()
        if parts[0] != "factor" or len(parts) < 2:
            raise FormatError("expected 'factor <descriptor> m=<int> [c=<0|1>]'", lineno)
        descriptor, opts = parts[1], {}
        for item in parts[2:]:
            key, eq, val = item.partition("=")
            if key not in ("m", "c") or not eq or not val.isdigit() or key in opts:
                raise FormatError(f"bad option {item!r}", lineno)
            opts[key] = int(val)
        if "m" not in opts:
            raise FormatError(f"factor {descriptor} lacks m=<int>", lineno)
        kind = descriptor.split(":", 1)[0] if ":" in descriptor else None
        c = opts.get("c", _DEFAULT_C.get(kind))
        try:
            factors.append(Factor(descriptor, opts["m"], c))
        except ValueError as exc:
            raise FormatError(str(exc), lineno) from None
    try:
        return StableDecompositionInput(tuple(factors))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_decomposition(dec: StableDecompositionInput) -> str:
    lines = []
    for f in dec.factors:
        c = "" if f.c_value is None else f" c={f.c_value}"
        lines.append(f"factor {f.descriptor} m={f.multiplicity}{c}")
    return "\n".join(lines) + ("\n" if lines else "")
