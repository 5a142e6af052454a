"""String and band words over monomial presentations, and their modules.

Words are stored first-applied-first like paths and rendered right to left,
inverse letters carrying a trailing ``^``: the Kronecker band is ``a*b^``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .classify import UnsupportedPresentation
from .linalg import Field, Matrix
from .quiver import Presentation, Quiver
from .repvar import Representation


class Letter(NamedTuple):
    arrow: str
    inverse: bool = False

    def __str__(self) -> str:
        return self.arrow + ("^" if self.inverse else "")

    def flipped(self) -> "Letter":
        return Letter(self.arrow, not self.inverse)


def letter_source(q: Quiver, x: Letter) -> str:
    a = q.arrow(x.arrow)
    return a.head if x.inverse else a.tail


def letter_target(q: Quiver, x: Letter) -> str:
    a = q.arrow(x.arrow)
    return a.tail if x.inverse else a.head


@dataclass(frozen=True)
class StringWord:
    letters: tuple[Letter, ...]
    vertex: str | None = None  # set only for trivial strings

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return f"1_{self.vertex}"
        return render_letters(self.letters)

    def inverse(self) -> "StringWord":
        return StringWord(tuple(x.flipped() for x in reversed(self.letters)), self.vertex)

    def source(self, q: Quiver) -> str:
        return self.vertex if not self.letters else letter_source(q, self.letters[0])


@dataclass(frozen=True)
class BandWord:
    letters: tuple[Letter, ...]

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return render_letters(self.letters)


def render_letters(letters: Sequence[Letter]) -> str:
    return "*".join(str(x) for x in reversed(tuple(letters)))


def parse_letters(text: str) -> tuple[Letter, ...]:
    """Inverse of :func:`render_letters`."""
    out = []
    for tok in reversed(text.split("*")):
        if not tok:
            raise ValueError(f"malformed word {text!r}")
        out.append(Letter(tok[:-1], True) if tok.endswith("^") else Letter(tok))
    return tuple(out)


def _require_monomial(p: Presentation) -> None:
    if p.quiver.special_loops:
        raise UnsupportedPresentation(
            "string combinatorics with special loops (symmetric strings) is not supported; "
            "split the presentation first")
    if not p.is_monomial():
        raise UnsupportedPresentation("string combinatorics needs monomial relations")


def _zeros(p: Presentation) -> set[tuple[str, ...]]:
    return {r.path.arrows for r in p.zero_relations}


def _linear_ok(q: Quiver, letters: Sequence[Letter], zeros: set) -> bool:
    """Composable, reduced and free of relation subpaths (as a linear word)."""
    for x, y in zip(letters, letters[1:]):
        if letter_target(q, x) != letter_source(q, y):
            return False
        if x.arrow == y.arrow and x.inverse != y.inverse:
            return False
    if not zeros:
        return True
    runs: list[list[Letter]] = []
    for x in letters:
        if runs and runs[-1][-1].inverse == x.inverse:
            runs[-1].append(x)
        else:
            runs.append([x])
    for run in runs:
        path = tuple(x.arrow for x in run)
        if run[0].inverse:
            path = path[::-1]
        n = len(path)
        for i in range(n):
            for j in range(i + 2, n + 1):
                if path[i:j] in zeros:
                    return False
    return True


def is_string(p: Presentation, w: StringWord) -> bool:
    q = p.quiver
    if not w.letters:
        return w.vertex in q.vertices
    return _linear_ok(q, w.letters, _zeros(p))


def is_band(p: Presentation, w: BandWord) -> bool:
    q = p.quiver
    ls = w.letters
    n = len(ls)
    if n == 0 or letter_target(q, ls[-1]) != letter_source(q, ls[0]):
        return False
    if not any(x.inverse for x in ls) or all(x.inverse for x in ls):
        return False
    if not _linear_ok(q, ls + ls, _zeros(p)):
        return False
    for k in range(1, n):
        if n % k == 0 and ls == ls[:k] * (n // k):
            return False
    return True


def _key(q: Quiver, letters: Sequence[Letter]) -> tuple:
    names = q.arrow_names
    return tuple((names.index(x.arrow), x.inverse) for x in letters)


def canonical_string(q: Quiver, w: StringWord) -> StringWord:
    inv = w.inverse()
    return min((w, inv), key=lambda s: _key(q, s.letters))


def canonical_band(q: Quiver, w: BandWord) -> BandWord:
    ls = w.letters
    inv = tuple(x.flipped() for x in reversed(ls))
    rotations = [seq[i:] + seq[:i] for seq in (ls, inv) for i in range(len(seq))]
    return BandWord(min(rotations, key=lambda s: _key(q, s)))


def _walks(q: Quiver, zeros: set, max_length: int, start: str):
    """All valid linear words of length 1..max_length starting at ``start``."""
    letters_from: dict[str, list[Letter]] = {v: [] for v in q.vertices}
    for a in q.arrows:
        letters_from[a.tail].append(Letter(a.name))
        letters_from[a.head].append(Letter(a.name, True))
    stack = [(x,) for x in letters_from[start]]
    while stack:
        w = stack.pop()
        if not _linear_ok(q, w, zeros):
            continue
        yield w
        if len(w) < max_length:
            end = letter_target(q, w[-1])
            for x in letters_from[end]:
                stack.append(w + (x,))


def enumerate_strings(p: Presentation, max_length: int) -> list[StringWord]:
    """Strings up to ``max_length`` letters, one per inverse pair, trivial strings first."""
    _require_monomial(p)
    q = p.quiver
    zeros = _zeros(p)
    out = [StringWord((), v) for v in q.vertices]
    seen = set()
    found = []
    for v in q.vertices:
        for w in _walks(q, zeros, max_length, v):
            c = canonical_string(q, StringWord(w))
            if c.letters not in seen:
                seen.add(c.letters)
                found.append(c)
    found.sort(key=lambda s: (len(s), _key(q, s.letters)))
    return out + found


def enumerate_bands(p: Presentation, max_length: int) -> list[BandWord]:
    """Bands up to ``max_length`` letters, modulo rotation and inversion."""
    _require_monomial(p)
    q = p.quiver
    zeros = _zeros(p)
    seen = set()
    found = []
    for v in q.vertices:
        for w in _walks(q, zeros, max_length, v):
            if letter_target(q, w[-1]) != v:
                continue
            b = BandWord(w)
            if not is_band(p, b):
                continue
            c = canonical_band(q, b)
            if c.letters not in seen:
                seen.add(c.letters)
                found.append(c)
    found.sort(key=lambda b: (len(b), _key(q, b.letters)))
    return found


def _basis_vertices(q: Quiver, letters: Sequence[Letter], start: str, closed: bool) -> list[str]:
    verts = [start] + [letter_target(q, x) for x in letters]
    return verts[:-1] if closed else verts


def word_dimension_vector(p: Presentation, w: StringWord | BandWord) -> dict[str, int]:
    q = p.quiver
    dim = {v: 0 for v in q.vertices}
    if isinstance(w, StringWord) and not w.letters:
        dim[w.vertex] = 1
        return dim
    closed = isinstance(w, BandWord)
    for v in _basis_vertices(q, w.letters, letter_source(q, w.letters[0]), closed):
        dim[v] += 1
    return dim


def _module(p: Presentation, field: Field, letters, start, closed, scalars) -> Representation:
    q = p.quiver
    verts = _basis_vertices(q, letters, start, closed)
    n = len(verts)
    pos, count = [], {v: 0 for v in q.vertices}
    for v in verts:
        pos.append(count[v])
        count[v] += 1
    entries = {a.name: {} for a in q.arrows}
    for i, x in enumerate(letters, start=1):
        src, dst = i - 1, i % n if closed else i
        if x.inverse:
            src, dst = dst, src
        entries[x.arrow][(pos[dst], pos[src])] = field(scalars.get(i - 1, 1))
    mats = {}
    for a in q.arrows:
        h, t = count[a.head], count[a.tail]
        rows = [[field.zero] * t for _ in range(h)]
        for (i, j), val in entries[a.name].items():
            rows[i][j] = field.norm(rows[i][j] + val)
        mats[a.name] = Matrix(h, t, tuple(tuple(r) for r in rows))
    return Representation(p, field, count, mats)


def string_module(p: Presentation, w: StringWord, field: Field | None = None) -> Representation:
    _require_monomial(p)
    field = field or Field.rationals()
    if not is_string(p, w):
        raise ValueError(f"{w} is not a string")
    if not w.letters:
        dim = {v: int(v == w.vertex) for v in p.quiver.vertices}
        return Representation.zero(p, field, dim)
    return _module(p, field, w.letters, letter_source(p.quiver, w.letters[0]), False, {})


def band_module(p: Presentation, w: BandWord, lam, field: Field | None = None) -> Representation:
    """Quasi-simple band module: the first direct letter of the canonical rotation acts by lam."""
    _require_monomial(p)
    field = field or Field.rationals()
    lam = field(lam)
    if lam == 0:
        raise ValueError("band parameter must be nonzero")
    if not is_band(p, w):
        raise ValueError(f"{w} is not a band")
    q = p.quiver
    c = canonical_band(q, w)
    k = next(i for i, x in enumerate(c.letters) if not x.inverse)
    return _module(p, field, c.letters, letter_source(q, c.letters[0]), True, {k: lam})
