"""Quivers, paths, relations and presentations of bound quiver algebras.

Paths are stored first-applied-first.  Rendered as words they read right to
left, so the path "a then b" prints as ``b*a``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union


class PresentationError(ValueError):
    """A quiver, path or relation violates a structural invariant."""


@dataclass(frozen=True)
class Arrow:
    name: str
    tail: str
    head: str
    special: bool = False

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("duplicate vertex id")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise PresentationError(f"duplicate arrow id {dup!r}")
        if set(names) & set(self.vertices):
            raise PresentationError("arrow and vertex ids must be distinct")
        vs = set(self.vertices)
        for a in self.arrows:
            for v in (a.tail, a.head):
                if v not in vs:
                    raise PresentationError(f"arrow {a.name!r} uses unknown vertex {v!r}")
            if a.special and not a.is_loop:
                raise PresentationError(f"special arrow {a.name!r} is not a loop")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise PresentationError(f"unknown arrow {name!r}")

    def has_arrow(self, name: str) -> bool:
        return any(a.name == name for a in self.arrows)

    @property
    def arrow_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.arrows)

    @property
    def special_loops(self) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.special)

    @property
    def ordinary_arrows(self) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if not a.special)

    @property
    def special_vertices(self) -> tuple[str, ...]:
        sp = {a.tail for a in self.special_loops}
        return tuple(v for v in self.vertices if v in sp)

    def outgoing(self, v: str) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.tail == v)

    def incoming(self, v: str) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.head == v)

    def is_connected(self) -> bool:
        if len(self.vertices) <= 1:
            return True
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a in self.arrows:
            adj[a.tail].add(a.head)
            adj[a.head].add(a.tail)
        seen = {self.vertices[0]}
        todo = deque(seen)
        while todo:
            for w in adj[todo.popleft()] - seen:
                seen.add(w)
                todo.append(w)
        return len(seen) == len(self.vertices)


@dataclass(frozen=True)
class Path:
    """A nonempty composable sequence of arrows, first-applied-first."""

    arrows: tuple[str, ...]
    source: str
    target: str

    @classmethod
    def of(cls, quiver: Quiver, arrows: Sequence[str]) -> "Path":
        arrows = tuple(arrows)
        if not arrows:
            raise PresentationError("paths have length at least one")
        objs = [quiver.arrow(n) for n in arrows]
        for x, y in zip(objs, objs[1:]):
            if x.head != y.tail:
                raise PresentationError(
                    f"path {render_word(arrows)} is not composable: "
                    f"head({x.name})={x.head} but tail({y.name})={y.tail}")
        return cls(arrows, objs[0].tail, objs[-1].head)

    @classmethod
    def from_word(cls, quiver: Quiver, word: str) -> "Path":
        """Parse a right-to-left word such as ``c*b*f*a``."""
        return cls.of(quiver, list(reversed(word.split("*"))))

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def word(self) -> str:
        return render_word(self.arrows)

    def __str__(self) -> str:
        return self.word


def render_word(arrows: Sequence[str]) -> str:
    return "*".join(reversed(tuple(arrows)))


def compose(p: Path, q: Path) -> Path:
    """The path "q then p", written ``pq``."""
    if q.target != p.source:
        raise PresentationError(
            f"cannot compose {p.word} after {q.word}: target {q.target} != source {p.source}")
    return Path(q.arrows + p.arrows, q.source, p.target)


@dataclass(frozen=True)
class ZeroPath:
    path: Path

    @property
    def arrows(self) -> frozenset[str]:
        return frozenset(self.path.arrows)

    def __str__(self) -> str:
        return self.path.word


@dataclass(frozen=True)
class LinearCombination:
    terms: tuple[tuple[Fraction, Path], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((Fraction(c), p) for c, p in self.terms))
        if len(self.terms) < 1:
            raise PresentationError("empty linear combination")
        paths = [p for _, p in self.terms]
        if len(set(paths)) != len(paths):
            raise PresentationError("linear combination repeats a path")
        if any(c == 0 for c, _ in self.terms):
            raise PresentationError("linear combination has a zero coefficient")
        ends = {(p.source, p.target) for p in paths}
        if len(ends) != 1:
            raise PresentationError(
                f"linear combination {self} is not parallel: endpoints {sorted(ends)}")

    @property
    def arrows(self) -> frozenset[str]:
        return frozenset(a for _, p in self.terms for a in p.arrows)

    def __str__(self) -> str:
        return " + ".join(p.word if c == 1 else f"{c} {p.word}" for c, p in self.terms)


@dataclass(frozen=True)
class IdempotentLoop:
    """The relation e^2 - e on a special loop."""

    arrow: str

    @property
    def arrows(self) -> frozenset[str]:
        return frozenset((self.arrow,))

    def __str__(self) -> str:
        return f"{self.arrow}^2 - {self.arrow}"


Relation = Union[ZeroPath, LinearCombination, IdempotentLoop]

PROVENANCES = ("user", "split-admissible", "envelope")


@dataclass(frozen=True)
class Presentation:
    quiver: Quiver
    relations: tuple[Relation, ...] = ()
    provenance: str = field(default="user", compare=False)
    name: str = field(default="presentation", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        if self.provenance not in PROVENANCES:
            raise PresentationError(f"unknown provenance {self.provenance!r}")
        q = self.quiver
        idem_count = {a.name: 0 for a in q.special_loops}
        for r in self.relations:
            for name in r.arrows:
                q.arrow(name)
            if isinstance(r, IdempotentLoop):
                if r.arrow not in idem_count:
                    raise PresentationError(
                        f"idempotent relation on {r.arrow!r}, which is not a special loop")
                idem_count[r.arrow] += 1
            elif isinstance(r, ZeroPath):
                _check_path(q, r.path)
                if len(r.path) < 2 and self.provenance == "user":
                    raise PresentationError(f"zero relation {r} has length < 2")
            else:
                for _, p in r.terms:
                    _check_path(q, p)
        for name, n in idem_count.items():
            if n != 1:
                raise PresentationError(
                    f"special loop {name!r} has {n} idempotent relations (expected 1)")

    @property
    def zero_relations(self) -> tuple[ZeroPath, ...]:
        return tuple(r for r in self.relations if isinstance(r, ZeroPath))

    def is_monomial(self) -> bool:
        return not any(isinstance(r, LinearCombination) for r in self.relations)

    def with_relations(self, relations: Iterable[Relation], provenance: str | None = None) -> "Presentation":
        return Presentation(self.quiver, tuple(relations),
                            provenance or self.provenance, self.name)

    def normalized(self) -> "Presentation":
        """Relations in a canonical order, for order-insensitive comparison."""
        return self.with_relations(sorted(self.relations, key=relation_key))


def relation_key(r: Relation) -> tuple:
    if isinstance(r, IdempotentLoop):
        return (0, r.arrow)
    if isinstance(r, ZeroPath):
        return (1, r.path.arrows)
    return (2, tuple((p.arrows, c) for c, p in r.terms))


def _check_path(q: Quiver, p: Path) -> None:
    rebuilt = Path.of(q, p.arrows)
    if rebuilt != p:
        raise PresentationError(f"path {p.word} has inconsistent endpoints")


def dimension_vector(quiver: Quiver, values: Mapping[str, int] | Sequence[int]) -> dict[str, int]:
    """A dimension vector keyed by vertex, from a mapping or a list in vertex order."""
    out = _vertex_map(quiver, values, "dimension vector")
    if any(v < 0 for v in out.values()):
        raise PresentationError("dimension vectors are nonnegative")
    return out


def weight(quiver: Quiver, values: Mapping[str, int] | Sequence[int]) -> dict[str, int]:
    return _vertex_map(quiver, values, "weight")


def _vertex_map(quiver: Quiver, values, what: str) -> dict[str, int]:
    if isinstance(values, Mapping):
        if set(values) != set(quiver.vertices):
            raise PresentationError(f"{what} keys must be exactly the vertex set")
        return {v: int(values[v]) for v in quiver.vertices}
    values = list(values)
    if len(values) != len(quiver.vertices):
        raise PresentationError(
            f"{what} has {len(values)} entries but the quiver has {len(quiver.vertices)} vertices")
    return {v: int(x) for v, x in zip(quiver.vertices, values)}
