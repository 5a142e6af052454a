"""Membership tests for gentle, special biserial, skewed-gentle and clannish presentations.

Each test returns a :class:`Verdict`; a negative verdict carries witnesses
naming the violated clause and the offending vertices, arrows or relations.
Clause labels: ``degree`` (at most two arrows in or out), ``continuation``
(how many neighbours of an arrow compose into or out of I), ``special-end``
(a zero relation starting, ending or squaring on a special loop),
``monomial``, ``length-2``, ``special-loop``, ``idempotent`` and
``finite-dimensional``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import asdict, dataclass
from typing import Iterable

from .quiver import (
    Arrow,
    IdempotentLoop,
    LinearCombination,
    Path,
    Presentation,
    Quiver,
    ZeroPath,
    render_word,
)


@dataclass(frozen=True)
class Witness:
    clause: str
    message: str
    vertices: tuple[str, ...] = ()
    arrows: tuple[str, ...] = ()
    relations: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Verdict:
    holds: bool | None
    witnesses: tuple[Witness, ...] = ()

    def __bool__(self) -> bool:
        return bool(self.holds)

    @classmethod
    def of(cls, witnesses: Iterable[Witness]) -> "Verdict":
        witnesses = tuple(witnesses)
        return cls(not witnesses, witnesses)

    def as_dict(self) -> dict:
        return {"holds": self.holds, "witnesses": [w.as_dict() for w in self.witnesses]}


@dataclass(frozen=True)
class ClassificationReport:
    gentle_pair: Verdict
    special_biserial: Verdict
    skewed_gentle: Verdict
    clannish: Verdict
    finite_dimensional: Verdict

    def as_dict(self) -> dict:
        return {k: getattr(self, k).as_dict() for k in self.__dataclass_fields__}


class UnsupportedPresentation(ValueError):
    """The operation is only defined for (split-able) clannish or monomial presentations."""


def _degree_witnesses(q: Quiver) -> list[Witness]:
    out = []
    for v in q.vertices:
        for kind, arrows in (("tail", q.outgoing(v)), ("head", q.incoming(v))):
            if len(arrows) > 2:
                out.append(Witness(
                    "degree", f"{len(arrows)} arrows with {kind} {v}",
                    vertices=(v,), arrows=tuple(a.name for a in arrows)))
    return out


def _length2_zero(p: Presentation) -> set[tuple[str, str]]:
    """Zero relations of length two as (first, second) arrow pairs."""
    return {r.path.arrows for r in p.zero_relations if len(r.path) == 2}


def _continuation_witnesses(q: Quiver, arrows: Iterable[Arrow], zero2: set,
                            count_in: bool) -> list[Witness]:
    """Check "at most one continuation not in I" (and, if ``count_in``, "at most one in I")."""
    out = []
    for b in arrows:
        for side, nbrs in (("before", q.incoming(b.tail)), ("after", q.outgoing(b.head))):
            def pair(x):
                return (x.name, b.name) if side == "before" else (b.name, x.name)
            inside = [x.name for x in nbrs if pair(x) in zero2]
            outside = [x.name for x in nbrs if pair(x) not in zero2]
            if len(outside) > 1:
                out.append(Witness(
                    "continuation",
                    f"arrow {b.name} has {len(outside)} arrows {side} it with composite not in I",
                    arrows=(b.name, *outside)))
            if count_in and len(inside) > 1:
                out.append(Witness(
                    "continuation",
                    f"arrow {b.name} has {len(inside)} arrows {side} it with composite in I",
                    arrows=(b.name, *inside)))
    return out


def _finite_witnesses(p: Presentation) -> list[Witness]:
    try:
        v = is_finite_dimensional(p)
    except UnsupportedPresentation as exc:
        return [Witness("finite-dimensional", f"undecided: {exc}")]
    return list(v.witnesses)


def is_gentle_pair(p: Presentation) -> Verdict:
    q = p.quiver
    w: list[Witness] = []
    for a in q.special_loops:
        w.append(Witness("special-loop", f"special loop {a.name} present",
                         vertices=(a.tail,), arrows=(a.name,)))
    for r in p.relations:
        if isinstance(r, LinearCombination):
            w.append(Witness("monomial", f"relation {r} is not monomial", relations=(str(r),)))
        elif isinstance(r, ZeroPath) and len(r.path) != 2:
            w.append(Witness("length-2", f"relation {r} has length {len(r.path)}",
                             relations=(str(r),)))
    w += _degree_witnesses(q)
    w += _continuation_witnesses(q, q.arrows, _length2_zero(p), count_in=True)
    if not q.special_loops:
        w += _finite_witnesses(p)
    return Verdict.of(w)


def is_special_biserial(p: Presentation) -> Verdict:
    q = p.quiver
    w: list[Witness] = []
    for a in q.special_loops:
        w.append(Witness("special-loop", f"special loop {a.name} present",
                         vertices=(a.tail,), arrows=(a.name,)))
    for r in p.relations:
        if isinstance(r, LinearCombination):
            w.append(Witness("monomial", f"relation {r} is not monomial", relations=(str(r),)))
    w += _degree_witnesses(q)
    w += _continuation_witnesses(q, q.arrows, _length2_zero(p), count_in=False)
    if not q.special_loops:
        w += _finite_witnesses(p)
    return Verdict.of(w)


def _c1_witnesses(p: Presentation) -> list[Witness]:
    special = {a.name for a in p.quiver.special_loops}
    out = []
    for r in p.zero_relations:
        arrows = r.path.arrows
        if arrows[0] in special or arrows[-1] in special:
            out.append(Witness("special-end", f"zero relation {r} begins or ends with a special loop",
                               relations=(str(r),)))
        for x, y in zip(arrows, arrows[1:]):
            if x == y and x in special:
                out.append(Witness("special-end", f"zero relation {r} contains the square of {x}",
                                   arrows=(x,), relations=(str(r),)))
                break
    return out


def is_clannish(p: Presentation) -> Verdict:
    q = p.quiver
    w: list[Witness] = []
    idem = {r.arrow for r in p.relations if isinstance(r, IdempotentLoop)}
    for a in q.special_loops:
        if a.name not in idem:
            w.append(Witness("idempotent", f"special loop {a.name} lacks e^2 - e",
                             arrows=(a.name,)))
    for r in p.relations:
        if isinstance(r, LinearCombination):
            w.append(Witness("monomial", f"relation {r} is not a zero relation",
                             relations=(str(r),)))
    w += _c1_witnesses(p)
    w += _degree_witnesses(q)
    w += _continuation_witnesses(q, q.ordinary_arrows, _length2_zero(p), count_in=False)
    w += _finite_witnesses(p)
    return Verdict.of(w)


def skewed_gentle_auxiliary(p: Presentation) -> Presentation:
    """(Q, I + <e^2>) with the special loops made ordinary."""
    q = p.quiver
    arrows = tuple(Arrow(a.name, a.tail, a.head) for a in q.arrows)
    quiver = Quiver(q.vertices, arrows)
    rels = []
    for r in p.relations:
        if isinstance(r, IdempotentLoop):
            rels.append(ZeroPath(Path.of(quiver, (r.arrow, r.arrow))))
        elif isinstance(r, ZeroPath):
            rels.append(ZeroPath(Path.of(quiver, r.path.arrows)))
        else:
            rels.append(LinearCombination(tuple(
                (c, Path.of(quiver, path.arrows)) for c, path in r.terms)))
    return Presentation(quiver, tuple(rels), p.provenance, p.name)


def is_skewed_gentle(p: Presentation) -> Verdict:
    idem = {r.arrow for r in p.relations if isinstance(r, IdempotentLoop)}
    w = [Witness("idempotent", f"special loop {a.name} lacks e^2 - e", arrows=(a.name,))
         for a in p.quiver.special_loops if a.name not in idem]
    return Verdict.of(w + list(is_gentle_pair(skewed_gentle_auxiliary(p)).witnesses))


def _monomial_cycle(p: Presentation) -> list[str] | None:
    """A cycle of arrows along which arbitrarily long paths avoid every zero relation.

    Linear-combination relations are ignored.  Nodes are relation-free paths
    of length L-1 where L is the longest zero relation; an edge appends one
    arrow when the resulting window contains no zero relation.
    """
    q = p.quiver
    zeros = {r.path.arrows for r in p.zero_relations}
    L = max([len(z) for z in zeros] + [2])
    out = defaultdict(list)
    for a in q.arrows:
        out[a.tail].append(a)

    def free(word: tuple[str, ...]) -> bool:
        n = len(word)
        return not any(word[i:j] in zeros for i in range(n) for j in range(i + 2, n + 1))

    def extend(word):
        head = q.arrow(word[-1]).head
        for a in out[head]:
            w2 = word + (a.name,)
            if free(w2):
                yield w2

    states: list[tuple[str, ...]] = [(a.name,) for a in q.arrows]
    for _ in range(L - 2):
        states = [w2 for w in states for w2 in extend(w)]

    edges = {s: [w2[1:] for w2 in extend(s)] for s in states}
    color: dict = {}
    for root in states:
        if root in color:
            continue
        color[root] = 1
        stack = [(root, iter(edges[root]))]
        while stack:
            s, it = stack[-1]
            t = next(it, None)
            if t is None:
                color[s] = 2
                stack.pop()
            elif color.get(t) == 1:
                path = [x for x, _ in stack]
                cyc = path[path.index(t):]
                return [c[-1] for c in cyc[1:]] + [t[-1]]
            elif t not in color:
                color[t] = 1
                stack.append((t, iter(edges[t])))
    return None


def is_finite_dimensional(p: Presentation) -> Verdict:
    """Decide finite dimensionality on the split (special-loop-free) presentation."""
    from .split import split_unchecked

    q = p.quiver
    if q.special_loops:
        loops_at = defaultdict(list)
        for a in q.special_loops:
            loops_at[a.tail].append(a.name)
        if _c1_witnesses(p) or not p.is_monomial():
            raise UnsupportedPresentation(
                "special loops occur at the start or end of a relation, squared, "
                "or alongside non-monomial relations")
        for v, loops in loops_at.items():
            if len(loops) > 1:
                return Verdict(False, (Witness(
                    "finite-dimensional",
                    f"two special loops at {v} generate an infinite-dimensional algebra",
                    vertices=(v,), arrows=tuple(loops)),))
        p, _ = split_unchecked(p)
    cycle = _monomial_cycle(p)
    if cycle is None:
        return Verdict(True)
    return Verdict(False, (Witness(
        "finite-dimensional", f"arbitrarily long nonzero paths along cycle {render_word(cycle)}",
        arrows=tuple(cycle)),))


def classify(p: Presentation) -> ClassificationReport:
    try:
        finite = is_finite_dimensional(p)
    except UnsupportedPresentation as exc:
        finite = Verdict(None, (Witness("finite-dimensional", f"undecided: {exc}"),))
    return ClassificationReport(
        gentle_pair=is_gentle_pair(p),
        special_biserial=is_special_biserial(p),
        skewed_gentle=is_skewed_gentle(p),
        clannish=is_clannish(p),
        finite_dimensional=finite,
    )
