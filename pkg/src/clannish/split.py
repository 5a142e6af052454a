"""Standard-to-admissible presentations of clannish algebras.

A special vertex ``w`` splits into ``w+`` and ``w-``.  A split arrow carries
the sign of its head vertex as a prefix and the sign of its tail vertex as a
suffix, so ``b+*+a`` is the composite through ``w+``.  Special loops
disappear; a special loop inside a zero relation pins the path to the ``+``
branch, and a special vertex crossed without one contributes a sum over both
branches.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .classify import (
    UnsupportedPresentation,
    _c1_witnesses,
    is_clannish,
    is_skewed_gentle,
)
from .linalg import Matrix, column_space_basis, inverse, nullspace
from .quiver import (
    Arrow,
    IdempotentLoop,
    LinearCombination,
    Path,
    Presentation,
    Quiver,
    ZeroPath,
    relation_key,
)
from .repvar import Representation, check_rep

SIGNS = ("+", "-")


class NotClannishError(ValueError):
    def __init__(self, witnesses):
        self.witnesses = tuple(witnesses)
        super().__init__("presentation is not clannish: "
                         + "; ".join(w.message for w in self.witnesses))


class EnvelopeError(ValueError):
    def __init__(self, message, witnesses=()):
        self.witnesses = tuple(witnesses)
        super().__init__(message)


@dataclass(frozen=True)
class SplitMap:
    vertex_map: dict[str, tuple[str, ...]]
    arrow_map: dict[str, tuple[str, ...]]
    dropped: tuple[str, ...]
    # split arrow -> (original arrow, head sign, tail sign); signs are "" at ordinary ends
    signs: dict[str, tuple[str, str, str]] = field(default_factory=dict)

    def rows(self) -> list[tuple[str, str]]:
        out = [(v, " ".join(img)) for v, img in self.vertex_map.items()]
        out += [(a, " ".join(img)) for a, img in self.arrow_map.items()]
        out += [(a, "-") for a in self.dropped]
        return out


def split_arrow_name(arrow: str, head_sign: str, tail_sign: str) -> str:
    return f"{head_sign}{arrow}{tail_sign}"


def split_unchecked(p: Presentation) -> tuple[Presentation, SplitMap]:
    """Split every special vertex without re-running the clannish test."""
    q = p.quiver
    if not p.is_monomial():
        raise UnsupportedPresentation("splitting needs zero relations only")
    if _c1_witnesses(p):
        raise UnsupportedPresentation(
            "a zero relation begins or ends with a special loop or squares one")
    special_at: dict[str, str] = {}
    for a in q.special_loops:
        if a.tail in special_at:
            raise UnsupportedPresentation(f"vertex {a.tail} carries two special loops")
        special_at[a.tail] = a.name

    def vsigns(v):
        return SIGNS if v in special_at else ("",)

    vertex_map = {v: tuple(v + s for s in vsigns(v)) for v in q.vertices}
    vertices = [x for v in q.vertices for x in vertex_map[v]]

    arrows: list[Arrow] = []
    arrow_map: dict[str, tuple[str, ...]] = {}
    signs: dict[str, tuple[str, str, str]] = {}
    for a in q.ordinary_arrows:
        names = []
        for hs in vsigns(a.head):
            for ts in vsigns(a.tail):
                name = split_arrow_name(a.name, hs, ts)
                arrows.append(Arrow(name, a.tail + ts, a.head + hs))
                signs[name] = (a.name, hs, ts)
                names.append(name)
        arrow_map[a.name] = tuple(names)
    quiver = Quiver(tuple(vertices), tuple(arrows))

    relations = []
    seen = set()
    for r in p.relations:
        if isinstance(r, IdempotentLoop):
            continue
        for new in _transport(q, quiver, r.path, special_at):
            key = relation_key(new)
            if key not in seen:
                seen.add(key)
                relations.append(new)
    dropped = tuple(a.name for a in q.special_loops)
    out = Presentation(quiver, tuple(relations), "split-admissible", p.name + "-split")
    return out, SplitMap(vertex_map, arrow_map, dropped, signs)


def _transport(q: Quiver, quiver: Quiver, path: Path, special_at: dict[str, str]):
    """Images in the split quiver of one zero relation of the standard presentation."""
    ordinary: list[str] = []
    pinned: list[bool] = []  # per interior junction: a special loop sits there
    for name in path.arrows:
        if q.arrow(name).special:
            pinned[-1] = True
        else:
            ordinary.append(name)
            pinned.append(False)
    pinned = pinned[:-1]
    objs = [q.arrow(n) for n in ordinary]
    junctions = [x.head for x in objs[:-1]]

    def vsigns(v):
        return SIGNS if v in special_at else ("",)

    free_idx = [i for i, v in enumerate(junctions) if v in special_at and not pinned[i]]
    for end_sign in vsigns(objs[-1].head):
        for start_sign in vsigns(objs[0].tail):
            terms = []
            for choice in itertools.product(SIGNS, repeat=len(free_idx)):
                js = []
                chosen = dict(zip(free_idx, choice))
                for i, v in enumerate(junctions):
                    if v not in special_at:
                        js.append("")
                    else:
                        js.append(chosen.get(i, "+"))
                tails = [start_sign] + js
                heads = js + [end_sign]
                names = [split_arrow_name(a.name, h, t) for a, h, t in zip(objs, heads, tails)]
                terms.append(Path.of(quiver, names))
            if len(terms) == 1:
                yield ZeroPath(terms[0])
            else:
                yield LinearCombination(tuple((1, t) for t in terms))


def split_presentation(p: Presentation) -> tuple[Presentation, SplitMap]:
    verdict = is_clannish(p)
    if not verdict:
        raise NotClannishError(verdict.witnesses)
    return split_unchecked(p)


def split_rep(m: Representation) -> Representation:
    """Push a representation of the standard presentation to the admissible one.

    At each special vertex the idempotent ``E = M(f)`` is conjugated to
    ``diag(I_r, 0)`` using the pivot columns of ``E`` followed by a kernel
    basis; the ``+`` vertex receives the image, the ``-`` vertex the kernel.
    """
    ok, bad = check_rep(m)
    if not ok:
        raise ValueError(f"representation violates relation {bad}")
    f = m.field
    target, smap = split_presentation(m.presentation)
    q = m.presentation.quiver

    change: dict[str, tuple[Matrix, Matrix, int]] = {}
    for loop in q.special_loops:
        w = loop.tail
        n = m.dim[w]
        e = m.matrices[loop.name]
        cols = column_space_basis(e, f) + nullspace(e.rows, e.ncols, f)
        r = n - len(nullspace(e.rows, e.ncols, f))
        basis = Matrix(n, n, tuple(tuple(c[i] for c in cols) for i in range(n)))
        inv = inverse(basis, f)
        conj = inv.matmul(e, f).matmul(basis, f)
        expected = Matrix(n, n, tuple(
            tuple(f.one if i == j and i < r else f.zero for j in range(n)) for i in range(n)))
        assert conj == expected, "idempotent block extraction failed"
        change[w] = (basis, inv, r)

    dim = {}
    for v, images in smap.vertex_map.items():
        if v in change:
            r = change[v][2]
            dim[v + "+"], dim[v + "-"] = r, m.dim[v] - r
        else:
            dim[v] = m.dim[v]

    def rows_of(v, sign):
        if not sign:
            return 0, m.dim[v]
        r = change[v][2]
        return (0, r) if sign == "+" else (r, m.dim[v])

    mats = {}
    for name, (orig, hs, ts) in smap.signs.items():
        a = q.arrow(orig)
        t = m.matrices[orig]
        if a.head in change:
            t = change[a.head][1].matmul(t, f)
        if a.tail in change:
            t = t.matmul(change[a.tail][0], f)
        r0, r1 = rows_of(a.head, hs)
        c0, c1 = rows_of(a.tail, ts)
        mats[name] = t.block(r0, r1, c0, c1)
    return Representation(target, f, dim, mats)


@dataclass(frozen=True)
class EnvelopeResult:
    presentation: Presentation
    kept: tuple[str, ...]
    dropped: tuple[str, ...]
    unique: bool


def envelope_details(p: Presentation) -> EnvelopeResult:
    """Choose the length-two zero relations of a clannish presentation to keep.

    Candidates are scanned in declaration order, preferring to keep each one;
    a candidate is kept iff some completion of the remaining choices yields a
    skewed-gentle presentation (depth-first search with pruning).
    """
    verdict = is_clannish(p)
    if not verdict:
        raise NotClannishError(verdict.witnesses)
    q = p.quiver
    cands = [r for r in p.zero_relations if len(r.path) == 2]
    pairs = [r.path.arrows for r in cands]
    n = len(cands)

    before = {a.name: [x.name for x in q.incoming(a.tail)] for a in q.arrows}
    after = {a.name: [x.name for x in q.outgoing(a.head)] for a in q.arrows}
    sq = {a.name for a in q.special_loops}
    pair_index = {pr: i for i, pr in enumerate(pairs)}

    def feasible(choice: list[bool]) -> bool:
        k = len(choice)
        for a in q.arrows:
            for nbrs, mk in ((before[a.name], lambda x: (x, a.name)),
                             (after[a.name], lambda x: (a.name, x))):
                n_in = n_out = 0
                for x in nbrs:
                    pr = mk(x)
                    if x == a.name and a.name in sq:
                        n_in += 1  # e^2 in the auxiliary ideal
                        continue
                    i = pair_index.get(pr)
                    if i is None:
                        n_out += 1
                    elif i < k:
                        if choice[i]:
                            n_in += 1
                        else:
                            n_out += 1
                if n_in > 1 or n_out > 1:
                    return False
        return True

    def build(choice):
        keep = {pairs[i] for i in range(n) if choice[i]}
        rels = [r for r in p.relations
                if isinstance(r, IdempotentLoop)
                or (isinstance(r, ZeroPath) and r.path.arrows in keep)]
        return p.with_relations(rels, "envelope")

    solutions = []
    first_failure: list = []

    def search(choice):
        if len(solutions) >= 2:
            return
        if not feasible(choice):
            return
        if len(choice) == n:
            cand = build(choice)
            v = is_skewed_gentle(cand)
            if v:
                solutions.append(list(choice))
            elif not first_failure:
                first_failure.extend(v.witnesses)
            return
        search(choice + [True])
        search(choice + [False])

    search([])
    if not solutions:
        raise EnvelopeError(
            "no skewed-gentle envelope: no subset of the length-two zero relations "
            "gives a skewed-gentle presentation", first_failure)
    choice = solutions[0]
    env = build(choice)
    kept = tuple(str(cands[i]) for i in range(n) if choice[i])
    dropped = tuple(str(r) for r in p.zero_relations if str(r) not in kept)
    return EnvelopeResult(env, kept, dropped, unique=len(solutions) == 1)


def skewed_gentle_envelope(p: Presentation) -> Presentation:
    return envelope_details(p).presentation
