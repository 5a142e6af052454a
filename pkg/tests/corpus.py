"""Seeded generators for presentations and representations used across the tests."""

from __future__ import annotations

import itertools
import random

from clannish.classify import is_clannish
from clannish.linalg import Field, Matrix, inverse
from clannish.quiver import Arrow, IdempotentLoop, Path, Presentation, Quiver, ZeroPath
from clannish.repvar import Representation, standard_idempotent


def _paths(q: Quiver, min_len: int, max_len: int):
    """Paths that neither start nor end at a special loop and never repeat one."""
    out = []
    stack = [(a.name,) for a in q.arrows if not a.special]
    while stack:
        w = stack.pop()
        last = q.arrow(w[-1])
        if min_len <= len(w) and not last.special:
            out.append(w)
        if len(w) < max_len:
            for b in q.outgoing(last.head):
                if b.special and last.special:
                    continue
                stack.append(w + (b.name,))
    return sorted(out)


def random_presentation(rng: random.Random, *, max_vertices: int = 5, special_prob: float = 0.4,
                        acyclic: bool = True, max_rel_len: int = 3, name: str = "random") -> Presentation:
    n = rng.randint(2, max_vertices)
    verts = [str(i) for i in range(1, n + 1)]
    arrows = []
    for k in range(rng.randint(1, n + 2)):
        i, j = rng.randrange(n), rng.randrange(n)
        if acyclic:
            if i == j:
                continue
            i, j = min(i, j), max(i, j)
        arrows.append(Arrow(f"x{k}", verts[i], verts[j]))
    for v in verts:
        if rng.random() < special_prob:
            arrows.append(Arrow(f"e{v}", v, v, special=True))
    q = Quiver(tuple(verts), tuple(arrows))
    candidates = _paths(q, 2, max_rel_len)
    rng.shuffle(candidates)
    chosen: list[tuple[str, ...]] = []
    for w in candidates[: rng.randint(0, len(candidates))]:
        contains = any(_sub(c, w) or _sub(w, c) for c in chosen)
        if not contains:
            chosen.append(w)
    rels = [ZeroPath(Path.of(q, w)) for w in chosen]
    rels += [IdempotentLoop(a.name) for a in q.special_loops]
    return Presentation(q, tuple(rels), name=name)


def _sub(small, big) -> bool:
    n = len(small)
    return any(big[i:i + n] == small for i in range(len(big) - n + 1))


def constructed_clannish(rng: random.Random, *, max_vertices: int = 6, special_prob: float = 0.4,
                         long_prob: float = 0.5, name: str = "constructed") -> Presentation:
    """A presentation built to satisfy the degree and continuation axioms.

    Ordinary pairs at a special vertex are all zero; elsewhere each arrow keeps
    at most one nonzero continuation on each side.  Longer zero paths are added
    at random.  Finite dimensionality is not guaranteed.
    """
    n = rng.randint(2, max_vertices)
    verts = [str(i) for i in range(1, n + 1)]
    special = {v for v in verts if rng.random() < special_prob}
    indeg = {v: int(v in special) for v in verts}
    outdeg = dict(indeg)
    arrows = []
    for k in range(rng.randint(1, 2 * n)):
        t, h = rng.sample(verts, 2)
        if outdeg[t] < 2 and indeg[h] < 2:
            arrows.append(Arrow(f"x{k}", t, h))
            outdeg[t] += 1
            indeg[h] += 1
    arrows += [Arrow(f"e{v}", v, v, special=True) for v in verts if v in special]
    q = Quiver(tuple(verts), tuple(arrows))

    zero: list[tuple[str, ...]] = []
    for v in verts:
        ins = [a.name for a in q.incoming(v) if not a.special]
        outs = [a.name for a in q.outgoing(v) if not a.special]
        pairs = [(x, y) for x in ins for y in outs]
        if v in special:
            zero += pairs
            continue
        rng.shuffle(pairs)
        used_in, used_out = set(), set()
        for x, y in pairs:
            if x not in used_in and y not in used_out and rng.random() < 0.8:
                used_in.add(x)
                used_out.add(y)
            else:
                zero.append((x, y))
    for w in _paths(q, 3, 4):
        if rng.random() < long_prob / 4 and not any(_sub(z, w) for z in zero):
            zero.append(w)
    rels = [ZeroPath(Path.of(q, w)) for w in zero]
    rels += [IdempotentLoop(a.name) for a in q.special_loops]
    return Presentation(q, tuple(rels), name=name)


def clannish_corpus(count: int = 24, seed: int = 7, need_special: bool = True) -> list[Presentation]:
    """Clannish presentations from the constructive generator, filtered by the classifier."""
    rng = random.Random(seed)
    out = []
    k = 0
    while len(out) < count:
        p = constructed_clannish(rng, name=f"clannish{k}")
        k += 1
        if need_special and not p.quiver.special_loops:
            continue
        if is_clannish(p):
            out.append(p)
    return out


def _values(field: Field) -> list:
    return field.elements() if field.is_finite else [field(x) for x in (-1, 0, 1)]


def random_invertible(rng: random.Random, field: Field, n: int) -> Matrix:
    while True:
        m = Matrix(n, n, tuple(tuple(rng.choice(_values(field)) for _ in range(n))
                               for _ in range(n)))
        try:
            inverse(m, field)
            return m
        except ValueError:
            pass


def random_rep(rng: random.Random, p: Presentation, field: Field, max_dim: int = 2) -> Representation:
    """Random matrices, with random idempotents on special loops; not necessarily valid."""
    q = p.quiver
    dim = {v: rng.randint(0, max_dim) for v in q.vertices}
    mats = {}
    for a in q.arrows:
        if a.special:
            n = dim[a.tail]
            g = random_invertible(rng, field, n)
            e = standard_idempotent(field, n, rng.randint(0, n))
            mats[a.name] = g.matmul(e, field).matmul(inverse(g, field), field)
        else:
            mats[a.name] = Matrix(dim[a.head], dim[a.tail], tuple(
                tuple(rng.choice(_values(field)) for _ in range(dim[a.tail]))
                for _ in range(dim[a.head])))
    return Representation(p, field, dim, mats)


def valid_reps(rng: random.Random, p: Presentation, field: Field, count: int,
               tries: int = 400) -> list[Representation]:
    from clannish.repvar import check_rep

    out = [Representation.zero(p, field, {v: 1 for v in p.quiver.vertices})]
    for _ in range(tries):
        if len(out) >= count:
            break
        m = random_rep(rng, p, field)
        if check_rep(m).valid:
            out.append(m)
    return out


def linear_a(n: int, relation_at: int | None = None) -> Presentation:
    """A_n: 1 -> 2 -> ... -> n with arrows a1..a(n-1), optionally a(k+1)*ak = 0."""
    verts = tuple(str(i) for i in range(1, n + 1))
    arrows = tuple(Arrow(f"a{i}", str(i), str(i + 1)) for i in range(1, n))
    q = Quiver(verts, arrows)
    rels = ()
    if relation_at is not None:
        k = relation_at
        rels = (ZeroPath(Path.of(q, (f"a{k}", f"a{k + 1}"))),)
    return Presentation(q, rels, name=f"A{n}")


def all_dims(vertices, bound: int):
    for values in itertools.product(range(bound + 1), repeat=len(vertices)):
        yield dict(zip(vertices, values))
