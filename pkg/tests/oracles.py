"""Brute-force oracles over small finite fields, independent of the library's reasoning."""

from __future__ import annotations

import itertools
from functools import lru_cache

from clannish.linalg import Field, Matrix, matrix_rank


@lru_cache(maxsize=None)
def matrices_with_ranks(h: int, t: int, prime: int) -> tuple:
    f = Field.finite(prime)
    out = []
    for entries in itertools.product(range(prime), repeat=h * t):
        m = Matrix(h, t, tuple(tuple(entries[i * t:(i + 1) * t]) for i in range(h)))
        out.append((m, matrix_rank(m, f)))
    return tuple(out)


def maximal(tuples) -> list[tuple]:
    tuples = set(tuples)
    keep = [r for r in tuples
            if not any(s != r and all(x >= y for x, y in zip(s, r)) for s in tuples)]
    return sorted(keep, reverse=True)


def attained_rank_tuples(p, dim, prime: int = 2) -> set[tuple]:
    """Rank tuples (arrow order) of every point of rep(Q, I, d) over F_p, by full enumeration."""
    f = Field.finite(prime)
    q = p.quiver
    zero = [tuple(q.arrow_names.index(a) for a in r.path.arrows) for r in p.zero_relations]
    choices = [matrices_with_ranks(dim[a.head], dim[a.tail], prime) for a in q.arrows]
    out = set()
    for point in itertools.product(*choices):
        ok = True
        for idx in zero:
            prod = point[idx[0]][0]
            for i in idx[1:]:
                prod = point[i][0].matmul(prod, f)
            if not prod.is_zero():
                ok = False
                break
        if ok:
            out.add(tuple(c[1] for c in point))
    return out


def attained_rank_tuples_factored(p, dim, prime: int = 2) -> set[tuple]:
    """Same as :func:`attained_rank_tuples` for one length-two relation, enumerating only
    the related pair; free arrows contribute every rank their shape allows."""
    f = Field.finite(prime)
    q = p.quiver
    (r,) = p.zero_relations
    ix, iy = (q.arrow_names.index(a) for a in r.path.arrows)
    choices = [matrices_with_ranks(dim[a.head], dim[a.tail], prime) for a in q.arrows]
    pairs = {(x[1], y[1]) for x in choices[ix] for y in choices[iy]
             if y[0].matmul(x[0], f).is_zero()}
    free = [sorted({c[1] for c in ch}) for ch in choices]
    out = set()
    for rx, ry in pairs:
        opts = [[rx] if i == ix else [ry] if i == iy else free[i] for i in range(len(choices))]
        out.update(itertools.product(*opts))
    return out


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def idempotent_points(n: int, prime: int):
    """Every idempotent n x n matrix over F_p."""
    f = Field.finite(prime)
    for entries in itertools.product(range(prime), repeat=n * n):
        e = Matrix(n, n, tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n)))
        if e.matmul(e, f) == e:
            yield e
