"""Points of representation varieties and their dimension counts.

All counts are ranks of exact linear systems over Q or F_p.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

from .classify import is_gentle_pair
from .linalg import Field, Matrix, matrix_rank, nullspace, product, rank, rref
from .quiver import (
    Arrow,
    IdempotentLoop,
    Presentation,
    PresentationError,
    Quiver,
    ZeroPath,
)


@dataclass(frozen=True)
class Representation:
    presentation: Presentation
    field: Field
    dim: Mapping[str, int]
    matrices: Mapping[str, Matrix]

    def __post_init__(self):
        q = self.presentation.quiver
        dim = {v: int(self.dim.get(v, 0)) for v in q.vertices}
        if set(self.dim) - set(q.vertices):
            raise PresentationError(f"unknown vertices {sorted(set(self.dim) - set(q.vertices))}")
        if any(x < 0 for x in dim.values()):
            raise PresentationError("negative dimension")
        mats = {}
        for a in q.arrows:
            shape = (dim[a.head], dim[a.tail])
            m = self.matrices.get(a.name)
            if m is None:
                m = Matrix.zeros(self.field, *shape)
            elif not isinstance(m, Matrix):
                m = Matrix.of(self.field, m, ncols=shape[1])
            if m.shape != shape:
                raise PresentationError(
                    f"matrix for {a.name} has shape {m.shape}, expected {shape}")
            mats[a.name] = m
        extra = set(self.matrices) - set(mats)
        if extra:
            raise PresentationError(f"matrices for unknown arrows {sorted(extra)}")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "matrices", mats)

    @classmethod
    def zero(cls, presentation: Presentation, field: Field, dim: Mapping[str, int]) -> "Representation":
        return cls(presentation, field, dict(dim), {})

    @property
    def total_dim(self) -> int:
        return sum(self.dim.values())

    def evaluate(self, relation) -> Matrix:
        f = self.field
        if isinstance(relation, IdempotentLoop):
            e = self.matrices[relation.arrow]
            return e.matmul(e, f).sub(e, f)
        if isinstance(relation, ZeroPath):
            return self.path_matrix(relation.path.arrows)
        acc = None
        for c, path in relation.terms:
            term = self.path_matrix(path.arrows).scale(f(c), f)
            acc = term if acc is None else acc.add(term, f)
        return acc

    def path_matrix(self, arrows: Sequence[str]) -> Matrix:
        return product((self.matrices[a] for a in arrows), self.field)

    def direct_sum(self, other: "Representation") -> "Representation":
        _same_space(self, other)
        f = self.field
        mats = {}
        for a in self.presentation.quiver.arrows:
            x, y = self.matrices[a.name], other.matrices[a.name]
            rows = [tuple(r) + (f.zero,) * y.ncols for r in x.rows]
            rows += [(f.zero,) * x.ncols + tuple(r) for r in y.rows]
            mats[a.name] = Matrix(x.nrows + y.nrows, x.ncols + y.ncols, tuple(rows))
        dim = {v: self.dim[v] + other.dim[v] for v in self.dim}
        return Representation(self.presentation, f, dim, mats)


class RepCheck(NamedTuple):
    valid: bool
    violated: str | None


def check_rep(m: Representation) -> RepCheck:
    for r in m.presentation.relations:
        if not m.evaluate(r).is_zero():
            return RepCheck(False, str(r))
    return RepCheck(True, None)


def _same_space(m: Representation, n: Representation) -> None:
    if m.field != n.field:
        raise ValueError(f"field mismatch: {m.field.tag} vs {n.field.tag}")
    if m.presentation != n.presentation:
        raise ValueError("representations live over different presentations")


def _kernel_dim(unknowns: Mapping, equations, field: Field) -> int:
    """Dimension of the solution space of ``sum L @ X_key @ R = 0`` systems.

    ``unknowns`` maps key -> (rows, cols); each equation is
    ``(nrows, ncols, [(key, L, R), ...])`` with ``None`` standing for identity.
    """
    offsets, n = {}, 0
    for key, (r, c) in unknowns.items():
        offsets[key] = n
        n += r * c
    system = []
    for nrows, ncols, terms in equations:
        for p in range(nrows):
            for qq in range(ncols):
                row = [field.zero] * n
                for key, left, right in terms:
                    xr, xc = unknowns[key]
                    base = offsets[key]
                    lrow = range(xr) if left is not None else (p,)
                    for i in lrow:
                        lv = left.rows[p][i] if left is not None else field.one
                        if lv == 0:
                            continue
                        for j in (range(xc) if right is not None else (qq,)):
                            rv = right.rows[j][qq] if right is not None else field.one
                            if rv != 0:
                                k = base + i * xc + j
                                row[k] = field.norm(row[k] + lv * rv)
                if any(x != 0 for x in row):
                    system.append(row)
    return n - rank(system, n, field)


def hom_dim(m: Representation, n: Representation) -> int:
    """dim Hom(M, N): maps phi with phi(ha) M(a) = N(a) phi(ta) for every arrow."""
    _same_space(m, n)
    f = m.field
    q = m.presentation.quiver
    unknowns = {v: (n.dim[v], m.dim[v]) for v in q.vertices}
    eqs = []
    for a in q.arrows:
        neg = n.matrices[a.name].scale(f.norm(-f.one), f)
        eqs.append((n.dim[a.head], m.dim[a.tail],
                    [(a.head, None, m.matrices[a.name]), (a.tail, neg, None)]))
    return _kernel_dim(unknowns, eqs, f)


def gl_dim(dim: Mapping[str, int]) -> int:
    return sum(x * x for x in dim.values())


def _require_valid(m: Representation) -> None:
    ok, bad = check_rep(m)
    if not ok:
        raise ValueError(f"representation violates relation {bad}")


def orbit_dim(m: Representation) -> int:
    """dim GL(d) - dim End(M)."""
    _require_valid(m)
    return gl_dim(m.dim) - hom_dim(m, m)


def tangent_dim(m: Representation) -> int:
    """Dimension of the Zariski tangent space of rep(Q, I, d) at M."""
    _require_valid(m)
    f = m.field
    q = m.presentation.quiver
    unknowns = {a.name: (m.dim[a.head], m.dim[a.tail]) for a in q.arrows}
    eqs = []
    for r in m.presentation.relations:
        if isinstance(r, IdempotentLoop):
            e = m.matrices[r.arrow]
            n = e.nrows
            minus = Matrix.identity(f, n).scale(f.norm(-f.one), f)
            eqs.append((n, n, [(r.arrow, None, e), (r.arrow, e, None), (r.arrow, minus, None)]))
            continue
        terms_in = [(f.one, r.path)] if isinstance(r, ZeroPath) else \
            [(f(c), p) for c, p in r.terms]
        path0 = terms_in[0][1]
        terms = []
        for c, path in terms_in:
            arrows = path.arrows
            for i, x in enumerate(arrows):
                left = m.path_matrix(arrows[i + 1:]) if i + 1 < len(arrows) else None
                right = m.path_matrix(arrows[:i]) if i > 0 else None
                if left is not None:
                    left = left.scale(c, f)
                elif c != 1:
                    left = Matrix.identity(f, m.dim[q.arrow(x).head]).scale(c, f)
                terms.append((x, left, right))
        eqs.append((m.dim[path0.target], m.dim[path0.source], terms))
    return _kernel_dim(unknowns, eqs, f)


def component_dim(m: Representation, band_params: int) -> int:
    """orbit_dim(M) + k for a generic point M of a component with k band families.

    Genericity of ``m`` is the caller's responsibility.
    """
    if band_params < 0:
        raise ValueError("band parameter count is nonnegative")
    return orbit_dim(m) + band_params


def idempotent_presentation() -> Presentation:
    """One vertex carrying one special loop ``f`` with f^2 = f."""
    q = Quiver(("v",), (Arrow("f", "v", "v", special=True),))
    return Presentation(q, (IdempotentLoop("f"),), name="idempotent")


class IdempotentComponent(NamedTuple):
    rank: int
    dimension: int


def idempotent_component(e: Matrix, field: Field) -> IdempotentComponent:
    """Rank of an idempotent and the dimension of its conjugacy class GL_n . A_r."""
    if e.nrows != e.ncols:
        raise ValueError("idempotent must be square")
    if e.matmul(e, field) != e:
        raise ValueError("matrix is not idempotent")
    r = matrix_rank(e, field)
    assert e.trace(field) == field(r)
    m = Representation(idempotent_presentation(), field, {"v": e.nrows}, {"f": e})
    return IdempotentComponent(r, orbit_dim(m))


def standard_idempotent(field: Field, n: int, r: int) -> Matrix:
    """diag(I_r, 0) of size n."""
    return Matrix(n, n, tuple(
        tuple(field.one if i == j and i < r else field.zero for j in range(n)) for i in range(n)))


class NotGentleError(ValueError):
    pass


def _rank_constraints(p: Presentation, dim: Mapping[str, int]):
    q = p.quiver
    arrows = [a.name for a in q.arrows]
    bounds = [min(dim[a.head], dim[a.tail]) for a in q.arrows]
    idx = {a: i for i, a in enumerate(arrows)}
    pairs = []
    for r in p.zero_relations:
        a, b = r.path.arrows
        pairs.append((idx[a], idx[b], dim[q.arrow(a).head]))
    return arrows, bounds, pairs


def maximal_rank_sequences(p: Presentation, dim: Mapping[str, int]) -> list[dict[str, int]]:
    """Maximal rank sequences indexing the irreducible components of a gentle rep variety."""
    verdict = is_gentle_pair(p)
    if not verdict:
        raise NotGentleError("presentation is not a gentle pair: "
                             + "; ".join(w.message for w in verdict.witnesses))
    arrows, bounds, pairs = _rank_constraints(p, dim)

    def ok(r):
        return all(r[i] + r[j] <= d for i, j, d in pairs)

    out = []
    for r in itertools.product(*(range(b + 1) for b in bounds)):
        if not ok(r):
            continue
        bumped = (r[:i] + (r[i] + 1,) + r[i + 1:] for i in range(len(r)) if r[i] < bounds[i])
        if not any(ok(s) for s in bumped):
            out.append(r)
    out.sort(reverse=True)
    return [dict(zip(arrows, r)) for r in out]


def _random_vector_in(basis: list[list], field: Field, rng: random.Random, length: int) -> list:
    if not basis:
        return [field.zero] * length
    coeffs = [rng.randrange(field.prime) for _ in basis]
    return [field.norm(sum(c * b[i] for c, b in zip(coeffs, basis))) for i in range(length)]


def realize_rank_sequence(p: Presentation, dim: Mapping[str, int], ranks: Mapping[str, int],
                          field: Field, rng: random.Random, trials: int = 200) -> Representation | None:
    """Random search for a point of rep(Q, I, d) with rank M(a) = r_a for every arrow.

    Arrows are filled in quiver order as ``U @ V`` with the columns of ``U``
    inside the kernel of an already-chosen successor in a length-two relation
    and the rows of ``V`` killing the image of an already-chosen predecessor.
    """
    if not field.is_finite:
        raise ValueError("random search needs a finite field")
    q = p.quiver
    zero2 = [r.path.arrows for r in p.zero_relations if len(r.path) == 2]
    for _ in range(trials):
        mats: dict[str, Matrix] = {}
        for a in q.arrows:
            h, t, r = dim[a.head], dim[a.tail], ranks[a.name]
            col_space = [[field.one if i == j else field.zero for i in range(h)] for j in range(h)]
            row_space = [[field.one if i == j else field.zero for i in range(t)] for j in range(t)]
            for x, y in zero2:
                if y == a.name and x in mats:
                    # V M(x) = 0: rows of V in the left kernel of M(x)
                    row_space = _intersect(row_space, nullspace(mats[x].transpose().rows, t, field), t, field)
                if x == a.name and y in mats:
                    col_space = _intersect(col_space, nullspace(mats[y].rows, h, field), h, field)
            u = [_random_vector_in(col_space, field, rng, h) for _ in range(r)]
            v = [_random_vector_in(row_space, field, rng, t) for _ in range(r)]
            rows = [[field.norm(sum(u[k][i] * v[k][j] for k in range(r))) for j in range(t)]
                    for i in range(h)]
            mats[a.name] = Matrix(h, t, tuple(tuple(row) for row in rows))
        m = Representation(p, field, dict(dim), mats)
        if check_rep(m).valid and all(matrix_rank(mats[a], field) == ranks[a] for a in mats):
            return m
    return None


def _intersect(a: list[list], b: list[list], n: int, field: Field) -> list[list]:
    """Basis of the intersection of two subspaces given by spanning lists."""
    if not a or not b:
        return []
    # x = sum s_i a_i = sum t_j b_j
    cols = a + [[field.norm(-x) for x in v] for v in b]
    mat = [[c[i] for c in cols] for i in range(n)]
    sols = nullspace(mat, len(cols), field)
    out = []
    for s in sols:
        vec = [field.norm(sum(s[k] * a[k][i] for k in range(len(a)))) for i in range(n)]
        out.append(vec)
    red, _ = rref(out, n, field)
    return red
