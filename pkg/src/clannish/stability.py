"""King stability by exhaustive subspace search over F_p, and moduli shapes.

Verdicts are field specific: a representation over F_2 is tested against
subrepresentations defined over F_2 only.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .formats import Factor, StableDecompositionInput
from .linalg import Field, in_span, rref
from .repvar import Representation, hom_dim

UNSTABLE = "unstable"
SEMISTABLE = "semistable_not_stable"
STABLE = "stable"

DEFAULT_MAX_TOTAL_DIM = 8
MAX_CANDIDATES = 10 ** 6


class GuardError(ValueError):
    """Brute force would exceed the configured size limits."""


def weight_pairing(theta: Mapping[str, int], dim: Mapping[str, int]) -> int:
    if set(theta) != set(dim):
        raise ValueError("weight and dimension vector have different vertex sets")
    return sum(theta[v] * dim[v] for v in dim)


def _gaussian_binomial(n: int, k: int, p: int) -> int:
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def _subspaces(n: int, field: Field):
    """Every subspace of F_p^n as (rref rows, pivots), by dimension then pivot pattern."""
    elems = field.elements()
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            slots = [(i, j) for i, pc in enumerate(pivots)
                     for j in range(pc + 1, n) if j not in pivots]
            for values in itertools.product(elems, repeat=len(slots)):
                rows = [[0] * n for _ in range(k)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = 1
                for (i, j), x in zip(slots, values):
                    rows[i][j] = x
                yield rows, list(pivots)


def _maps_into(m: Representation, arrow: str, src, dst) -> bool:
    f = m.field
    mat = m.matrices[arrow]
    dst_rows, dst_piv = dst
    for u in src[0]:
        image = [f.norm(sum(r[j] * u[j] for j in range(len(u)))) for r in mat.rows]
        if not in_span(image, dst_rows, dst_piv, f):
            return False
    return True


def _check_guard(m: Representation, max_total_dim: int) -> None:
    if not m.field.is_finite:
        raise ValueError("subrepresentations can only be enumerated over a finite field")
    if m.total_dim > max_total_dim:
        raise GuardError(f"total dimension {m.total_dim} exceeds the limit {max_total_dim}")
    p = m.field.prime
    count = math.prod(sum(_gaussian_binomial(n, k, p) for k in range(n + 1))
                      for n in m.dim.values())
    if count > MAX_CANDIDATES:
        raise GuardError(f"{count} candidate subspace tuples exceed the limit {MAX_CANDIDATES}")


def _subreps(m: Representation, max_total_dim: int) -> dict[tuple, dict]:
    """Dimension vector (in vertex order) -> first subrepresentation found with it."""
    _check_guard(m, max_total_dim)
    q = m.presentation.quiver
    verts = list(q.vertices)
    spaces = {v: list(_subspaces(m.dim[v], m.field)) for v in verts}
    order = {v: i for i, v in enumerate(verts)}
    # arrows checked once both endpoints are chosen
    due = {v: [a for a in q.arrows if max(order[a.tail], order[a.head]) == order[v]]
           for v in verts}
    found: dict[tuple, dict] = {}
    chosen: dict = {}

    def go(i):
        if i == len(verts):
            key = tuple(len(chosen[v][0]) for v in verts)
            if key not in found:
                found[key] = {v: [list(r) for r in chosen[v][0]] for v in verts}
            return
        v = verts[i]
        for s in spaces[v]:
            chosen[v] = s
            if all(_maps_into(m, a.name, chosen[a.tail], chosen[a.head]) for a in due[v]):
                go(i + 1)
        del chosen[v]

    go(0)
    return found


def subrep_dimension_vectors(m: Representation,
                             max_total_dim: int = DEFAULT_MAX_TOTAL_DIM) -> set[tuple[int, ...]]:
    """Dimension vectors (in vertex order) of all subrepresentations."""
    return set(_subreps(m, max_total_dim))


@dataclass(frozen=True)
class Certificate:
    kind: str  # "total-weight" or "subrepresentation"
    dimension: tuple[int, ...]
    pairing: int
    subspaces: Mapping[str, list] | None = None

    def as_dict(self) -> dict:
        return {"kind": self.kind, "dimension": list(self.dimension), "pairing": self.pairing,
                "subspaces": None if self.subspaces is None else
                {v: [list(r) for r in b] for v, b in self.subspaces.items()}}


@dataclass(frozen=True)
class StabilityVerdict:
    status: str
    theta: Mapping[str, int]
    certificate: Certificate | None = None

    @property
    def semistable(self) -> bool:
        return self.status != UNSTABLE

    @property
    def stable(self) -> bool:
        return self.status == STABLE

    def as_dict(self) -> dict:
        return {"status": self.status, "theta": dict(self.theta),
                "certificate": None if self.certificate is None else self.certificate.as_dict()}

    def replay(self, m: Representation, max_total_dim: int = DEFAULT_MAX_TOTAL_DIM) -> bool:
        """Re-derive the claimed inequality from the certificate alone."""
        q = m.presentation.quiver
        c = self.certificate
        if self.status == STABLE:
            d = tuple(m.dim[v] for v in q.vertices)
            total = weight_pairing(self.theta, m.dim)
            return total == 0 and all(
                _pair(self.theta, q.vertices, e) < 0
                for e in subrep_dimension_vectors(m, max_total_dim) if 0 < sum(e) and e != d)
        if c is None:
            return self.status == SEMISTABLE and m.total_dim == 0
        if c.kind == "total-weight":
            return self.status == UNSTABLE and weight_pairing(self.theta, m.dim) != 0
        f = m.field
        spaces = {}
        for v in q.vertices:
            rows, piv = rref(c.subspaces[v], m.dim[v], f)
            if len(rows) != len(c.subspaces[v]):
                return False
            spaces[v] = (rows, piv)
        if tuple(len(spaces[v][0]) for v in q.vertices) != c.dimension:
            return False
        if not all(_maps_into(m, a.name, spaces[a.tail], spaces[a.head]) for a in q.arrows):
            return False
        value = _pair(self.theta, q.vertices, c.dimension)
        if self.status == UNSTABLE:
            return value > 0
        d = tuple(m.dim[v] for v in q.vertices)
        return value == 0 and 0 < sum(c.dimension) and c.dimension != d


def _pair(theta, vertices: Sequence[str], dim: Sequence[int]) -> int:
    return sum(theta[v] * x for v, x in zip(vertices, dim))


def check_stability(m: Representation, theta: Mapping[str, int],
                    max_total_dim: int = DEFAULT_MAX_TOTAL_DIM) -> StabilityVerdict:
    q = m.presentation.quiver
    theta = {v: int(theta[v]) for v in q.vertices}
    total = weight_pairing(theta, m.dim)
    d = tuple(m.dim[v] for v in q.vertices)
    if total != 0:
        return StabilityVerdict(UNSTABLE, theta, Certificate("total-weight", d, total))
    subs = _subreps(m, max_total_dim)
    proper = sorted((e for e in subs if 0 < sum(e) and e != d), key=lambda e: (sum(e), e))
    for e in proper:
        value = _pair(theta, q.vertices, e)
        if value > 0:
            return StabilityVerdict(UNSTABLE, theta,
                                    Certificate("subrepresentation", e, value, subs[e]))
    for e in proper:
        if _pair(theta, q.vertices, e) == 0:
            return StabilityVerdict(SEMISTABLE, theta,
                                    Certificate("subrepresentation", e, 0, subs[e]))
    if m.total_dim == 0:
        return StabilityVerdict(SEMISTABLE, theta)
    return StabilityVerdict(STABLE, theta)


def group_polystable_factors(factors: Sequence[Representation],
                             verdicts: Sequence[StabilityVerdict | bool],
                             descriptors: Sequence[str] | None = None,
                             c_values: Sequence[int | None] | None = None,
                             ) -> StableDecompositionInput:
    """Group stable factors into isomorphism classes.

    Two stable representations are isomorphic iff they share a dimension
    vector and have nonzero Hom in both directions.
    """
    if len(verdicts) != len(factors):
        raise ValueError("one verdict per factor is required")
    for i, v in enumerate(verdicts):
        if not (v.stable if isinstance(v, StabilityVerdict) else v):
            raise ValueError(f"factor {i} is not marked stable")
    classes: list[list[int]] = []
    for i, m in enumerate(factors):
        for cls in classes:
            n = factors[cls[0]]
            if m.dim == n.dim and hom_dim(m, n) >= 1 and hom_dim(n, m) >= 1:
                cls.append(i)
                break
        else:
            classes.append([i])
    out = []
    for k, cls in enumerate(classes):
        i = cls[0]
        name = descriptors[i] if descriptors else f"rep:{k}"
        c = c_values[i] if c_values else None
        out.append(Factor(name, len(cls), c, True, factors[i]))
    return StableDecompositionInput(tuple(out))


@dataclass(frozen=True)
class ModuliShape:
    exponents: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return sum(self.exponents)

    def __str__(self) -> str:
        if not self.exponents:
            return "point"
        return " x ".join(f"P^{m}" for m in self.exponents)


def moduli_shape(dec: StableDecompositionInput, clannish) -> ModuliShape:
    """Product of projective spaces P^m, one per retained family factor."""
    if not clannish:
        raise ValueError("moduli shapes are only available for clannish presentations")
    exps = []
    for f in dec.factors:
        if not f.stable:
            raise ValueError(f"factor {f.descriptor} is not stable")
        if f.c_value is None:
            raise ValueError(f"factor {f.descriptor} has no c value")
        if f.c_value == 1:
            exps.append(f.multiplicity)
    return ModuliShape(tuple(exps))
