import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clannish.dsl import parse_presentation
from clannish.formats import Factor, StableDecompositionInput, parse_decomposition
from clannish.linalg import Field
from clannish.repvar import Representation, hom_dim
from clannish.stability import (
    SEMISTABLE,
    STABLE,
    UNSTABLE,
    GuardError,
    ModuliShape,
    check_stability,
    group_polystable_factors,
    moduli_shape,
    subrep_dimension_vectors,
    weight_pairing,
)
from clannish.words import band_module, enumerate_bands
from corpus import random_presentation, valid_reps

A2 = parse_presentation("vertex 1 2\narrow a: 1 -> 2\n")
KRONECKER = parse_presentation("vertex 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\n")
F2, F3 = Field.finite(2), Field.finite(3)
THETA = {"1": 1, "2": -1}


def a2(x, field=F2):
    return Representation(A2, field, {"1": 1, "2": 1}, {"a": [[x]]})


# --- oracle: subspaces as explicit sets of vectors, closure by applying matrices ---

def _span(gens, n, p):
    out = {tuple([0] * n)}
    for g in gens:
        out = {tuple((x + c * y) % p for x, y in zip(v, g)) for v in out for c in range(p)}
    return frozenset(out)


def _all_subspaces(n, p):
    vecs = list(itertools.product(range(p), repeat=n))
    return {_span(gens, n, p) for k in range(n + 1) for gens in itertools.combinations(vecs, k)}


def _apply(mat, v, p):
    return tuple(sum(r[j] * v[j] for j in range(len(v))) % p for r in mat.rows)


def oracle_subrep_dims(m):
    p = m.field.prime
    q = m.presentation.quiver
    verts = list(q.vertices)
    choices = [_all_subspaces(m.dim[v], p) for v in verts]
    out = set()
    for pick in itertools.product(*choices):
        sub = dict(zip(verts, pick))
        if all(_apply(m.matrices[a.name], v, p) in sub[a.head]
               for a in q.arrows for v in sub[a.tail]):
            out.add(tuple(_log(len(s), p) for s in pick))
    return out


def _log(size, p):
    k = 0
    while size > 1:
        size //= p
        k += 1
    return k


# --- weight pairing ---

def test_weight_pairing_examples():
    assert weight_pairing(THETA, {"1": 1, "2": 1}) == 0
    assert weight_pairing(THETA, {"1": 1, "2": 0}) == 1
    assert weight_pairing({"1": 0, "2": 0}, {"1": 3, "2": 5}) == 0
    with pytest.raises(ValueError):
        weight_pairing(THETA, {"1": 1})


# --- subrepresentations ---

def test_a2_subreps():
    assert subrep_dimension_vectors(a2(1)) == {(0, 0), (0, 1), (1, 1)}
    assert subrep_dimension_vectors(a2(0)) == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_zero_module_subreps():
    m = Representation.zero(A2, F2, {"1": 0, "2": 0})
    assert subrep_dimension_vectors(m) == {(0, 0)}


def _small_reps(seed, prime):
    rng = random.Random(seed)
    f = Field.finite(prime)
    p = random_presentation(rng, max_vertices=3, special_prob=0.3, acyclic=bool(seed % 2))
    return [m for m in valid_reps(rng, p, f, 4)
            if sum(max(1, prime ** x) for x in m.dim.values()) <= 40]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_subreps_match_vector_set_oracle(seed, prime):
    for m in _small_reps(seed, prime):
        if prime == 3 and max(m.dim.values(), default=0) > 2:
            continue
        got = subrep_dimension_vectors(m)
        assert got == oracle_subrep_dims(m)
        d = tuple(m.dim[v] for v in m.presentation.quiver.vertices)
        assert d in got and tuple(0 for _ in d) in got


def test_rationals_are_rejected():
    with pytest.raises(ValueError):
        subrep_dimension_vectors(a2(1, Field.rationals()))


def test_size_guard():
    p = parse_presentation("vertex 1 2\narrow a: 1 -> 2\n")
    m = Representation.zero(p, F2, {"1": 5, "2": 4})
    with pytest.raises(GuardError):
        check_stability(m, {"1": 4, "2": -5})
    with pytest.raises(GuardError):
        subrep_dimension_vectors(Representation.zero(p, F3, {"1": 8, "2": 0}))


# --- verdicts ---

def test_a2_verdicts():
    v = check_stability(a2(1), THETA)
    assert v.status == STABLE and v.certificate is None
    u = check_stability(a2(0), THETA)
    assert u.status == UNSTABLE
    assert u.certificate.kind == "subrepresentation"
    assert u.certificate.dimension == (1, 0) and u.certificate.pairing == 1
    assert u.replay(a2(0)) and v.replay(a2(1))


def test_total_weight_certificate():
    v = check_stability(a2(1), {"1": 1, "2": 0})
    assert v.status == UNSTABLE
    assert v.certificate.kind == "total-weight" and v.certificate.pairing == 1
    assert v.replay(a2(1))


def test_semistable_not_stable():
    m = Representation(A2, F2, {"1": 1, "2": 1}, {"a": [[0]]})
    v = check_stability(m, {"1": 0, "2": 0})
    assert v.status == SEMISTABLE
    assert v.certificate.pairing == 0
    assert v.replay(m)


def test_zero_weight_stable_iff_simple():
    simple = Representation(A2, F2, {"1": 1, "2": 0}, {})
    assert check_stability(simple, {"1": 0, "2": 0}).stable
    assert check_stability(a2(1), {"1": 0, "2": 0}).status == SEMISTABLE


def test_zero_module_convention():
    m = Representation.zero(A2, F2, {"1": 0, "2": 0})
    v = check_stability(m, THETA)
    assert v.status == SEMISTABLE and v.certificate is None and v.replay(m)


def test_forged_certificate_fails_replay():
    u = check_stability(a2(0), THETA)
    assert not u.replay(a2(1))


def _balanced_theta(rng, m):
    verts = list(m.presentation.quiver.vertices)
    theta = {v: rng.randint(-3, 3) for v in verts}
    ones = [v for v in verts if m.dim[v] == 1]
    if ones and rng.random() < 0.8:
        v = ones[0]
        theta[v] = 0
        theta[v] = -weight_pairing(theta, m.dim)
    return theta


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_certificates_replay_and_scaling(seed, prime):
    rng = random.Random(seed)
    for m in _small_reps(seed, prime):
        theta = _balanced_theta(rng, m)
        v = check_stability(m, theta)
        assert v.replay(m)
        if v.semistable:
            assert weight_pairing(theta, m.dim) == 0
        for c in (2, 3):
            assert check_stability(m, {x: c * t for x, t in theta.items()}).status == v.status
        if v.stable:
            assert hom_dim(m, m) == 1


def test_stability_is_field_specific_input():
    m = Representation(KRONECKER, F2, {"1": 1, "2": 1}, {"a": [[1]], "b": [[1]]})
    assert check_stability(m, THETA).stable


# --- grouping ---

def test_grouping_examples():
    m, n = a2(1), Representation(A2, F2, {"1": 1, "2": 0}, {})
    dec = group_polystable_factors([m, m, n], [True] * 3, ["x", "x2", "y"], [0, 0, 0])
    assert [(f.descriptor, f.multiplicity) for f in dec.factors] == [("x", 2), ("y", 1)]
    single = group_polystable_factors([m], [check_stability(m, THETA)])
    assert [f.multiplicity for f in single.factors] == [1]
    with pytest.raises(ValueError):
        group_polystable_factors([m], [False])
    with pytest.raises(ValueError):
        group_polystable_factors([m, n], [True])


def test_distinct_band_parameters_stay_apart():
    (b,) = enumerate_bands(KRONECKER, 2)
    mods = [band_module(KRONECKER, b, lam, F3) for lam in (1, 2)]
    verdicts = [check_stability(x, THETA) for x in mods]
    assert all(v.stable for v in verdicts)
    dec = group_polystable_factors(mods, verdicts)
    assert [f.multiplicity for f in dec.factors] == [1, 1]


# --- moduli shapes ---

def _dec(*items):
    return StableDecompositionInput(tuple(Factor(f"band:{i}", m, c) for i, (m, c) in
                                          enumerate(items)))


def test_moduli_examples():
    assert str(moduli_shape(_dec((2, 1), (3, 1)), True)) == "P^2 x P^3"
    assert str(moduli_shape(_dec((4, 0)), True)) == "point"
    assert str(moduli_shape(_dec((1, 1)), True)) == "P^1"
    assert str(moduli_shape(_dec((2, 1), (5, 0), (3, 1)), True)) == "P^2 x P^3"


def test_moduli_errors():
    with pytest.raises(ValueError):
        moduli_shape(_dec((1, 1)), False)
    with pytest.raises(ValueError):
        moduli_shape(StableDecompositionInput((Factor("x", 1, 1, stable=False),)), True)
    with pytest.raises(ValueError):
        moduli_shape(StableDecompositionInput((Factor("x", 1, None),)), True)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 6), st.sampled_from([0, 1])), max_size=6))
def test_moduli_dimension_is_retained_multiplicity(items):
    shape = moduli_shape(_dec(*items), True)
    assert shape.dimension == sum(m for m, c in items if c == 1)
    assert all(e >= 1 for e in shape.exponents)
    assert isinstance(shape, ModuliShape)


def test_decomposition_file_defaults():
    dec = parse_decomposition("factor band:b^*a m=2\nfactor string:a m=1\n")
    assert [f.c_value for f in dec.factors] == [1, 0]
    assert str(moduli_shape(dec, True)) == "P^2"
