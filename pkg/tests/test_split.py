import random

import pytest

from clannish.classify import is_clannish, is_skewed_gentle
from clannish.dsl import parse_presentation, serialize_presentation
from clannish.linalg import Field
from clannish.quiver import IdempotentLoop, LinearCombination, ZeroPath, relation_key
from clannish.repvar import Representation, check_rep
from clannish.split import (
    EnvelopeError,
    NotClannishError,
    envelope_details,
    skewed_gentle_envelope,
    split_presentation,
    split_rep,
)
from corpus import clannish_corpus, valid_reps

LOOPED = open(__file__.replace("test_split.py", "data/looped.quiver")).read()
Q = Field.rationals()


def test_looped_split():
    out, smap = split_presentation(parse_presentation(LOOPED))
    q = out.quiver
    assert q.vertices == ("1", "2+", "2-", "3", "4")
    assert {(a.name, a.tail, a.head) for a in q.arrows} == {
        ("+a", "1", "2+"), ("-a", "1", "2-"), ("b+", "2+", "3"), ("b-", "2-", "3"),
        ("c", "3", "4")}
    assert [str(r) for r in out.relations] == ["b+*+a + b-*-a", "c*b+*+a"]
    assert smap.dropped == ("f",)
    assert smap.vertex_map["2"] == ("2+", "2-")
    assert out.provenance == "split-admissible"


def test_split_map_sizes_follow_special_endpoints():
    for p in clannish_corpus(20, seed=3):
        out, smap = split_presentation(p)
        special = set(p.quiver.special_vertices)
        for v, image in smap.vertex_map.items():
            assert len(image) == (2 if v in special else 1)
        for a in p.quiver.ordinary_arrows:
            k = (a.tail in special) + (a.head in special)
            assert len(smap.arrow_map[a.name]) == 2 ** k
        assert set(smap.dropped) == {a.name for a in p.quiver.special_loops}


def _admissible(p) -> bool:
    if p.quiver.special_loops:
        return False
    for r in p.relations:
        if isinstance(r, IdempotentLoop):
            return False
        if isinstance(r, ZeroPath) and len(r.path) < 2:
            return False
        if isinstance(r, LinearCombination) and any(len(t) != 2 for _, t in r.terms):
            return False
    return True


def test_split_output_is_admissible_on_corpus():
    for p in clannish_corpus(30):
        out, _ = split_presentation(p)
        assert _admissible(out), serialize_presentation(out)
        keys = [relation_key(r) for r in out.relations]
        assert len(keys) == len(set(keys))


def test_split_without_special_loops_is_identity():
    p = parse_presentation("vertex 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelations\nzero b*a\n")
    out, _ = split_presentation(p)
    assert out.quiver == p.quiver
    assert out.relations == p.relations


def test_lonely_special_vertex_becomes_two_points():
    out, _ = split_presentation(parse_presentation("vertex 1\nloop f: 1 special\n"))
    assert out.quiver.vertices == ("1+", "1-")
    assert out.quiver.arrows == ()
    assert out.relations == ()


def test_not_clannish_is_rejected():
    p = parse_presentation("vertex 1 2\narrow a: 1 -> 2\nloop f: 2 special\nrelations\nzero f*a\n")
    with pytest.raises(NotClannishError):
        split_presentation(p)


def _looped_rep(e):
    p = parse_presentation(LOOPED)
    mats = {"a": [[1], [0]], "f": e, "b": [[0, 1]], "c": [[1]]}
    return Representation(p, Q, {"1": 1, "2": 2, "3": 1, "4": 1}, mats)


def test_split_rep_looped():
    m = _looped_rep([[1, 0], [0, 0]])
    assert check_rep(m).valid
    s = split_rep(m)
    assert s.dim == {"1": 1, "2+": 1, "2-": 1, "3": 1, "4": 1}
    assert check_rep(s).valid
    assert s.matrices["+a"].tolist() == [[1]]
    assert s.matrices["b-"].tolist() == [[1]]


@pytest.mark.parametrize("e, plus", [([[1, 0], [0, 1]], 2), ([[0, 0], [0, 0]], 0)])
def test_split_rep_extreme_idempotents(e, plus):
    p = parse_presentation("vertex 1 2\narrow a: 1 -> 2\nloop f: 2 special\n")
    m = Representation(p, Q, {"1": 1, "2": 2}, {"a": [[1], [1]], "f": e})
    s = split_rep(m)
    assert (s.dim["2+"], s.dim["2-"]) == (plus, 2 - plus)
    assert check_rep(s).valid


def test_split_rep_rejects_invalid():
    m = _looped_rep([[1, 0], [0, 0]])
    bad = Representation(m.presentation, Q, m.dim, {**m.matrices, "b": [[1, 0]]})
    with pytest.raises(ValueError):
        split_rep(bad)


@pytest.mark.parametrize("prime", [2, 3])
def test_split_rep_on_corpus(prime):
    f = Field.finite(prime)
    rng = random.Random(prime)
    for p in clannish_corpus(24):
        for m in valid_reps(rng, p, f, 4):
            s = split_rep(m)
            assert check_rep(s).valid
            for w in p.quiver.special_vertices:
                assert s.dim[w + "+"] + s.dim[w + "-"] == m.dim[w]
            assert s.total_dim == m.total_dim


def test_envelope_looped():
    res = envelope_details(parse_presentation(LOOPED))
    assert [str(r) for r in res.presentation.relations] == ["b*a", "f^2 - f"]
    assert res.dropped == ("c*b*f*a",)
    assert res.unique
    assert res.presentation.provenance == "envelope"


def test_envelope_of_skewed_gentle_is_itself():
    p = parse_presentation(LOOPED.replace("zero c*b*f*a\n", ""))
    assert skewed_gentle_envelope(p).relations == p.relations


def test_envelope_of_special_biserial_keeps_needed_length_two():
    text = ("vertex 1 2 3 4 5\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 4\n"
            "arrow d: 5 -> 2\nrelations\nzero b*d\nzero c*b*a\n")
    p = parse_presentation(text)
    env = skewed_gentle_envelope(p)
    assert [str(r) for r in env.relations] == ["b*d"]
    assert is_skewed_gentle(env)


def test_envelope_on_corpus():
    for p in clannish_corpus(30):
        env = skewed_gentle_envelope(p)
        assert is_skewed_gentle(env)
        original = {relation_key(r) for r in p.relations}
        assert all(relation_key(r) in original for r in env.relations)


def test_envelope_can_fail_on_cycle_with_long_relations():
    p = parse_presentation("vertex 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 1\n"
                           "relations\nzero c*b*a\nzero a*c*b\nzero b*a*c\n")
    assert is_clannish(p)
    with pytest.raises(EnvelopeError):
        skewed_gentle_envelope(p)
