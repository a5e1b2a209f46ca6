import random

import pytest

from dehn_graph import enumerate as en
from dehn_graph.enumerate import (EnumSpec, canonical, canonical_sign_vectors, count_pairs, enumerate_pairs,
                                  enumerate_skeletons, group_elements, random_pair, skeleton_from_pair)
from dehn_graph.graph import build_pair, check_parity_rule

from oracles import naive_sphere_pairs

SHAPES = [(2, 2, 1), (2, 3, 1), (2, 4, 1), (4, 2, 1), (2, 2, 2)]


def canonical_key(pair):
    return canonical(skeleton_from_pair(pair)).key()


@pytest.mark.parametrize("p,q,d", SHAPES)
def test_counts_match_generate_and_filter(p, q, d):
    raws = naive_sphere_pairs(p, q, d)
    spec = EnumSpec(p=p, q=q, delta=d, isomorph_rejection=False)
    assert count_pairs(spec) == len(raws)


@pytest.mark.parametrize("p,q,d", SHAPES)
def test_classes_match_generate_and_filter(p, q, d):
    naive = {canonical_key(build_pair(raw)) for raw in naive_sphere_pairs(p, q, d)}
    ours = [canonical_key(pr) for pr in enumerate_pairs(EnumSpec(p=p, q=q, delta=d))]
    assert len(ours) == len(set(ours))
    assert set(ours) == naive


def test_every_enumerated_pair_is_valid():
    for pair in enumerate_pairs(EnumSpec(p=(2, 3, 4), q=(2, 3, 4), delta=(1, 2))):
        assert pair.gp.euler_characteristic() == pair.chi_p == 2
        assert pair.gq.euler_characteristic() == pair.chi_q == 2
        assert check_parity_rule(pair).ok
        assert canonical_key(pair) == canonical(skeleton_from_pair(pair)).key()


def test_canonical_form_is_invariant():
    rng = random.Random(4)
    for pair in enumerate_pairs(EnumSpec(p=(2, 4), q=(2, 3), delta=(1, 2))):
        sk = skeleton_from_pair(pair)
        elems = list(group_elements(sk.p, sk.q, sk.delta))
        for g in rng.sample(elems, min(6, len(elems))):
            assert canonical(en._transform(sk, *g)).key() == canonical(sk).key()


@pytest.mark.parametrize("spec", [
    EnumSpec(p=(2, 4), q=(2, 4), delta=1),
    EnumSpec(p=(2, 4), q=(2, 4), delta=1, isomorph_rejection=False),
    EnumSpec(p=3, q=4, delta=2),
    EnumSpec(p=(2, 3), q=(2, 3), delta=2, matching="free"),
    EnumSpec(p=4, q=4, delta=1, chi_p=0, chi_q=0),
], ids=["sphere", "unreduced", "p3q4d2", "free", "torus"])
def test_compiled_and_python_kernels_agree(spec):
    total = 0
    for p, q, d in spec.shapes():
        fast = enumerate_skeletons(spec, p, q, d)
        slow = enumerate_skeletons(spec, p, q, d, pure_python=True)
        assert [s.key() for s in fast] == [s.key() for s in slow]
        total += len(fast)
    assert total > 0 or spec.p == (3,)


def test_free_matching_contains_torus_matching():
    torus = {canonical_key(p) for p in enumerate_pairs(EnumSpec(p=2, q=2, delta=2))}
    free = {canonical_key(p) for p in enumerate_pairs(EnumSpec(p=2, q=2, delta=2, matching="free"))}
    assert torus <= free and len(free) > len(torus)


def test_odd_shapes_are_empty():
    assert count_pairs(EnumSpec(p=3, q=3, delta=1)) == 0
    assert list(enumerate_pairs(EnumSpec(p=1, q=3, delta=1))) == []


def test_separating_flag_forces_alternating_signs():
    for pair in enumerate_pairs(EnumSpec(p=2, q=(2, 4), delta=1, separating_q=True)):
        signs = [v.sign for v in pair.gq.vertices]
        assert all(a != b for a, b in zip(signs, signs[1:] + signs[:1]))


def test_canonical_sign_vectors():
    assert canonical_sign_vectors(2) == [(-1, -1), (-1, 1)]
    assert len(canonical_sign_vectors(4)) == 4


@pytest.mark.parametrize("kwargs", [dict(delta=0), dict(p=()), dict(chi_p=1), dict(chi_q=4),
                                    dict(matching="klein")])
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        EnumSpec(**kwargs)


def test_random_pairs_are_reproducible():
    a = random_pair(4, 4, 1, random.Random(9))
    b = random_pair(4, 4, 1, random.Random(9))
    assert a.digest() == b.digest()
    assert check_parity_rule(a).ok
    with pytest.raises(ValueError):
        random_pair(3, 3, 1, random.Random(0))


def test_random_pairs_on_any_surface():
    rng = random.Random(5)
    chis = set()
    for _ in range(30):
        pair = random_pair(4, 4, 2, rng, matching="free")
        assert pair.gp.euler_characteristic() == pair.chi_p
        assert pair.gq.euler_characteristic() == pair.chi_q
        chis.add(pair.chi_p)
    assert len(chis) > 1
