import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dehn_graph.errors import DimensionMismatch, NotMinimal
from dehn_graph.type_algebra import (QType, all_types, basis_subset, check_basis_property, cokernel,
                                     find_torsion_subset, is_minimal_all_types, missing_types, pad,
                                     represents, represents_all_types, smith_normal_form,
                                     support_count, survey_torsion, types_represented)

from oracles import naive_represents, sympy_invariants

T = QType.parse
PARRY = [(1, 2, 1), (-1, 1, 1), (1, -1, 2), (1, 1, -1)]


def test_single_vector_types():
    assert represents((1, 0, -2), T("-++"))
    assert represents((1, 0, -2), T("++-"))
    assert {str(t) for t in types_represented((1, 0, -2))} == {"++-", "+--"}


def test_zero_and_unit_vectors():
    assert not any(represents((0, 0, 0), t) for t in all_types(3))
    assert not represents((0, 1, 0), T("+++"))
    assert represents((0, 2, 0), T("+++"))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        represents((1, 1), T("+++"))


def test_type_basics():
    tau = T("+-+")
    assert (-tau).signs == (-1, 1, -1)
    assert tau.same_class(-tau)
    assert T("+++").is_trivial and T("---").is_trivial
    assert len(all_types(4)) == 8
    assert all(t.signs[0] == 1 for t in all_types(4))
    with pytest.raises(ValueError):
        T("+x")


def test_three_vector_example():
    assert represents_all_types([(1, 0, 1), (-1, 1, 0), (1, 1, -1)])


@pytest.mark.parametrize("q", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("k", [2, -2, 3, 7])
def test_single_big_coordinate(q, k):
    for pos in range(q):
        a = [0] * q
        a[pos] = k
        assert represents_all_types([a])


def test_empty_sets():
    assert not represents_all_types([], 3)
    assert support_count([]) == 0
    assert not is_minimal_all_types([])


def test_support_count():
    assert support_count([(1, 0, 1)]) == 2
    assert support_count([(1, 2, 1), (-1, 1, 1)]) == 3


def test_padding_both_directions():
    A = [(1, 0, 1), (-1, 1, 0), (1, 1, -1)]
    assert represents_all_types(pad(A))
    B = [(1, 0, 1), (-1, 1, 0)]
    assert not represents_all_types(B) and not represents_all_types(pad(B))


def test_parry_set():
    assert is_minimal_all_types(PARRY)
    full = cokernel(PARRY)
    assert full.factors == (1, 1, 1) and full.is_trivial
    sub = find_torsion_subset(PARRY)
    assert sub is not None and len(sub) < len(PARRY)
    assert cokernel(sub, 3).has_torsion
    assert check_basis_property(PARRY)
    assert len(basis_subset(PARRY)) == 3


def test_torsion_subset_examples():
    assert find_torsion_subset([(0, 2)]) == ((0, 2),)
    snf = cokernel([(0, 2)])
    assert snf.free_rank == 1 and snf.torsion == (2,)
    assert find_torsion_subset([(1, 0), (0, 1)]) is None


def test_minimality_examples():
    assert not is_minimal_all_types([(0, 2), (0, 3)])
    assert check_basis_property([(0, 2)])
    with pytest.raises(NotMinimal):
        check_basis_property([(0, 2), (0, 3)])


def test_snf_examples():
    assert smith_normal_form([(2, 0), (0, 3)]).factors == (1, 6)
    eye = smith_normal_form([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert eye.factors == (1, 1, 1) and eye.free_rank == 0
    zero = smith_normal_form([(0, 0, 0)])
    assert zero.free_rank == 3 and not zero.has_torsion


small_int = st.integers(-6, 6)


@st.composite
def matrices(draw):
    m = draw(st.integers(1, 4))
    n = draw(st.integers(1, 4))
    return [draw(st.lists(small_int, min_size=n, max_size=n)) for _ in range(m)], n


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_snf_matches_sympy(mn):
    rows, n = mn
    got = smith_normal_form(rows, n)
    facs, free = sympy_invariants(rows, n)
    assert got.factors == facs
    assert got.free_rank == free
    for a, b in zip(got.factors, got.factors[1:]):
        assert b % a == 0


@settings(max_examples=100, deadline=None)
@given(matrices(), st.randoms(use_true_random=False))
def test_snf_permutation_invariant(mn, rnd):
    rows, n = mn
    perm = list(range(n))
    rnd.shuffle(perm)
    shuffled = [[r[k] for k in perm] for r in rows]
    rnd.shuffle(shuffled)
    assert smith_normal_form(shuffled, n).factors == smith_normal_form(rows, n).factors


@settings(max_examples=300, deadline=None)
@given(st.lists(small_int, min_size=1, max_size=5), st.data())
def test_represents_matches_definition(a, data):
    signs = tuple(data.draw(st.sampled_from((1, -1))) for _ in a)
    tau = QType(signs)
    assert represents(a, tau) == naive_represents(a, signs)
    assert represents(a, tau) == represents(a, -tau)
    assert represents(a, tau) == represents([-x for x in a], tau)


def test_missing_types_are_unrepresented():
    A = [(1, 0, 1), (-1, 1, 0)]
    for t in missing_types(A):
        assert not any(naive_represents(a, t.signs) for a in A)


@pytest.mark.parametrize("q", [1, 2])
def test_small_torsion_survey(q):
    s = survey_torsion(q, 2)
    assert s.ok and s.orbits > 0


def test_minimal_sets_have_a_basis():
    vecs = [v for v in itertools.product(range(-2, 3), repeat=2) if any(v)]
    for A in itertools.combinations(vecs, 2):
        if is_minimal_all_types(A):
            assert check_basis_property(A)
