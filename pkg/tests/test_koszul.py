import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgkit.arith.fields import GF, QQ
from dgkit.arith.poly import PolyRing
from dgkit.complexes import homology
from dgkit.dg import koszul_algebra, verify_dg_algebra
from dgkit.koszul import (ExteriorElement, all_permutations_isomorphic, annihilation_check,
                          exterior_basis, koszul_via_exterior, koszul_via_tensor, leibniz_check,
                          perm_sign, self_duality_isomorphism, self_duality_witness,
                          tensor_to_exterior, wedge, wedge_indices)

R = PolyRing(QQ, ["x", "y", "z", "w"])


def test_perm_sign():
    assert perm_sign([1, 2, 3]) == 1
    assert perm_sign([2, 1, 3]) == -1
    assert perm_sign([3, 1, 2]) == 1


def test_wedge_indices():
    assert wedge_indices((1, 3), (2,)) == (-1, (1, 2, 3))
    assert wedge_indices((1,), (1,))[0] == 0


def test_exterior_basis_is_lexicographic():
    assert exterior_basis(3, 2) == [(1, 2), (1, 3), (2, 3)]
    assert exterior_basis(4, 0) == [()]


subsets = st.integers(1, 4).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n)).map(lambda s: tuple(sorted(s))),
                        st.sets(st.integers(1, n)).map(lambda s: tuple(sorted(s))),
                        st.sets(st.integers(1, n)).map(lambda s: tuple(sorted(s)))))


@given(subsets)
def test_wedge_associative_and_graded_commutative(data):
    n, a, b, c = data
    e = lambda J: ExteriorElement.basis(QQ, n, J)  # noqa: E731
    assert wedge(wedge(e(a), e(b)), e(c)) == wedge(e(a), wedge(e(b), e(c)))
    sign = -1 if (len(a) * len(b)) % 2 else 1
    assert wedge(e(a), e(b)) == wedge(e(b), e(a)).scale(sign)


def test_odd_elements_square_to_zero():
    u = ExteriorElement(QQ, 3, {(1,): 2, (2,): -1, (3,): 5})
    assert wedge(u, u) == ExteriorElement(QQ, 3)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_ranks_are_binomial(n):
    k = koszul_via_exterior(R, R.gens()[:n])
    assert k.ranks == [len(list(itertools.combinations(range(n), i))) for i in range(n + 1)]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_tensor_and_exterior_presentations_agree(n):
    f = tensor_to_exterior(R, R.gens()[:n])
    assert f.is_chain_map() and f.is_isomorphism()


def test_tensor_presentation_basis_labels():
    t = koszul_via_tensor(R, R.gens()[:2])
    assert t.labels(1) == ["e1|1", "1|e2"]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_leibniz_and_permutations(n):
    xs = R.gens()[:n]
    assert leibniz_check(R, xs)
    assert all_permutations_isomorphic(R, xs)
    assert verify_dg_algebra(koszul_algebra(R, xs))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_annihilation_every_generator(n):
    for j in range(1, n + 1):
        assert annihilation_check(R, R.gens()[:n], j)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_self_duality(n):
    xs = R.gens()[:n]
    g = self_duality_isomorphism(R, xs)
    assert g.is_chain_map() and g.is_isomorphism()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_witness_table_matches_linear_solve_up_to_sign(n):
    xs = R.gens()[:n]
    a = self_duality_witness(R, xs, "table")
    b = self_duality_witness(R, xs, "search")
    same = all(a.f(p) == b.f(p) for p in a.source.degrees())
    opposite = all(a.f(p) == -b.f(p) for p in a.source.degrees())
    assert same or opposite


@settings(max_examples=30)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=3))
def test_unit_sequences_give_exact_complexes(vals):
    F = GF(5)
    k = koszul_via_exterior(F, [F(v) for v in vals])
    assert homology(k).is_exact()


def test_zero_sequence_homology_is_exterior_algebra():
    F = GF(5)
    k = koszul_via_exterior(F, [F(0)] * 3)
    assert [homology(k).dim(i) for i in range(4)] == [1, 3, 3, 1]


def test_empty_sequence_rejected():
    with pytest.raises(ValueError):
        koszul_via_exterior(R, [])
