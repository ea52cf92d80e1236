import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
import props
from dgkit.arith.fields import GF, QQ
from dgkit.arith.matrix import Matrix
from dgkit.arith.poly import PolyRing
from dgkit.complexes import (ChainMap, Complex, commutativity_map, concentrated, direct_sum,
                             dual_complex, hom_cancellation_map, hom_complex, homology,
                             homothety_chain_map, homotopy_boundary, identity_map,
                             induced_on_homology, is_quasi_iso, mapping_cone, soft_truncate,
                             solve_null_homotopy,
                             suspend, tensor_complex, two_term, verify_homotopy)
from dgkit.errors import DimensionError, PreconditionError


def test_square_zero_enforced():
    with pytest.raises(ValueError):
        Complex(QQ, 0, [1, 1, 1], {1: Matrix(QQ, [[1]]), 2: Matrix(QQ, [[1]])})


def test_differential_shapes_enforced():
    with pytest.raises(DimensionError):
        Complex(QQ, 0, [1, 2], {1: Matrix(QQ, [[1]])})


def test_two_term_homology():
    c = two_term(QQ, QQ(0))
    assert homology(c).dims() == {0: 1, 1: 1}
    c = two_term(QQ, QQ(3))
    assert homology(c).is_exact()


def test_homology_needs_a_field():
    r = PolyRing(QQ, ["x"])
    with pytest.raises(PreconditionError):
        homology(two_term(r, r.gen("x")))


@settings(max_examples=60)
@given(props.complexes(field=QQ))
def test_homology_matches_oracle(c):
    assert homology(c).dims() == {i: d for i, d in oracles.homology_dims(c).items()}


@settings(max_examples=40)
@given(props.complexes())
def test_representatives_are_cycles(c):
    h = homology(c)
    for i in c.degrees():
        for v in h[i].representatives:
            assert all(x == 0 for x in c.apply_d(i, v))


@settings(max_examples=40)
@given(props.complex_pairs())
def test_hom_and_tensor_euler_characteristic(pair):
    x, y = pair
    chi = lambda c: sum((-1) ** i * homology(c).dim(i) for i in c.degrees())  # noqa: E731
    assert chi(tensor_complex(x, y)) == chi(x) * chi(y)
    assert chi(hom_complex(x, y)) == chi(x) * chi(y)


def test_kunneth_dimensions():
    k = two_term(QQ, QQ(0))
    t = tensor_complex(k, k)
    assert [homology(t).dim(i) for i in range(3)] == [1, 2, 1]
    h = hom_complex(k, k)
    assert [homology(h).dim(i) for i in range(-1, 2)] == [1, 2, 1]


def test_suspension_sign_and_degrees():
    c = two_term(QQ, QQ(2))
    s = suspend(c, 1)
    assert (s.lo, s.hi) == (1, 2)
    assert s.d(2) == Matrix(QQ, [[-2]])
    assert suspend(c, 2).d(3) == Matrix(QQ, [[2]])


def test_dual_complex_is_transpose():
    r = PolyRing(QQ, ["x", "y"])
    c = Complex(r, 0, [1, 2], {1: Matrix.parse(r, [["x", "y"]])})
    d = dual_complex(c)
    assert (d.lo, d.hi) == (-1, 0)
    assert d.d(0) == Matrix.parse(r, [["x"], ["y"]])


@settings(max_examples=30)
@given(props.complex_pairs())
def test_commutativity_is_an_isomorphism(pair):
    x, y = pair
    f = commutativity_map(x, y)
    assert f.is_chain_map() and f.is_isomorphism()


@settings(max_examples=30)
@given(props.complexes())
def test_hom_cancellation(x):
    f = hom_cancellation_map(x)
    assert f.is_chain_map() and f.is_isomorphism()


@settings(max_examples=30)
@given(props.complexes())
def test_identity_cone_is_exact(x):
    assert homology(mapping_cone(identity_map(x))).is_exact()
    assert is_quasi_iso(identity_map(x))


def test_homothety_by_zero_is_null_homotopic_only_on_exact_complexes():
    exact = two_term(QQ, QQ(1))
    f = homothety_chain_map(exact, 0)
    assert verify_homotopy(f, solve_null_homotopy(f))
    z = homothety_chain_map(two_term(QQ, QQ(0)), 1)
    assert solve_null_homotopy(z) is None


@settings(max_examples=40)
@given(st.data())
def test_solved_homotopies_verify(data):
    field = data.draw(st.sampled_from(props.FIELDS))
    x = data.draw(props.complexes(field, 3, 2))
    y = data.draw(props.complexes(field, 3, 2))
    s = data.draw(props.degree_maps(x, y, 1))
    f = homotopy_boundary(s)
    t = solve_null_homotopy(f)
    assert t is not None and verify_homotopy(f, t)


def test_soft_truncation():
    # 0 -> Q --1--> Q --0--> Q -> 0 in degrees 2, 1, 0
    c = Complex(QQ, 0, [1, 1, 1], {1: Matrix(QQ, [[0]]), 2: Matrix(QQ, [[1]])})
    t, f = soft_truncate(c, 1)
    assert t.ranks == [1, 0]
    assert f.is_chain_map() and is_quasi_iso(f)
    t0, f0 = soft_truncate(c, 0)
    assert t0.ranks == [1] and is_quasi_iso(f0)
    t_, f_ = soft_truncate(c, -1)
    assert not is_quasi_iso(f_)


def test_induced_map_of_projection():
    c = direct_sum(concentrated(GF(3)), concentrated(GF(3)))
    proj = ChainMap(c, concentrated(GF(3)), {0: Matrix(GF(3), [[1, 0]])})
    m = induced_on_homology(proj)[0]
    assert m.shape == (1, 2)
    assert not is_quasi_iso(proj)


def test_chain_map_check():
    x = two_term(QQ, QQ(1))
    with pytest.raises(ValueError):
        ChainMap(x, x, {0: Matrix(QQ, [[1]]), 1: Matrix(QQ, [[2]])}, check=True)
