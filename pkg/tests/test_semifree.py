import pytest

import oracles
from dgkit.arith.fields import GF, QQ
from dgkit.arith.matrix import Matrix
from dgkit.arith.poly import PolyRing
from dgkit.complexes import Complex, homology
from dgkit.dg import (DGModule, algebra_as_module, degree_zero_algebra, degree_zero_module,
                      example_G, module_direct_sum,
                      residue_module, ring_algebra, square_zero_algebra, suspend_module,
                      trivial_koszul, truncated_polynomial_algebra, verify_dg_module)
from dgkit.errors import PreconditionError
from dgkit.semifree import (ExtTable, check_semibasis, ext, is_local, is_semidualizing_dg,
                            is_semidualizing_module, nilradical, resolution_cone_exact_through,
                            semidualizing_length_bound, semifree_resolution, socle)

U = trivial_koszul(QQ)
XSQ = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]      # F[X]/(X^2), basis 1, X
XCUBE = [[[1 if k == p + q else 0 for k in range(3)] for q in range(3)] for p in range(3)]


def test_G_semibasis():
    g = example_G(QQ, 10)
    assert check_semibasis(g, [(2 * n, 0) for n in range(6)])
    assert not check_semibasis(g, [(0, 0)])
    assert not check_semibasis(g, [(0, 0), (1, 0)])


@pytest.mark.parametrize("order", ["forward", "reverse"])
def test_resolution_of_residue(order):
    res = semifree_resolution(residue_module(U), cap=6, order=order)
    f = res.module
    assert verify_dg_module(f)
    assert res.morphism.verify()
    assert res.semifree.generator_degrees() == [0, 2, 4, 6]
    assert resolution_cone_exact_through(res) >= 6


def test_resolution_is_quasi_iso_in_range():
    m = module_direct_sum(residue_module(U), suspend_module(residue_module(U), 1))
    res = semifree_resolution(m, cap=5)
    assert verify_dg_module(res.module)
    assert resolution_cone_exact_through(res) >= 5


def test_ext_of_residue_over_U():
    k = residue_module(U)
    t = ext(k, k, cap=8)
    assert t.as_list() == [1, 0, 1, 0, 1, 0, 1, 0][:t.certified_through + 1]
    assert t.certified_through == 7


def test_ext_orders_agree():
    k = residue_module(U)
    assert ext(k, k, 6, "forward").as_list() == ext(k, k, 6, "reverse").as_list()


def test_ext_of_free_module_vanishes():
    a = algebra_as_module(U)
    k = residue_module(U)
    assert ext(a, k, cap=5).as_list() == [1, 0, 0, 0, 0]


@pytest.mark.parametrize("table,m_act,n_act", [
    (XSQ, [[[1]], [[0]]], [[[1]], [[0]]]),
    (XSQ, [[[1, 0], [0, 1]], [[0, 0], [1, 0]]], [[[1]], [[0]]]),
    (XSQ, [[[1]], [[0]]], [[[1, 0], [0, 1]], [[0, 0], [1, 0]]]),
    (XCUBE, [[[1]], [[0]], [[0]]], [[[1]], [[0]], [[0]]]),
])
def test_ext_over_degree_zero_algebras_matches_oracle(table, m_act, n_act):
    A = degree_zero_algebra(QQ, table)
    M = degree_zero_module(A, len(m_act[0]), dict(enumerate(m_act)))
    N = degree_zero_module(A, len(n_act[0]), dict(enumerate(n_act)))
    t = ext(M, N, cap=5)
    want = oracles.classical_ext(table, m_act, n_act, t.certified_through + 1)
    assert t.as_list() == want


def test_ext_table_json_round_trip():
    t = ExtTable({0: 1, 1: 0, 2: 1}, 2)
    assert ExtTable.from_json(t.dumps()) == t


def test_ext_needs_a_field():
    r = PolyRing(QQ, ["x"])
    m = algebra_as_module(ring_algebra(r))
    with pytest.raises(PreconditionError):
        ext(m, m, 3)


def test_ext_cap_too_small():
    k = residue_module(U)
    with pytest.raises(ValueError):
        ext(k, k, cap=0)


def test_semidualizing_over_U():
    assert is_semidualizing_dg(algebra_as_module(U), cap=4)
    v = is_semidualizing_dg(residue_module(U), cap=4)
    assert not v and v.witness is not None


def test_zero_homology_module_is_not_semidualizing():
    A = ring_algebra(QQ)
    m = DGModule(A, Complex(QQ, 0, [1, 1], {1: Matrix(QQ, [[1]])}))
    assert not is_semidualizing_dg(m, cap=3)


def test_residue_field_not_semidualizing_over_nonregular_ring():
    A = truncated_polynomial_algebra(QQ, 2)
    assert not is_semidualizing_module(residue_module(A), cap=3)


def test_socle_and_nilradical():
    A = square_zero_algebra(QQ, 2)
    assert len(nilradical(A)) == 2
    assert len(socle(A)) == 2
    assert is_local(A)
    B = truncated_polynomial_algebra(QQ, 3)
    assert len(socle(B)) == 1


def test_nilradical_characteristic_restriction():
    with pytest.raises(PreconditionError):
        nilradical(truncated_polynomial_algebra(GF(2), 2))


def test_length_bound():
    A = square_zero_algebra(QQ, 2)
    lb = semidualizing_length_bound(A)
    assert (lb.mu0, lb.length_ring, lb.rho) == (2, 3, 6)


def test_G_homology_is_residue():
    g = example_G(QQ, 10)
    assert homology(g.complex).dims()[0] == 1
