import itertools

import pytest

import oracles
from dgkit.arith.fields import GF, QQ
from dgkit.arith.matrix import Matrix
from dgkit.arith.poly import PolyRing
from dgkit.dg import ring_algebra, trivial_koszul, truncated_polynomial_algebra
from dgkit.errors import PreconditionError
from dgkit.moduli import (act_on, generate_constraints, jacobian, normalize, tangent_space,
                          tangent_space_dual, yext_dimension)

U = trivial_koszul(QQ)


def test_normalize_scales_sorts_and_dedupes():
    r = PolyRing(QQ, ["a", "b"])
    got = normalize([r.parse(p) for p in ["2*a*b", "a*b", "0", "-3*b^2 + a", "b"]])
    # a*b appears twice up to scalars and is then a multiple of the generator b
    assert [r.format(g) for g in got] == ["b^2 - 1/3*a", "b"]
    assert all(g.monic() == g for g in got)


def test_normalize_drops_redundant_monomial_multiples():
    r = PolyRing(QQ, ["a", "b"])
    got = normalize([r.parse(p) for p in ["a", "a*b", "a^2 + a*b"]])
    assert [r.format(g) for g in got] == ["a"]


def test_normalize_keeps_nonredundant_binomials():
    r = PolyRing(QQ, ["a", "b"])
    got = normalize([r.parse(p) for p in ["a", "b^2 + b"]])
    assert sorted(r.format(g) for g in got) == ["a", "b^2 + b"]


@pytest.mark.parametrize("dims", [[1], [1, 1], [1, 1, 1], [1, 2, 1], [2, 1], [2, 2]])
def test_unknown_count_splits_into_d_and_reduced(dims):
    inst = generate_constraints(U, dims)
    assert len(inst.unknowns) == inst.d + inst.d_prime_reduced
    assert inst.d_prime_full - inst.d_prime_reduced == sum(n * n for n in dims)


def test_default_names_and_order():
    inst = generate_constraints(U, [1, 2, 1])
    assert inst.names == [f"x{i}" for i in range(8)]
    kinds = [(u.degree, u.kind) for u in inst.unknowns]
    assert kinds == sorted(kinds, key=lambda t: (t[0], t[1] != "d"))


def test_rename_keeps_constraints():
    inst = generate_constraints(U, [1, 1])
    ren = inst.rename({"x0": "p", "x1": "q"})
    assert ren.constraint_strings() == ["p*q"]


def test_needs_a_field_and_a_unit():
    r = PolyRing(QQ, ["t"])
    with pytest.raises(PreconditionError):
        generate_constraints(ring_algebra(r), [1])


def test_point_value_checks():
    inst = generate_constraints(U, [1, 1])
    with pytest.raises(ValueError):
        inst.point([1])
    with pytest.raises(ValueError):
        inst.point({"x0": 1})
    assert inst.point({"x0": 1, "x1": "0"}).as_dict() == {"x0": QQ(1), "x1": QQ(0)}


@pytest.mark.parametrize("dims", [[1, 1], [1, 1, 1], [2, 1]])
def test_constraints_cut_out_module_structures_over_F3(dims):
    F = GF(3)
    inst = generate_constraints(trivial_koszul(F), dims)
    for vals in itertools.product(range(3), repeat=len(inst.names)):
        p = inst.point(list(vals))
        assert p.satisfies_constraints() == p.is_valid()


def test_degree_zero_algebra_instances():
    A = truncated_polynomial_algebra(GF(2), 2)
    inst = generate_constraints(A, [2])
    for vals in itertools.product(range(2), repeat=len(inst.names)):
        p = inst.point(list(vals))
        assert p.satisfies_constraints() == p.is_valid()


def test_tangent_space_two_routes():
    inst = generate_constraints(U, [1, 2, 1])
    pts = [inst.point(list(v)) for v in itertools.product((-1, 0, 2), repeat=8)]
    pts = [p for p in pts if p.satisfies_constraints()]
    assert len(pts) > 40
    for p in pts[::max(1, len(pts) // 40)]:
        assert len(tangent_space(p)) == len(tangent_space_dual(p))
        jr = oracles.jacobian_rank(inst.constraint_strings(), inst.names, p.values)
        assert len(tangent_space(p)) == len(inst.names) - jr


def test_jacobian_shape():
    inst = generate_constraints(U, [1, 1, 1])
    j = jacobian(inst.point([0, 0, 0, 0]))
    assert j.shape == (len(inst.constraints), 4)
    assert j.is_zero()


def test_yext_at_the_origin_and_a_smooth_point():
    inst = generate_constraints(U, [1, 1])
    zero = yext_dimension(inst.point([0, 0]))
    assert (zero.tangent_dim, zero.orbit_dim, zero.quotient_dim) == (2, 0, 2)
    smooth = yext_dimension(inst.point([1, 0]))
    assert (smooth.tangent_dim, smooth.orbit_dim, smooth.quotient_dim) == (1, 1, 0)
    assert smooth.to_json() == {"tangent_dim": 1, "orbit_tangent_dim": 1, "yext1_dim": 0}


def test_action_preserves_validity_and_missing_degrees_are_identity():
    F = GF(101)
    inst = generate_constraints(trivial_koszul(F), [1, 1, 1], names=["y0", "x1", "y1", "x2"])
    p = inst.point([3, 0, 0, 7])
    assert p.is_valid()
    q = act_on(p, {1: Matrix(F, [[5]])})
    assert q.is_valid()
    assert q.as_dict() == {"y0": F(3) * 5, "x1": F(0), "y1": F(0), "x2": F(7) * 5}
    assert act_on(p, {}) == p
