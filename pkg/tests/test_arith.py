from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

import oracles
from dgkit.arith import _kernels_py, backend
from dgkit.arith.fields import GF, QQ, field_from_tag
from dgkit.arith.linalg import inverse, kernel, rank, solve
from dgkit.arith.matrix import Matrix, det, pfaffian, submaximal_pfaffians
from dgkit.arith.poly import PolyRing
from dgkit.errors import DimensionError, NotAlternatingError, ParseError, PreconditionError

R = PolyRing(QQ, ["x", "y", "z"])
small = st.integers(-4, 4)


@st.composite
def int_matrices(draw, max_dim=5):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    return [[draw(small) for _ in range(n)] for _ in range(m)]


@st.composite
def polys(draw, ring=R):
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 2)] * len(ring.names)), small,
                                 max_size=4))
    return ring.from_dict({e: QQ(c) for e, c in terms.items()})


# fields -------------------------------------------------------------------------


def test_prime_field_arithmetic():
    F = GF(7)
    assert F(3) * F(5) == F(1)
    assert F(3).inverse() == F(5)
    assert F(2) / F(4) == F(4)
    assert -F(1) == F(6)
    assert F(10) == F(3)
    with pytest.raises(ZeroDivisionError):
        F(0).inverse()


def test_field_tags():
    assert field_from_tag("Q") is QQ
    assert field_from_tag("F7") == GF(7)
    assert field_from_tag("Fp", 11) == GF(11)
    with pytest.raises(ValueError):
        field_from_tag("Fp")
    with pytest.raises(ValueError):
        field_from_tag("R")


def test_rational_parse():
    assert QQ.parse("-3/4") == Fraction(-3, 4)
    assert QQ("7") == 7


@given(st.integers(0, 100), st.integers(1, 100))
def test_prime_field_inverse_property(a, b):
    F = GF(101)
    assert (F(a) / F(b)) * F(b) == F(a)


# polynomials ----------------------------------------------------------------------


def test_poly_format_and_parse():
    x, y, z = R.gens()
    p = x ** 2 - 3 * x * y + z / 2
    assert R.parse(R.format(p)) == p
    assert R.format(R.parse("(x+y)^2")) == "x^2 + 2*x*y + y^2"


def test_poly_parse_errors():
    with pytest.raises(ParseError):
        R.parse("x +* y")
    with pytest.raises(ParseError):
        R.parse("w")


def test_poly_ring_needs_variables():
    with pytest.raises(ValueError):
        PolyRing(QQ, [])
    with pytest.raises(ValueError):
        PolyRing(QQ, ["1x"])


@given(polys(), polys(), polys())
def test_poly_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert R.parse(R.format(a)) == a


@given(polys(), polys())
def test_poly_derivative_leibniz(a, b):
    assert (a * b).diff("x") == a.diff("x") * b + a * b.diff("x")


@given(polys(), st.tuples(small, small, small))
def test_poly_evaluate_matches_sympy(a, pt):
    x, y, z = sympy.symbols("x y z")
    expr = sympy.sympify(R.format(a).replace("^", "**"))
    want = expr.subs({x: pt[0], y: pt[1], z: pt[2]})
    assert a.evaluate([QQ(v) for v in pt]) == Fraction(int(sympy.numer(want)), int(sympy.denom(want)))


# matrices -------------------------------------------------------------------------


def test_matrix_shapes_checked():
    with pytest.raises(DimensionError):
        Matrix(QQ, [[1, 2], [3]])
    a = Matrix(QQ, [[1, 2]])
    with pytest.raises(DimensionError):
        a @ a


@given(int_matrices())
def test_rank_matches_sympy(rows):
    assert rank(Matrix(QQ, rows)) == oracles.rank(rows)


@given(int_matrices())
def test_kernel_vectors_are_killed(rows):
    a = Matrix(QQ, rows)
    ker = kernel(a)
    assert len(ker) + rank(a) == a.ncols
    for v in ker:
        assert all(c == 0 for c in a.apply(v))


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_det_matches_sympy(rows):
    assert det(Matrix(QQ, rows)) == oracles.smat(rows).det()


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_inverse_or_singular(rows):
    a = Matrix(QQ, rows)
    if det(a) == 0:
        with pytest.raises(ZeroDivisionError):
            inverse(a)
    else:
        assert inverse(a) @ a == Matrix.identity(QQ, a.nrows)


def test_polynomial_determinant():
    a = Matrix.parse(R, [["x", "y"], ["z", "x"]])
    assert det(a) == R.parse("x^2 - y*z")
    assert oracles.same_poly(R.format(det(a)), oracles.poly_det([["x", "y"], ["z", "x"]]))


@given(st.sampled_from([2, 4, 6]).flatmap(
    lambda n: st.lists(small, min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2)
    .map(lambda v: (n, v))))
def test_pfaffian_squares_to_determinant(data):
    n, vals = data
    rows = [[0] * n for _ in range(n)]
    it = iter(vals)
    for i in range(n):
        for j in range(i + 1, n):
            v = next(it)
            rows[i][j], rows[j][i] = v, -v
    a = Matrix(QQ, rows)
    assert pfaffian(a) ** 2 == det(a)


def test_pfaffian_conventions():
    x = R.gen("x")
    assert pfaffian(Matrix.parse(R, [["0", "x"], ["-x", "0"]])) == x
    b = Matrix.parse(R, [["0", "x", "y"], ["-x", "0", "z"], ["-y", "-z", "0"]])
    assert pfaffian(b) == 0
    assert [R.format(p) for p in submaximal_pfaffians(b)] == ["z", "y", "x"]
    with pytest.raises(NotAlternatingError):
        pfaffian(Matrix(QQ, [[1, 0], [0, 0]]))


def test_linear_algebra_needs_constants():
    with pytest.raises(PreconditionError):
        rank(Matrix.parse(R, [["x"]]))


def test_solve():
    a = Matrix(QQ, [[1, 2], [3, 4]])
    assert solve(a, [QQ(5), QQ(11)]) == (1, 2)
    assert solve(Matrix(QQ, [[1], [1]]), [QQ(1), QQ(2)]) is None


# compiled kernel vs fallback ---------------------------------------------------------


@given(int_matrices(max_dim=7), st.sampled_from([2, 3, 101, 32003]))
def test_backends_agree(rows, p):
    reduced = [[x % p for x in r] for r in rows]
    ncols = len(rows[0])
    assert backend.rref_modp([list(r) for r in reduced], ncols, p) == \
        _kernels_py.rref_modp([list(r) for r in reduced], ncols, p)


def test_backend_reported():
    assert backend.BACKEND in ("cython", "python")
