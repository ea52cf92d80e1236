"""Hypothesis strategies and property suites shared by the property tests and the acceptance run."""
import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from dgkit.arith.fields import GF, QQ
from dgkit.arith.linalg import kernel
from dgkit.arith.matrix import Matrix
from dgkit.arith.poly import PolyRing
from dgkit.complexes import (ChainMap, Complex, hom_complex, homology, homotopy_boundary,
                             induced_on_homology, is_quasi_iso, soft_truncate, tensor_complex)
from dgkit.dg import trivial_koszul
from dgkit.koszul import koszul_via_exterior
from dgkit.moduli import act_on, generate_constraints

FIELDS = [QQ, GF(2), GF(5), GF(101)]
small = st.integers(-3, 3)


@st.composite
def matrices(draw, ring, nrows, ncols, entries=small):
    rows = [[ring(draw(entries)) for _ in range(ncols)] for _ in range(nrows)]
    return Matrix(ring, rows, nrows, ncols)


@st.composite
def complexes(draw, field=None, max_len=4, max_rank=3):
    """A random bounded complex over a field: each ``d_i`` factors through ``ker d_{i-1}``."""
    field = draw(st.sampled_from(FIELDS)) if field is None else field
    lo = draw(st.integers(-2, 2))
    ranks = draw(st.lists(st.integers(0, max_rank), min_size=1, max_size=max_len))
    diffs = {}
    for i in range(lo + 1, lo + len(ranks)):
        r_prev, r = ranks[i - 1 - lo], ranks[i - lo]
        if i - 1 == lo or i - 1 not in diffs:
            basis = [tuple(field.one if a == b else field.zero for a in range(r_prev))
                     for b in range(r_prev)]
        else:
            basis = kernel(diffs[i - 1])
        if not basis or r == 0:
            diffs[i] = Matrix.zeros(field, r_prev, r)
            continue
        c = draw(matrices(field, len(basis), r))
        k = Matrix.from_columns(field, basis, r_prev)
        diffs[i] = k @ c
    return Complex(field, lo, ranks, diffs)


@st.composite
def degree_maps(draw, x: Complex, y: Complex, degree: int):
    comps = {p: draw(matrices(x.ring, y.rank(p + degree), x.rank(p))) for p in x.degrees()}
    return ChainMap(x, y, comps, degree)


@st.composite
def koszul_complexes(draw):
    """Koszul complexes on random polynomials of degree at most 2 in ``x, y`` over Q."""
    ring = PolyRing(QQ, ["x", "y"])
    n = draw(st.integers(1, 3))
    monos = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    xs = []
    for _ in range(n):
        coeffs = draw(st.lists(small, min_size=len(monos), max_size=len(monos)))
        xs.append(ring.from_dict({m: QQ(c) for m, c in zip(monos, coeffs) if c}))
    return koszul_via_exterior(ring, xs)


def square_zero(c: Complex) -> bool:
    return all((c.d(i - 1) @ c.d(i)).is_zero() for i in range(c.lo + 2, c.hi + 1))


# suites ------------------------------------------------------------------------------------


@st.composite
def complex_pairs(draw):
    field = draw(st.sampled_from(FIELDS))
    return draw(complexes(field, 3, 2)), draw(complexes(field, 3, 2))


def suite_hom_tensor_square_zero():
    @settings(max_examples=100)
    @given(st.one_of(complex_pairs(), st.tuples(koszul_complexes(), koszul_complexes())))
    def check(pair):
        x, y = pair
        assert square_zero(hom_complex(x, y))
        assert square_zero(tensor_complex(x, y))
    return check


def suite_truncation():
    @settings(max_examples=100)
    @given(st.data())
    def check(data):
        m = data.draw(complexes())
        n = data.draw(st.integers(m.lo - 1, m.hi + 1))
        _, f = soft_truncate(m, n)
        s = homology(m).sup()
        assert is_quasi_iso(f) == (s is None or n >= s)
    return check


def suite_null_homotopic():
    @settings(max_examples=100)
    @given(st.data())
    def check(data):
        field = data.draw(st.sampled_from(FIELDS))
        x = data.draw(complexes(field, 3, 2))
        y = data.draw(complexes(field, 3, 2))
        n = data.draw(st.integers(-1, 1))
        s = data.draw(degree_maps(x, y, n + 1))
        f = homotopy_boundary(s)
        assert f.is_chain_map()
        assert all(m.is_zero() for m in induced_on_homology(f).values())
    return check


def _inv_block(draw, field, n):
    """A random invertible ``n x n`` matrix as a product of unitriangular factors and a diagonal."""
    lower = [[field(draw(small)) if a > b else (field.one if a == b else field.zero)
              for b in range(n)] for a in range(n)]
    upper = [[field(draw(small)) if a < b else field.zero for b in range(n)] for a in range(n)]
    diag = [field(draw(st.integers(1, 100))) for _ in range(n)]
    for a in range(n):
        upper[a][a] = diag[a]
    return Matrix(field, lower, n, n) @ Matrix(field, upper, n, n)


@st.composite
def graded_automorphisms(draw, field, dims):
    return {i: _inv_block(draw, field, n) for i, n in enumerate(dims)}


def suite_group_action():
    field = GF(101)
    algebra = trivial_koszul(field)
    instances = {tuple(d): generate_constraints(algebra, d) for d in ([1, 1], [1, 1, 1], [1, 2, 1])}

    @settings(max_examples=100)
    @given(st.data())
    def check(data):
        dims = data.draw(st.sampled_from(sorted(instances)))
        inst = instances[dims]
        vals = data.draw(st.lists(st.integers(0, 100), min_size=len(inst.names),
                                  max_size=len(inst.names)))
        p = inst.point(vals)
        a = data.draw(graded_automorphisms(field, dims))
        b = data.draw(graded_automorphisms(field, dims))
        ba = {i: b[i] @ a[i] for i in a}
        assert act_on(act_on(p, a), b) == act_on(p, ba)
        if p.satisfies_constraints():
            assert act_on(p, a).satisfies_constraints()
    return check


def exhaustive_constraint_equivalence(field=None, dims_list=((1, 1), (1, 1, 1), (1, 2, 1))):
    """Constraints vanish exactly where the DG module axioms hold, at every point over F_2.

    Returns the number of points checked.
    """
    field = GF(2) if field is None else field
    algebra = trivial_koszul(field)
    count = 0
    for dims in dims_list:
        inst = generate_constraints(algebra, list(dims))
        for vals in itertools.product(range(field.p), repeat=len(inst.names)):
            p = inst.point(list(vals))
            assert p.satisfies_constraints() == p.is_valid(), (dims, vals)
            count += 1
    return count
