"""Exact linear algebra over Q and F_p.

Everything here needs constant entries.  Matrices over a polynomial ring are
accepted when every entry is a constant; otherwise a
:class:`PreconditionError` is raised.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from ..errors import DimensionError, PreconditionError
from . import backend
from .fields import PrimeField, RationalField
from .matrix import Matrix


def base_field(ring):
    return ring if getattr(ring, "is_field", False) else ring.field


def as_field_matrix(a: Matrix) -> Matrix:
    """The same matrix with entries moved into the coefficient field."""
    if getattr(a.ring, "is_field", False):
        return a
    if not a.is_constant():
        raise PreconditionError("linear algebra needs constant (field) entries")
    f = a.ring.field
    return Matrix._raw(f, a.nrows, a.ncols,
                       tuple(tuple(x.constant_value() for x in r) for r in a.rows))


def _rref_rational(rows, ncols, normalise: bool = True):
    """Fraction-free Gauss-Jordan on integer-scaled rows, normalised at the end.

    With ``normalise=False`` only the pivot columns are meaningful.
    """
    m = []
    for r in rows:
        den = 1
        for x in r:
            den = den * x.denominator // gcd(den, x.denominator)
        m.append([x.numerator * (den // x.denominator) for x in r])
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        pc = prow[c]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                row = [pc * a - f * b for a, b in zip(m[i], prow)]
                g = 0
                for x in row:
                    g = gcd(g, x)
                if g > 1:
                    row = [x // g for x in row]
                m[i] = row
        pivots.append(c)
        r += 1
    if not normalise:
        return m[:r], pivots
    out = []
    for i, c in enumerate(pivots):
        pc = m[i][c]
        out.append([Fraction(x, pc) for x in m[i]])
    return out, pivots


def rref(a: Matrix):
    """Reduced row echelon form.  Returns ``(R, pivots)``; R keeps nonzero rows only."""
    a = as_field_matrix(a)
    field = a.ring
    if isinstance(field, PrimeField):
        rows, piv = backend.rref_modp([[x.v for x in r] for r in a.rows], a.ncols, field.p)
        out = tuple(tuple(field(x) for x in r) for r in rows)
    elif isinstance(field, RationalField):
        rows, piv = _rref_rational(a.rows, a.ncols)
        out = tuple(tuple(r) for r in rows)
    else:
        raise PreconditionError(f"no linear algebra over {field!r}")
    return Matrix._raw(field, len(out), a.ncols, out), list(piv)


def rank(a: Matrix) -> int:
    if a.nrows == 0 or a.ncols == 0:
        return 0
    a = as_field_matrix(a)
    if isinstance(a.ring, RationalField):
        return len(_rref_rational(a.rows, a.ncols, normalise=False)[1])
    return len(rref(a)[1])


def kernel(a: Matrix):
    """Basis of ``{v : a v = 0}`` as tuples, one per free column, in column order."""
    field = base_field(a.ring)
    n = a.ncols
    if a.nrows == 0:
        return [tuple(field.one if i == j else field.zero for i in range(n)) for j in range(n)]
    r, piv = rref(a)
    pivset = set(piv)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [field.zero] * n
        v[f] = field.one
        for i, c in enumerate(piv):
            v[c] = -r.rows[i][f]
        basis.append(tuple(v))
    return basis


def rank_kernel(a: Matrix):
    """``(rank, kernel_basis)`` with ``rank + len(kernel_basis) == a.ncols``."""
    ker = kernel(a)
    return a.ncols - len(ker), ker


def image_basis(a: Matrix):
    """Pivot columns of ``a``: a basis of its column space."""
    if a.nrows == 0 or a.ncols == 0:
        return []
    a = as_field_matrix(a)
    _, piv = rref(a)
    return [a.col(j) for j in piv]


def solve(a: Matrix, b) -> tuple | None:
    """One solution of ``a x = b`` or ``None`` if the system is inconsistent."""
    a = as_field_matrix(a)
    field = a.ring
    b = [field(x) if not hasattr(x, "constant_value") else x.constant_value() for x in b]
    if len(b) != a.nrows:
        raise DimensionError("right-hand side has the wrong length")
    if a.nrows == 0:
        return tuple(field.zero for _ in range(a.ncols))
    aug = Matrix._raw(field, a.nrows, a.ncols + 1,
                      tuple(r + (x,) for r, x in zip(a.rows, b)))
    r, piv = rref(aug)
    if piv and piv[-1] == a.ncols:
        return None
    x = [field.zero] * a.ncols
    for i, c in enumerate(piv):
        x[c] = r.rows[i][a.ncols]
    return tuple(x)


def solve_matrix(a: Matrix, b: Matrix) -> Matrix | None:
    """A matrix ``X`` with ``a X = b`` or ``None``."""
    cols = []
    for j in range(b.ncols):
        x = solve(a, b.col(j))
        if x is None:
            return None
        cols.append(x)
    return Matrix.from_columns(base_field(a.ring), cols, a.ncols)


def inverse(a: Matrix) -> Matrix:
    if not a.is_square():
        raise DimensionError("inverse of a non-square matrix")
    field = base_field(a.ring)
    x = solve_matrix(a, Matrix.identity(field, a.nrows))
    if x is None:
        raise ZeroDivisionError("matrix is singular")
    return x


def in_span(vectors, v, field) -> bool:
    if not vectors:
        return all(x == 0 for x in v)
    a = Matrix.from_columns(field, vectors, len(v))
    return solve(a, v) is not None


def span_rank(vectors, length: int, field) -> int:
    if not vectors:
        return 0
    return rank(Matrix.from_columns(field, vectors, length))


def complement_basis(sub, length: int, field):
    """Standard basis vectors completing the span of ``sub`` to the full space."""
    chosen = list(sub)
    extra = []
    base = span_rank(chosen, length, field)
    for i in range(length):
        e = tuple(field.one if j == i else field.zero for j in range(length))
        if span_rank(chosen + [e], length, field) > base:
            chosen.append(e)
            extra.append(i)
            base += 1
    return extra
