"""Free resolutions of length two and three with their DG algebra structures.

Neither builder checks grade or perfection hypotheses.  They build the
complex and the products from the matrix formulas and verify the algebraic
identities (``d^2 = 0``, Leibniz, associativity, graded commutativity)
exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .arith.matrix import Matrix, det, pfaffian
from .complexes import Complex
from .dg import DGAlgebra
from .errors import DimensionError, NotAlternatingError


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass
class StructuredResolution:
    """A resolution ``0 -> ... -> R`` carrying a DG algebra structure."""

    matrix: Matrix
    row: tuple          # the map to R, as a row
    algebra: DGAlgebra
    kind: str

    @property
    def complex(self) -> Complex:
        return self.algebra.complex

    def ideal(self):
        """Generators of the ideal resolved: the entries of the row."""
        return list(self.row)

    def products(self) -> dict:
        return product_table(self.algebra)

    def format_products(self) -> str:
        return format_product_table(self.algebra)


def product_table(a: DGAlgebra) -> dict:
    """Nonzero products ``u*v`` of non-unit basis elements, ``u`` before ``v`` in basis order."""
    A = a.complex
    basis = [(i, p) for (i, p) in a.basis() if (i, p) != (0, a.unit)]
    out = {}
    for k, (i, p) in enumerate(basis):
        for (j, q) in basis[k:]:
            if i + j > A.hi:
                continue
            v = a.mul(i, p, j, q)
            if any(c != 0 for c in v):
                out[(A.labels(i)[p], A.labels(j)[q])] = _format_vector(a.ring, v, A.labels(i + j))
    return out


def _format_vector(ring, vec, labels) -> str:
    parts = []
    for c, lab in zip(vec, labels):
        if c == 0:
            continue
        s = ring.format(c) if hasattr(ring, "format") else str(c)
        if s == "1":
            term = lab
        elif s == "-1":
            term = "-" + lab
        elif any(ch in s[1:] for ch in "+-"):
            term = f"({s})*{lab}"
        else:
            term = f"{s}*{lab}"
        parts.append(term)
    if not parts:
        return "0"
    out = parts[0]
    for t in parts[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def format_product_table(a: DGAlgebra) -> str:
    return "\n".join(f"{u}*{v} = {w}" for (u, v), w in product_table(a).items())


def _poly_det(m: Matrix):
    if m.nrows == 0:
        return m.ring.one
    return det(m)


def _poly_pf(m: Matrix):
    if m.nrows == 0:
        return m.ring.one
    return pfaffian(m)


# length two -------------------------------------------------------------------------


def hilbert_burch_row(a_mat: Matrix, a=None):
    """The row with ``i``-th entry ``(-1)^{i-1} a det(A_i)`` (``A_i``: row ``i`` deleted)."""
    ring = a_mat.ring
    a = ring.one if a is None else ring(a)
    n1 = a_mat.nrows
    return tuple(a * _poly_det(a_mat.minor(delete_rows=[i])) * _sign(i) for i in range(n1))


def build_hilbert_burch(a_mat: Matrix, a=None) -> StructuredResolution:
    """``0 -> R^n --A--> R^{n+1} --B--> R`` with ``e_i e_j = a sum_k (-1)^{i+j+k} det(A^k_{ij}) f_k``."""
    ring = a_mat.ring
    n1, n = a_mat.nrows, a_mat.ncols
    if n1 != n + 1:
        raise DimensionError("the Hilbert-Burch matrix must be (n+1) x n")
    a = ring.one if a is None else ring(a)
    row = hilbert_burch_row(a_mat, a)
    b = Matrix(ring, [list(row)], 1, n1)
    if not (b @ a_mat).is_zero():  # pragma: no cover - Laplace expansion guarantees this
        raise AssertionError("B A is not zero")
    labels = {0: ["1"], 1: [f"e{i + 1}" for i in range(n1)], 2: [f"f{k + 1}" for k in range(n)]}
    c = Complex(ring, 0, [1, n1, n], {1: b, 2: a_mat}, labels)
    mult = _unit_rows(ring, c)
    # e_i e_j
    cols = {}
    for i, j in combinations(range(n1), 2):
        v = []
        for k in range(n):
            minor = a_mat.minor(delete_rows=[i, j], delete_cols=[k])
            # 1-based exponent i+j+k has the parity of the 0-based one plus 3
            v.append(a * _poly_det(minor) * _sign(i + j + k + 3))
        cols[(i, j)] = tuple(v)
    for i in range(n1):
        columns = []
        for j in range(n1):
            if i == j:
                columns.append((ring.zero,) * n)
            elif i < j:
                columns.append(cols[(i, j)])
            else:
                columns.append(tuple(-x for x in cols[(j, i)]))
        mult[(1, i, 1)] = Matrix.from_columns(ring, columns, n)
    alg = DGAlgebra(c, mult=mult)
    return StructuredResolution(a_mat, row, alg, "hilbert-burch")


def _unit_rows(ring, c: Complex) -> dict:
    mult = {}
    for j in c.degrees():
        if c.rank(j):
            mult[(0, 0, j)] = Matrix.identity(ring, c.rank(j))
        for p in range(c.rank(j)):
            if j > 0:
                mult[(j, p, 0)] = Matrix.from_columns(ring, [c.basis_vector(j, p)], c.rank(j))
    return mult


# length three -----------------------------------------------------------------------


def buchsbaum_eisenbud_row(a_mat: Matrix, sign_flag: str = "b"):
    """Signed submaximal Pfaffians: ``(-1)^{i-1} Pf(A^i_i)`` (flag ``b``) or ``(-1)^i`` (flag ``a``)."""
    if sign_flag not in ("a", "b"):
        raise ValueError("sign flag must be 'a' or 'b'")
    n = a_mat.nrows
    shift = 1 if sign_flag == "a" else 0
    return tuple(_poly_pf(a_mat.minor(delete_rows=[i], delete_cols=[i])) * _sign(i + shift)
                 for i in range(n))


def build_buchsbaum_eisenbud(a_mat: Matrix, sign_flag: str = "b") -> StructuredResolution:
    """``0 -> Rg --B^T--> R^n --A--> R^n --B--> R`` with its DG algebra structure.

    Products: ``e_i e_j = sum_k (-1)^{i+j+k} rho_{ijk} Pf(A^{ijk}_{ijk}) f_k`` with
    ``rho_{ijk} = -1`` exactly when ``i < k < j``, and ``e_i f_j = f_j e_i = delta_ij g``.
    With flag ``a`` the row changes sign; the complex is then the image of the
    flag-``b`` one under ``(1, -e, -f, g)`` and the ``e_i e_j`` products change
    sign accordingly.
    """
    ring = a_mat.ring
    n = a_mat.nrows
    if not a_mat.is_square():
        raise DimensionError("the matrix must be square")
    if not a_mat.is_alternating():
        raise NotAlternatingError("the matrix is not alternating")
    if n % 2 == 0:
        raise DimensionError("the matrix size must be odd")
    row = buchsbaum_eisenbud_row(a_mat, sign_flag)
    b = Matrix(ring, [list(row)], 1, n)
    if not (b @ a_mat).is_zero() or not (a_mat @ b.T).is_zero():  # pragma: no cover
        raise AssertionError("B A or A B^T is not zero")
    labels = {0: ["1"], 1: [f"e{i + 1}" for i in range(n)], 2: [f"f{k + 1}" for k in range(n)],
              3: ["g"]}
    c = Complex(ring, 0, [1, n, n, 1], {1: b, 2: a_mat, 3: b.T}, labels)
    ee_sign = -1 if sign_flag == "a" else 1
    mult = _unit_rows(ring, c)
    for i in range(n):
        columns = []
        for j in range(n):
            v = []
            for k in range(n):
                if i == j or k in (i, j):
                    v.append(ring.zero)
                    continue
                lo, hi = min(i, j), max(i, j)
                rho = -1 if lo < k < hi else 1
                idx = sorted({i, j, k})
                pf = _poly_pf(a_mat.minor(delete_rows=idx, delete_cols=idx))
                # formula is stated for the ordered pair (lo, hi); e_j e_i = -e_i e_j
                sgn = _sign(lo + hi + k + 3) * rho * ee_sign * (1 if i < j else -1)
                v.append(pf * sgn)
            columns.append(tuple(v))
        mult[(1, i, 1)] = Matrix.from_columns(ring, columns, n)
        # e_i f_j = delta_ij g
        mult[(1, i, 2)] = Matrix(ring, [[ring.one if j == i else ring.zero for j in range(n)]], 1, n)
        mult[(2, i, 1)] = Matrix(ring, [[ring.one if j == i else ring.zero for j in range(n)]], 1, n)
    alg = DGAlgebra(c, mult=mult)
    return StructuredResolution(a_mat, row, alg, "buchsbaum-eisenbud")


def alternating_family(ring, n: int) -> Matrix:
    """The ``n x n`` alternating matrix with ``x``, ``y`` on the superdiagonal and ``z`` on the antidiagonal.

    Above the diagonal (1-based): ``x`` if ``i`` is odd and ``j = i+1``, ``y``
    if ``i`` is even and ``j = i+1``, ``z`` if ``j = n-i+1``.  ``ring`` must
    have variables named ``x``, ``y``, ``z``.
    """
    if n < 3 or n % 2 == 0:
        raise DimensionError("n must be odd and at least 3")
    x, y, z = ring.gen("x"), ring.gen("y"), ring.gen("z")
    rows = [[ring.zero] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if j == i + 1:
                v = x if i % 2 else y
            elif j == n - i + 1:
                v = z
            else:
                continue
            rows[i - 1][j - 1] = v
            rows[j - 1][i - 1] = -v
    return Matrix(ring, rows, n, n)
