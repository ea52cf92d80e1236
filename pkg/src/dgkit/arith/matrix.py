"""Dense exact matrices over a field or a polynomial ring."""
from __future__ import annotations

from itertools import combinations

from ..errors import DimensionError, NotAlternatingError


class Matrix:
    """Immutable ``nrows x ncols`` matrix with entries in ``ring``.

    ``ring`` is a field (:data:`QQ`, :func:`GF`) or a :class:`PolyRing`.
    Entries are coerced through ``ring(...)`` on construction.
    """

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring, rows, nrows: int | None = None, ncols: int | None = None):
        rows = [list(r) for r in rows]
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if len(rows) != nrows:
            raise DimensionError(f"expected {nrows} rows, got {len(rows)}")
        for r in rows:
            if len(r) != ncols:
                raise DimensionError("ragged matrix rows")
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.rows = tuple(tuple(ring(x) for x in r) for r in rows)

    # constructors -----------------------------------------------------------

    @classmethod
    def zeros(cls, ring, m: int, n: int) -> "Matrix":
        z = ring.zero
        return cls._raw(ring, m, n, tuple((z,) * n for _ in range(m)))

    @classmethod
    def identity(cls, ring, n: int) -> "Matrix":
        return cls.scalar(ring, n, ring.one)

    @classmethod
    def scalar(cls, ring, n: int, c) -> "Matrix":
        c = ring(c)
        z = ring.zero
        return cls._raw(ring, n, n, tuple(
            tuple(c if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def _raw(cls, ring, m, n, rows):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.nrows = m
        obj.ncols = n
        obj.rows = rows
        return obj

    @classmethod
    def from_columns(cls, ring, cols, nrows: int) -> "Matrix":
        cols = [list(c) for c in cols]
        return cls(ring, [[c[i] for c in cols] for i in range(nrows)], nrows, len(cols))

    @classmethod
    def parse(cls, ring, rows, nrows=None, ncols=None) -> "Matrix":
        return cls(ring, [[ring.parse(str(x)) if isinstance(x, str) else ring(x)
                           for x in r] for r in rows], nrows, ncols)

    # access -----------------------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.col(j) for j in range(self.ncols)]

    def entries(self):
        for r in self.rows:
            yield from r

    def to_lists(self):
        return [list(r) for r in self.rows]

    def to_strings(self):
        return [[self.ring.format(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {self.to_strings()})"

    # algebra ------------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for a, b in zip(self.entries(), other.entries()))

    def __hash__(self):
        return hash((self.shape, self.rows))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries())

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._raw(self.ring, self.nrows, self.ncols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.ring, self.nrows, self.ncols,
                           tuple(tuple(-a for a in r) for r in self.rows))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.ring(c)
        return Matrix._raw(self.ring, self.nrows, self.ncols,
                           tuple(tuple(c * a for a in r) for r in self.rows))

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return matmul(self, other)

    def apply(self, vec):
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise DimensionError(f"vector of length {len(vec)} for {self.shape} matrix")
        z = self.ring.zero
        nz = [(j, v) for j, v in enumerate(vec) if v]
        out = []
        for r in self.rows:
            s = z
            for j, v in nz:
                a = r[j]
                if a:
                    s = s + a * v
            out.append(s)
        return tuple(out)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.ring, self.ncols, self.nrows,
                           tuple(zip(*self.rows)) if self.nrows else
                           tuple(() for _ in range(self.ncols)))

    def transpose(self) -> "Matrix":
        return self.T

    def map(self, f, ring=None) -> "Matrix":
        ring = ring or self.ring
        return Matrix(ring, [[f(x) for x in r] for r in self.rows], self.nrows, self.ncols)

    def change_ring(self, ring) -> "Matrix":
        return self.map(ring, ring)

    def submatrix(self, rows, cols) -> "Matrix":
        rows, cols = list(rows), list(cols)
        return Matrix._raw(self.ring, len(rows), len(cols), tuple(
            tuple(self.rows[i][j] for j in cols) for i in rows))

    def minor(self, delete_rows=(), delete_cols=()) -> "Matrix":
        """Matrix with the given (0-based) rows and columns removed."""
        dr, dc = set(delete_rows), set(delete_cols)
        for i in dr:
            if not 0 <= i < self.nrows:
                raise IndexError(f"row {i} out of range for {self.shape}")
        for j in dc:
            if not 0 <= j < self.ncols:
                raise IndexError(f"column {j} out of range for {self.shape}")
        return self.submatrix([i for i in range(self.nrows) if i not in dr],
                              [j for j in range(self.ncols) if j not in dc])

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise DimensionError("hstack needs equal row counts")
        return Matrix._raw(self.ring, self.nrows, self.ncols + other.ncols,
                           tuple(a + b for a, b in zip(self.rows, other.rows)))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise DimensionError("vstack needs equal column counts")
        return Matrix._raw(self.ring, self.nrows + other.nrows, self.ncols,
                           self.rows + other.rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_constant(self) -> bool:
        if getattr(self.ring, "is_field", False):
            return True
        return all(x.is_constant() for x in self.entries())

    def is_alternating(self) -> bool:
        if not self.is_square():
            return False
        n = self.nrows
        return all(self.rows[i][i] == 0 for i in range(n)) and all(
            self.rows[i][j] == -self.rows[j][i] for i in range(n) for j in range(i + 1, n))

    # determinants and Pfaffians -------------------------------------------

    def det(self, method: str = "auto"):
        return det(self, method)

    def pfaffian(self):
        return pfaffian(self)


def block_diag(ring, blocks) -> Matrix:
    m = sum(b.nrows for b in blocks)
    n = sum(b.ncols for b in blocks)
    rows = [[ring.zero] * n for _ in range(m)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                rows[r0 + i][c0 + j] = b.rows[i][j]
        r0 += b.nrows
        c0 += b.ncols
    return Matrix._raw(ring, m, n, tuple(tuple(r) for r in rows))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    ring = a.ring
    z = ring.zero
    bcols = b.columns() if b.nrows else [() for _ in range(b.ncols)]
    out = []
    for r in a.rows:
        nz = [(k, x) for k, x in enumerate(r) if x != 0]
        row = []
        for c in bcols:
            s = z
            for k, x in nz:
                y = c[k]
                if y != 0:
                    s = s + x * y
            row.append(s)
        out.append(tuple(row))
    return Matrix._raw(ring, a.nrows, b.ncols, tuple(out))


def _det_cofactor(rows, ring):
    n = len(rows)
    if n == 0:
        return ring.one
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ring.zero
    for j, a in enumerate(rows[0]):
        if a == 0:
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _det_cofactor(sub, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def _det_bareiss(rows, ring):
    """Fraction-free elimination; every division below is exact."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return ring.one
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return ring.zero
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num / prev if prev != 1 else num
            m[i][k] = ring.zero
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def det(a: Matrix, method: str = "auto"):
    """Determinant by cofactor expansion (below 5x5) or Bareiss elimination."""
    if not a.is_square():
        raise DimensionError(f"determinant of non-square {a.shape} matrix")
    if method == "auto":
        method = "cofactor" if a.nrows < 5 else "bareiss"
    if method == "cofactor":
        return _det_cofactor(a.rows, a.ring)
    if method == "bareiss":
        return _det_bareiss(a.rows, a.ring)
    raise ValueError(f"unknown determinant method {method!r}")


def _require_alternating(a: Matrix):
    if not a.is_alternating():
        raise NotAlternatingError("matrix is not alternating")


def pfaffian(a: Matrix):
    """Pfaffian of an alternating matrix, normalised so Pf([[0,x],[-x,0]]) = x."""
    _require_alternating(a)
    n = a.nrows
    ring = a.ring
    if n % 2:
        return ring.zero
    memo = {}

    def pf(idx):
        if not idx:
            return ring.one
        if idx in memo:
            return memo[idx]
        i = idx[0]
        total = ring.zero
        for pos in range(1, len(idx)):
            j = idx[pos]
            aij = a.rows[i][j]
            if aij == 0:
                continue
            rest = idx[1:pos] + idx[pos + 1:]
            term = aij * pf(rest)
            # expansion along the first remaining index: sign (-1)^(pos+1)
            total = total + term if pos % 2 == 1 else total - term
        memo[idx] = total
        return total

    return pf(tuple(range(n)))


def submaximal_pfaffians(a: Matrix):
    """``[Pf(A with row i and column i deleted) for i in range(n)]``."""
    _require_alternating(a)
    return [pfaffian(a.minor([i], [i])) for i in range(a.nrows)]


def minors(a: Matrix, size: int):
    """All ``size x size`` minors, rows and column subsets in lex order."""
    out = []
    for rs in combinations(range(a.nrows), size):
        for cs in combinations(range(a.ncols), size):
            out.append(det(a.submatrix(rs, cs)))
    return out
