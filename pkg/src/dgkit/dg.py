"""Commutative DG algebras, DG modules and their morphisms.

Structure constants are stored as left-multiplication matrices: for a basis
element ``a`` (index ``p``) of ``A_i``, ``mult[(i, p, j)]`` is the matrix of
``b -> a b`` from ``A_j`` to ``A_{i+j}``.  A DG module stores
``act[(i, p, j)]``: ``M_j -> M_{i+j}`` in the same way.
"""
from __future__ import annotations

from dataclasses import dataclass

from .arith.linalg import (base_field, complement_basis, image_basis, inverse, kernel, rref,
                           solve)
from .arith.matrix import Matrix
from .complexes import (ChainMap, Complex, HomComplex, concentrated, hom_complex, suspend,
                        tensor_complex)
from .errors import AxiomError, PreconditionError


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _vneg(u):
    return tuple(-a for a in u)


def _vscale(c, u):
    return tuple(c * a for a in u)


def _is_zero(u):
    return all(a == 0 for a in u)


@dataclass
class VerifyReport:
    """Outcome of an axiom check; ``witness`` names the first failing basis tuple."""

    ok: bool
    axiom: str | None = None
    witness: tuple | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return f"{self.axiom} fails at {self.witness}: {self.detail}"


# DG algebras -------------------------------------------------------------------------


class DGAlgebra:
    """A graded-commutative DG algebra with underlying complex ``A`` (``A.lo == 0``).

    ``products`` maps ``(i, j)`` to a nested list ``[p][q]`` of coefficient
    vectors in ``A_{i+j}``, or ``mult`` may be given directly.  Every axiom is
    verified on construction unless ``check=False``.
    """

    def __init__(self, complex_: Complex, products=None, unit: int = 0, check: bool = True,
                 mult=None):
        if complex_.lo != 0:
            raise ValueError("a DG algebra lives in non-negative degrees starting at 0")
        if complex_.rank(0) == 0:
            raise ValueError("a DG algebra needs a nonzero degree-0 part")
        self.complex = complex_
        self.ring = complex_.ring
        self.unit = unit
        if mult is None:
            mult = _tables_to_matrices(complex_, complex_, products or {})
        self.mult = _complete_matrices(complex_, complex_, mult)
        if check:
            rep = verify_dg_algebra(self)
            if not rep:
                raise AxiomError("not a DG algebra: " + rep.describe(), rep)

    @property
    def hi(self):
        return self.complex.hi

    def degrees(self):
        return self.complex.degrees()

    def rank(self, i):
        return self.complex.rank(i)

    def d(self, i):
        return self.complex.d(i)

    def basis(self):
        """All ``(degree, index)`` pairs."""
        return [(i, p) for i in self.degrees() for p in range(self.rank(i))]

    def unit_vector(self):
        return self.complex.basis_vector(0, self.unit)

    def left(self, i, p, j) -> Matrix:
        key = (i, p, j)
        if key in self.mult:
            return self.mult[key]
        return Matrix.zeros(self.ring, self.rank(i + j), self.rank(j))

    def mul(self, i, p, j, q):
        """Coordinates of ``a_p * b_q`` in ``A_{i+j}``."""
        if self.rank(i + j) == 0:
            return ()
        return self.left(i, p, j).col(q)

    def mul_vec(self, i, u, j, v):
        out = self.complex.zero_vector(i + j)
        for p, c in enumerate(u):
            if c == 0:
                continue
            w = self.left(i, p, j).apply(v)
            out = _vadd(out, _vscale(c, w))
        return out

    def products_table(self):
        """``{(i, j): [[vector for q] for p]}`` as plain nested lists."""
        out = {}
        for i in self.degrees():
            for j in self.degrees():
                if i + j > self.hi:
                    continue
                out[(i, j)] = [[list(self.mul(i, p, j, q)) for q in range(self.rank(j))]
                               for p in range(self.rank(i))]
        return out

    def as_module(self) -> "DGModule":
        """``A`` as a DG module over itself."""
        return DGModule(self, self.complex, mult=dict(self.mult), check=False)

    def is_finite_dimensional_over_field(self) -> bool:
        return getattr(self.ring, "is_field", False)

    def __repr__(self):
        return f"DGAlgebra(ranks={self.complex.ranks})"


def _tables_to_matrices(left: Complex, right: Complex, tables) -> dict:
    """Turn ``{(i, j): [p][q] -> vector}`` into left-multiplication matrices."""
    ring = left.ring
    out = {}
    for key, table in tables.items():
        i, j = (int(k) for k in (key.split(",") if isinstance(key, str) else key))
        tgt = right.rank(i + j)
        for p, row in enumerate(table):
            cols = [list(v) for v in row]
            if len(cols) != right.rank(j):
                raise ValueError(f"products ({i},{j}) row {p}: expected {right.rank(j)} entries")
            for v in cols:
                if len(v) != tgt:
                    raise ValueError(f"products ({i},{j}): vectors must have length {tgt}")
            out[(i, p, j)] = Matrix.from_columns(ring, [[_coerce(ring, x) for x in v]
                                                        for v in cols], tgt)
    return out


def _coerce(ring, x):
    return ring.parse(x) if isinstance(x, str) else ring(x)


def _complete_matrices(alg_like: Complex, m: Complex, mats: dict) -> dict:
    """Fill in zero matrices so every ``(i, p, j)`` with a nonzero target exists."""
    ring = m.ring
    out = {}
    for i in alg_like.degrees():
        for p in range(alg_like.rank(i)):
            for j in m.degrees():
                shape = (m.rank(i + j), m.rank(j))
                mat = mats.get((i, p, j))
                if mat is None:
                    if shape[0] and shape[1]:
                        out[(i, p, j)] = Matrix.zeros(ring, *shape)
                    continue
                if not isinstance(mat, Matrix):
                    mat = Matrix.parse(ring, mat, *shape)
                if mat.shape != shape:
                    raise ValueError(f"action matrix {(i, p, j)} has shape {mat.shape}, expected {shape}")
                out[(i, p, j)] = mat
    for i, p, j in mats:
        if not (alg_like.lo <= i <= alg_like.hi and 0 <= p < alg_like.rank(i)):
            raise ValueError(f"structure constants for a missing basis element: {(i, p)}")
    return out


def _check_square_zero(c: Complex) -> VerifyReport:
    for i in range(c.lo + 2, c.hi + 1):
        prod = c.d(i - 1) @ c.d(i)
        if not prod.is_zero():
            return VerifyReport(False, "d^2 = 0", (i,), f"d_{i-1} d_{i} != 0")
    return VerifyReport(True)


def verify_dg_algebra(a: DGAlgebra, leibniz_sign: int = 1) -> VerifyReport:
    """Check unit, graded commutativity, associativity and the Leibniz rule.

    ``leibniz_sign=-1`` checks ``d(ab) = da b - (-1)^|a| a db`` instead, which
    is useful to see that the sign in the rule is detected.
    """
    A = a.complex
    rep = _check_square_zero(A)
    if not rep:
        return rep
    if not 0 <= a.unit < A.rank(0):
        return VerifyReport(False, "unital", (0, a.unit), "unit index out of range")
    basis = a.basis()
    one = a.unit_vector()
    # unital
    for (j, q) in basis:
        e = A.basis_vector(j, q)
        if a.mul_vec(0, one, j, e) != e:
            return VerifyReport(False, "unital", ((0, a.unit), (j, q)), "1*b != b")
        if a.mul(j, q, 0, a.unit) != e:
            return VerifyReport(False, "unital", ((j, q), (0, a.unit)), "b*1 != b")
    # graded commutativity and odd squares
    for (i, p) in basis:
        for (j, q) in basis:
            if i + j > A.hi:
                continue
            ab = a.mul(i, p, j, q)
            ba = a.mul(j, q, i, p)
            if ab != (ba if (i * j) % 2 == 0 else _vneg(ba)):
                return VerifyReport(False, "graded commutativity", ((i, p), (j, q)),
                                    "ab != (-1)^{|a||b|} ba")
            if i % 2 and (i, p) == (j, q) and not _is_zero(ab):
                return VerifyReport(False, "graded commutativity", ((i, p), (i, p)),
                                    "square of an odd element is nonzero")
    # pairs involving the unit follow from the unit axioms (and d(1) = 0 since A_{-1} = 0)
    basis = [b for b in basis if b != (0, a.unit)]
    # associativity
    for (i, p) in basis:
        for (j, q) in basis:
            if i + j > A.hi:
                continue
            ab = a.mul(i, p, j, q)
            for (k, r) in basis:
                if i + j + k > A.hi:
                    continue
                lhs = a.mul_vec(i + j, ab, k, A.basis_vector(k, r))
                rhs = a.mul_vec(i, A.basis_vector(i, p), j + k, a.mul(j, q, k, r))
                if lhs != rhs:
                    return VerifyReport(False, "associativity", ((i, p), (j, q), (k, r)),
                                        "(ab)c != a(bc)")
    # Leibniz
    for (i, p) in basis:
        da = A.d(i).col(p) if i > 0 else ()
        for (j, q) in basis:
            if i + j - 1 > A.hi:
                continue
            lhs = A.d(i + j).apply(a.mul(i, p, j, q)) if i + j > 0 else ()
            rhs = A.zero_vector(i + j - 1)
            if i > 0:
                rhs = _vadd(rhs, a.mul_vec(i - 1, da, j, A.basis_vector(j, q)))
            if j > 0:
                db = A.d(j).col(q)
                t = a.mul_vec(i, A.basis_vector(i, p), j - 1, db)
                rhs = _vadd(rhs, t if (i % 2 == 0) == (leibniz_sign == 1) else _vneg(t))
            if lhs != rhs:
                return VerifyReport(False, "Leibniz", ((i, p), (j, q)),
                                    "d(ab) != d(a)b + (-1)^|a| a d(b)")
    return VerifyReport(True)


class DGAlgebraMorphism:
    """A chain map ``A -> B`` respecting products and units."""

    def __init__(self, source: DGAlgebra, target: DGAlgebra, chain_map: ChainMap,
                 check: bool = True):
        self.source = source
        self.target = target
        self.map = chain_map
        if check:
            rep = self.verify()
            if not rep:
                raise AxiomError("not a DG algebra morphism: " + rep.describe(), rep)

    def verify(self) -> VerifyReport:
        f = self.map
        if f.degree != 0 or not f.is_chain_map():
            return VerifyReport(False, "chain map", None, "not a degree-0 chain map")
        A, B = self.source, self.target
        if f.apply(0, A.unit_vector()) != B.unit_vector():
            return VerifyReport(False, "unit", None, "unit not sent to unit")
        for (i, p) in A.basis():
            fa = f.f(i).col(p)
            for (j, q) in A.basis():
                if B.rank(i + j) == 0:
                    continue
                if i + j <= A.hi:
                    lhs = f.apply(i + j, A.mul(i, p, j, q))
                else:
                    lhs = B.complex.zero_vector(i + j)
                rhs = B.mul_vec(i, fa, j, f.f(j).col(q))
                if lhs != rhs:
                    return VerifyReport(False, "products", ((i, p), (j, q)), "f(ab) != f(a)f(b)")
        return VerifyReport(True)


# DG modules -------------------------------------------------------------------------


class DGModule:
    """A DG module over ``algebra`` with underlying complex ``complex_``.

    The action is given either as ``action`` tables ``{(i, j): [p][q] -> vector}``
    or as matrices ``mult[(i, p, j)]: M_j -> M_{i+j}``.  Multiplication by the
    unit must be the identity; it is filled in when missing.
    """

    def __init__(self, algebra: DGAlgebra, complex_: Complex, action=None, check: bool = True,
                 mult=None):
        if complex_.ring != algebra.ring:
            raise ValueError("module and algebra over different rings")
        self.algebra = algebra
        self.complex = complex_
        self.ring = complex_.ring
        if mult is None:
            mult = _tables_to_matrices(algebra.complex, complex_, action or {})
        else:
            mult = dict(mult)
        for j in complex_.degrees():
            key = (0, algebra.unit, j)
            if key not in mult and complex_.rank(j):
                mult[key] = Matrix.identity(self.ring, complex_.rank(j))
        self.mult = _complete_matrices(algebra.complex, complex_, mult)
        if check:
            rep = verify_dg_module(self)
            if not rep:
                raise AxiomError("not a DG module: " + rep.describe(), rep)

    @property
    def lo(self):
        return self.complex.lo

    @property
    def hi(self):
        return self.complex.hi

    def degrees(self):
        return self.complex.degrees()

    def rank(self, j):
        return self.complex.rank(j)

    def d(self, j):
        return self.complex.d(j)

    def basis(self):
        return [(j, q) for j in self.degrees() for q in range(self.rank(j))]

    def action_matrix(self, i, p, j) -> Matrix:
        key = (i, p, j)
        if key in self.mult:
            return self.mult[key]
        return Matrix.zeros(self.ring, self.rank(i + j), self.rank(j))

    def act(self, i, p, j, q):
        if self.rank(i + j) == 0:
            return ()
        return self.action_matrix(i, p, j).col(q)

    def act_vec(self, i, u, j, v):
        out = self.complex.zero_vector(i + j)
        for p, c in enumerate(u):
            if c == 0:
                continue
            out = _vadd(out, _vscale(c, self.action_matrix(i, p, j).apply(v)))
        return out

    def action_table(self):
        A = self.algebra
        out = {}
        for i in A.degrees():
            for j in self.degrees():
                if self.rank(i + j) == 0 or self.rank(j) == 0:
                    continue
                out[(i, j)] = [[list(self.act(i, p, j, q)) for q in range(self.rank(j))]
                               for p in range(A.rank(i))]
        return out

    def __repr__(self):
        return f"DGModule(lo={self.lo}, ranks={self.complex.ranks})"


def verify_dg_module(m: DGModule) -> VerifyReport:
    """Check unit action, associativity ``(ab)m = a(bm)`` and the Leibniz rule."""
    A = m.algebra
    M = m.complex
    rep = _check_square_zero(M)
    if not rep:
        return rep
    one = A.unit_vector()
    for (j, q) in m.basis():
        e = M.basis_vector(j, q)
        if m.act_vec(0, one, j, e) != e:
            return VerifyReport(False, "unital", ((0, A.unit), (j, q)), "1*m != m")
    abasis = [b for b in A.basis() if b != (0, A.unit)]
    for (i, p) in abasis:
        for (k, r) in abasis:
            ab = A.mul(i, p, k, r) if A.rank(i + k) else None
            for (j, q) in m.basis():
                if m.rank(i + k + j) == 0:
                    continue
                bm = m.act(k, r, j, q)
                rhs = m.act_vec(i, A.complex.basis_vector(i, p), k + j, bm)
                if ab is None:
                    lhs = M.zero_vector(i + k + j)
                else:
                    lhs = m.act_vec(i + k, ab, j, M.basis_vector(j, q))
                if lhs != rhs:
                    return VerifyReport(False, "associativity", ((i, p), (k, r), (j, q)),
                                        "(ab)m != a(bm)")
    for (i, p) in abasis:
        for (j, q) in m.basis():
            if m.rank(i + j - 1) == 0:
                continue
            lhs = M.d(i + j).apply(m.act(i, p, j, q)) if m.rank(i + j) else M.zero_vector(i + j - 1)
            rhs = M.zero_vector(i + j - 1)
            if i > 0:
                rhs = _vadd(rhs, m.act_vec(i - 1, A.d(i).col(p), j, M.basis_vector(j, q)))
            if m.rank(j - 1):
                t = m.act_vec(i, A.complex.basis_vector(i, p), j - 1, M.d(j).col(q))
                rhs = _vadd(rhs, t if i % 2 == 0 else _vneg(t))
            if lhs != rhs:
                return VerifyReport(False, "Leibniz", ((i, p), (j, q)),
                                    "d(am) != d(a)m + (-1)^|a| a d(m)")
    return VerifyReport(True)


class DGMorphism:
    """A degree-``n`` map of DG modules: chain map plus ``f(am) = (-1)^{n|a|} a f(m)``."""

    def __init__(self, source: DGModule, target: DGModule, chain_map: ChainMap,
                 check: bool = True):
        self.source = source
        self.target = target
        self.map = chain_map
        if check:
            rep = self.verify()
            if not rep:
                raise AxiomError("not a DG module morphism: " + rep.describe(), rep)

    @property
    def degree(self):
        return self.map.degree

    def verify(self) -> VerifyReport:
        f = self.map
        if not f.is_chain_map():
            return VerifyReport(False, "chain map", None, "differentials do not commute")
        return self.linearity_report()

    def linearity_report(self) -> VerifyReport:
        f = self.map
        n = f.degree
        M, N = self.source, self.target
        A = M.algebra
        for (i, p) in A.basis():
            for (j, q) in M.basis():
                if N.rank(i + j + n) == 0:
                    continue
                am = M.act(i, p, j, q) if M.rank(i + j) else None
                lhs = f.apply(i + j, am) if am is not None else N.complex.zero_vector(i + j + n)
                fm = f.f(j).col(q)
                rhs = N.act_vec(i, A.complex.basis_vector(i, p), j + n, fm)
                if (n * i) % 2:
                    rhs = _vneg(rhs)
                if lhs != rhs:
                    return VerifyReport(False, "A-linearity", ((i, p), (j, q)),
                                        "f(am) != (-1)^{|f||a|} a f(m)")
        return VerifyReport(True)

    def is_quasi_iso(self) -> bool:
        from .complexes import is_quasi_iso
        return is_quasi_iso(self.map)


# examples ------------------------------------------------------------------------------


def ring_algebra(ring) -> DGAlgebra:
    """``R`` concentrated in degree 0."""
    c = concentrated(ring, 1, 0, labels=["1"])
    return DGAlgebra(c, {(0, 0): [[[ring.one]]]})


def koszul_algebra(ring, xs) -> DGAlgebra:
    """The Koszul complex with the wedge product."""
    from .koszul import koszul_via_exterior

    k = koszul_via_exterior(ring, xs)
    mult = {}
    for i in k.degrees():
        for p in range(k.rank(i)):
            for j in k.degrees():
                if i + j > k.hi:
                    continue
                cols = [k.product(i, p, j, q) for q in range(k.rank(j))]
                mult[(i, p, j)] = Matrix.from_columns(ring, cols, k.rank(i + j))
    return DGAlgebra(k, mult=mult)


def trivial_koszul(field) -> DGAlgebra:
    """``U = K(0)`` over a field: basis ``1`` in degree 0, ``e`` in degree 1, ``e^2 = 0``."""
    return koszul_algebra(field, [field.zero])


def algebra_from_table(ring, ranks, products, differentials=None, unit: int = 0,
                       labels=None) -> DGAlgebra:
    c = Complex(ring, 0, ranks, differentials or {}, labels)
    return DGAlgebra(c, products, unit)


def degree_zero_algebra(field, table, labels=None) -> DGAlgebra:
    """A finite-dimensional commutative algebra in degree 0 from its table.

    ``table[p][q]`` is the coordinate vector of ``b_p b_q``; ``b_0`` is the unit.
    """
    n = len(table)
    c = Complex(field, 0, [n], labels={0: labels} if labels else None)
    return DGAlgebra(c, {(0, 0): table})


def truncated_polynomial_algebra(field, power: int = 2) -> DGAlgebra:
    """``F[X]/(X^power)`` in degree 0."""
    table = [[[field.one if k == p + q else field.zero for k in range(power)]
              for q in range(power)] for p in range(power)]
    return degree_zero_algebra(field, table, [f"X^{k}" if k > 1 else ("X" if k else "1")
                                              for k in range(power)])


def square_zero_algebra(field, nvars: int = 2) -> DGAlgebra:
    """``F[X_1..X_n]/(X_1..X_n)^2`` in degree 0."""
    n = nvars + 1
    table = []
    for p in range(n):
        row = []
        for q in range(n):
            v = [field.zero] * n
            if p == 0:
                v[q] = field.one
            elif q == 0:
                v[p] = field.one
            row.append(v)
        table.append(row)
    return degree_zero_algebra(field, table, ["1"] + [f"X{k}" for k in range(1, n)])


def residue_module(algebra: DGAlgebra, degree: int = 0) -> DGModule:
    """The field in one degree with every positive-degree or nilpotent basis element acting by 0.

    Only meaningful when the algebra has a unique maximal homogeneous ideal
    spanned by the non-unit basis vectors (as for ``K(0)`` and local
    degree-zero algebras given with an adapted basis).
    """
    ring = algebra.ring
    c = concentrated(ring, 1, degree)
    return DGModule(algebra, c, mult={(0, algebra.unit, degree): Matrix.identity(ring, 1)})


def example_G(field, top: int = 12) -> DGModule:
    """Truncation through degree ``top`` of the semi-free ``U``-module ``G``.

    Degree ``2n`` has basis ``1_{2n}``, degree ``2n+1`` has ``e_{2n+1}``;
    ``d(1_{2n}) = e_{2n-1}``, ``e 1_{2n} = e_{2n+1}`` and ``e e_{2n+1} = 0``.
    """
    U = trivial_koszul(field)
    ranks = [1] * (top + 1)
    diffs = {2 * n: Matrix(field, [[1]]) for n in range(1, top // 2 + 1)}
    labels = {i: [f"1_{i}" if i % 2 == 0 else f"e_{i}"] for i in range(top + 1)}
    c = Complex(field, 0, ranks, diffs, labels)
    mult = {}
    for j in range(top + 1):
        mult[(0, 0, j)] = Matrix(field, [[1]])
        if j % 2 == 0 and j + 1 <= top:
            mult[(1, 0, j)] = Matrix(field, [[1]])
    return DGModule(U, c, mult=mult)


# constructions -----------------------------------------------------------------------


def algebra_as_module(a: DGAlgebra) -> DGModule:
    return a.as_module()


def module_direct_sum(*ms: DGModule) -> DGModule:
    from .arith.matrix import block_diag
    from .complexes import direct_sum

    A = ms[0].algebra
    c = direct_sum(*(m.complex for m in ms))
    mult = {}
    for i in A.degrees():
        for p in range(A.rank(i)):
            for j in c.degrees():
                if c.rank(i + j) and c.rank(j):
                    mult[(i, p, j)] = block_diag(A.ring, [m.action_matrix(i, p, j) for m in ms])
    return DGModule(A, c, mult=mult)


def suspend_module(m: DGModule, shift: int = 1) -> DGModule:
    """``S^shift M`` with action ``a * m = (-1)^{shift |a|} a m``."""
    c = suspend(m.complex, shift)
    mult = {}
    for (i, p, j), mat in m.mult.items():
        mult[(i, p, j + shift)] = mat if (i * shift) % 2 == 0 else -mat
    return DGModule(m.algebra, c, mult=mult)


def restrict_scalars(phi: DGAlgebraMorphism, m: DGModule) -> DGModule:
    """Pull a DG ``B``-module back along ``phi: A -> B``: ``a . m = phi(a) m``."""
    A, B = phi.source, phi.target
    if m.algebra is not B and m.algebra.complex != B.complex:
        raise ValueError("module is not over the target algebra")
    rep = phi.verify()
    if not rep:
        raise AxiomError("not a DG algebra morphism: " + rep.describe(), rep)
    ring = A.ring
    mult = {}
    for i in A.degrees():
        f = phi.map.f(i)
        for p in range(A.rank(i)):
            for j in m.degrees():
                if not (m.rank(i + j) and m.rank(j)):
                    continue
                mat = Matrix.zeros(ring, m.rank(i + j), m.rank(j))
                for l, c in enumerate(f.col(p)):
                    if c != 0:
                        mat = mat + m.action_matrix(i, l, j).scale(c)
                mult[(i, p, j)] = mat
    return DGModule(A, m.complex, mult=mult)


def base_change(a: DGAlgebra, x: Complex) -> DGModule:
    """``A (x) X`` with ``a (b (x) x) = (ab) (x) x``."""
    t = tensor_complex(a.complex, x)
    ring = a.ring
    mult = {}
    for i in a.degrees():
        for p in range(a.rank(i)):
            for n in t.degrees():
                if not (t.rank(n + i) and t.rank(n)):
                    continue
                rows = [[ring.zero] * t.rank(n) for _ in range(t.rank(n + i))]
                for col, (pa, ib, jx) in enumerate(t.index[n]):
                    if a.rank(i + pa) == 0:
                        continue
                    ab = a.mul(i, p, pa, ib)
                    for l, c in enumerate(ab):
                        if c != 0:
                            rows[t.pos(n + i, i + pa, l, jx)][col] += c
                mult[(i, p, n)] = Matrix(ring, rows, t.rank(n + i), t.rank(n))
    return DGModule(a, t, mult=mult)


def _kernel_with_free(mat: Matrix, ncols: int, field):
    """Kernel basis plus the free columns; coordinates of a kernel vector are its free entries."""
    if mat.nrows == 0:
        basis = [tuple(field.one if i == j else field.zero for i in range(ncols)) for j in range(ncols)]
        return basis, list(range(ncols))
    _, piv = rref(mat)
    free = [c for c in range(ncols) if c not in set(piv)]
    return kernel(mat), free


class HomModule(DGModule):
    """``Hom_A(M, N)``: the A-linear part of ``Hom(M, N)`` as a DG module.

    ``embedding[n]`` lists the basis of ``Hom_A(M,N)_n`` as vectors of the
    ambient ``Hom(M,N)_n`` (see :class:`HomComplex` for its basis order).
    """

    def __init__(self, m: DGModule, n: DGModule, depth_cap: int | None = None):
        if m.algebra is not n.algebra and m.algebra.complex != n.algebra.complex:
            raise ValueError("modules over different algebras")
        ring = m.ring
        if not getattr(ring, "is_field", False):
            raise PreconditionError("Hom_A is computed over a field")
        A = m.algebra
        h = hom_complex(m.complex, n.complex)
        self.source = m
        self.target = n
        self.ambient = h
        self.embedding = {}
        self._free = {}
        lo = h.lo if depth_cap is None else max(h.lo, min(-depth_cap, h.hi))
        self.depth_cap = depth_cap
        for deg in range(lo, h.hi + 1):
            cons = self._linearity_constraints(h, deg)
            basis, free = _kernel_with_free(cons, h.rank(deg), ring)
            self.embedding[deg] = basis
            self._free[deg] = free
        ranks = [len(self.embedding[deg]) for deg in range(lo, h.hi + 1)]
        diffs = {}
        for deg in range(lo + 1, h.hi + 1):
            cols = [self.coordinates(deg - 1, h.d(deg).apply(v)) for v in self.embedding[deg]]
            diffs[deg] = Matrix.from_columns(ring, cols, ranks[deg - 1 - lo]) if cols else \
                Matrix.zeros(ring, ranks[deg - 1 - lo], 0)
        c = Complex(ring, lo, ranks, diffs)
        mult = {}
        for i in A.degrees():
            for p in range(A.rank(i)):
                for deg in c.degrees():
                    if not (c.rank(deg) and c.rank(deg + i)):
                        continue
                    cols = []
                    for v in self.embedding[deg]:
                        f = h.from_vector(deg, v)
                        af = {}
                        for s_deg, mat in f.items():
                            tgt = s_deg + deg
                            if n.rank(tgt + i) == 0:
                                continue
                            af[s_deg] = n.action_matrix(i, p, tgt) @ mat
                        cols.append(self.coordinates(deg + i, h.to_vector(deg + i, af)))
                    mult[(i, p, deg)] = Matrix.from_columns(ring, cols, c.rank(deg + i))
        super().__init__(A, c, mult=mult)

    def _linearity_constraints(self, h: HomComplex, deg: int) -> Matrix:
        """Rows expressing ``f(am) - (-1)^{deg |a|} a f(m) = 0`` for basis ``a`` and ``m``."""
        m, n = self.source, self.target
        A = m.algebra
        ring = m.ring
        rows = []
        pos = {b: k for k, b in enumerate(h.index[deg])}
        ncols = h.rank(deg)
        for (i, p) in A.basis():
            if (i, p) == (0, A.unit):
                continue
            sgn = _sign(deg * i)
            for (j, q) in m.basis():
                tdeg = i + j + deg
                if n.rank(tdeg) == 0:
                    continue
                block = [[ring.zero] * ncols for _ in range(n.rank(tdeg))]
                # f(a m): a m in M_{i+j}, then f: M_{i+j} -> N_{i+j+deg}
                if m.rank(i + j):
                    am = m.act(i, p, j, q)
                    for s, c in enumerate(am):
                        if c == 0:
                            continue
                        for t in range(n.rank(tdeg)):
                            block[t][pos[(i + j, s, t)]] += c
                # - sgn * a f(m): f(m) in N_{j+deg}
                if n.rank(j + deg):
                    amat = n.action_matrix(i, p, j + deg)
                    for t0 in range(n.rank(j + deg)):
                        col = pos[(j, q, t0)]
                        for t in range(n.rank(tdeg)):
                            c = amat.rows[t][t0]
                            if c != 0:
                                block[t][col] -= c if sgn == 1 else -c
                rows.extend(r for r in block if any(x != 0 for x in r))
        return Matrix(ring, rows, len(rows), ncols)

    def coordinates(self, deg: int, vec):
        """Coordinates of an A-linear ambient vector in the ``Hom_A`` basis."""
        return tuple(vec[c] for c in self._free.get(deg, []))

    def to_chain_map(self, deg: int, coords) -> ChainMap:
        ring = self.ring
        vec = [ring.zero] * self.ambient.rank(deg)
        for c, v in zip(coords, self.embedding[deg]):
            if c != 0:
                vec = [a + c * b for a, b in zip(vec, v)]
        return self.ambient.element(deg, vec)


def dg_hom(m: DGModule, n: DGModule, depth_cap: int | None = None) -> HomModule:
    """``Hom_A(M, N)``; with ``depth_cap`` only degrees ``>= -depth_cap`` are kept."""
    return HomModule(m, n, depth_cap)


class TensorModule(DGModule):
    """``M (x)_A N``: the quotient of ``M (x) N`` by ``(am)(x)n - (-1)^{|a||m|} m(x)(an)``."""

    def __init__(self, m: DGModule, n: DGModule):
        ring = m.ring
        if not getattr(ring, "is_field", False):
            raise PreconditionError("the tensor product over A is computed over a field")
        A = m.algebra
        t = tensor_complex(m.complex, n.complex)
        self.source_left = m
        self.source_right = n
        self.ambient = t
        self.keep = {}
        self.projection = {}
        for deg in t.degrees():
            gens = []
            for (i, p) in A.basis():
                if (i, p) == (0, A.unit):
                    continue
                for jm in m.degrees():
                    kn = deg - i - jm
                    for qm in range(m.rank(jm)):
                        for qn in range(n.rank(kn)):
                            v = [ring.zero] * t.rank(deg)
                            if m.rank(i + jm):
                                for l, c in enumerate(m.act(i, p, jm, qm)):
                                    if c != 0:
                                        v[t.pos(deg, i + jm, l, qn)] += c
                            if n.rank(i + kn):
                                sgn = _sign(i * jm)
                                for l, c in enumerate(n.act(i, p, kn, qn)):
                                    if c != 0:
                                        v[t.pos(deg, jm, qm, l)] -= c if sgn == 1 else -c
                            if any(x != 0 for x in v):
                                gens.append(tuple(v))
            size = t.rank(deg)
            sub = image_basis(Matrix.from_columns(ring, gens, size)) if gens else []
            keep = complement_basis(sub, size, ring)
            self.keep[deg] = keep
            if size:
                full = Matrix.from_columns(ring, list(sub) + [t.basis_vector(deg, k) for k in keep], size)
                inv = inverse(full)
                self.projection[deg] = inv.submatrix(range(len(sub), size), range(size))
            else:
                self.projection[deg] = Matrix.zeros(ring, 0, 0)
        ranks = [len(self.keep[deg]) for deg in t.degrees()]
        diffs = {}
        for deg in range(t.lo + 1, t.hi + 1):
            lift = t.d(deg).submatrix(range(t.rank(deg - 1)), self.keep[deg])
            diffs[deg] = self.projection[deg - 1] @ lift
        labels = {deg: [t.labels(deg)[k] for k in self.keep[deg]] for deg in t.degrees()}
        c = Complex(ring, t.lo, ranks, diffs, labels)
        mult = {}
        for (i, p) in A.basis():
            for deg in c.degrees():
                if not (c.rank(deg) and c.rank(deg + i)):
                    continue
                cols = []
                for k in self.keep[deg]:
                    jm, qm, qn = t.index[deg][k]
                    v = [ring.zero] * t.rank(deg + i)
                    if m.rank(i + jm):
                        for l, cc in enumerate(m.act(i, p, jm, qm)):
                            if cc != 0:
                                v[t.pos(deg + i, i + jm, l, qn)] += cc
                    cols.append(self.projection[deg + i].apply(v))
                mult[(i, p, deg)] = Matrix.from_columns(ring, cols, c.rank(deg + i))
        super().__init__(A, c, mult=mult, check=True)

    def project(self, deg: int, vec):
        return self.projection[deg].apply(vec)


def dg_tensor(m: DGModule, n: DGModule) -> TensorModule:
    return TensorModule(m, n)


def homothety_morphism(m: DGModule) -> DGMorphism:
    """``chi: A -> Hom_A(M, M)``, ``a -> (m -> a m)``."""
    A = m.algebra
    h = dg_hom(m, m)
    ring = m.ring
    src = A.as_module()
    comps = {}
    for i in A.degrees():
        cols = []
        for p in range(A.rank(i)):
            maps = {j: m.action_matrix(i, p, j) for j in m.degrees() if m.rank(i + j)}
            cols.append(h.coordinates(i, h.ambient.to_vector(i, maps)) if h.complex.rank(i)
                        else ())
        comps[i] = Matrix.from_columns(ring, cols, h.complex.rank(i)) if cols else None
    chain = ChainMap(src.complex, h.complex, {k: v for k, v in comps.items() if v is not None})
    return DGMorphism(src, h, chain)


def tensor_commutativity(m: DGModule, n: DGModule) -> DGMorphism:
    """``M (x)_A N -> N (x)_A M``, ``m (x) n -> (-1)^{|m||n|} n (x) m``."""
    mn = dg_tensor(m, n)
    nm = dg_tensor(n, m)
    ring = m.ring
    t1, t2 = mn.ambient, nm.ambient
    comps = {}
    for deg in mn.degrees():
        cols = []
        for k in mn.keep[deg]:
            jm, qm, qn = t1.index[deg][k]
            kn = deg - jm
            v = [ring.zero] * t2.rank(deg)
            v[t2.pos(deg, kn, qn, qm)] = ring(_sign(jm * kn))
            cols.append(nm.project(deg, v))
        comps[deg] = Matrix.from_columns(ring, cols, nm.rank(deg)) if cols else None
    chain = ChainMap(mn.complex, nm.complex, {k: v for k, v in comps.items() if v is not None})
    return DGMorphism(mn, nm, chain)


def hom_cancellation(n: DGModule) -> DGMorphism:
    """``Hom_A(A, N) -> N``, ``f -> f(1)``."""
    A = n.algebra
    h = dg_hom(A.as_module(), n)
    ring = n.ring
    comps = {}
    for deg in h.degrees():
        cols = []
        for v in h.embedding[deg]:
            f = h.ambient.from_vector(deg, v)
            cols.append(f[0].col(A.unit) if n.rank(deg) else ())
        comps[deg] = Matrix.from_columns(ring, cols, n.rank(deg)) if cols else None
    chain = ChainMap(h.complex, n.complex, {k: v for k, v in comps.items() if v is not None})
    return DGMorphism(h, n, chain)


def tensor_cancellation(m: DGModule) -> DGMorphism:
    """``M (x)_A A -> M``, ``m (x) a -> (-1)^{|m||a|} a m``."""
    A = m.algebra
    t = dg_tensor(m, A.as_module())
    ring = m.ring
    amb = t.ambient
    comps = {}
    for deg in t.degrees():
        cols = []
        for k in t.keep[deg]:
            jm, qm, qa = amb.index[deg][k]
            ia = deg - jm
            v = m.act(ia, qa, jm, qm) if m.rank(deg) else ()
            cols.append(v if (jm * ia) % 2 == 0 else _vneg(v))
        comps[deg] = Matrix.from_columns(ring, cols, m.rank(deg)) if cols else None
    chain = ChainMap(t.complex, m.complex, {k: v for k, v in comps.items() if v is not None})
    return DGMorphism(t, m, chain)


def identity_morphism(m: DGModule) -> DGMorphism:
    from .complexes import identity_map
    return DGMorphism(m, m, identity_map(m.complex))


def homology_ring_checks(a: DGAlgebra) -> bool:
    """``Im d_1`` is an ideal of ``A_0`` and products of cycles are cycles.

    Over a field these are the facts that make ``H_0(A)`` a ring and each
    ``H_i`` an ``H_0(A)``-module.
    """
    A = a.complex
    if A.hi >= 1:
        bounds = image_basis(A.d(1)) if A.rank(1) else []
        for (j, q) in [(0, q) for q in range(A.rank(0))]:
            for b in bounds:
                prod = a.mul_vec(0, A.basis_vector(0, q), 0, b)
                if solve(Matrix.from_columns(base_field(a.ring), bounds, A.rank(0)), prod) is None:
                    return False
    for i in a.degrees():
        zi = kernel(A.d(i)) if i > 0 else [A.basis_vector(0, q) for q in range(A.rank(0))]
        for j in a.degrees():
            if i + j > A.hi or i + j == 0:
                continue
            zj = kernel(A.d(j)) if j > 0 else [A.basis_vector(0, q) for q in range(A.rank(0))]
            for u in zi:
                for v in zj:
                    if not _is_zero(A.d(i + j).apply(a.mul_vec(i, u, j, v))):
                        return False
    return True


def degree_zero_module(algebra: DGAlgebra, dim: int, actions, degree: int = 0) -> DGModule:
    """A module in a single degree; ``actions[p]`` is the ``dim x dim`` matrix of ``b_p``."""
    ring = algebra.ring
    c = concentrated(ring, dim, degree)
    mult = {}
    for p, mat in dict(actions).items():
        if not isinstance(mat, Matrix):
            mat = Matrix.parse(ring, mat, dim, dim)
        mult[(0, p, degree)] = mat
    return DGModule(algebra, c, mult=mult)


def soft_truncate_module(m: DGModule, n: int):
    """``tau(M)_{<= n}``: the quotient by ``M_{>n}`` and ``d(M_{n+1})``, with the surjection.

    The kernel is a DG submodule because the algebra sits in degrees ``>= 0``.
    Returns ``(module, DGMorphism)``.
    """
    ring = m.ring
    if n >= m.hi:
        return m, identity_morphism(m)
    A = m.algebra
    if m.rank(n + 1) and not m.d(n + 1).is_zero():
        if not getattr(ring, "is_field", False):
            raise PreconditionError("soft truncation needs field coefficients")
        img = image_basis(m.d(n + 1))
        keep = complement_basis(img, m.rank(n), ring)
        full = Matrix.from_columns(ring, img + [m.complex.basis_vector(n, k) for k in keep],
                                   m.rank(n))
        proj = inverse(full).submatrix(range(len(img), m.rank(n)), range(m.rank(n)))
    else:
        keep = list(range(m.rank(n)))
        proj = Matrix.identity(ring, m.rank(n))
    lift = Matrix.identity(ring, m.rank(n)).submatrix(range(m.rank(n)), keep)
    lo = min(m.lo, n)
    ranks = [m.rank(i) for i in range(lo, n)] + [len(keep)]
    diffs = {i: m.d(i) for i in range(lo + 1, n)}
    if n > lo:
        diffs[n] = m.d(n) @ lift
    labels = {i: m.complex.labels(i) for i in range(lo, n)}
    labels[n] = [m.complex.labels(n)[k] for k in keep]
    c = Complex(ring, lo, ranks, diffs, labels)
    mult = {}
    for (i, p, j), mat in m.mult.items():
        if i + j > n or j < lo:
            continue
        if i + j == n:
            mat = proj @ mat
        if j == n:
            mat = mat @ lift
        mult[(i, p, j)] = mat
    t = DGModule(A, c, mult=mult)
    comps = {i: Matrix.identity(ring, m.rank(i)) for i in range(lo, n)}
    comps[n] = proj
    return t, DGMorphism(m, t, ChainMap(m.complex, c, comps))
