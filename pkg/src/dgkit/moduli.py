"""Varieties of DG module structures on a graded vector space.

For a finite-dimensional DG algebra ``U`` and dimensions ``r_0..r_s`` the
unknowns are the entries of the differential ``d_i: W_i -> W_{i-1}`` and of
the action matrices ``W_j -> W_{j+k}`` of each non-unit basis element of
``U_k``; the unit acts as the identity.  Unknowns are ordered by source
degree, and within a degree the differential entries come before the action
entries.  The default names are ``x0, x1, ...``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .arith.linalg import base_field, inverse, kernel, rank
from .arith.matrix import Matrix
from .arith.poly import PolyRing, grlex_key
from .complexes import Complex
from .dg import DGAlgebra, DGModule, verify_dg_module
from .errors import PreconditionError


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass(frozen=True)
class Unknown:
    """One coordinate: an entry of ``d_degree`` or of the action of ``U_k[p]`` on ``W_degree``.

    ``kind`` is ``"d"`` or ``"mu"``; ``row``/``col`` index the matrix entry.
    """

    name: str
    kind: str
    degree: int
    row: int
    col: int
    k: int = 0
    p: int = 0


@dataclass
class ModuliInstance:
    algebra: DGAlgebra
    dims: list
    unknowns: list
    ring: PolyRing | None
    constraints: list
    d: int
    d_prime_full: int
    d_prime_reduced: int
    raw_constraints: list = dc_field(default_factory=list, repr=False)

    @property
    def names(self):
        return [u.name for u in self.unknowns]

    def rank(self, j):
        return self.dims[j] if 0 <= j < len(self.dims) else 0

    def constraint_strings(self):
        return [self.ring.format(c) for c in self.constraints]

    def rename(self, mapping: dict) -> "ModuliInstance":
        """The same instance with variables renamed; variable order is kept."""
        new_names = [mapping.get(n, n) for n in self.names]
        unknowns = [Unknown(nn, u.kind, u.degree, u.row, u.col, u.k, u.p)
                    for nn, u in zip(new_names, self.unknowns)]
        if self.ring is None:
            return ModuliInstance(self.algebra, self.dims, unknowns, None, [], self.d,
                                  self.d_prime_full, self.d_prime_reduced)
        ring = PolyRing(self.ring.field, new_names)
        cons = [ring.from_dict(dict(c.terms)) for c in self.constraints]
        raw = [ring.from_dict(dict(c.terms)) for c in self.raw_constraints]
        return ModuliInstance(self.algebra, self.dims, unknowns, ring, cons, self.d,
                              self.d_prime_full, self.d_prime_reduced, raw)

    def point(self, values) -> "ModuliPoint":
        return ModuliPoint(self, values)

    def summary(self) -> dict:
        return {"unknowns": self.names,
                "constraints": self.constraint_strings() if self.ring else [],
                "d": self.d, "d_prime_full": self.d_prime_full,
                "d_prime_reduced": self.d_prime_reduced}


# structure matrices ----------------------------------------------------------------


class _Structure:
    """Matrices ``d[i]`` and ``mu[(k, p, j)]`` with entries from any commutative arithmetic."""

    def __init__(self, algebra: DGAlgebra, dims, zero, one, d, mu):
        self.A = algebra
        self.dims = dims
        self.zero = zero
        self.one = one
        self.d = d
        self.mu = mu

    def r(self, j):
        return self.dims[j] if 0 <= j < len(self.dims) else 0

    def dmat(self, i):
        return self.d.get(i) or [[self.zero] * self.r(i) for _ in range(self.r(i - 1))]

    def action(self, k, p, j):
        """Action matrix of basis element ``p`` of ``U_k`` on ``W_j``; the unit acts as 1."""
        if (k, p) == (0, self.A.unit):
            n = self.r(j)
            return [[self.one if a == b else self.zero for b in range(n)] for a in range(n)]
        m = self.mu.get((k, p, j))
        if m is None:
            return [[self.zero] * self.r(j) for _ in range(self.r(j + k))]
        return m

    def action_of(self, k, vec, j):
        """Action matrix of the element with coordinates ``vec`` in ``U_k``."""
        out = [[self.zero] * self.r(j) for _ in range(self.r(j + k))]
        for p, c in enumerate(vec):
            if c != 0:
                out = _madd(out, _mscale(c, self.action(k, p, j)))
        return out

    def defects(self):
        """All axiom defects as a flat list of entries, in a fixed order."""
        A = self.A
        out = []
        s = len(self.dims) - 1
        for i in range(2, s + 1):
            out.extend(_flat(_mmul(self.dmat(i - 1), self.dmat(i), self.r(i))))
        nonunit = [(k, p) for (k, p) in A.basis() if (k, p) != (0, A.unit)]
        for (k, p) in nonunit:
            da = A.d(k).col(p) if k > 0 else ()
            for j in range(0, s + 1):
                # d(a w) - d(a) w - (-1)^k a d(w), as maps W_j -> W_{j+k-1}
                if self.r(j + k - 1) == 0 or self.r(j) == 0:
                    continue
                lhs = _mmul(self.dmat(j + k), self.action(k, p, j), self.r(j))
                rhs = self.action_of(k - 1, da, j) if k > 0 else _zeros(self.zero, self.r(j - 1), self.r(j))
                t = _mmul(self.action(k, p, j - 1), self.dmat(j), self.r(j))
                rhs = _madd(rhs, t if k % 2 == 0 else _mscale(-1, t))
                out.extend(_flat(_msub(lhs, rhs)))
        for (k, p) in nonunit:
            for (l, q) in nonunit:
                for j in range(0, s + 1):
                    if self.r(j + k + l) == 0 or self.r(j) == 0:
                        continue
                    lhs = _mmul(self.action(k, p, j + l), self.action(l, q, j), self.r(j))
                    if k + l <= A.hi:
                        rhs = self.action_of(k + l, A.mul(k, p, l, q), j)
                    else:
                        rhs = _zeros(self.zero, self.r(j + k + l), self.r(j))
                    out.extend(_flat(_msub(lhs, rhs)))
        return out


def _zeros(z, m, n):
    return [[z] * n for _ in range(m)]


def _flat(m):
    return [x for row in m for x in row]


def _mmul(a, b, n):
    """``a @ b`` for nested lists, where ``b`` has ``n`` columns (needed when ``b`` has no rows)."""
    if not b:
        return [[0] * n for _ in a]
    out = []
    for row in a:
        r = []
        for j in range(n):
            acc = None
            for x, brow in zip(row, b):
                t = x * brow[j]
                acc = t if acc is None else acc + t
            r.append(acc)
        out.append(r)
    return out


def _madd(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _msub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _mscale(c, a):
    return [[c * x for x in r] for r in a]


# constraints -------------------------------------------------------------------------


def _enumerate_unknowns(algebra: DGAlgebra, dims, names=None):
    r = lambda j: dims[j] if 0 <= j < len(dims) else 0  # noqa: E731
    coords = []
    nonunit = [(k, p) for (k, p) in algebra.basis() if (k, p) != (0, algebra.unit)]
    for j in range(len(dims)):
        for row in range(r(j - 1)):
            for col in range(r(j)):
                coords.append(("d", j, row, col, 0, 0))
        for (k, p) in nonunit:
            for row in range(r(j + k)):
                for col in range(r(j)):
                    coords.append(("mu", j, row, col, k, p))
    if names is None:
        names = [f"x{i}" for i in range(len(coords))]
    if len(names) != len(coords):
        raise ValueError(f"expected {len(coords)} names, got {len(names)}")
    return [Unknown(n, *c) for n, c in zip(names, coords)]


def _structure_from(algebra, dims, unknowns, values, zero, one):
    d, mu = {}, {}
    r = lambda j: dims[j] if 0 <= j < len(dims) else 0  # noqa: E731
    for u, v in zip(unknowns, values):
        if u.kind == "d":
            m = d.setdefault(u.degree, _zeros(zero, r(u.degree - 1), r(u.degree)))
        else:
            m = mu.setdefault((u.k, u.p, u.degree), _zeros(zero, r(u.degree + u.k), r(u.degree)))
        m[u.row][u.col] = v
    return _Structure(algebra, dims, zero, one, d, mu)


def normalize(polys):
    """Expand, drop zeros, scale so the grlex-leading coefficient is 1, sort and dedupe.

    Then drop any generator lying in the ideal of the other monomial
    generators (a redundancy test that needs no Groebner basis).
    """
    seen = {}
    for p in polys:
        if p.is_zero():
            continue
        q = p.monic()
        key = tuple(sorted(q.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True))
        seen.setdefault(key, q)
    gens = list(seen.values())
    monos = [next(iter(g.terms)) for g in gens if len(g.terms) == 1]

    def divides(a, b):
        return all(x <= y for x, y in zip(a, b))

    kept = []
    for g in gens:
        own = next(iter(g.terms)) if len(g.terms) == 1 else None
        others = [m for m in monos if m != own]
        if others and all(any(divides(m, e) for m in others) for e in g.terms):
            continue
        kept.append(g)
    kept.sort(key=lambda g: [grlex_key(e) for e in g.monomials()], reverse=True)
    return kept


def generate_constraints(algebra: DGAlgebra, dims, names=None) -> ModuliInstance:
    """Unknowns and defining equations of the DG module structures on ``W`` with ``dim W_i = dims[i]``.

    Equations: entries of ``d d``, the Leibniz rule for every non-unit basis
    element and associativity for every ordered pair of non-unit basis
    elements.
    """
    if not getattr(algebra.ring, "is_field", False):
        raise PreconditionError("the algebra must be over a field")
    if algebra.complex.lo != 0 or not 0 <= algebra.unit < algebra.rank(0):
        raise PreconditionError("the algebra needs a designated unit in degree 0")
    dims = list(dims)
    F = algebra.ring
    unknowns = _enumerate_unknowns(algebra, dims, names)
    r = lambda j: dims[j] if 0 <= j < len(dims) else 0  # noqa: E731
    d = sum(r(i) * r(i - 1) for i in range(len(dims)))
    full = sum(algebra.rank(k) * r(j) * r(j + k) for k in algebra.degrees() for j in range(len(dims)))
    reduced = full - sum(r(j) * r(j) for j in range(len(dims)))
    if not unknowns:
        return ModuliInstance(algebra, dims, [], None, [], d, full, reduced)
    ring = PolyRing(F, [u.name for u in unknowns])
    st = _structure_from(algebra, dims, unknowns, ring.gens(), ring.zero, ring.one)
    raw = [ring(x) for x in st.defects()]
    return ModuliInstance(algebra, dims, unknowns, ring, normalize(raw), d, full, reduced, raw)


# points --------------------------------------------------------------------------------


class ModuliPoint:
    """Field values for every unknown of an instance."""

    def __init__(self, instance: ModuliInstance, values):
        self.instance = instance
        F = instance.algebra.ring
        if isinstance(values, dict):
            missing = [n for n in instance.names if n not in values]
            if missing:
                raise ValueError(f"missing values for {missing}")
            values = [values[n] for n in instance.names]
        values = [F(v) if not isinstance(v, str) else F.parse(v) for v in values]
        if len(values) != len(instance.unknowns):
            raise ValueError("wrong number of values")
        self.values = tuple(values)

    def as_dict(self):
        return dict(zip(self.instance.names, self.values))

    def _structure(self):
        inst = self.instance
        F = inst.algebra.ring
        return _structure_from(inst.algebra, inst.dims, inst.unknowns, self.values, F.zero, F.one)

    def satisfies_constraints(self) -> bool:
        inst = self.instance
        if inst.ring is None:
            return True
        return all(c.evaluate(self.values) == 0 for c in inst.constraints)

    def module(self, check: bool = False) -> DGModule:
        """The DG module this point describes (axioms are checked only with ``check=True``)."""
        inst = self.instance
        A = inst.algebra
        F = A.ring
        st = self._structure()
        dims = inst.dims
        diffs = {i: Matrix(F, st.dmat(i), dims[i - 1], dims[i]) for i in range(1, len(dims))}
        c = Complex(F, 0, dims, diffs, check=False)
        mult = {}
        for (k, p) in A.basis():
            for j in range(len(dims)):
                if st.r(j) and st.r(j + k):
                    mult[(k, p, j)] = Matrix(F, st.action(k, p, j), st.r(j + k), st.r(j))
        return DGModule(A, c, mult=mult, check=check)

    def is_valid(self) -> bool:
        return bool(verify_dg_module(self.module()))

    def __eq__(self, other):
        return isinstance(other, ModuliPoint) and self.values == other.values

    def __repr__(self):
        return f"ModuliPoint({self.as_dict()})"


def _coords_from_structure(inst: ModuliInstance, st: _Structure):
    out = []
    for u in inst.unknowns:
        m = st.dmat(u.degree) if u.kind == "d" else st.action(u.k, u.p, u.degree)
        out.append(m[u.row][u.col])
    return out


def act_on(point: ModuliPoint, alpha) -> ModuliPoint:
    """``alpha . (d, mu)``: ``d_i -> a_{i-1} d_i a_i^{-1}``, ``mu -> a_{j+k} mu a_j^{-1}``.

    ``alpha`` maps each degree ``i`` to an invertible ``r_i x r_i`` matrix
    (missing degrees mean the identity).
    """
    inst = point.instance
    F = inst.algebra.ring
    dims = inst.dims
    a, ainv = {}, {}
    for i, n in enumerate(dims):
        m = alpha.get(i) if isinstance(alpha, dict) else alpha[i]
        m = Matrix.identity(F, n) if m is None else (m if isinstance(m, Matrix) else Matrix.parse(F, m, n, n))
        if m.shape != (n, n):
            raise ValueError(f"block {i} must be {n} x {n}")
        try:
            mi = inverse(m) if n else m
        except ZeroDivisionError:
            raise ValueError(f"block {i} is singular") from None
        a[i], ainv[i] = [list(r) for r in m.rows], [list(r) for r in mi.rows]
    st = point._structure()
    new_d = {i: _mmul(_mmul(a[i - 1], st.dmat(i), dims[i]), ainv[i], dims[i])
             for i in range(1, len(dims))}
    new_mu = {}
    for (k, p, j), m in st.mu.items():
        if j + k < len(dims):
            new_mu[(k, p, j)] = _mmul(_mmul(a[j + k], m, dims[j]), ainv[j], dims[j])
    new = _Structure(inst.algebra, dims, F.zero, F.one, new_d, new_mu)
    return ModuliPoint(inst, _coords_from_structure(inst, new))


# tangent spaces --------------------------------------------------------------------------


def jacobian(point: ModuliPoint) -> Matrix:
    """Jacobian of the normalized constraints at the point (rows: constraints)."""
    inst = point.instance
    F = inst.algebra.ring
    rows = []
    for c in inst.constraints:
        rows.append([F(c.diff(n).evaluate(point.values)) if not c.diff(n).is_zero() else F.zero
                     for n in inst.names])
    return Matrix(F, rows, len(rows), len(inst.names))


def tangent_space(point: ModuliPoint):
    """Basis of the kernel of the Jacobian: first-order deformations of the point."""
    inst = point.instance
    if not inst.unknowns:
        return []
    return kernel(jacobian(point))


class Dual:
    """``a + b eps`` with ``eps^2 = 0``."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = a
        self.b = b

    def _co(self, o):
        return o if isinstance(o, Dual) else Dual(o, o * 0)

    def __add__(self, o):
        o = self._co(o)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._co(o)
        return Dual(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return self._co(o) - self

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __mul__(self, o):
        o = self._co(o)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __eq__(self, o):
        o = self._co(o)
        return self.a == o.a and self.b == o.b

    def __ne__(self, o):
        return not self == o

    def __hash__(self):
        return hash((self.a, self.b))


def tangent_space_dual(point: ModuliPoint):
    """Tangent space from the axioms over ``F[eps]``, without the constraint polynomials.

    For each coordinate direction the structure is moved to ``p + eps e_u``;
    the eps-parts of all axiom defects give the linear conditions.
    """
    inst = point.instance
    F = inst.algebra.ring
    n = len(inst.unknowns)
    if n == 0:
        return []
    cols = []
    for u in range(n):
        vals = [Dual(v, F.one if i == u else F.zero) for i, v in enumerate(point.values)]
        st = _structure_from(inst.algebra, inst.dims, inst.unknowns, vals,
                             Dual(F.zero, F.zero), Dual(F.one, F.zero))
        cols.append([x.b if isinstance(x, Dual) else F.zero for x in st.defects()])
    m = Matrix.from_columns(F, cols, len(cols[0])) if cols and cols[0] else Matrix.zeros(F, 0, n)
    return kernel(m)


def orbit_tangent(point: ModuliPoint):
    """Spanning set of the image of ``End(W)_0 -> T``, ``h -> (h d - d h, h mu - mu h)``."""
    inst = point.instance
    F = inst.algebra.ring
    st = point._structure()
    dims = inst.dims
    vecs = []
    for i, n in enumerate(dims):
        for s in range(n):
            for t in range(n):
                h = {j: _zeros(F.zero, dims[j], dims[j]) for j in range(len(dims))}
                h[i][s][t] = F.one

                def hm(j):
                    return h[j] if 0 <= j < len(dims) else []

                dd = {}
                for j in range(1, len(dims)):
                    dd[j] = _msub(_mmul(hm(j - 1), st.dmat(j), dims[j]), _mmul(st.dmat(j), hm(j), dims[j]))
                dmu = {}
                for (k, p, j), m in st.mu.items():
                    if j + k < len(dims):
                        dmu[(k, p, j)] = _msub(_mmul(hm(j + k), m, dims[j]), _mmul(m, hm(j), dims[j]))
                vec = []
                for u in inst.unknowns:
                    if u.kind == "d":
                        vec.append(dd[u.degree][u.row][u.col])
                    else:
                        mm = dmu.get((u.k, u.p, u.degree))
                        vec.append(mm[u.row][u.col] if mm else F.zero)
                vecs.append(tuple(vec))
    return vecs


@dataclass
class TangentReport:
    tangent_dim: int
    orbit_dim: int
    quotient_dim: int
    jacobian: Matrix | None
    tangent_basis: list
    orbit_span: list

    def to_json(self):
        return {"tangent_dim": self.tangent_dim, "orbit_tangent_dim": self.orbit_dim,
                "yext1_dim": self.quotient_dim}


def yext_dimension(point: ModuliPoint) -> TangentReport:
    """``dim T - dim (orbit tangent)``, the dimension of first-order deformations modulo the action."""
    inst = point.instance
    F = base_field(inst.algebra.ring)
    t = tangent_space(point)
    o = orbit_tangent(point)
    n = len(inst.unknowns)
    odim = rank(Matrix.from_columns(F, o, n)) if o and n else 0
    jac = jacobian(point) if n else None
    return TangentReport(len(t), odim, len(t) - odim, jac, t, o)
