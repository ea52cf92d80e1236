"""Bounded complexes of finite free modules and the maps between them.

A complex lives in homological degrees ``lo..hi``.  ``d(i)`` is the matrix of
the differential from degree ``i`` to ``i - 1`` (shape
``rank(i-1) x rank(i)``); vectors are coordinate tuples in the chosen basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .arith.linalg import (as_field_matrix, base_field, complement_basis, image_basis,
                           inverse, kernel, rank, solve, span_rank)
from .arith.matrix import Matrix, block_diag
from .errors import DimensionError, PreconditionError


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


class Complex:
    """A bounded complex ``0 -> X_hi -> ... -> X_lo -> 0``.

    ``ranks`` lists the ranks of ``X_lo, ..., X_hi``; ``diffs`` maps ``i`` to
    the matrix of ``d_i: X_i -> X_{i-1}`` for ``lo < i <= hi`` (missing entries
    are zero).  ``d_{i-1} d_i = 0`` is checked unless ``check=False``.
    """

    def __init__(self, ring, lo: int, ranks, diffs=None, labels=None, check: bool = True):
        self.ring = ring
        self.lo = lo
        self._ranks = list(ranks)
        self.hi = lo + len(self._ranks) - 1
        if any(r < 0 for r in self._ranks):
            raise DimensionError("negative rank")
        diffs = dict(diffs or {})
        self._d = {}
        for i in range(lo + 1, self.hi + 1):
            m = diffs.pop(i, None)
            shape = (self.rank(i - 1), self.rank(i))
            if m is None:
                m = Matrix.zeros(ring, *shape)
            elif not isinstance(m, Matrix):
                m = Matrix.parse(ring, m, *shape)
            elif m.ring != ring:
                m = m.change_ring(ring)
            if m.shape != shape:
                raise DimensionError(f"d_{i} has shape {m.shape}, expected {shape}")
            self._d[i] = m
        for i, m in diffs.items():
            if not (isinstance(m, Matrix) and m.is_zero()) and any(
                    x != 0 for r in (m.rows if isinstance(m, Matrix) else m) for x in r):
                raise DimensionError(f"nonzero differential d_{i} outside {lo}..{self.hi}")
        if labels is not None:
            labels = {int(k): list(v) for k, v in dict(labels).items()}
            for i in self.degrees():
                if len(labels.get(i, [])) != self.rank(i):
                    raise DimensionError(f"label count mismatch in degree {i}")
        self._labels = labels
        if check:
            for i in range(lo + 2, self.hi + 1):
                if not (self._d[i - 1] @ self._d[i]).is_zero():
                    raise ValueError(f"d_{i-1} d_{i} is not zero")

    # basic access -------------------------------------------------------------

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def rank(self, i: int) -> int:
        if self.lo <= i <= self.hi:
            return self._ranks[i - self.lo]
        return 0

    @property
    def ranks(self):
        return list(self._ranks)

    def d(self, i: int) -> Matrix:
        if i in self._d:
            return self._d[i]
        return Matrix.zeros(self.ring, self.rank(i - 1), self.rank(i))

    @property
    def differentials(self):
        return dict(self._d)

    def labels(self, i: int):
        if self._labels is not None and i in self._labels:
            return list(self._labels[i])
        return [f"{i}.{k}" for k in range(self.rank(i))]

    @property
    def has_labels(self) -> bool:
        return self._labels is not None

    def total_rank(self) -> int:
        return sum(self._ranks)

    def zero_vector(self, i: int):
        return (self.ring.zero,) * self.rank(i)

    def basis_vector(self, i: int, k: int):
        z, o = self.ring.zero, self.ring.one
        return tuple(o if j == k else z for j in range(self.rank(i)))

    def apply_d(self, i: int, vec):
        return self.d(i).apply(vec)

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return (self.ring == other.ring and self.lo == other.lo
                and self._ranks == other._ranks
                and all(self.d(i) == other.d(i) for i in range(self.lo + 1, self.hi + 1)))

    def __repr__(self):
        return f"Complex({self.ring!r}, lo={self.lo}, ranks={self._ranks})"

    # derived complexes ------------------------------------------------------

    def map_entries(self, f, ring) -> "Complex":
        """Apply ``f`` to every differential entry, landing in ``ring``."""
        return Complex(ring, self.lo, self._ranks,
                       {i: m.map(f, ring) for i, m in self._d.items()}, self._labels)

    def change_ring(self, ring) -> "Complex":
        return self.map_entries(ring, ring)

    def trimmed(self) -> "Complex":
        """Drop zero modules at both ends."""
        nz = [i for i in self.degrees() if self.rank(i)]
        if not nz:
            return Complex(self.ring, 0, [])
        lo, hi = nz[0], nz[-1]
        labels = None if self._labels is None else {i: self._labels[i] for i in range(lo, hi + 1)}
        return Complex(self.ring, lo, [self.rank(i) for i in range(lo, hi + 1)],
                       {i: self.d(i) for i in range(lo + 1, hi + 1)}, labels, check=False)

    def padded(self, lo: int, hi: int) -> "Complex":
        """Same complex with zero modules added so it spans ``lo..hi``."""
        lo, hi = min(lo, self.lo), max(hi, self.hi)
        labels = None
        if self._labels is not None:
            labels = {i: self.labels(i) for i in range(lo, hi + 1)}
        return Complex(self.ring, lo, [self.rank(i) for i in range(lo, hi + 1)],
                       {i: self.d(i) for i in range(lo + 1, hi + 1)}, labels, check=False)


def concentrated(ring, rank: int = 1, degree: int = 0, labels=None) -> Complex:
    """The free module ``ring^rank`` as a complex in a single degree."""
    return Complex(ring, degree, [rank], labels={degree: labels} if labels else None)


def two_term(ring, x, lo: int = 0) -> Complex:
    """``0 -> R -> R -> 0`` in degrees ``lo+1, lo`` with map ``x``."""
    return Complex(ring, lo, [1, 1], {lo + 1: Matrix(ring, [[x]])})


# Hom and tensor ---------------------------------------------------------------


class HomComplex(Complex):
    """``Hom(X, Y)`` with bookkeeping to convert between vectors and maps.

    The basis of ``Hom(X,Y)_n`` is ordered by ascending source degree ``p``,
    then by source basis index, then by target basis index; the element
    ``(p, s, t)`` sends source basis vector ``s`` of ``X_p`` to target basis
    vector ``t`` of ``Y_{p+n}``.
    """

    def __init__(self, x: Complex, y: Complex):
        if x.ring != y.ring:
            raise ValueError("Hom of complexes over different rings")
        self.source = x
        self.target = y
        ring = x.ring
        lo = y.lo - x.hi
        hi = y.hi - x.lo
        self.index = {}
        self.offsets = {}
        for n in range(lo, hi + 1):
            idx, off = [], {}
            for p in x.degrees():
                rs, rt = x.rank(p), y.rank(p + n)
                if rs and rt:
                    off[p] = len(idx)
                    idx.extend((p, s, t) for s in range(rs) for t in range(rt))
            self.index[n] = idx
            self.offsets[n] = off
        ranks = [len(self.index[n]) for n in range(lo, hi + 1)]
        diffs = {}
        for n in range(lo + 1, hi + 1):
            rows = [[ring.zero] * len(self.index[n]) for _ in range(len(self.index[n - 1]))]
            pos_lo = {b: k for k, b in enumerate(self.index[n - 1])}
            sgn = _sign(n + 1)  # -(-1)^n
            for col, (p, s, t) in enumerate(self.index[n]):
                dy = y.d(p + n)
                for t2 in range(y.rank(p + n - 1)):
                    c = dy.rows[t2][t]
                    if c != 0:
                        rows[pos_lo[(p, s, t2)]][col] += c
                dx = x.d(p + 1)
                for s2 in range(x.rank(p + 1)):
                    c = dx.rows[s][s2]
                    if c != 0:
                        rows[pos_lo[(p + 1, s2, t)]][col] += c if sgn == 1 else -c
            diffs[n] = Matrix(ring, rows, len(self.index[n - 1]), len(self.index[n]))
        labels = {n: [f"{p}:{s}->{t}" for p, s, t in self.index[n]] for n in range(lo, hi + 1)}
        super().__init__(ring, lo, ranks, diffs, labels)

    def to_vector(self, n: int, maps) -> tuple:
        """Flatten ``{p: matrix X_p -> Y_{p+n}}`` into a vector of ``Hom_n``."""
        vec = []
        for p, s, t in self.index.get(n, []):
            m = maps.get(p)
            vec.append(self.ring.zero if m is None else m.rows[t][s])
        return tuple(self.ring(v) for v in vec)

    def from_vector(self, n: int, vec) -> dict:
        """Inverse of :meth:`to_vector`; every source degree gets a matrix."""
        x, y = self.source, self.target
        out = {}
        for p in x.degrees():
            rows = [[self.ring.zero] * x.rank(p) for _ in range(y.rank(p + n))]
            out[p] = rows
        for v, (p, s, t) in zip(vec, self.index.get(n, [])):
            out[p][t][s] = v
        return {p: Matrix(self.ring, r, y.rank(p + n), x.rank(p)) for p, r in out.items()}

    def element(self, n: int, vec) -> "ChainMap":
        return ChainMap(self.source, self.target, self.from_vector(n, vec), degree=n, check=False)


def hom_complex(x: Complex, y: Complex) -> HomComplex:
    return HomComplex(x, y)


class TensorComplex(Complex):
    """``X (x) Y`` with summands ordered by descending ``p`` of ``X_p``.

    Inside a summand the basis is ``x_i (x) y_j`` in row-major order.  The
    differential is ``d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy``.
    """

    def __init__(self, x: Complex, y: Complex):
        if x.ring != y.ring:
            raise ValueError("tensor product of complexes over different rings")
        self.left = x
        self.right = y
        ring = x.ring
        lo = x.lo + y.lo
        hi = x.hi + y.hi
        self.index = {}
        for n in range(lo, hi + 1):
            idx = []
            for p in range(min(x.hi, n - y.lo), max(x.lo, n - y.hi) - 1, -1):
                q = n - p
                idx.extend((p, i, j) for i in range(x.rank(p)) for j in range(y.rank(q)))
            self.index[n] = idx
        ranks = [len(self.index[n]) for n in range(lo, hi + 1)]
        diffs = {}
        for n in range(lo + 1, hi + 1):
            pos = {b: k for k, b in enumerate(self.index[n - 1])}
            rows = [[ring.zero] * len(self.index[n]) for _ in range(len(self.index[n - 1]))]
            for col, (p, i, j) in enumerate(self.index[n]):
                q = n - p
                dx = x.d(p)
                for i2 in range(x.rank(p - 1)):
                    c = dx.rows[i2][i]
                    if c != 0:
                        rows[pos[(p - 1, i2, j)]][col] += c
                dy = y.d(q)
                for j2 in range(y.rank(q - 1)):
                    c = dy.rows[j2][j]
                    if c != 0:
                        rows[pos[(p, i, j2)]][col] += c if p % 2 == 0 else -c
            diffs[n] = Matrix(ring, rows, len(self.index[n - 1]), len(self.index[n]))
        labels = {n: [f"{x.labels(p)[i]}|{y.labels(n - p)[j]}" for p, i, j in self.index[n]]
                  for n in range(lo, hi + 1)}
        super().__init__(ring, lo, ranks, diffs, labels)
        self._pos = {n: {b: k for k, b in enumerate(self.index[n])} for n in self.index}

    def pos(self, n: int, p: int, i: int, j: int) -> int:
        """Index of ``x_i (x) y_j`` inside degree ``n``, with ``x_i`` in ``X_p``."""
        return self._pos[n][(p, i, j)]


def tensor_complex(x: Complex, y: Complex) -> TensorComplex:
    return TensorComplex(x, y)


def suspend(x: Complex, n: int = 1) -> Complex:
    """``(S^n X)_i = X_{i-n}`` with differential ``(-1)^n d``."""
    s = _sign(n)
    diffs = {i + n: (m if s == 1 else -m) for i, m in x.differentials.items()}
    labels = None
    if x.has_labels:
        labels = {i + n: x.labels(i) for i in x.degrees()}
    return Complex(x.ring, x.lo + n, x.ranks, diffs, labels, check=False)


def shift(x: Complex, n: int = 1) -> Complex:
    """Unsigned shift: same matrices, degrees moved up by ``n``."""
    diffs = {i + n: m for i, m in x.differentials.items()}
    labels = None
    if x.has_labels:
        labels = {i + n: x.labels(i) for i in x.degrees()}
    return Complex(x.ring, x.lo + n, x.ranks, diffs, labels, check=False)


def direct_sum(*cs: Complex) -> Complex:
    ring = cs[0].ring
    lo = min(c.lo for c in cs)
    hi = max(c.hi for c in cs)
    ranks = [sum(c.rank(i) for c in cs) for i in range(lo, hi + 1)]
    diffs = {i: block_diag(ring, [c.d(i) for c in cs]) for i in range(lo + 1, hi + 1)}
    return Complex(ring, lo, ranks, diffs, check=False)


def dual_complex(x: Complex) -> Complex:
    """Unsigned dual: degree ``-i`` holds ``X_i^*`` with ``d_{-i} = (d_{i+1})^T``."""
    diffs = {1 - i: x.d(i).T for i in range(x.lo + 1, x.hi + 1)}
    return Complex(x.ring, -x.hi, [x.rank(-j) for j in range(-x.hi, -x.lo + 1)], diffs)


# chain maps ---------------------------------------------------------------------


class ChainMap:
    """A degree-``n`` map ``f: X -> Y`` given by ``f_p: X_p -> Y_{p+n}``.

    ``is_chain_map`` asks whether ``f`` is a cycle of ``Hom(X,Y)``:
    ``d^Y f_p = (-1)^n f_{p-1} d^X_p`` for every ``p`` (for ``n = 0`` this is
    the usual commuting-square condition).
    """

    def __init__(self, source: Complex, target: Complex, components, degree: int = 0,
                 check: bool = False):
        self.source = source
        self.target = target
        self.degree = degree
        ring = source.ring
        comps = {}
        components = dict(components or {})
        for p in source.degrees():
            shape = (target.rank(p + degree), source.rank(p))
            m = components.get(p)
            if m is None:
                m = Matrix.zeros(ring, *shape)
            elif not isinstance(m, Matrix):
                m = Matrix.parse(ring, m, *shape)
            elif m.ring != ring:
                m = m.change_ring(ring)
            if m.shape != shape:
                raise DimensionError(f"component {p} has shape {m.shape}, expected {shape}")
            comps[p] = m
        self.components = comps
        if check and not self.is_chain_map():
            raise ValueError("components do not commute with the differentials")

    def f(self, p: int) -> Matrix:
        if p in self.components:
            return self.components[p]
        return Matrix.zeros(self.source.ring, self.target.rank(p + self.degree),
                            self.source.rank(p))

    def apply(self, p: int, vec):
        return self.f(p).apply(vec)

    def commutator_defect(self, p: int) -> Matrix:
        """``d^Y f_p - (-1)^n f_{p-1} d^X_p`` as a matrix ``X_p -> Y_{p+n-1}``."""
        n = self.degree
        left = self.target.d(p + n) @ self.f(p)
        right = self.f(p - 1) @ self.source.d(p)
        return left - right if n % 2 == 0 else left + right

    def is_chain_map(self) -> bool:
        return all(self.commutator_defect(p).is_zero()
                   for p in range(self.source.lo, self.source.hi + 2))

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self o other``."""
        comps = {p: self.f(p + other.degree) @ other.f(p) for p in other.source.degrees()}
        return ChainMap(other.source, self.target, comps, self.degree + other.degree)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(self.source, self.target,
                        {p: self.f(p) + other.f(p) for p in self.source.degrees()}, self.degree)

    def __neg__(self):
        return ChainMap(self.source, self.target,
                        {p: -m for p, m in self.components.items()}, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target,
                        {p: m.scale(c) for p, m in self.components.items()}, self.degree)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components.values())

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        return (self.degree == other.degree and self.source == other.source
                and self.target == other.target
                and all(self.f(p) == other.f(p) for p in self.source.degrees()))

    def is_isomorphism(self) -> bool:
        """Degree-0 chain map whose components are invertible over the base field.

        Components must be constant matrices (unit determinant is checked via
        rank, which needs field entries).
        """
        if self.degree != 0 or not self.is_chain_map():
            return False
        for p in range(min(self.source.lo, self.target.lo), max(self.source.hi, self.target.hi) + 1):
            m = self.f(p)
            if m.nrows != m.ncols:
                return False
            if m.nrows and rank(as_field_matrix(m)) != m.nrows:
                return False
        return True


def identity_map(x: Complex) -> ChainMap:
    return ChainMap(x, x, {p: Matrix.identity(x.ring, x.rank(p)) for p in x.degrees()})


def zero_map(x: Complex, y: Complex, degree: int = 0) -> ChainMap:
    return ChainMap(x, y, {}, degree)


def homothety_chain_map(x: Complex, r) -> ChainMap:
    """Multiplication by the ring element ``r`` in every degree."""
    r = x.ring(r)
    return ChainMap(x, x, {p: Matrix.scalar(x.ring, x.rank(p), r) for p in x.degrees()},
                    check=True)


def commutativity_map(x: Complex, y: Complex) -> ChainMap:
    """``x (x) y -> (-1)^{|x||y|} y (x) x`` from ``X (x) Y`` to ``Y (x) X``."""
    xy = tensor_complex(x, y)
    yx = tensor_complex(y, x)
    ring = x.ring
    comps = {}
    for n in xy.degrees():
        rows = [[ring.zero] * xy.rank(n) for _ in range(yx.rank(n))]
        for col, (p, i, j) in enumerate(xy.index[n]):
            q = n - p
            rows[yx.pos(n, q, j, i)][col] = ring(_sign(p * q))
        comps[n] = Matrix(ring, rows, yx.rank(n), xy.rank(n))
    return ChainMap(xy, yx, comps)


def hom_cancellation_map(x: Complex) -> ChainMap:
    """``Hom(R, X) -> X``, ``f -> f(1)``, with ``R`` the ring in degree 0."""
    r = concentrated(x.ring)
    h = hom_complex(r, x)
    comps = {}
    for n in h.degrees():
        rows = [[x.ring.zero] * h.rank(n) for _ in range(x.rank(n))]
        for col, (_p, _s, t) in enumerate(h.index[n]):
            rows[t][col] = x.ring.one
        comps[n] = Matrix(x.ring, rows, x.rank(n), h.rank(n))
    return ChainMap(h, x, comps)


def tensor_maps(f: ChainMap, g: ChainMap, source=None, target=None) -> ChainMap:
    """``f (x) g`` with the sign ``(f (x) g)(x (x) y) = (-1)^{|g||x|} f(x) (x) g(y)``."""
    src = source or tensor_complex(f.source, g.source)
    tgt = target or tensor_complex(f.target, g.target)
    ring = src.ring
    comps = {}
    for n in src.degrees():
        rows = [[ring.zero] * src.rank(n) for _ in range(tgt.rank(n + f.degree + g.degree))]
        for col, (p, i, j) in enumerate(src.index[n]):
            q = n - p
            fx = f.f(p).col(i)
            gy = g.f(q).col(j)
            sgn = _sign(g.degree * p)
            for i2, a in enumerate(fx):
                if a == 0:
                    continue
                for j2, b in enumerate(gy):
                    if b == 0:
                        continue
                    row = tgt.pos(n + f.degree + g.degree, p + f.degree, i2, j2)
                    rows[row][col] += a * b if sgn == 1 else -(a * b)
        comps[n] = Matrix(ring, rows, tgt.rank(n + f.degree + g.degree), src.rank(n))
    return ChainMap(src, tgt, comps, f.degree + g.degree)


def mapping_cone(f: ChainMap) -> Complex:
    """Cone of a degree-0 map: ``C_n = X_{n-1} + Y_n``, ``d(x, y) = (-dx, f x + dy)``."""
    if f.degree != 0:
        raise ValueError("mapping cone needs a degree-0 map")
    x, y = f.source, f.target
    ring = x.ring
    lo = min(x.lo + 1, y.lo)
    hi = max(x.hi + 1, y.hi)
    ranks = [x.rank(n - 1) + y.rank(n) for n in range(lo, hi + 1)]
    diffs = {}
    for n in range(lo + 1, hi + 1):
        top = (-x.d(n - 1)).hstack(Matrix.zeros(ring, x.rank(n - 2), y.rank(n)))
        bottom = f.f(n - 1).hstack(y.d(n))
        diffs[n] = top.vstack(bottom)
    return Complex(ring, lo, ranks, diffs)


# homology -----------------------------------------------------------------------


def _require_field(ring):
    if not getattr(ring, "is_field", False):
        raise PreconditionError("homology is only computed over a field")
    return ring


@dataclass
class HomologyDegree:
    degree: int
    dim: int
    cycles: list
    boundaries: list
    representatives: list
    _basis_matrix: Matrix | None = dc_field(default=None, repr=False)

    def coordinates(self, cycle):
        """Coordinates of the class of ``cycle`` in the chosen representatives."""
        if self.dim == 0:
            return ()
        m = self._basis_matrix
        sol = solve(m, cycle)
        if sol is None:
            raise ValueError("vector is not a cycle")
        return tuple(sol[len(self.boundaries):])


class HomologyReport:
    """Per-degree homology data.  ``dim H_i = nullity(d_i) - rank(d_{i+1})``."""

    def __init__(self, complex_: Complex):
        x = complex_
        ring = _require_field(x.ring)
        self.complex = x
        self.degrees = {}
        for i in x.degrees():
            n = x.rank(i)
            cycles = kernel(x.d(i)) if n else []
            bounds = image_basis(x.d(i + 1)) if n and x.rank(i + 1) else []
            # representatives: cycles outside the span of the boundaries,
            # chosen greedily in kernel-basis order
            cyc_extra = []
            chosen = list(bounds)
            base = span_rank(chosen, n, ring)
            for c in cycles:
                if span_rank(chosen + [c], n, ring) > base:
                    chosen.append(c)
                    cyc_extra.append(c)
                    base += 1
            basis_matrix = Matrix.from_columns(ring, chosen, n) if chosen else None
            self.degrees[i] = HomologyDegree(i, len(cyc_extra), cycles, bounds, cyc_extra,
                                             basis_matrix)

    def dim(self, i: int) -> int:
        h = self.degrees.get(i)
        return h.dim if h else 0

    def dims(self) -> dict:
        return {i: h.dim for i, h in self.degrees.items()}

    def __getitem__(self, i):
        return self.degrees[i]

    def is_exact(self) -> bool:
        return all(h.dim == 0 for h in self.degrees.values())

    def sup(self):
        nz = [i for i, h in self.degrees.items() if h.dim]
        return max(nz) if nz else None


def homology(x: Complex) -> HomologyReport:
    return HomologyReport(x)


def induced_on_homology(f: ChainMap) -> dict:
    """Matrices of ``H_p(f): H_p(X) -> H_{p+n}(Y)`` on the canonical representatives."""
    if not f.is_chain_map():
        raise ValueError("not a chain map")
    hx = homology(f.source)
    hy = homology(f.target)
    ring = f.source.ring
    out = {}
    for p in f.source.degrees():
        src = hx[p]
        q = p + f.degree
        tgt_dim = hy.dim(q)
        cols = []
        for rep in src.representatives:
            img = f.apply(p, rep)
            cols.append(hy[q].coordinates(img) if tgt_dim else ())
        out[p] = Matrix.from_columns(ring, cols, tgt_dim) if cols else Matrix.zeros(ring, tgt_dim, 0)
    return out


def is_quasi_iso(f: ChainMap) -> bool:
    """All induced maps on homology are isomorphisms (field coefficients only)."""
    _require_field(f.source.ring)
    if f.degree != 0 or not f.is_chain_map():
        return False
    hx = homology(f.source)
    hy = homology(f.target)
    lo = min(f.source.lo, f.target.lo)
    hi = max(f.source.hi, f.target.hi)
    for p in range(lo, hi + 1):
        if hx.dim(p) != hy.dim(p):
            return False
    for p, m in induced_on_homology(f).items():
        if m.nrows and rank(m) != m.nrows:
            return False
    return True


def solve_null_homotopy(f: ChainMap):
    """A map ``s`` of degree ``n+1`` with ``f = d s + (-1)^... s d`` or ``None``.

    Precisely: ``s`` is a preimage of ``f`` under the ``Hom`` differential, so
    for a degree-0 map ``f_p = d^Y_{p+1} s_p + s_{p-1} d^X_p``.
    """
    _require_field(f.source.ring)
    h = hom_complex(f.source, f.target)
    n = f.degree
    target_vec = h.to_vector(n, f.components)
    if h.rank(n + 1) == 0:
        return ChainMap(f.source, f.target, {}, n + 1) if all(v == 0 for v in target_vec) else None
    if h.rank(n) == 0:
        return ChainMap(f.source, f.target, {}, n + 1)
    sol = solve(h.d(n + 1), target_vec)
    if sol is None:
        return None
    return h.element(n + 1, sol)


def homotopy_boundary(s: ChainMap) -> ChainMap:
    """``d s - (-1)^{|s|} s d``: the Hom differential applied to ``s``."""
    n = s.degree
    x, y = s.source, s.target
    comps = {}
    for p in x.degrees():
        left = y.d(p + n) @ s.f(p)
        right = s.f(p - 1) @ x.d(p)
        comps[p] = left - right if n % 2 == 0 else left + right
    return ChainMap(x, y, comps, n - 1)


def verify_homotopy(f: ChainMap, s: ChainMap) -> bool:
    """Exact check that ``s`` is a null-homotopy of ``f``; works over any ring."""
    return s.degree == f.degree + 1 and homotopy_boundary(s) == f


# truncation ------------------------------------------------------------------------


def soft_truncate(m: Complex, n: int):
    """Soft left truncation ``tau(M)_{<= n}`` and the natural surjection.

    Degree ``n`` becomes ``M_n / Im d_{n+1}``; everything above is dropped.
    Returns ``(complex, chain_map)``.
    """
    ring = m.ring
    if n >= m.hi:
        return m, identity_map(m)
    if n < m.lo:
        t = Complex(ring, m.lo, [])
        return t, ChainMap(m, t, {})
    dn1 = m.d(n + 1)
    if dn1.is_zero():
        keep = list(range(m.rank(n)))
        proj = Matrix.identity(ring, m.rank(n))
        d_new = m.d(n)
    else:
        _require_field(ring)
        img = image_basis(dn1)
        keep = complement_basis(img, m.rank(n), base_field(ring))
        full = Matrix.from_columns(ring, img + [m.basis_vector(n, k) for k in keep], m.rank(n))
        inv = inverse(full)
        proj = inv.submatrix(range(len(img), m.rank(n)), range(m.rank(n)))
        d_new = m.d(n).submatrix(range(m.rank(n - 1)), keep)
    ranks = [m.rank(i) for i in range(m.lo, n)] + [len(keep)]
    diffs = {i: m.d(i) for i in range(m.lo + 1, n)}
    diffs[n] = d_new
    labels = None
    if m.has_labels:
        labels = {i: m.labels(i) for i in range(m.lo, n)}
        labels[n] = [m.labels(n)[k] for k in keep]
    t = Complex(ring, m.lo, ranks, diffs, labels)
    comps = {i: Matrix.identity(ring, m.rank(i)) for i in range(m.lo, n)}
    comps[n] = proj
    return t, ChainMap(m, t, comps, check=True)
