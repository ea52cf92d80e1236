"""Semi-free resolutions over finite-dimensional DG algebras, Ext and semidualizing checks.

Resolutions are built by killing cycles in the mapping cone of ``F -> M``,
one degree at a time.  A resolution built through ``cap`` induces
isomorphisms on ``H_i`` for ``i < cap`` and a surjection on ``H_cap``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .arith.linalg import kernel, rank
from .arith.matrix import Matrix
from .complexes import ChainMap, Complex, homology, induced_on_homology
from .dg import DGAlgebra, DGModule, DGMorphism, _sign, dg_hom, soft_truncate_module
from .errors import PreconditionError


def _require_field(ring):
    if not getattr(ring, "is_field", False):
        raise PreconditionError("semi-free constructions need field coefficients")


# semibases ---------------------------------------------------------------------------


def check_semibasis(m: DGModule, candidate) -> bool:
    """Do the products ``a c`` (``a`` in the algebra basis, ``c`` in ``candidate``) form a basis?

    ``candidate`` lists ``(degree, index)`` pairs of basis vectors of ``m``.
    Only the degrees of ``m`` itself are inspected, so for a truncated module
    the answer concerns the truncation.
    """
    _require_field(m.ring)
    A = m.algebra
    cand = [tuple(c) for c in candidate]
    for (d, k) in cand:
        if not 0 <= k < m.rank(d):
            return False
    for n in m.degrees():
        vecs = []
        for (d, k) in cand:
            i = n - d
            if i < 0 or i > A.hi:
                continue
            for p in range(A.rank(i)):
                vecs.append(m.act(i, p, d, k))
        if len(vecs) != m.rank(n):
            return False
        if vecs and rank(Matrix.from_columns(m.ring, vecs, m.rank(n))) != m.rank(n):
            return False
    return True


@dataclass
class SemifreeModule:
    """A semi-free DG module together with its semibasis."""

    module: DGModule
    semibasis: list
    cap: int | None = None

    def generator_degrees(self):
        return [d for d, _ in self.semibasis]


@dataclass
class Resolution:
    """``phi: F -> M`` with ``F`` semi-free, built through degree ``cap``."""

    semifree: SemifreeModule
    morphism: DGMorphism
    cap: int
    boundaries: list = field(default_factory=list)
    images: list = field(default_factory=list)

    @property
    def module(self) -> DGModule:
        return self.semifree.module


class _Builder:
    """Bookkeeping for ``F = (+) A g`` while generators are being adjoined."""

    def __init__(self, m: DGModule):
        self.m = m
        self.A = m.algebra
        self.ring = m.ring
        self.degs = []        # generator degrees, non-decreasing
        self.bd = []          # boundary of each generator: {(g, i, p): coeff}
        self.img = []         # image of each generator in M

    def basis(self, n):
        out = []
        for g, d in enumerate(self.degs):
            i = n - d
            if 0 <= i <= self.A.hi:
                out.extend((g, i, p) for p in range(self.A.rank(i)))
        return out

    def d_matrix(self, n) -> Matrix:
        src, tgt = self.basis(n), self.basis(n - 1)
        pos = {b: k for k, b in enumerate(tgt)}
        A = self.A
        zero = self.ring.zero
        rows = [[zero] * len(src) for _ in tgt]
        for col, (g, i, p) in enumerate(src):
            if i > 0:
                for l, c in enumerate(A.d(i).col(p)):
                    if c != 0:
                        rows[pos[(g, i - 1, l)]][col] += c
            sgn = _sign(i)
            for (h, j, q), c in self.bd[g].items():
                if i + j > A.hi:
                    continue
                for l, c2 in enumerate(A.mul(i, p, j, q)):
                    if c2 != 0:
                        rows[pos[(h, i + j, l)]][col] += sgn * c * c2
        return Matrix(self.ring, rows, len(tgt), len(src))

    def phi_matrix(self, n) -> Matrix:
        m = self.m
        cols = []
        for (g, i, p) in self.basis(n):
            e = self.A.complex.basis_vector(i, p)
            cols.append(m.act_vec(i, e, self.degs[g], self.img[g]) if m.rank(n) else ())
        return Matrix.from_columns(self.ring, cols, m.rank(n))

    def cone_d(self, k) -> Matrix:
        """Cone differential ``C_k -> C_{k-1}`` with ``C_k = F_{k-1} + M_k``."""
        m = self.m
        ring = self.ring
        fk2 = len(self.basis(k - 2))
        top = (-self.d_matrix(k - 1)).hstack(Matrix.zeros(ring, fk2, m.rank(k)))
        bottom = self.phi_matrix(k - 1).hstack(m.d(k))
        return top.vstack(bottom)

    def cone_rank(self, k):
        return len(self.basis(k - 1)) + self.m.rank(k)

    def kill(self, k, order="forward"):
        """Adjoin degree-``k`` generators killing ``H_k`` of the cone; returns how many."""
        ranks = [self.cone_rank(k - 1), self.cone_rank(k), self.cone_rank(k + 1)]
        local = Complex(self.ring, k - 1, ranks, {k: self.cone_d(k), k + 1: self.cone_d(k + 1)},
                        check=False)
        reps = homology(local)[k].representatives
        if order == "reverse":
            reps = list(reversed(reps))
        nf = len(self.basis(k - 1))
        fbasis = self.basis(k - 1)
        for rep in reps:
            f, mm = rep[:nf], rep[nf:]
            self.degs.append(k)
            self.bd.append({b: -c for b, c in zip(fbasis, f) if c != 0})
            self.img.append(tuple(mm))
        return len(reps)

    def build(self, lo, hi):
        """The DG module ``F`` in degrees ``lo..hi`` and ``phi: F -> M``."""
        ring = self.ring
        A = self.A
        ranks = [len(self.basis(n)) for n in range(lo, hi + 1)]
        diffs = {n: self.d_matrix(n) for n in range(lo + 1, hi + 1)}
        labels = {n: [_label(A, g, i, p) for (g, i, p) in self.basis(n)] for n in range(lo, hi + 1)}
        c = Complex(ring, lo, ranks, diffs, labels)
        mult = {}
        for j in A.degrees():
            for q in range(A.rank(j)):
                for n in range(lo, hi + 1):
                    src = self.basis(n)
                    tgt = self.basis(n + j)
                    if not (src and tgt):
                        continue
                    pos = {b: k for k, b in enumerate(tgt)}
                    rows = [[ring.zero] * len(src) for _ in tgt]
                    for col, (g, i, p) in enumerate(src):
                        if i + j > A.hi:
                            continue
                        for l, cc in enumerate(A.mul(j, q, i, p)):
                            if cc != 0:
                                rows[pos[(g, i + j, l)]][col] += cc
                    mult[(j, q, n)] = Matrix(ring, rows, len(tgt), len(src))
        f = DGModule(A, c, mult=mult)
        phi = ChainMap(c, self.m.complex, {n: self.phi_matrix(n) for n in range(lo, hi + 1)})
        morph = DGMorphism(f, self.m, phi)
        semibasis = []
        for g, d in enumerate(self.degs):
            semibasis.append((d, self.basis(d).index((g, 0, A.unit))))
        return f, morph, semibasis


def _label(A: DGAlgebra, g, i, p):
    a = A.complex.labels(i)[p]
    return f"g{g}" if (i, p) == (0, A.unit) else f"{a}*g{g}"


def _lowest_homology(m: DGModule):
    h = homology(m.complex)
    nz = [i for i in m.degrees() if h.dim(i)]
    return min(nz) if nz else None


def semifree_resolution(m: DGModule, cap: int, order: str = "forward") -> Resolution:
    """Semi-free resolution of ``m`` with generators in degrees ``<= cap``.

    ``order="reverse"`` adjoins each degree's generators in the opposite
    order; the result is a different but equally valid resolution.
    """
    _require_field(m.ring)
    A = m.algebra
    if A.complex.lo != 0:
        raise PreconditionError("the algebra must live in non-negative degrees")
    low = _lowest_homology(m)
    b = _Builder(m)
    if low is None:
        f, morph, semibasis = b.build(m.lo, m.lo - 1)
        return Resolution(SemifreeModule(f, semibasis, cap), morph, cap)
    if cap < low:
        raise ValueError(f"cap {cap} is below the lowest nonvanishing homology degree {low}")
    for k in range(m.lo, cap + 1):
        b.kill(k, order)
    lo = min(b.degs) if b.degs else m.lo
    hi = max(b.degs) + A.hi if b.degs else lo - 1
    f, morph, semibasis = b.build(lo, hi)
    res = Resolution(SemifreeModule(f, semibasis, cap), morph, cap, list(b.bd), list(b.img))
    return res


def resolution_cone_exact_through(res: Resolution) -> int | None:
    """Largest ``k`` such that the cone of ``F -> M`` is exact in all degrees ``<= k``."""
    from .complexes import mapping_cone

    cone = mapping_cone(res.morphism.map)
    h = homology(cone)
    bad = [k for k in cone.degrees() if h.dim(k)]
    return (min(bad) - 1) if bad else cone.hi


# Ext -----------------------------------------------------------------------------------


@dataclass
class ExtTable:
    """``dims[i] = dim Ext^i``, emitted for ``0 <= i <= certified_through``."""

    dims: dict
    certified_through: int

    def __getitem__(self, i):
        return self.dims[i]

    def as_list(self):
        return [self.dims[i] for i in range(self.certified_through + 1)]

    def to_json(self) -> dict:
        return {"ext": {str(i): d for i, d in sorted(self.dims.items())},
                "certified_through": self.certified_through}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)

    @classmethod
    def from_json(cls, obj) -> "ExtTable":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls({int(k): int(v) for k, v in obj["ext"].items()}, int(obj["certified_through"]))


def _ext_dims(m: DGModule, n: DGModule, cap: int, upto: int, order: str):
    res = semifree_resolution(m, cap, order)
    f = res.module
    if f.complex.total_rank() == 0:
        return {i: 0 for i in range(upto + 1)}
    h = dg_hom(f, n, depth_cap=upto + 1)
    hh = homology(h.complex)
    return {i: hh.dim(-i) for i in range(upto + 1)}


def ext(m: DGModule, n: DGModule, cap: int, order: str = "forward") -> ExtTable:
    """``Ext^i_A(M, N) = H_{-i}(Hom_A(F, N))`` for the indices the cap certifies.

    With generators through degree ``cap``, ``Hom_A(F, N)`` is complete in
    degrees ``>= N.hi - cap``, so ``H_{-i}`` is final once
    ``i + 1 + N.hi <= cap``.  The entries are recomputed with ``cap + 1`` and
    only the stable prefix is emitted.
    """
    _require_field(m.ring)
    if n.complex.total_rank() == 0:
        through = cap
        return ExtTable({i: 0 for i in range(through + 1)}, through)
    through = cap - 1 - n.hi
    if through < 0:
        raise ValueError(f"cap {cap} is too small to certify any Ext entry (need cap >= {n.hi + 1})")
    a = _ext_dims(m, n, cap, through, order)
    b = _ext_dims(m, n, cap + 1, through, order)
    stable = through
    for i in range(through + 1):
        if a[i] != b[i]:
            stable = i - 1
            break
    if stable < 0:
        raise ValueError("no Ext entry is stable at this cap")
    return ExtTable({i: a[i] for i in range(stable + 1)}, stable)


# semidualizing ---------------------------------------------------------------------------


@dataclass
class Verdict:
    """``yes`` means: up to the certified degree range."""

    ok: bool
    certified_from: int | None = None
    witness: int | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def _homothety_into_resolution(res: Resolution, c: DGModule):
    """``A -> Hom_A(F, C)``, ``a -> (x -> a phi(x))``, plus the target module."""
    A = c.algebra
    f = res.module
    phi = res.morphism.map
    h = dg_hom(f, c)
    ring = c.ring
    comps = {}
    for i in A.degrees():
        cols = []
        for p in range(A.rank(i)):
            maps = {}
            for j in f.degrees():
                if c.rank(i + j) and f.rank(j):
                    maps[j] = c.action_matrix(i, p, j) @ phi.f(j)
            vec = h.ambient.to_vector(i, maps) if h.ambient.rank(i) else ()
            cols.append(h.coordinates(i, vec) if h.complex.rank(i) else ())
        if h.complex.rank(i):
            comps[i] = Matrix.from_columns(ring, cols, h.complex.rank(i))
    return ChainMap(A.complex, h.complex, comps), h


def is_semidualizing_dg(c: DGModule, cap: int) -> Verdict:
    """Is the homothety ``A -> Hom_A(F, F)`` a quasi-isomorphism in the degrees the cap certifies?

    ``F`` is a semi-free resolution of ``c`` through ``cap``; the check runs on
    ``Hom_A(F, c)``, which is quasi-isomorphic to ``Hom_A(F, F)`` and is
    complete in degrees ``>= c.hi + 1 - cap``.
    """
    _require_field(c.ring)
    A = c.algebra
    if homology(c.complex).sup() is None:
        return Verdict(False, None, 0, "homology vanishes, so the homothety is not injective on H_0")
    top_h = homology(c.complex).sup()
    if top_h < c.hi:
        c = soft_truncate_module(c, top_h)[0]
    res = semifree_resolution(c, cap)
    chi, h = _homothety_into_resolution(res, c)
    start = c.hi + 1 - cap
    ha = homology(A.complex)
    hh = homology(h.complex)
    induced = induced_on_homology(chi)
    top = max(A.hi, h.complex.hi)
    # scan outward from degree 0 so the reported witness is the one nearest to H_0
    for k in sorted(range(start, top + 1), key=lambda d: (abs(d), -d)):
        if ha.dim(k) != hh.dim(k):
            return Verdict(False, start, k, f"dim H_{k}(A) = {ha.dim(k)} but dim H_{k}(Hom) = {hh.dim(k)}")
        mat = induced.get(k)
        if mat is not None and mat.nrows and rank(mat) != mat.nrows:
            return Verdict(False, start, k, f"H_{k} of the homothety is not bijective")
    return Verdict(True, start)


def is_semidualizing_module(c: DGModule, cap: int) -> Verdict:
    """Classical semidualizing test for a module over an algebra concentrated in degree 0."""
    A = c.algebra
    if A.hi != 0:
        raise PreconditionError("the ring must be concentrated in degree 0")
    if c.complex.total_rank() == 0:
        return Verdict(False, None, 0, "zero module: the homothety is not injective")
    return is_semidualizing_dg(c, cap)


# length bound --------------------------------------------------------------------------


def nilradical(a: DGAlgebra):
    """Basis of the nilradical of a commutative algebra concentrated in degree 0.

    Uses the radical of the trace form ``(u, v) -> tr(L_{uv})``; this equals
    the nilradical in characteristic 0 or larger than ``dim A``.
    """
    if a.hi != 0:
        raise PreconditionError("the ring must be concentrated in degree 0")
    ring = a.ring
    n = a.rank(0)
    char = getattr(ring, "p", 0) or 0
    if char and char <= n:
        raise PreconditionError("nilradical via the trace form needs characteristic 0 or > dim A")
    lefts = [a.left(0, p, 0) for p in range(n)]
    rows = []
    for q in range(n):
        row = []
        for p in range(n):
            uv = lefts[p].apply(a.complex.basis_vector(0, q))
            mat = Matrix.zeros(ring, n, n)
            for k, c in enumerate(uv):
                if c != 0:
                    mat = mat + lefts[k].scale(c)
            row.append(sum((mat.rows[t][t] for t in range(n)), ring.zero))
        rows.append(row)
    return kernel(Matrix(ring, rows, n, n))


def socle(a: DGAlgebra):
    """``{s : r s = 0 for r in the nilradical}``, i.e. ``Hom_A(k, A)``."""
    rad = nilradical(a)
    n = a.rank(0)
    ring = a.ring
    rows = []
    for r in rad:
        mat = Matrix.zeros(ring, n, n)
        for k, c in enumerate(r):
            if c != 0:
                mat = mat + a.left(0, k, 0).scale(c)
        rows.extend(mat.rows)
    if not rows:
        return [a.complex.basis_vector(0, q) for q in range(n)]
    return kernel(Matrix(ring, rows, len(rows), n))


def is_local(a: DGAlgebra) -> bool:
    return a.rank(0) - len(nilradical(a)) == 1


@dataclass
class LengthBound:
    mu0: int
    length_ring: int
    rho: int
    length_module: int | None
    passes: bool | None


def semidualizing_length_bound(a: DGAlgebra, c: DGModule | None = None, cap: int = 4) -> LengthBound:
    """``rho = len(A) * mu^0`` and, for a semidualizing ``c``, the check ``len(c) <= rho``.

    ``a`` must be a local algebra in degree 0 whose residue field is the
    coefficient field, so lengths are dimensions.
    """
    if not is_local(a):
        raise PreconditionError("the ring is not local")
    mu0 = len(socle(a))
    length = a.rank(0)
    rho = length * mu0
    if c is None:
        return LengthBound(mu0, length, rho, None, None)
    lc = c.complex.total_rank()
    passes = None
    if is_semidualizing_module(c, cap):
        passes = lc <= rho
    return LengthBound(mu0, length, rho, lc, passes)
