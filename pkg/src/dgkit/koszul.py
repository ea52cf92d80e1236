"""Exterior algebra and the Koszul complex in its two presentations."""
from __future__ import annotations

from itertools import combinations, permutations

from .arith.linalg import kernel
from .arith.matrix import Matrix
from .complexes import (ChainMap, Complex, concentrated, dual_complex, hom_complex,
                        identity_map, suspend, tensor_complex, tensor_maps, two_term,
                        verify_homotopy)


def perm_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def wedge_indices(a, b):
    """``e_a ^ e_b`` on increasing index tuples: ``(sign, sorted)`` or ``(0, None)``."""
    cat = tuple(a) + tuple(b)
    if len(set(cat)) < len(cat):
        return 0, None
    return perm_sign(cat), tuple(sorted(cat))


def exterior_basis(n: int, i: int):
    """Increasing index tuples of length ``i`` over ``1..n`` in lexicographic order."""
    return list(combinations(range(1, n + 1), i))


def basis_label(J) -> str:
    return "^".join(f"e{j}" for j in J) if J else "1"


class ExteriorElement:
    """An element of the exterior algebra on ``ring^n``.

    ``terms`` maps increasing index tuples to nonzero coefficients.
    """

    __slots__ = ("ring", "n", "terms")

    def __init__(self, ring, n: int, terms=None):
        self.ring = ring
        self.n = n
        clean = {}
        for J, c in (terms or {}).items():
            J = tuple(J)
            if list(J) != sorted(set(J)) or any(not 1 <= j <= n for j in J):
                raise ValueError(f"bad exterior index list {J}")
            c = ring(c)
            if c != 0:
                clean[J] = c
        self.terms = clean

    @classmethod
    def basis(cls, ring, n, J):
        return cls(ring, n, {tuple(J): ring.one})

    @classmethod
    def gen(cls, ring, n, j):
        return cls(ring, n, {(j,): ring.one})

    def _check(self, other):
        if not isinstance(other, ExteriorElement):
            raise TypeError("expected an exterior element")
        if other.n != self.n:
            raise ValueError(f"exterior algebras of rank {self.n} and {other.n}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for J, c in other.terms.items():
            out[J] = out.get(J, self.ring.zero) + c
        return ExteriorElement(self.ring, self.n, out)

    def __neg__(self):
        return ExteriorElement(self.ring, self.n, {J: -c for J, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.ring(c)
        return ExteriorElement(self.ring, self.n, {J: c * v for J, v in self.terms.items()})

    def wedge(self, other):
        self._check(other)
        out = {}
        for J, a in self.terms.items():
            for K, b in other.terms.items():
                s, L = wedge_indices(J, K)
                if s:
                    v = a * b if s == 1 else -(a * b)
                    out[L] = out[L] + v if L in out else v
        return ExteriorElement(self.ring, self.n, out)

    __xor__ = wedge

    def __eq__(self, other):
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted({len(J) for J in self.terms})

    def homogeneous_part(self, i: int):
        return ExteriorElement(self.ring, self.n, {J: c for J, c in self.terms.items() if len(J) == i})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("element is not homogeneous")
        return ds[0]

    def vector(self, i: int):
        """Coordinates of the degree-``i`` part in the lexicographic basis."""
        return tuple(self.terms.get(J, self.ring.zero) for J in exterior_basis(self.n, i))

    @classmethod
    def from_vector(cls, ring, n, i, vec):
        return cls(ring, n, dict(zip(exterior_basis(n, i), vec)))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for J in sorted(self.terms, key=lambda J: (len(J), J)):
            c = self.terms[J]
            text = self.ring.format(c)
            neg = text.startswith("-") and " " not in text
            if neg:
                text = text[1:]
            if " " in text:
                text = f"({text})"
            body = basis_label(J) if text == "1" else (f"{text} {basis_label(J)}" if J else text)
            parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    __repr__ = __str__


def wedge(a: ExteriorElement, b: ExteriorElement) -> ExteriorElement:
    return a.wedge(b)


def multiplication_table(ring, n: int):
    """``{(J, K): e_J ^ e_K}`` over all basis pairs with both factors nonempty."""
    table = {}
    basis = [J for i in range(1, n + 1) for J in exterior_basis(n, i)]
    for J in basis:
        for K in basis:
            table[(J, K)] = ExteriorElement.basis(ring, n, J).wedge(ExteriorElement.basis(ring, n, K))
    return table


# the Koszul complex --------------------------------------------------------------


class KoszulComplex(Complex):
    """``K(x_1..x_n)`` on the exterior algebra with the lexicographic basis.

    ``d(e_{j_1} ^ ... ^ e_{j_i}) = sum_p (-1)^{p+1} x_{j_p} e_{J minus j_p}``.
    """

    def __init__(self, ring, xs):
        xs = [ring(x) for x in xs]
        if not xs:
            raise ValueError("the Koszul complex needs at least one element")
        n = len(xs)
        self.xs = xs
        self.n = n
        self.basis = {i: exterior_basis(n, i) for i in range(n + 1)}
        self.index = {i: {J: k for k, J in enumerate(b)} for i, b in self.basis.items()}
        diffs = {}
        for i in range(1, n + 1):
            rows = [[ring.zero] * len(self.basis[i]) for _ in self.basis[i - 1]]
            for col, J in enumerate(self.basis[i]):
                for p, j in enumerate(J):
                    rest = J[:p] + J[p + 1:]
                    c = xs[j - 1]
                    rows[self.index[i - 1][rest]][col] += c if p % 2 == 0 else -c
            diffs[i] = Matrix(ring, rows, len(self.basis[i - 1]), len(self.basis[i]))
        labels = {i: [basis_label(J) for J in b] for i, b in self.basis.items()}
        super().__init__(ring, 0, [len(self.basis[i]) for i in range(n + 1)], diffs, labels)

    def element(self, i: int, vec) -> ExteriorElement:
        return ExteriorElement.from_vector(self.ring, self.n, i, vec)

    def differential(self, a: ExteriorElement) -> ExteriorElement:
        out = ExteriorElement(self.ring, self.n)
        for i in a.degrees():
            if i == 0:
                continue
            out = out + self.element(i - 1, self.d(i).apply(a.vector(i)))
        return out

    def product(self, i: int, a: int, j: int, b: int):
        """Coordinates in degree ``i+j`` of (basis ``a`` of degree i) ^ (basis ``b`` of degree j)."""
        s, L = wedge_indices(self.basis[i][a], self.basis[j][b])
        vec = [self.ring.zero] * len(self.basis.get(i + j, []))
        if s:
            vec[self.index[i + j][L]] = self.ring(s)
        return tuple(vec)


def koszul_via_exterior(ring, xs) -> KoszulComplex:
    return KoszulComplex(ring, xs)


def koszul_via_tensor(ring, xs) -> Complex:
    """Iterated tensor product ``K(x_1) (x) ... (x) K(x_n)``, left associated."""
    xs = list(xs)
    if not xs:
        raise ValueError("the Koszul complex needs at least one element")
    factors = [_factor(ring, x, j) for j, x in enumerate(xs, 1)]
    out = factors[0]
    for f in factors[1:]:
        out = tensor_complex(out, f)
    return out


def _factor(ring, x, j):
    c = two_term(ring, x)
    return Complex(ring, 0, [1, 1], c.differentials, labels={0: ["1"], 1: [f"e{j}"]})


def tensor_subset(label: str):
    """Index set ``J`` of an iterated tensor basis label such as ``e1|1|e3``."""
    return tuple(int(part[1:]) for part in label.split("|") if part != "1")


def tensor_to_exterior(ring, xs) -> ChainMap:
    """Comparison isomorphism ``K(x_1)(x)...(x)K(x_n) -> K(x)``.

    The pure tensor with ``e`` in slots ``j_1 < ... < j_t`` goes to
    ``+ e_{j_1} ^ ... ^ e_{j_t}``.
    """
    t = koszul_via_tensor(ring, xs)
    k = koszul_via_exterior(ring, xs)
    comps = {}
    for i in t.degrees():
        rows = [[ring.zero] * t.rank(i) for _ in range(k.rank(i))]
        for col, lab in enumerate(t.labels(i)):
            rows[k.index[i][tensor_subset(lab)]][col] = ring.one
        comps[i] = Matrix(ring, rows, k.rank(i), t.rank(i))
    return ChainMap(t, k, comps, check=True)


def permutation_isomorphism(ring, xs, perm) -> ChainMap:
    """``K(x_{perm(1)},...,x_{perm(n)}) -> K(x_1,...,x_n)``, an algebra map.

    ``perm`` is a sequence of 1-based indices; basis vector ``e_j`` of the
    source goes to ``e_{perm(j)}`` and wedges follow with their sign.
    """
    xs = list(xs)
    src = koszul_via_exterior(ring, [xs[p - 1] for p in perm])
    tgt = koszul_via_exterior(ring, xs)
    comps = {}
    for i in src.degrees():
        rows = [[ring.zero] * src.rank(i) for _ in range(tgt.rank(i))]
        for col, J in enumerate(src.basis[i]):
            image = [perm[j - 1] for j in J]
            s = perm_sign(image)
            rows[tgt.index[i][tuple(sorted(image))]][col] = ring(s)
        comps[i] = Matrix(ring, rows, tgt.rank(i), src.rank(i))
    return ChainMap(src, tgt, comps, check=True)


# self-duality -------------------------------------------------------------------

# Fixed witnesses S^{-n}K -> D, degree 0 first; D is the unsigned dual.
# For n = 2 the last degree needs -1 for the right-hand square to commute.
_WITNESS_TABLE = {
    1: [[[-1]], [[1]]],
    2: [[[1]], [[0, 1], [-1, 0]], [[-1]]],
    3: [[[1]], [[0, 0, -1], [0, 1, 0], [-1, 0, 0]], [[0, 0, -1], [0, 1, 0], [-1, 0, 0]], [[1]]],
}


def dual_sign_map(x: Complex) -> ChainMap:
    """Isomorphism from the unsigned dual ``D`` to ``Hom(X, R)``.

    ``Hom(X,R)`` carries the differential ``(-1)^i d_i^T`` out of degree
    ``1-i``; scaling degree ``-i`` by ``(-1)^{i(i+1)/2}`` matches the two.
    """
    d = dual_complex(x)
    h = hom_complex(x, concentrated(x.ring))
    comps = {}
    for j in d.degrees():
        i = -j
        sgn = -1 if (i * (i + 1) // 2) % 2 else 1
        comps[j] = Matrix.scalar(x.ring, d.rank(j), sgn)
    return ChainMap(d, h, comps, check=True)


def _search_witness(ring, k: KoszulComplex):
    """Solve the commuting squares for a complement-pairing map ``S^{-n}K -> D``.

    The ansatz sends ``e_J`` to ``s_J`` times the dual of ``e_{J^c}``; the
    squares give linear equations in the ``s_J`` (one per monomial), whose
    solution space is one-dimensional.  Normalised by ``s_{empty} = 1``.
    """
    from .arith.linalg import base_field

    n = k.n
    field = base_field(ring)
    subsets = [J for i in range(n + 1) for J in k.basis[i]]
    var = {J: a for a, J in enumerate(subsets)}
    full = tuple(range(1, n + 1))

    def comp(J):
        return tuple(j for j in full if j not in J)

    src = suspend(k, -n)
    dual = dual_complex(k)
    equations = {}
    # degree deg of src: holds K_{deg+n}; dual degree deg holds K_{-deg}^*
    for deg in range(-n + 1, 1):
        ds = src.d(deg)          # src_deg -> src_{deg-1}
        dd = dual.d(deg)         # dual_deg -> dual_{deg-1}
        i_src = deg + n
        i_dual = -deg
        for col, J in enumerate(k.basis[i_src]):
            # phi_{deg-1}(ds e_J) - dd phi_deg(e_J), coefficient of each dual basis vector
            for row, L in enumerate(k.basis[i_dual + 1]):
                acc = {}
                for r2, K in enumerate(k.basis[i_src - 1]):
                    c = ds.rows[r2][col]
                    if c != 0 and comp(K) == L:
                        acc[var[K]] = acc.get(var[K], 0) + c
                Jc = comp(J)
                c = dd.rows[row][k.index[i_dual][Jc]]
                if c != 0:
                    acc[var[J]] = acc.get(var[J], 0) - c
                for v, poly in acc.items():
                    for mono, coeff in _terms(poly):
                        equations.setdefault((deg, row, col, mono), {})
                        eq = equations[(deg, row, col, mono)]
                        eq[v] = eq.get(v, field.zero) + coeff
    rows = [[eq.get(v, field.zero) for v in range(len(subsets))] for eq in equations.values()]
    system = Matrix(field, rows, len(rows), len(subsets))
    sols = kernel(system)
    if len(sols) != 1:
        raise ArithmeticError(f"expected a one-dimensional solution space, got {len(sols)}")
    sol = sols[0]
    scale = sol[var[()]]
    sol = [c / scale for c in sol]
    out = []
    for deg in range(0, -n - 1, -1):
        i_src = deg + n
        i_dual = -deg
        m = [[field.zero] * len(k.basis[i_src]) for _ in k.basis[i_dual]]
        for col, J in enumerate(k.basis[i_src]):
            m[k.index[i_dual][comp(J)]][col] = sol[var[J]]
        out.append(m)
    return out


def _terms(x):
    if hasattr(x, "terms"):
        return list(x.terms.items())
    return [((), x)]


def self_duality_witness(ring, xs, method: str = "auto") -> ChainMap:
    """Chain isomorphism ``S^{-n} K(x) -> D``, ``D`` the unsigned dual of ``K(x)``.

    ``D`` is the transpose-dual presentation of ``Hom(K(x), R)``; compose
    with :func:`dual_sign_map` to land in :func:`hom_complex` itself.  For
    ``n <= 3`` the matrices are fixed constants (``method="table"``); for
    ``n = 4`` (or ``method="search"``) they come from a linear solve.
    """
    k = koszul_via_exterior(ring, xs)
    n = k.n
    if n > 4:
        raise ValueError("self-duality witnesses are provided for n <= 4 only")
    if method == "auto":
        method = "table" if n <= 3 else "search"
    mats = _WITNESS_TABLE[n] if method == "table" else _search_witness(ring, k)
    src = suspend(k, -n)
    dual = dual_complex(k)
    comps = {-i: Matrix(ring, m) for i, m in enumerate(mats)}
    return ChainMap(src, dual, comps, check=True)


def self_duality_isomorphism(ring, xs, method: str = "auto") -> ChainMap:
    """``S^{-n} K(x) -> Hom(K(x), R)``: the witness followed by the sign map."""
    w = self_duality_witness(ring, xs, method)
    return dual_sign_map(koszul_via_exterior(ring, xs)).compose(w)


# annihilation ----------------------------------------------------------------------


def annihilation_homotopy(ring, xs, j: int) -> ChainMap:
    """Degree-1 map ``s`` on the tensor presentation with ``x_j id = d s + s d``.

    ``s`` is ``id (x) ... (x) h (x) ... (x) id`` where ``h: K(x_j) -> K(x_j)``
    sends ``1`` to ``e_j``; it is transported to the exterior presentation
    through :func:`tensor_to_exterior`.
    """
    xs = list(xs)
    n = len(xs)
    if not 1 <= j <= n:
        raise IndexError(f"j={j} out of range 1..{n}")
    factors = [_factor(ring, x, i) for i, x in enumerate(xs, 1)]
    maps = []
    for i, f in enumerate(factors, 1):
        if i == j:
            maps.append(ChainMap(f, f, {0: Matrix(ring, [[1]])}, degree=1))
        else:
            maps.append(identity_map(f))
    s = maps[0]
    for m in maps[1:]:
        s = tensor_maps(s, m)
    iso = tensor_to_exterior(ring, xs)
    k = iso.target
    inv = {i: iso.f(i).T for i in k.degrees()}  # signed permutation matrices with all +1
    comps = {i: iso.f(i + 1) @ s.f(i) @ inv[i] for i in k.degrees()}
    return ChainMap(k, k, comps, degree=1)


def annihilation_check(ring, xs, j: int) -> bool:
    k = koszul_via_exterior(ring, xs)
    s = annihilation_homotopy(ring, xs, j)
    target = ChainMap(k, k, {i: Matrix.scalar(ring, k.rank(i), k.xs[j - 1]) for i in k.degrees()})
    return verify_homotopy(target, s)


def leibniz_check(ring, xs) -> bool:
    """``d(a^b) = da^b + (-1)^|a| a^db`` for every pair of basis elements."""
    k = koszul_via_exterior(ring, xs)
    n = k.n
    for i in range(n + 1):
        for J in k.basis[i]:
            a = ExteriorElement.basis(ring, n, J)
            for jdeg in range(n + 1):
                for K in k.basis[jdeg]:
                    b = ExteriorElement.basis(ring, n, K)
                    lhs = k.differential(a.wedge(b))
                    rhs = k.differential(a).wedge(b)
                    t = a.wedge(k.differential(b))
                    rhs = rhs + t if i % 2 == 0 else rhs - t
                    if lhs != rhs:
                        return False
    return True


def all_permutations_isomorphic(ring, xs) -> bool:
    n = len(xs)
    return all(permutation_isomorphism(ring, xs, p).is_isomorphism()
               for p in permutations(range(1, n + 1)))
