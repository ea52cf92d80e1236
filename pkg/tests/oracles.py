"""Independent reference computations used to cross-check the library.

Everything here uses sympy's exact rational linear algebra and shares no
code with dgkit beyond reading matrix entries.
"""
from fractions import Fraction

import sympy


def _q(x):
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    return sympy.Rational(int(x))


def smat(rows, ncols=None):
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return sympy.Matrix(len(rows), ncols, lambda i, j: _q(rows[i][j]))


def rank(rows, ncols=None) -> int:
    m = smat(rows, ncols)
    if m.rows == 0 or m.cols == 0:
        return 0
    return m.rank()


def homology_dims(cx) -> dict:
    """``dim H_i`` of a complex over Q from ranks of its differentials."""
    out = {}
    for i in cx.degrees():
        n = cx.rank(i)
        r_out = rank(cx.d(i).rows, n) if cx.rank(i - 1) and n else 0
        r_in = rank(cx.d(i + 1).rows, cx.rank(i + 1)) if cx.rank(i + 1) and n else 0
        out[i] = n - r_out - r_in
    return out


def classical_ext(table, m_actions, n_actions, depth):
    """``dim Ext^i_A(M, N)`` for ``i < depth`` over a commutative Q-algebra ``A``.

    ``table[p][q]`` holds the coordinates of ``b_p b_q`` (``b_0 = 1``);
    ``m_actions[p]`` and ``n_actions[p]`` are the matrices of ``b_p`` on the
    modules (acting on columns).  The projective resolution covers each
    syzygy by the free module on its vector-space basis, so it is not
    minimal, but the Ext dimensions it gives are exact.
    """
    d = len(table)
    mult = [smat([[table[q][p][r] for p in range(d)] for r in range(d)], d) for q in range(d)]
    x_actions = [smat(a) for a in m_actions]
    n_mats = [smat(a) for a in n_actions]
    dim_n = n_mats[0].rows
    gens = []       # generator count of P_i
    boundary = []   # P_i -> P_{i-1}, columns in P_{i-1} coordinates (index j*d + p)
    dim_x = x_actions[0].rows
    prev_kernel = None
    for i in range(depth + 1):
        k = dim_x
        gens.append(k)
        if prev_kernel is not None:
            boundary.append(prev_kernel)
        # pi: A^k -> X, b_p g_j -> b_p x_j
        pi = sympy.zeros(dim_x, d * k)
        for j in range(k):
            for p in range(d):
                pi[:, j * d + p] = x_actions[p][:, j]
        ker = pi.nullspace()
        if not ker:
            break
        kb = sympy.Matrix.hstack(*ker)
        # action of b_q on A^k restricted to the kernel
        big = [sympy.diag(*([mult[q]] * k)) for q in range(d)]
        pinv = (kb.T * kb).inv() * kb.T
        x_actions = [pinv * big[q] * kb for q in range(d)]
        dim_x = kb.cols
        prev_kernel = kb
    # cochain maps Hom(P_{i-1}, N) -> Hom(P_i, N)
    deltas = {}
    for i in range(1, len(gens)):
        kb = boundary[i - 1]
        k_prev, k_cur = gens[i - 1], gens[i]
        delta = sympy.zeros(k_cur * dim_n, k_prev * dim_n)
        for j in range(k_cur):
            for l in range(k_prev):
                for p in range(d):
                    c = kb[l * d + p, j]
                    if c != 0:
                        delta[j * dim_n:(j + 1) * dim_n, l * dim_n:(l + 1) * dim_n] += c * n_mats[p]
        deltas[i] = delta

    def r(m):
        return m.rank() if m.rows and m.cols else 0

    out = []
    for i in range(depth):
        if i >= len(gens):
            out.append(0)
            continue
        top = r(deltas[i + 1]) if i + 1 in deltas else 0
        bottom = r(deltas[i]) if i in deltas else 0
        out.append(gens[i] * dim_n - top - bottom)
    return out


def poly_det(rows):
    """Expanded determinant of a matrix of polynomial strings."""
    m = sympy.Matrix([[sympy.sympify(x.replace("^", "**")) for x in r] for r in rows])
    return sympy.expand(m.det())


def same_poly(a: str, b) -> bool:
    return sympy.expand(sympy.sympify(a.replace("^", "**")) - b) == 0


def jacobian_rank(polys, names, point) -> int:
    """Rank of the Jacobian of polynomial strings at a rational point."""
    syms = sympy.symbols(names)
    exprs = [sympy.sympify(p.replace("^", "**"), locals=dict(zip(names, syms))) for p in polys]
    if not exprs:
        return 0
    jac = sympy.Matrix(exprs).jacobian(syms)
    sub = jac.subs(dict(zip(syms, [_q(v) for v in point])))
    return sub.rank()
