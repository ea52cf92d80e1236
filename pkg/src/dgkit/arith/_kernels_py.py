"""Pure-Python row reduction over F_p, used when the compiled kernel is absent."""


def rref_modp(rows, ncols, p):
    """Reduced row echelon form of an integer matrix modulo ``p``.

    ``rows`` is a list of integer lists.  Returns ``(reduced_rows, pivots)``
    where only the nonzero rows are kept and entries lie in ``[0, p)``.
    """
    m = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        prow = [(x * inv) % p for x in m[r]]
        m[r] = prow
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    m[i] = [(a - f * b) % p for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
    return m[:r], pivots
