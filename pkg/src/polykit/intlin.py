"""Small exact integer linear algebra used by the polytope code.

Vectors are tuples of python ints, matrices are lists of rows.
"""

from fractions import Fraction
from functools import reduce
from math import gcd


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def neg(a):
    return tuple(-x for x in a)


def scale(c, a):
    return tuple(c * x for x in a)


def content(v):
    return reduce(gcd, (abs(x) for x in v), 0)


def primitive(v):
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive part")
    return tuple(x // g for x in v)


def det(rows):
    """Determinant of a square integer matrix (Bareiss, exact)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def normal_of(rows):
    """Generalized cross product of n-1 vectors in Z^n (zero if dependent)."""
    n = len(rows) + 1
    out = []
    for i in range(n):
        minor = [[r[j] for j in range(n) if j != i] for r in rows]
        out.append((-1) ** i * det(minor))
    return tuple(out)


def ext_gcd(a, b):
    """Return (g, x, y) with a*x + b*y = g >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def unit_preimage(a):
    """Some integer vector g with a.g = 1, for a primitive vector a."""
    n = len(a)
    g = [0] * n
    cur, coeffs = 0, []
    # fold the gcd left to right, remembering the Bezout coefficients
    for i, ai in enumerate(a):
        if i == 0:
            cur = ai
            coeffs = [1]
            continue
        d, x, y = ext_gcd(cur, ai)
        coeffs = [c * x for c in coeffs] + [y]
        cur = d
    if cur < 0:
        coeffs = [-c for c in coeffs]
        cur = -cur
    if cur != 1:
        raise ValueError("vector %r is not primitive" % (a,))
    g[:] = coeffs
    assert dot(a, g) == 1
    return tuple(g)


def column_reduce(rows):
    """Unimodular column reduction of an integer matrix.

    Returns (H, U) with H = rows * U lower-echelon and U unimodular.
    """
    m = [list(r) for r in rows]
    n = len(m[0]) if m else 0
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(j, k, a, b, c, d):
        # (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k)
        for mat in (m, U):
            for r in mat:
                x, y = r[j], r[k]
                r[j], r[k] = a * x + b * y, c * x + d * y

    piv = 0
    for i in range(len(m)):
        if piv >= n:
            break
        for k in range(piv + 1, n):
            if m[i][k] == 0:
                continue
            x, y = m[i][piv], m[i][k]
            g, s, t = ext_gcd(x, y)
            colop(piv, k, s, t, -y // g, x // g)
        if m[i][piv] != 0:
            if m[i][piv] < 0:
                colop(piv, piv, -1, 0, 0, -1)
            piv += 1
    return m, U, piv


def integer_kernel(rows, n):
    """Basis (as rows) of {x in Z^n : rows . x = 0}."""
    if not rows:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    _, U, r = column_reduce(rows)
    return [tuple(U[i][j] for i in range(n)) for j in range(r, n)]


def lattice_basis(vectors, n):
    """Basis (rows) of the subgroup of Z^n generated by the vectors."""
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return []
    # column-reduce the transpose: columns of the result generate the lattice
    cols = [[v[i] for v in vecs] for i in range(n)]
    H, _, r = column_reduce(cols)
    return [tuple(H[i][j] for i in range(n)) for j in range(r)]


def solve(basis, v):
    """Rational coordinates c with sum c_i basis_i = v, or None."""
    k = len(basis)
    n = len(v)
    m = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(v[i])]
         for i in range(n)]
    r, pivots = 0, []
    for c in range(k):
        p = next((i for i in range(r, n) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [a / pv for a in m[r]]
        for i in range(n):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(m[i][k] != 0 for i in range(r, n)):
        return None
    out = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        out[c] = m[i][k]
    return out


def solve_int(basis, v):
    c = solve(basis, v)
    if c is None or any(x.denominator != 1 for x in c):
        return None
    return tuple(int(x) for x in c)


def mat_inverse(rows):
    """Exact rational inverse of a square matrix (None if singular)."""
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        pv = m[c][c]
        m[c] = [a / pv for a in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return [r[n:] for r in m]


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b)))
             for j in range(len(b[0]))] for i in range(len(a))]
