"""Exact integer and rational matrix routines.

Matrices are sequences of rows.  Nothing here touches floating point: the
entries are Python ``int`` or :class:`fractions.Fraction` and results are
returned in the same arithmetic.
"""

from fractions import Fraction
from math import gcd


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a):
    return tuple(zip(*a)) if a else ()


def matmul(a, b):
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def as_matrix(a):
    """Freeze a nested sequence into a tuple of tuples, checking it is rectangular."""
    rows = tuple(tuple(r) for r in a)
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix")
    return rows


def is_square(a):
    return all(len(r) == len(a) for r in a)


def _normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def det(a):
    """Determinant; fraction-free Bareiss elimination for integer input."""
    n = len(a)
    if n == 0:
        return 1
    if not is_square(a):
        raise ValueError("determinant of a non-square matrix")
    if all(isinstance(x, int) for r in a for x in r):
        m = [list(r) for r in a]
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
    m = [[Fraction(x) for x in r] for r in a]
    result = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            result = -result
        result *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return _normalize(result)


def rank(a):
    m = [[Fraction(x) for x in r] for r in a]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            f = m[i][c] / m[r][c]
            if f:
                for j in range(c, cols):
                    m[i][j] -= f * m[r][j]
        r += 1
        if r == rows:
            break
    return r


def inverse(a):
    """Exact inverse over the rationals; integer entries are kept as ``int`` when possible."""
    n = len(a)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return tuple(tuple(_normalize(x) for x in r[n:]) for r in m)


def content(values):
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def primitive(v):
    """Divide an integer vector by its content and make the first nonzero entry positive."""
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    v = [x // g for x in v]
    lead = next(x for x in v if x)
    if lead < 0:
        v = [-x for x in v]
    return tuple(v)


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def bezout_vector(v):
    """Return ``(g, w)`` with ``w . v == g == gcd(v)`` and ``g >= 0``."""
    g, w = 0, [0] * len(v)
    for i, x in enumerate(v):
        if x == 0:
            continue
        if g == 0:
            g, w[i] = abs(x), (1 if x > 0 else -1)
            continue
        d, s, t = _xgcd(g, x)
        w = [s * c for c in w]
        w[i] = t
        g = d
    if g < 0:
        g, w = -g, [-c for c in w]
    return g, tuple(w)


def hermite_normal_form(rows):
    """Row-style Hermite normal form of the lattice spanned by ``rows`` (zero rows dropped)."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return ()
    cols = len(m[0])
    r = 0
    for c in range(cols):
        if r == len(m):
            break
        # euclid on column c over rows r..end
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[piv] = m[piv], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if m[r][c] == 0:
            continue
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
        r += 1
    return tuple(tuple(row) for row in m[:r])


def integer_kernel(a, ncols=None):
    """Basis (as rows, in Hermite normal form) of the lattice ``{x in Z^m : a x = 0}``."""
    rows = [list(r) for r in a]
    m = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    # columns of the augmented matrix [a; I], reduced by unimodular column operations
    cols = [[r[j] for r in rows] + [int(i == j) for i in range(m)] for j in range(m)]
    nrows = len(rows)
    k = 0
    for i in range(nrows):
        if k == m:
            break
        for j in range(k + 1, m):
            while cols[j][i] != 0:
                q = cols[k][i] // cols[j][i]
                cols[k] = [x - q * y for x, y in zip(cols[k], cols[j])]
                cols[k], cols[j] = cols[j], cols[k]
        if cols[k][i] != 0:
            k += 1
    basis = [tuple(c[nrows:]) for c in cols[k:]]
    return hermite_normal_form(basis)


def lll_reduce(basis, delta=Fraction(3, 4)):
    """Exact LLL reduction of a list of linearly independent integer row vectors."""
    b = [list(v) for v in basis]
    n = len(b)
    if n <= 1:
        return tuple(tuple(v) for v in b)

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gram_schmidt():
        bstar, mu = [], [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = dot(b[i], bstar[j]) / dot(bstar[j], bstar[j])
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
        return bstar, mu

    bstar, mu = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                bstar, mu = gram_schmidt()
        if dot(bstar[k], bstar[k]) >= (delta - mu[k][k - 1] ** 2) * dot(bstar[k - 1], bstar[k - 1]):
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bstar, mu = gram_schmidt()
            k = max(k - 1, 1)
    return tuple(tuple(v) for v in b)


def complete_to_unimodular(v):
    """Square integer matrix of determinant 1 whose first column is the primitive vector ``v``."""
    g, w = bezout_vector(v)
    if g != 1:
        raise ValueError(f"vector {tuple(v)} is not primitive")
    m = len(v)
    if m == 1:
        if v[0] != 1:
            raise ValueError("SL(1) contains only the identity")
        return ((1,),)
    rest = lll_reduce(integer_kernel([w], m))
    cols = [tuple(v)] + [tuple(r) for r in rest]
    t = transpose(cols)
    if det(t) < 0:
        cols[1] = tuple(-x for x in cols[1])
        t = transpose(cols)
    return t
