"""Small exact linear-algebra helpers over the rationals."""
from fractions import Fraction
from math import gcd


def frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    if isinstance(x, float):
        raise TypeError("floating point input is not accepted: %r" % (x,))
    return Fraction(x)


def fvec(v):
    return tuple(frac(x) for x in v)


def dot(a, b):
    s = 0
    for x, y in zip(a, b):
        if x and y:
            s += x * y
    return s


def matvec(m, v):
    return tuple(dot(row, v) for row in m)


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def matmul(a, b):
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def rref(m):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    a = [[frac(x) for x in row] for row in m]
    if not a:
        return [], []
    ncol = len(a[0])
    pivots = []
    r = 0
    for c in range(ncol):
        p = None
        for i in range(r, len(a)):
            if a[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(m):
    return len(rref(m)[1])


def nullspace(m, ncol=None):
    """Basis of {x : m x = 0} as a list of Fraction tuples."""
    if not m:
        n = ncol or 0
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    ncol = len(m[0])
    rows, piv = rref(m)
    free = [c for c in range(ncol) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncol
        x[f] = Fraction(1)
        for r, pc in zip(rows, piv):
            x[pc] = -r[f]
        basis.append(tuple(x))
    return basis


def solve(m, b):
    """One solution of m x = b, or None."""
    ncol = len(m[0]) if m else 0
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    rows, piv = rref(aug)
    if ncol in piv:
        return None
    x = [Fraction(0)] * ncol
    for r, pc in zip(rows, piv):
        x[pc] = r[ncol]
    return tuple(x)


def inverse(m):
    n = len(m)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    rows, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(rows) < n:
        raise ValueError("matrix is singular")
    return [list(r[n:]) for r in rows]


def primitive(v):
    """Scale a rational vector to the primitive integer vector on its ray."""
    v = fvec(v)
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def complement_basis(vectors, n):
    """Basis of the orthogonal complement of span(vectors) in Q^n."""
    if not vectors:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    return nullspace([list(v) for v in vectors], n)
