"""Exact linear algebra over the rationals.

Vectors are tuples of Fraction, matrices are tuples of row tuples.  Both are
hashable, so vectors can serve as dictionary keys elsewhere.  Every routine
here is exact; nothing ever touches a float.
"""

from fractions import Fraction


def frac(x):
    """Coerce ints, Fractions and strings like '-3/4' to Fraction exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("expected an exact rational, got %r" % (x,))


def vector(entries):
    """Build an immutable rational vector from an iterable of exact entries."""
    return tuple(frac(e) for e in entries)


def matrix(rows):
    """Build an immutable rational matrix; all rows must have equal length."""
    out = tuple(vector(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged rows in matrix")
    return out


def zeros(n):
    return tuple(Fraction(0) for _ in range(n))


def identity(n):
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def vec_add(u, v):
    if len(u) != len(v):
        raise ValueError("vector length mismatch: %d vs %d" % (len(u), len(v)))
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    if len(u) != len(v):
        raise ValueError("vector length mismatch: %d vs %d" % (len(u), len(v)))
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(u):
    return tuple(-a for a in u)


def vec_scale(c, u):
    c = frac(c)
    return tuple(c * a for a in u)


def dot(u, v):
    if len(u) != len(v):
        raise ValueError("vector length mismatch: %d vs %d" % (len(u), len(v)))
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b):
    if not b:
        return ()
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m):
    if not m:
        return ()
    return tuple(tuple(m[i][j] for i in range(len(m))) for j in range(len(m[0])))


def mat_sub(a, b):
    return tuple(vec_sub(ra, rb) for ra, rb in zip(a, b))


def is_zero_matrix(m):
    return all(e == 0 for row in m for e in row)


def _eliminate(rows):
    # forward elimination with partial (first-nonzero) pivoting; returns the
    # echelon rows and the list of pivot columns
    rows = [list(r) for r in rows]
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = None
        for i in range(r, n_rows):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return rows, pivots


def rank(m):
    if not m:
        return 0
    _, pivots = _eliminate(m)
    return len(pivots)


def det(m):
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant needs a square matrix")
    rows = [list(r) for r in m]
    result = Fraction(1)
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            result = -result
        result *= rows[c][c]
        inv = Fraction(1) / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return result


def inverse(m):
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("inverse needs a square matrix")
    aug = [list(m[i]) + list(identity(n)[i]) for i in range(n)]
    rows, pivots = _eliminate(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(rows[i][n:]) for i in range(n))


def solve(m, rhs):
    """Solve m x = rhs exactly; raises ValueError if singular."""
    return mat_vec(inverse(m), rhs)


def row_space_basis(vectors):
    """A basis (echelon rows) of the rational span of the given vectors."""
    vecs = [v for v in vectors if any(e != 0 for e in v)]
    if not vecs:
        return []
    rows, pivots = _eliminate(vecs)
    return [tuple(rows[i]) for i in range(len(pivots))]


def coordinates_in_basis(v, basis):
    """Exact coordinates of v in the given independent basis (rows).

    Raises ValueError if v lies outside the span.
    """
    if not basis:
        if any(e != 0 for e in v):
            raise ValueError("vector outside span of empty basis")
        return ()
    # solve basis^T c = v by elimination on the augmented system
    n_cols = len(v)
    aug = [[basis[j][i] for j in range(len(basis))] + [v[i]] for i in range(n_cols)]
    rows, pivots = _eliminate(aug)
    k = len(basis)
    coords = [Fraction(0)] * k
    for r, c in enumerate(pivots):
        if c == k:
            raise ValueError("vector outside span of basis")
        coords[c] = rows[r][k]
    # consistency: rows past the pivots must have zero rhs
    for r in range(len(pivots), len(rows)):
        if rows[r][k] != 0:
            raise ValueError("vector outside span of basis")
    return tuple(coords)
