"""Exact rational linear algebra on tuples of Fractions."""

from fractions import Fraction
from numbers import Integral, Rational


def to_fraction(value):
    """Convert an int, Fraction, float or "p/q" string to a Fraction exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (Integral, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return Fraction(value)
    try:
        return Fraction(float(value))
    except (TypeError, ValueError):
        raise TypeError(f"cannot convert {value!r} to a rational") from None


def is_exact_scalar(value):
    return isinstance(value, (Integral, Fraction)) and not isinstance(value, bool)


def is_exact_vector(x):
    return all(is_exact_scalar(c) for c in x)


def fvec(x):
    return tuple(to_fraction(c) for c in x)


def dot(f, x):
    return sum((a * b for a, b in zip(f, x)), Fraction(0))


def scale(v, s):
    return tuple(s * c for c in v)


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def neg(v):
    return tuple(-c for c in v)


def rref(rows, ncols=None):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    m = [list(map(to_fraction, r)) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][c]
        m[r] = [a / p for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                k = m[i][c]
                m[i] = [a - k * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows, ncols=None):
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])


def nullspace(rows, n):
    """Basis of {y : r.y = 0 for all rows r} in Q^n."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    red, pivots = rref(rows, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(tuple(v))
    return basis


def solve(rows, rhs):
    """Unique solution of rows @ y = rhs, or None if inconsistent or not unique."""
    n = len(rows[0])
    aug = [tuple(r) + (b,) for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    if len(pivots) < n:
        return None
    y = [Fraction(0)] * n
    for row, pc in zip(red, pivots):
        y[pc] = row[n]
    return tuple(y)


def canonical_direction(v):
    """Scale v so its first nonzero entry is +1 (a projective normal form)."""
    for c in v:
        if c != 0:
            return tuple(a / c for a in v)
    raise ValueError("zero vector has no direction")


def primitive_integer(v):
    """Smallest integer vector on the same ray as the rational vector v."""
    from math import gcd, lcm

    den = 1
    for c in v:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in v]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    if g == 0:
        raise ValueError("zero vector")
    return tuple(c // g for c in ints)
