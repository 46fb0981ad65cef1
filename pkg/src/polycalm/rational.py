"""Exact linear algebra over arbitrary-precision rationals.

Vectors are tuples of ``fractions.Fraction`` (always in lowest terms),
matrices are tuples of such row vectors.  Every operation here is exact;
no rounding occurs anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce an int, string ``"p/q"`` or Fraction to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError(f"refusing inexact float {x!r}; pass int, Fraction or 'p/q' string")
    raise TypeError(f"cannot interpret {x!r} as a rational")


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(vec(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def identity(n: int) -> Matrix:
    return tuple(unit(n, i) for i in range(n))


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def neg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def scale(c: Fraction, u: Vector) -> Vector:
    return tuple(c * a for a in u)


def dot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), ZERO)


def is_zero(u: Vector) -> bool:
    return all(a == 0 for a in u)


def matvec(m: Matrix, u: Vector) -> Vector:
    return tuple(dot(row, u) for row in m)


def tmatvec(m: Matrix, u: Vector) -> Vector:
    """Apply the transpose of ``m`` to ``u`` (i.e. ``m.T @ u``)."""
    if not m:
        return ()
    n = len(m[0])
    return tuple(sum((row[j] * c for row, c in zip(m, u)), ZERO) for j in range(n))


def transpose(m: Matrix) -> Matrix:
    if not m:
        return ()
    return tuple(tuple(row[j] for row in m) for j in range(len(m[0])))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(ra, cb) for cb in bt) for ra in a)


def norm1(u: Vector) -> Fraction:
    return sum((abs(a) for a in u), ZERO)


def norm_sq(u: Vector) -> Fraction:
    return sum((a * a for a in u), ZERO)


def primitive(u: Vector) -> Vector:
    """Scale ``u`` by a positive rational so entries are integers with gcd 1.

    The direction (sign pattern) of ``u`` is preserved; the zero vector is
    returned unchanged.
    """
    if is_zero(u):
        return u
    denom_lcm = 1
    for a in u:
        denom_lcm = denom_lcm * a.denominator // gcd(denom_lcm, a.denominator)
    ints = [int(a * denom_lcm) for a in u]
    g = 0
    for z in ints:
        g = gcd(g, abs(z))
    return tuple(Fraction(z, g) for z in ints)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns; zero rows dropped."""
    rows = [list(r) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [inv * a for a in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[0])


def kernel_basis(m: Matrix, n: Optional[int] = None) -> Matrix:
    """Basis of ``{x : m @ x = 0}``; ``n`` gives the column count if m is empty."""
    if not m:
        if n is None:
            raise ValueError("kernel of empty matrix needs explicit dimension")
        return identity(n)
    ncols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [ZERO] * ncols
        v[fcol] = ONE
        for row, pcol in zip(red, pivots):
            v[pcol] = -row[fcol]
        basis.append(tuple(v))
    return tuple(basis)


def solve(m: Matrix, b: Vector) -> Optional[Vector]:
    """One exact solution of ``m @ x = b`` or None if inconsistent."""
    if not m:
        return ()
    ncols = len(m[0])
    aug = tuple(row + (rhs,) for row, rhs in zip(m, b))
    red, pivots = rref(aug)
    if any(p == ncols for p in pivots):
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[-1]
    return tuple(x)


def row_space_basis(m: Matrix) -> Matrix:
    return rref(m)[0]


def reduce_mod_rows(v: Vector, basis: Matrix, pivots: Sequence[int]) -> Vector:
    """Subtract multiples of RREF ``basis`` rows from ``v`` to zero its pivot coords."""
    out = list(v)
    for row, p in zip(basis, pivots):
        if out[p] != 0:
            f = out[p] / row[p]
            out = [a - f * b for a, b in zip(out, row)]
    return tuple(out)


def sqrt_upper(x: Fraction) -> Fraction:
    """A rational upper bound on sqrt(x), exact when x is a perfect square."""
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return ZERO
    p, q = x.numerator, x.denominator
    rp = _isqrt_ceil(p)
    rq_num = _isqrt_ceil(q)
    # sqrt(p/q) = sqrt(p*q)/q;  exact if p*q is a perfect square
    if rp * rp == p and rq_num * rq_num == q:
        return Fraction(rp, rq_num)
    r = _isqrt_ceil(p * q)
    return Fraction(r, q)


def _isqrt_ceil(n: int) -> int:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else r + 1
