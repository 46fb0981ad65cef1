"""Multivariate polynomials with exact rational coefficients.

Supplies values, Jacobians and Hessian contractions for the smooth data of
constraint systems; differentiation is symbolic on term lists, so every
derivative is exact.  Terms are ``(exponents, coefficient)`` pairs, which
round-trip losslessly through the problem-file format.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rational import Matrix, ONE, Vector, ZERO, frac, vec


def _canon_terms(terms: Iterable[tuple[tuple[int, ...], Fraction]]):
    acc: dict[tuple[int, ...], Fraction] = {}
    for exps, coeff in terms:
        if coeff == 0:
            continue
        acc[exps] = acc.get(exps, ZERO) + coeff
    return tuple(sorted((e, c) for e, c in acc.items() if c != 0))


@dataclass(frozen=True)
class Polynomial:
    """Polynomial in ``n_vars`` variables as a canonical term tuple."""

    n_vars: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    @staticmethod
    def build(n_vars: int, terms: Iterable[tuple]) -> "Polynomial":
        """Terms given as ``(coefficient, exponent-vector)`` pairs."""
        canon = _canon_terms(
            (tuple(int(e) for e in exps), frac(c)) for c, exps in terms
        )
        for exps, _ in canon:
            if len(exps) != n_vars or any(e < 0 for e in exps):
                raise ValueError("malformed exponent vector")
        return Polynomial(n_vars, canon)

    @staticmethod
    def constant(n_vars: int, c) -> "Polynomial":
        c = frac(c)
        return Polynomial(n_vars, (((0,) * n_vars, c),) if c != 0 else ())

    @staticmethod
    def coordinate(n_vars: int, i: int) -> "Polynomial":
        exps = tuple(1 if j == i else 0 for j in range(n_vars))
        return Polynomial(n_vars, ((exps, ONE),))

    def eval(self, x: Vector) -> Fraction:
        x = vec(x)
        total = ZERO
        for exps, coeff in self.terms:
            val = coeff
            for xi, e in zip(x, exps):
                for _ in range(e):
                    val *= xi
            total += val
        return total

    def partial(self, i: int) -> "Polynomial":
        out = []
        for exps, coeff in self.terms:
            e = exps[i]
            if e == 0:
                continue
            new = list(exps)
            new[i] = e - 1
            out.append((tuple(new), coeff * e))
        return Polynomial(self.n_vars, _canon_terms(out))

    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    @property
    def is_affine(self) -> bool:
        return self.degree() <= 1

    def add(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(self.n_vars, _canon_terms(self.terms + other.terms))

    def scale(self, c: Fraction) -> "Polynomial":
        c = frac(c)
        return Polynomial(self.n_vars, _canon_terms((e, c * k) for e, k in self.terms))

    def substitute_vars(self, var_map: Sequence[int], new_nvars: int) -> "Polynomial":
        """Rename variable ``i`` to ``var_map[i]`` (identifications allowed)."""
        out = []
        for exps, coeff in self.terms:
            new = [0] * new_nvars
            for i, e in enumerate(exps):
                new[var_map[i]] += e
            out.append((tuple(new), coeff))
        return Polynomial(new_nvars, _canon_terms(out))


@dataclass(frozen=True)
class PolynomialMap:
    """Vector-valued polynomial map with exact derivatives."""

    n_in: int
    components: tuple[Polynomial, ...]

    @staticmethod
    def build(n_in: int, comps: Iterable) -> "PolynomialMap":
        out = []
        for c in comps:
            if isinstance(c, Polynomial):
                if c.n_vars != n_in:
                    raise ValueError("component variable count mismatch")
                out.append(c)
            else:
                out.append(Polynomial.build(n_in, c))
        return PolynomialMap(n_in, tuple(out))

    @staticmethod
    def affine(m: Matrix, offset: Vector) -> "PolynomialMap":
        n_in = len(m[0]) if m else len(offset)
        comps = []
        for row, c in zip(m, offset):
            terms = [(c, (0,) * n_in)] + [
                (row[j], tuple(1 if k == j else 0 for k in range(n_in)))
                for j in range(n_in)
            ]
            comps.append(Polynomial.build(n_in, terms))
        return PolynomialMap(n_in, tuple(comps))

    @property
    def n_out(self) -> int:
        return len(self.components)

    @property
    def is_affine(self) -> bool:
        return all(p.is_affine for p in self.components)

    def value(self, x: Vector) -> Vector:
        x = vec(x)
        if len(x) != self.n_in:
            raise ValueError("argument dimension mismatch")
        return tuple(p.eval(x) for p in self.components)

    def jacobian_at(self, x: Vector) -> Matrix:
        x = vec(x)
        return tuple(
            tuple(p.partial(j).eval(x) for j in range(self.n_in)) for p in self.components
        )

    def affine_parts(self) -> tuple[Matrix, Vector]:
        """``(M, c)`` with the map equal to ``x -> M x + c``; affine maps only."""
        if not self.is_affine:
            raise ValueError("map is not affine")
        zero = (ZERO,) * self.n_in
        m = self.jacobian_at(zero)
        c = self.value(zero)
        return m, c

    def hessian_contraction_at(self, lam: Vector, x: Vector) -> Matrix:
        """Exact ``sum_i lam_i Hess(g_i)(x)``; symmetric by construction."""
        lam, x = vec(lam), vec(x)
        n = self.n_in
        out = [[ZERO] * n for _ in range(n)]
        for coef, p in zip(lam, self.components):
            if coef == 0:
                continue
            for j in range(n):
                pj = p.partial(j)
                for k in range(j, n):
                    h = pj.partial(k).eval(x) * coef
                    out[j][k] += h
                    if k != j:
                        out[k][j] += h
        return tuple(tuple(r) for r in out)

    def scalarize(self, lam: Vector) -> Polynomial:
        lam = vec(lam)
        acc = Polynomial.constant(self.n_in, 0)
        for coef, p in zip(lam, self.components):
            if coef != 0:
                acc = acc.add(p.scale(coef))
        return acc


@dataclass(frozen=True)
class MatrixPolynomialMap:
    """Matrix-valued polynomial map; entries stored row-major."""

    shape: tuple[int, int]
    entries: PolynomialMap  # n_out == rows * cols

    @staticmethod
    def build(n_in: int, rows: int, cols: int, entry_terms: Iterable) -> "MatrixPolynomialMap":
        pm = PolynomialMap.build(n_in, entry_terms)
        if pm.n_out != rows * cols:
            raise ValueError("entry count != rows * cols")
        return MatrixPolynomialMap((rows, cols), pm)

    @staticmethod
    def constant(m: Matrix, n_in: int) -> "MatrixPolynomialMap":
        rows, cols = len(m), (len(m[0]) if m else 0)
        comps = tuple(
            Polynomial.constant(n_in, m[i][j]) for i in range(rows) for j in range(cols)
        )
        return MatrixPolynomialMap((rows, cols), PolynomialMap(n_in, comps))

    @property
    def n_in(self) -> int:
        return self.entries.n_in

    @property
    def is_constant(self) -> bool:
        return all(p.degree() == 0 for p in self.entries.components)

    @property
    def is_affine(self) -> bool:
        return self.entries.is_affine

    def value_matrix(self, x: Vector) -> Matrix:
        rows, cols = self.shape
        flat = self.entries.value(x)
        return tuple(tuple(flat[i * cols + j] for j in range(cols)) for i in range(rows))

    def scalarized(self, y: Vector) -> PolynomialMap:
        """The map ``x -> value_matrix(x)^T @ y`` (one polynomial per column)."""
        y = vec(y)
        rows, cols = self.shape
        if len(y) != rows:
            raise ValueError("scalarizing vector length mismatch")
        comps = []
        for j in range(cols):
            acc = Polynomial.constant(self.n_in, 0)
            for i in range(rows):
                if y[i] != 0:
                    acc = acc.add(self.entries.components[i * cols + j].scale(y[i]))
            comps.append(acc)
        return PolynomialMap(self.n_in, tuple(comps))

    def scalarized_jacobian_at(self, y: Vector, x: Vector) -> Matrix:
        """Exact Jacobian of ``x -> value_matrix(x)^T @ y`` at ``x``."""
        return self.scalarized(y).jacobian_at(x)
