"""Variational cones of polyhedral sets.

A ``PolySet`` is a finite union of convex polyhedra in a common ambient
space; a ``ConeUnion`` is a PolySet whose components are cones.  Tangent
cones, regular/limiting/directional limiting normal cones and critical
cones are computed exactly.  The limiting constructions exploit local
conicity: near any of its points a polyhedral set agrees with the point
plus its tangent cone, with an explicitly computable rational radius, so
limit-based definitions reduce to finite stratified enumeration.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .geometry import (
    ConvexPolyhedron,
    PolyCone,
    PreconditionError,
    RepresentationError,
    Row,
    as_cone,
    dist_inf_lower,
    face_lattice,
    feasible_point,
    linear_image,
    polar,
)
from .rational import (
    Matrix,
    ONE,
    Vector,
    ZERO,
    add,
    dot,
    frac,
    is_zero,
    mat,
    matvec,
    neg,
    norm1,
    primitive,
    scale,
    sub,
    vec,
    zeros,
)


class PolySet:
    """Finite union of convex polyhedra; canonical form has no component
    contained in another.  The empty union is allowed (no components)."""

    __slots__ = ("dim", "components")

    def __init__(self, dim: int, components: Iterable[ConvexPolyhedron] = ()):
        comps = [c for c in components if not c.is_empty]
        for c in comps:
            if c.dim != dim:
                raise RepresentationError("component dimension mismatch")
        kept: list[ConvexPolyhedron] = []
        for c in sorted(set(comps), key=lambda c: c.key):
            if not any(d is not c and convex_includes(d, c) for d in comps):
                kept.append(c)
        self.dim = dim
        self.components = tuple(kept)

    @staticmethod
    def of(*components: ConvexPolyhedron) -> "PolySet":
        if not components:
            raise RepresentationError("PolySet.of needs at least one component")
        return PolySet(components[0].dim, components)

    @staticmethod
    def empty(dim: int) -> "PolySet":
        return PolySet(dim, ())

    @property
    def is_empty_union(self) -> bool:
        return not self.components

    def __eq__(self, other):
        return (
            isinstance(other, PolySet)
            and self.dim == other.dim
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.dim, self.components))

    def __repr__(self):
        return f"PolySet(dim={self.dim}, components={len(self.components)})"

    def contains(self, x: Vector) -> bool:
        x = vec(x)
        return any(c.contains(x) for c in self.components)

    def is_cone_union(self) -> bool:
        return all(c.is_cone for c in self.components)

    # -- set algebra ---------------------------------------------------------

    def translate(self, v: Vector) -> "PolySet":
        v = vec(v)
        return PolySet(self.dim, [c.translate(v) for c in self.components])

    def intersect_poly(self, q: ConvexPolyhedron) -> "PolySet":
        return PolySet(self.dim, [c.intersect(q) for c in self.components])

    def intersect(self, other: "PolySet") -> "PolySet":
        return PolySet(
            self.dim,
            [a.intersect(b) for a, b in itertools.product(self.components, other.components)],
        )

    def product(self, other: "PolySet") -> "PolySet":
        return PolySet(
            self.dim + other.dim,
            [a.product(b) for a, b in itertools.product(self.components, other.components)],
        )

    def linear_image(self, m: Matrix) -> "PolySet":
        m = mat(m)
        return PolySet(len(m), [linear_image(c, m) for c in self.components])

    def substitute(self, fixed: dict) -> "PolySet":
        fixed = {i: frac(v) for i, v in fixed.items()}
        return PolySet(self.dim - len(fixed), [c.substitute(fixed) for c in self.components])

    def union(self, other: "PolySet") -> "PolySet":
        return PolySet(self.dim, self.components + other.components)

    def includes(self, other: "PolySet") -> bool:
        """Exact decision of ``other`` being a subset of this union."""
        return self.non_inclusion_witness(other) is None

    def non_inclusion_witness(self, other: "PolySet") -> Optional[Vector]:
        """A rational point of ``other`` outside this union, or None."""
        for comp in other.components:
            if any(convex_includes(mine, comp) for mine in self.components):
                continue
            w = _uncovered_witness(
                comp.ineqs, comp.eqs, (), list(self.components), comp.dim
            )
            if w is not None:
                return w
        return None

    def set_eq(self, other: "PolySet") -> bool:
        return self.includes(other) and other.includes(self)


ConeUnion = PolySet  # a PolySet whose components are all cones


def convex_includes(p: ConvexPolyhedron, q: ConvexPolyhedron) -> bool:
    """Exact test ``q`` subset of ``p`` for convex polyhedra (via generators)."""
    if q.is_empty:
        return True
    if p.is_empty:
        return False
    return (
        all(p.contains(v) for v in q.vertices)
        and all(p.recession_contains(r) for r in q.rays)
        and all(p.recession_contains(l) and p.recession_contains(neg(l)) for l in q.lineality)
    )


def _uncovered_witness(ineqs, eqs, stricts, covers: list[ConvexPolyhedron], dim) -> Optional[Vector]:
    """Witness of the region minus the union of ``covers``, or None.

    The region minus a convex cover splits into per-row strict violations;
    recursion over the cover list keeps every branch a convex region with
    some strict rows, decidable exactly.
    """
    w = feasible_point(ineqs, eqs, stricts, dim=dim)
    if w is None:
        return None
    if not covers:
        return w
    q, rest = covers[0], covers[1:]
    branches: list[Row] = []
    for a, b in q.ineqs:
        branches.append((neg(a), -b))  # a @ x > b
    for c, e in q.eqs:
        branches.append((neg(c), -e))
        branches.append((c, e))  # c @ x < e
    for brow in branches:
        w = _uncovered_witness(ineqs, eqs, tuple(stricts) + (brow,), rest, dim)
        if w is not None:
            return w
    return None


# ---------------------------------------------------------------------------
# stratified enumeration
# ---------------------------------------------------------------------------


def _norm_hyperplane(a: Vector, b: Fraction) -> Row:
    joint = primitive(a + (b,))
    lead = next((c for c in joint if c != 0), ZERO)
    if lead < 0:
        joint = neg(joint)
    return joint[:-1], joint[-1]


def stratum_witnesses(
    sets: Sequence[ConvexPolyhedron], extra_hyperplanes: Sequence[Row] = ()
) -> list[Vector]:
    """Rational witnesses, one per sign cell of the row arrangement.

    The arrangement consists of every inequality/equality row of every set
    plus ``extra_hyperplanes``; cells are enumerated inside each set and
    deduplicated by their full sign signature, so any quantity that is
    constant on sign cells is faithfully sampled by the witnesses.
    """
    hyps: list[Row] = []
    seen = set()
    for s in sets:
        for a, b in s.ineqs + s.eqs:
            h = _norm_hyperplane(a, b)
            if h not in seen:
                seen.add(h)
                hyps.append(h)
    for a, b in extra_hyperplanes:
        h = _norm_hyperplane(vec(a), frac(b))
        if h not in seen:
            seen.add(h)
            hyps.append(h)
    witnesses: dict[tuple, Vector] = {}
    for s in sets:
        if s.is_empty:
            continue
        regions = [(s.ineqs, s.eqs, (), s.relint_point())]
        for a, b in hyps:
            nxt = []
            for ins, eqs, sts, w in regions:
                val = dot(a, w) - b
                children = (
                    (ins, eqs + ((a, b),), sts),
                    (ins, eqs, sts + ((a, b),)),
                    (ins, eqs, sts + ((neg(a), -b),)),
                )
                child_sign = 0 if val == 0 else (-1 if val < 0 else 1)
                for sign, child in zip((0, -1, 1), children):
                    if sign == child_sign:
                        nxt.append(child + (w,))
                        continue
                    cw = feasible_point(child[0], child[1], child[2], dim=s.dim)
                    if cw is not None:
                        nxt.append(child + (cw,))
            regions = nxt
        for _, _, _, w in regions:
            sig = tuple(_sign(dot(a, w) - b) for a, b in hyps)
            witnesses.setdefault(sig, w)
    return list(witnesses.values())


def _sign(x: Fraction) -> int:
    return 0 if x == 0 else (-1 if x < 0 else 1)


# ---------------------------------------------------------------------------
# tangent and normal cones
# ---------------------------------------------------------------------------


def convex_tangent_cone(p: ConvexPolyhedron, x: Vector) -> PolyCone:
    """Tangent cone of a convex polyhedron at one of its points."""
    x = vec(x)
    if not p.contains(x):
        raise PreconditionError("tangent cone base point outside the set")
    rows = [p.ineqs[i][0] for i in p.active_ineq_indices(x)]
    eqs = [c for c, _ in p.eqs]
    return PolyCone.from_ineqs(rows, eqs, dim=p.dim)


def convex_normal_cone(p: ConvexPolyhedron, x: Vector) -> PolyCone:
    """Normal cone (convex analysis sense) of a convex polyhedron at ``x``."""
    x = vec(x)
    if not p.contains(x):
        raise PreconditionError("normal cone base point outside the set")
    rows = [p.ineqs[i][0] for i in p.active_ineq_indices(x)]
    eqs = [c for c, _ in p.eqs]
    return PolyCone.from_rays(rows, eqs, dim=p.dim)


def tangent_cone(omega: PolySet, x: Vector) -> ConeUnion:
    """Bouligand tangent cone of a polyhedral union; empty union off the set."""
    x = vec(x)
    comps = [c for c in omega.components if c.contains(x)]
    return PolySet(omega.dim, [convex_tangent_cone(c, x) for c in comps])


def regular_normal_cone(omega: PolySet, x: Vector) -> PolyCone:
    """Polar of the tangent cone: the intersection of component polars."""
    x = vec(x)
    tc = tangent_cone(omega, x)
    if tc.is_empty_union:
        raise PreconditionError("regular normal cone requested off the set")
    rows: list[Vector] = []
    eqs: list[Vector] = []
    for c in tc.components:
        k = as_cone(c)
        rows.extend(k.rays)
        eqs.extend(k.lineality)
    return PolyCone.from_ineqs(rows, eqs, dim=omega.dim)


def _limiting_normal_of_cone_union(tc: ConeUnion) -> ConeUnion:
    """Union of regular normal cones achieved on the cells of a conic union."""
    if tc.is_empty_union:
        return tc
    if len(tc.components) == 1:
        return PolySet(tc.dim, [regular_normal_cone(tc, zeros(tc.dim))])
    cones: dict = {}
    for w in stratum_witnesses(tc.components):
        containing = [c for c in tc.components if c.contains(w)]
        if not containing:
            continue
        rows: list[Vector] = []
        eqs: list[Vector] = []
        for c in containing:
            k_polar = polar(convex_tangent_cone(c, w))
            rows.extend((a for a, _ in k_polar.ineqs))
            eqs.extend((a for a, _ in k_polar.eqs))
        # intersection of polars assembled directly from their H-reps
        nk = PolyCone.from_ineqs(rows, eqs, dim=tc.dim)
        cones[nk.key] = nk
    return PolySet(tc.dim, list(cones.values()))


def limiting_normal_cone(omega: PolySet, x: Vector) -> ConeUnion:
    """Limiting normal cone via local conicity and cell enumeration."""
    x = vec(x)
    tc = tangent_cone(omega, x)
    return _limiting_normal_of_cone_union(tc)


def directional_limiting_normal_cone(omega: PolySet, x: Vector, u: Vector) -> ConeUnion:
    """Limiting normals reachable along sequences from direction ``u``.

    Empty whenever ``u`` is not tangent; otherwise equals the limiting
    normal cone of the tangent cone at ``u`` (the local conic model).
    """
    x, u = vec(x), vec(u)
    tc = tangent_cone(omega, x)
    if not tc.contains(u):
        return PolySet.empty(omega.dim)
    tc_at_u = tangent_cone(tc, u)
    return _limiting_normal_of_cone_union(tc_at_u)


# ---------------------------------------------------------------------------
# critical cone and the local model of gph N_D
# ---------------------------------------------------------------------------


def critical_cone(d: ConvexPolyhedron, z: Vector, zstar: Vector) -> PolyCone:
    """``T_D(z)`` intersected with the orthogonal complement of ``zstar``."""
    z, zstar = vec(z), vec(zstar)
    if not d.contains(z):
        raise PreconditionError("base point outside the set")
    if not convex_normal_cone(d, z).contains(zstar):
        raise PreconditionError("reference normal not in the normal cone")
    tc = convex_tangent_cone(d, z)
    return as_cone(tc.with_rows(eqs=[(zstar, ZERO)]))


def normal_cone_graph(d: ConvexPolyhedron) -> PolySet:
    """The graph of ``z -> N_D(z)`` as a polyhedral union over faces of D."""
    comps = []
    for f in face_lattice(d):
        nf = convex_normal_cone(d, f.relint_point())
        comps.append(f.product(nf))
    return PolySet(2 * d.dim, comps)


def ncone_graph_local_model(
    d: ConvexPolyhedron, z: Vector, zstar: Vector
) -> tuple[PolySet, Fraction]:
    """Complementarity model of ``gph N_D`` near ``(z, zstar)`` plus a radius.

    Returns the union over faces F of the critical cone K of
    ``F x (polar(K) meet span(F)^perp)`` together with an exact rational
    ``rho`` such that the model equals ``gph N_D - (z, zstar)`` on the ball
    of radius ``rho``.
    """
    z, zstar = vec(z), vec(zstar)
    k = critical_cone(d, z, zstar)
    kp = polar(k)
    comps = []
    for f in face_lattice(k):
        fk = as_cone(f)
        span_rows = [(g, ZERO) for g in fk.span_basis()]
        wstar_cone = kp.with_rows(eqs=span_rows)
        comps.append(f.product(wstar_cone))
    model = PolySet(2 * d.dim, comps)
    rho = conicity_radius(normal_cone_graph(d), tuple(z) + tuple(zstar))
    return model, rho


def conicity_radius(omega: PolySet, x: Vector) -> Fraction:
    """Exact ``rho > 0`` with ``omega`` matching ``x + T_omega(x)`` on ``B(x, rho)``.

    Derived from the slacks of inactive rows of the components containing
    ``x`` (1-norm scaled, so the Euclidean ball is safe) and from Chebyshev
    distances to the components avoiding ``x``.
    """
    x = vec(x)
    if not omega.contains(x):
        raise PreconditionError("conicity radius requested off the set")
    rho = ONE
    for c in omega.components:
        if c.contains(x):
            for a, b in c.ineqs:
                slack = b - dot(a, x)
                if slack > 0:
                    rho = min(rho, slack / norm1(a))
        else:
            rho = min(rho, dist_inf_lower(c, x))
    return rho / 2


def minkowski_sum(p: PolySet, q: PolySet) -> PolySet:
    """Exact Minkowski sum of two polyhedral unions."""
    if p.dim != q.dim:
        raise RepresentationError("dimension mismatch in Minkowski sum")
    n = p.dim
    rows = [tuple(ONE if j == i else ZERO for j in range(n)) + tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]
    return p.product(q).linear_image(rows)


def translate_cone_union(cu: ConeUnion, v: Vector) -> PolySet:
    return cu.translate(vec(v))
