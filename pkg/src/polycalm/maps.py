"""Polyhedral set-valued maps and their generalized derivatives.

A ``PolyMap`` S from R^m into subsets of R^n is stored through its graph, a
polyhedral union in R^(m+n) with input coordinates first.  Graphical
derivatives are tangent cones of the graph; coderivatives are built from
the regular/limiting/directional limiting normal cones of the graph with
the sign convention ``(u*, -v*) in N_gph``.

``calmness_bound`` certifies one rational constant that works
simultaneously as a calmness constant and an inner-calmness* constant at
every point of the domain: each convex component is Lipschitz on its
domain with a Hoffman-type constant, obtained here by exhaustive
enumeration of linearly independent row subsets, and finite unions
preserve the two-sided property.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cones import (
    ConeUnion,
    PolySet,
    directional_limiting_normal_cone,
    limiting_normal_cone,
    regular_normal_cone,
    tangent_cone,
)
from .geometry import (
    ConvexPolyhedron,
    PolyCone,
    PreconditionError,
    RepresentationError,
    euclidean_project,
)
from .rational import (
    Matrix,
    ONE,
    Vector,
    ZERO,
    dot,
    frac,
    identity,
    mat,
    neg,
    norm_sq,
    rref,
    solve,
    sqrt_upper,
    unit,
    vec,
    zeros,
)

GRAPHICAL = "graphical-derivative"
REGULAR_CODERIVATIVE = "regular-coderivative"
LIMITING_CODERIVATIVE = "limiting-coderivative"
DIRECTIONAL_CODERIVATIVE = "directional-limiting-coderivative"


class PolyMap:
    """Set-valued map with polyhedral graph; osc by construction."""

    __slots__ = ("graph", "dim_in", "dim_out")

    def __init__(self, graph: PolySet, dim_in: int, dim_out: int):
        if graph.dim != dim_in + dim_out:
            raise RepresentationError("graph dimension != dim_in + dim_out")
        self.graph = graph
        self.dim_in = dim_in
        self.dim_out = dim_out

    @staticmethod
    def from_components(components: Sequence[ConvexPolyhedron], dim_in: int, dim_out: int) -> "PolyMap":
        return PolyMap(PolySet(dim_in + dim_out, components), dim_in, dim_out)

    @staticmethod
    def identity(n: int) -> "PolyMap":
        rows = []
        for i in range(n):
            a = [ZERO] * (2 * n)
            a[i] = ONE
            a[n + i] = -ONE
            rows.append((tuple(a), ZERO))
        g = ConvexPolyhedron.from_hrep([], rows, dim=2 * n)
        return PolyMap(PolySet(2 * n, [g]), n, n)

    @staticmethod
    def from_matrix(m: Matrix, offset: Optional[Vector] = None) -> "PolyMap":
        """Single-valued affine map ``y -> m @ y + offset`` as a PolyMap."""
        m = mat(m)
        n_out = len(m)
        n_in = len(m[0]) if m else 0
        c = vec(offset) if offset is not None else zeros(n_out)
        eqs = []
        for i in range(n_out):
            a = list(m[i]) + [ZERO] * n_out
            a[n_in + i] = -ONE
            eqs.append((tuple(a), -c[i]))
        g = ConvexPolyhedron.from_hrep([], eqs, dim=n_in + n_out)
        return PolyMap(PolySet(n_in + n_out, [g]), n_in, n_out)

    def value(self, y: Vector) -> PolySet:
        y = vec(y)
        if len(y) != self.dim_in:
            raise RepresentationError("argument dimension mismatch")
        return self.graph.substitute({i: y[i] for i in range(self.dim_in)})

    def domain(self) -> PolySet:
        proj = tuple(unit(self.dim_in + self.dim_out, i) for i in range(self.dim_in))
        return self.graph.linear_image(proj)

    def inverse(self) -> "PolyMap":
        perm = tuple(
            unit(self.dim_in + self.dim_out, (i + self.dim_in) % (self.dim_in + self.dim_out))
            for i in range(self.dim_in + self.dim_out)
        )
        return PolyMap(self.graph.linear_image(perm), self.dim_out, self.dim_in)

    def graph_contains(self, y: Vector, x: Vector) -> bool:
        return self.graph.contains(tuple(vec(y)) + tuple(vec(x)))

    def __repr__(self):
        return f"PolyMap({self.dim_in} -> {self.dim_out}, components={len(self.graph.components)})"


@dataclass(frozen=True)
class DerivativeObject:
    """A derivative of a set-valued map at a graph point, with an evaluator."""

    kind: str
    base_in: Vector
    base_out: Vector
    dim_in: int
    dim_out: int
    value: ConeUnion
    direction: Optional[tuple[Vector, Vector]] = None

    def __call__(self, w: Vector) -> PolySet:
        w = vec(w)
        if self.kind == GRAPHICAL:
            if len(w) != self.dim_in:
                raise RepresentationError("direction dimension mismatch")
            return self.value.substitute({i: w[i] for i in range(self.dim_in)})
        if len(w) != self.dim_out:
            raise RepresentationError("covector dimension mismatch")
        fixed = {self.dim_in + j: -w[j] for j in range(self.dim_out)}
        return self.value.substitute(fixed)


def graphical_derivative(s: PolyMap, y: Vector, x: Vector) -> DerivativeObject:
    """Tangent cone of the graph, exposed as the map ``u -> {v : (u,v) tangent}``."""
    y, x = vec(y), vec(x)
    if not s.graph_contains(y, x):
        raise PreconditionError("base point not on the graph")
    t = tangent_cone(s.graph, tuple(y) + tuple(x))
    return DerivativeObject(GRAPHICAL, y, x, s.dim_in, s.dim_out, t)


def coderivative(
    s: PolyMap, y: Vector, x: Vector, kind: str = LIMITING_CODERIVATIVE,
    direction: Optional[tuple[Vector, Vector]] = None,
) -> DerivativeObject:
    """Regular, limiting or directional limiting coderivative at a graph point."""
    y, x = vec(y), vec(x)
    if not s.graph_contains(y, x):
        raise PreconditionError("base point not on the graph")
    pt = tuple(y) + tuple(x)
    if kind == REGULAR_CODERIVATIVE:
        n = regular_normal_cone(s.graph, pt)
        value = PolySet(s.graph.dim, [n])
        dir_pair = None
    elif kind == LIMITING_CODERIVATIVE:
        value = limiting_normal_cone(s.graph, pt)
        dir_pair = None
    elif kind == DIRECTIONAL_CODERIVATIVE:
        if direction is None:
            raise PreconditionError("directional coderivative needs a direction pair")
        du, dv = vec(direction[0]), vec(direction[1])
        value = directional_limiting_normal_cone(s.graph, pt, tuple(du) + tuple(dv))
        dir_pair = (du, dv)
    else:
        raise RepresentationError(f"unknown coderivative kind {kind!r}")
    return DerivativeObject(kind, y, x, s.dim_in, s.dim_out, value, dir_pair)


# ---------------------------------------------------------------------------
# two-sided calmness certificate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentCertificate:
    kappa: Fraction
    witness_rows: tuple[int, ...]


@dataclass(frozen=True)
class CalmnessCertificate:
    """One rational constant valid for calmness and inner calmness* alike."""

    kappa: Fraction
    per_component: tuple[ComponentCertificate, ...]


def calmness_bound(s: PolyMap, ybar: Vector) -> CalmnessCertificate:
    """Certified two-sided calmness constant of a polyhedral map at ``ybar``.

    For each convex component with rows ``a_y @ y + a_x @ x <= b`` the
    Lipschitz-on-domain constant is bounded by
    ``max_J ||pinv(B_J)|| * ||A_J||`` over row subsets J whose x-parts are
    linearly independent (B = x-part block, A = y-part block); spectral
    norms are upper-bounded by exact rational Frobenius bounds.
    """
    ybar = vec(ybar)
    if not s.domain().contains(ybar):
        raise PreconditionError("reference point outside the domain")
    per = []
    for comp in s.graph.components:
        per.append(_component_lipschitz_bound(comp, s.dim_in, s.dim_out))
    kappa = max((c.kappa for c in per), default=ZERO)
    return CalmnessCertificate(kappa, tuple(per))


def _component_lipschitz_bound(comp: ConvexPolyhedron, m: int, n: int) -> ComponentCertificate:
    rows = list(comp.ineqs) + list(comp.eqs)
    a_parts = [r[0][:m] for r in rows]
    b_parts = [r[0][m:] for r in rows]
    best = ZERO
    best_subset: tuple[int, ...] = ()
    idx = range(len(rows))
    for size in range(1, min(len(rows), n) + 1):
        for subset in itertools.combinations(idx, size):
            bmat = tuple(b_parts[j] for j in subset)
            red, _ = rref(bmat)
            if len(red) != size:
                continue
            gram = tuple(tuple(dot(r1, r2) for r2 in bmat) for r1 in bmat)
            ginv = _invert(gram)
            pinv = tuple(
                tuple(sum((ginv[i][k] * bmat[k][j] for k in range(size)), ZERO) for j in range(n))
                for i in range(size)
            )
            pinv_norm = sqrt_upper(sum((norm_sq(r) for r in pinv), ZERO))
            a_norm = sqrt_upper(sum((norm_sq(a_parts[j]) for j in subset), ZERO))
            kappa = pinv_norm * a_norm
            if kappa > best:
                best = kappa
                best_subset = subset
    return ComponentCertificate(best, best_subset)


def _invert(m: Matrix) -> Matrix:
    size = len(m)
    aug = tuple(m[i] + unit(size, i) for i in range(size))
    red, pivots = rref(aug)
    if pivots != tuple(range(size)):
        raise ValueError("matrix not invertible")
    return tuple(r[size:] for r in red)


@dataclass(frozen=True)
class InnerCalmnessSelection:
    """Constructive witnesses for the inner-calmness* estimate."""

    component_index: int
    xbar: Vector
    selections: tuple[Optional[Vector], ...]  # one per queried y (None = skipped)


def inner_calmness_star_selection(
    s: PolyMap, ybar: Vector, ys: Sequence[Vector]
) -> InnerCalmnessSelection:
    """Pick a component, an anchor ``xbar`` and per-point selections.

    The chosen component is one whose domain contains ``ybar`` and the most
    query points; the anchor is the closest point of its value at ``ybar``
    to a selection at the nearest query point, and each selection is the
    exact Euclidean projection of the anchor onto the value.
    """
    ybar = vec(ybar)
    ys = [vec(y) for y in ys]
    comps = s.graph.components
    dom_hits: list[list[int]] = []
    for comp in comps:
        cmap = PolyMap(PolySet(s.graph.dim, [comp]), s.dim_in, s.dim_out)
        dom = cmap.domain()
        if not dom.contains(ybar):
            dom_hits.append([])
            continue
        dom_hits.append([k for k, y in enumerate(ys) if dom.contains(y)])
    best_i = max(range(len(comps)), key=lambda i: len(dom_hits[i]))
    if not dom_hits[best_i]:
        raise PreconditionError("no component domain contains the reference point and a query")
    cmap = PolyMap(PolySet(s.graph.dim, [comps[best_i]]), s.dim_in, s.dim_out)
    hits = dom_hits[best_i]
    nearest = min(hits, key=lambda k: norm_sq(tuple(a - b for a, b in zip(ys[k], ybar))))
    v_near = cmap.value(ys[nearest]).components[0]
    probe = v_near.vertices[0]
    vbar = cmap.value(ybar).components[0]
    xbar, _ = euclidean_project(vbar, probe)
    selections: list[Optional[Vector]] = []
    for k, y in enumerate(ys):
        if k not in hits:
            selections.append(None)
            continue
        vy = cmap.value(y).components[0]
        xk, _ = euclidean_project(vy, xbar)
        selections.append(xk)
    return InnerCalmnessSelection(best_i, xbar, tuple(selections))
