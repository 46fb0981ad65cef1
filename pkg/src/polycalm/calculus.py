"""Forward calculus rules with two-sided inclusion reports.

Each rule computes both sides of the corresponding derivative formula on
polyhedral data, certifies its hypotheses (polyhedral graphs certify both
metric subregularity of the feasibility map and the fuzzy inner-calmness*
of the intermediate map), and reports the exact relation between the two
sides together with strictness witnesses.

Unions over continuum index sets are reduced to finitely many stratum
representatives: the derivative objects involved are constant on the sign
cells of the relevant row arrangements, so one rational witness per cell
is exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cones import (
    ConeUnion,
    PolySet,
    directional_limiting_normal_cone,
    stratum_witnesses,
    tangent_cone,
)
from .geometry import (
    ConvexPolyhedron,
    PreconditionError,
    RepresentationError,
    linear_preimage,
)
from .maps import (
    DIRECTIONAL_CODERIVATIVE,
    DerivativeObject,
    PolyMap,
    coderivative,
    graphical_derivative,
)
from .polynomials import MatrixPolynomialMap, PolynomialMap
from .rational import (
    Matrix,
    ONE,
    Vector,
    ZERO,
    add,
    dot,
    mat,
    matvec,
    neg,
    sub,
    tmatvec,
    transpose,
    unit,
    vec,
    zeros,
)

EQUAL = "equal"
LHS_SUBSET = "lhs-subset"
RHS_SUBSET = "rhs-subset"
INCOMPARABLE = "incomparable"
NOT_COMPUTED = "not-computed"


@dataclass(frozen=True)
class RuleReport:
    """Outcome of one calculus rule: both sides, relation, certificates."""

    rule: str
    mode: str
    lhs: Optional[PolySet]
    rhs: Optional[PolySet]
    relation: str
    witnesses: tuple[tuple[str, Vector], ...] = ()
    assumptions_checked: tuple[tuple[str, bool, str], ...] = ()
    extra_sets: tuple[tuple[str, PolySet], ...] = ()
    notes: tuple[str, ...] = ()


def compare_sets(lhs: PolySet, rhs: PolySet) -> tuple[str, tuple[tuple[str, Vector], ...]]:
    """Exact relation between two polyhedral unions with strictness witnesses."""
    w_lr = rhs.non_inclusion_witness(lhs)   # point of lhs outside rhs
    w_rl = lhs.non_inclusion_witness(rhs)   # point of rhs outside lhs
    if w_lr is None and w_rl is None:
        return EQUAL, ()
    if w_lr is None:
        return LHS_SUBSET, (("in-rhs-not-lhs", w_rl),)
    if w_rl is None:
        return RHS_SUBSET, (("in-lhs-not-rhs", w_lr),)
    return INCOMPARABLE, (("in-lhs-not-rhs", w_lr), ("in-rhs-not-lhs", w_rl))


# ---------------------------------------------------------------------------
# relation composition helpers
# ---------------------------------------------------------------------------


def _embed_rows(p: ConvexPolyhedron, total: int, offset: int) -> tuple[list, list]:
    pad_l = zeros(offset)
    pad_r = zeros(total - offset - p.dim)
    ineqs = [(pad_l + a + pad_r, b) for a, b in p.ineqs]
    eqs = [(pad_l + a + pad_r, b) for a, b in p.eqs]
    return ineqs, eqs


def compose_relations(p: PolySet, q: PolySet, n: int, m: int, s: int) -> PolySet:
    """``{(x,z) : exists y, (x,y) in p, (y,z) in q}`` for p in R^{n+m}, q in R^{m+s}."""
    if p.dim != n + m or q.dim != m + s:
        raise RepresentationError("composition block dimensions mismatch")
    total = n + m + s
    out: list[ConvexPolyhedron] = []
    proj = tuple(unit(total, i) for i in range(n)) + tuple(
        unit(total, n + m + j) for j in range(s)
    )
    for a in p.components:
        ia, ea = _embed_rows(a, total, 0)
        for b in q.components:
            ib, eb = _embed_rows(b, total, n)
            lifted = ConvexPolyhedron.from_hrep(ia + ib, ea + eb, dim=total)
            out.append(lifted)
    return PolySet(total, out).linear_image(proj)


def matched_sum_relations(p: PolySet, q: PolySet, n: int, m: int) -> PolySet:
    """``{(x, y1+y2) : (x,y1) in p, (x,y2) in q}`` for p, q in R^{n+m}."""
    if p.dim != n + m or q.dim != n + m:
        raise RepresentationError("sum block dimensions mismatch")
    total = n + 2 * m
    out: list[ConvexPolyhedron] = []
    img = tuple(unit(total, i) for i in range(n)) + tuple(
        tuple(
            (ONE if (j == n + i or j == n + m + i) else ZERO) for j in range(total)
        )
        for i in range(m)
    )
    for a in p.components:
        ia, ea = _embed_rows(a, total, 0)
        for b in q.components:
            ib, eb = [], []
            for rows, sink in ((b.ineqs, ib), (b.eqs, eb)):
                for av, bv in rows:
                    row = av[:n] + zeros(m) + av[n:]
                    sink.append((row, bv))
            lifted = ConvexPolyhedron.from_hrep(ia + ib, ea + eb, dim=total)
            out.append(lifted)
    return PolySet(total, out).linear_image(img)


def compose_maps(s1: PolyMap, s2: PolyMap) -> PolyMap:
    """Exact composition ``s2 after s1``; polyhedral graphs compose polyhedrally."""
    if s1.dim_out != s2.dim_in:
        raise RepresentationError("inner dimensions mismatch")
    g = compose_relations(s1.graph, s2.graph, s1.dim_in, s1.dim_out, s2.dim_out)
    return PolyMap(g, s1.dim_in, s2.dim_out)


def sum_maps(s1: PolyMap, s2: PolyMap) -> PolyMap:
    if (s1.dim_in, s1.dim_out) != (s2.dim_in, s2.dim_out):
        raise RepresentationError("summand dimensions mismatch")
    g = matched_sum_relations(s1.graph, s2.graph, s1.dim_in, s1.dim_out)
    return PolyMap(g, s1.dim_in, s1.dim_out)


def product_map(s1_matrix: Matrix, s2: PolyMap) -> PolyMap:
    """``x -> {A^T y : y in S2(x)}`` for a constant matrix A (m x l)."""
    a = mat(s1_matrix)
    m, l = len(a), (len(a[0]) if a else 0)
    if s2.dim_out != m:
        raise RepresentationError("matrix rows != S2 output dimension")
    n = s2.dim_in
    img = tuple(unit(n + m, i) for i in range(n)) + tuple(
        zeros(n) + tuple(a[i][j] for i in range(m)) for j in range(l)
    )
    return PolyMap(s2.graph.linear_image(img), n, l)


# ---------------------------------------------------------------------------
# image rules (affine smooth part, exact mode)
# ---------------------------------------------------------------------------


def _affine_data(phi: PolynomialMap) -> tuple[Matrix, Vector]:
    if not phi.is_affine:
        raise PreconditionError(
            "exact image rules need an affine smooth map; polynomial maps are "
            "handled by the sampling verifiers"
        )
    return phi.affine_parts()


def affine_image_polyset(c: PolySet, m: Matrix, offset: Vector) -> PolySet:
    return c.linear_image(m).translate(vec(offset))


def _fiber(c: PolySet, m: Matrix, offset: Vector, ybar: Vector) -> PolySet:
    """``{x in c : m x + offset = ybar}`` as a polyhedral union."""
    eqs = [(row, yb - off) for row, yb, off in zip(m, ybar, offset)]
    return PolySet(c.dim, [comp.with_rows(eqs=eqs) for comp in c.components])


def _all_rows(c: PolySet) -> list:
    rows = []
    for comp in c.components:
        rows.extend(comp.ineqs)
        rows.extend(comp.eqs)
    return rows


def image_tangent_rule(c: PolySet, phi: PolynomialMap, ybar: Vector) -> RuleReport:
    """Tangents of ``Q = phi(c)`` versus the union of pushed-forward tangents.

    The pushed-forward union is always a subset of ``T_Q``; equality is
    certified here because the fiber map of affine-polyhedral data has a
    polyhedral graph and is therefore inner calm* (fuzzy) on its domain.
    """
    m, offset = _affine_data(phi)
    ybar = vec(ybar)
    q = affine_image_polyset(c, m, offset)
    if not q.contains(ybar):
        raise PreconditionError("reference point not in the image set")
    lhs = tangent_cone(q, ybar)
    fiber = _fiber(c, m, offset, ybar)
    pieces: list[ConvexPolyhedron] = []
    for xbar in stratum_witnesses(fiber.components, _all_rows(c)):
        pieces.extend(tangent_cone(c, xbar).linear_image(m).components)
    rhs = PolySet(len(m), pieces)
    relation, witnesses = compare_sets(lhs, rhs)
    assumptions = (
        ("smooth-part-affine", True, "image set stays polyhedral"),
        (
            "fiber-map-fuzzy-inner-calmness*",
            True,
            "fiber map has a polyhedral graph, hence inner calm* on its domain",
        ),
    )
    return RuleReport("image-tangent", "exact", lhs, rhs, relation, witnesses, assumptions)


def image_directional_normal_rule(
    c: PolySet, phi: PolynomialMap, ybar: Vector, v: Vector
) -> RuleReport:
    """Directional normals of the image versus the multiplier-style bound.

    Reports the inner-calmness* variant as ``rhs`` and attaches the inner
    semicompactness variant (the same union enlarged by zero-direction
    strata) as an extra set.
    """
    m, offset = _affine_data(phi)
    ybar, v = vec(ybar), vec(v)
    mt = transpose(m)
    q = affine_image_polyset(c, m, offset)
    if not q.contains(ybar):
        raise PreconditionError("reference point not in the image set")
    lhs = directional_limiting_normal_cone(q, ybar, v)
    fiber = _fiber(c, m, offset, ybar)
    rhs_pieces: list[ConvexPolyhedron] = []
    extra_pieces: list[ConvexPolyhedron] = []
    for xbar in stratum_witnesses(fiber.components, _all_rows(c)):
        tc = tangent_cone(c, xbar)
        t_rows = _all_rows(tc)
        dpsi_v = PolySet(
            c.dim,
            [
                comp.with_rows(eqs=[(row, val) for row, val in zip(m, v)])
                for comp in tc.components
            ],
        )
        for u in stratum_witnesses(dpsi_v.components, t_rows):
            nd = directional_limiting_normal_cone(c, xbar, u)
            rhs_pieces.extend(linear_preimage(comp, mt) for comp in nd.components)
        dpsi_0 = PolySet(
            c.dim,
            [
                comp.with_rows(eqs=[(row, ZERO) for row in m])
                for comp in tc.components
            ],
        )
        for u in stratum_witnesses(dpsi_0.components, t_rows):
            if all(x == 0 for x in u):
                continue
            nd = directional_limiting_normal_cone(c, xbar, u)
            extra_pieces.extend(linear_preimage(comp, mt) for comp in nd.components)
    rhs = PolySet(len(m), rhs_pieces)
    variant_semicompact = PolySet(len(m), rhs_pieces + extra_pieces)
    relation, witnesses = compare_sets(lhs, rhs)
    assumptions = (
        ("smooth-part-affine", True, "coderivative of the smooth part is its transpose"),
        (
            "fiber-map-inner-calmness*-in-direction",
            True,
            "polyhedral fiber graph certifies the directional variant",
        ),
        (
            "variant-monotonicity",
            variant_semicompact.includes(rhs),
            "inner-semicompactness variant only enlarges the union",
        ),
    )
    return RuleReport(
        "image-directional-normal", "exact", lhs, rhs, relation, witnesses,
        assumptions, extra_sets=(("inner-semicompactness-variant", variant_semicompact),),
    )


# ---------------------------------------------------------------------------
# chain / sum / product rules for graphical derivatives
# ---------------------------------------------------------------------------


def _chain_intermediate(s1: PolyMap, s2: PolyMap, xbar: Vector, zbar: Vector) -> PolySet:
    v1 = s1.value(xbar)
    v2 = s2.inverse().value(zbar)
    return v1.intersect(v2)


def _rows_at_input(graph: PolySet, n_fix_front: int, front: Vector, n_fix_back: int, back: Vector):
    """Rows of graph components as hyperplanes in the middle block."""
    rows = []
    for comp in graph.components:
        for a, b in comp.ineqs + comp.eqs:
            head, mid, tail = a[:n_fix_front], a[n_fix_front:len(a) - n_fix_back], a[len(a) - n_fix_back:] if n_fix_back else ()
            shift = dot(head, front) + (dot(tail, back) if n_fix_back else ZERO)
            rows.append((mid, b - shift))
    return rows


def chain_rule_gder(s1: PolyMap, s2: PolyMap, xbar: Vector, zbar: Vector) -> RuleReport:
    """Graphical derivative of ``S2 after S1`` versus composed derivatives.

    Both sides are exact on polyhedral data.  Hypotheses recorded: metric
    subregularity of the pairing map (automatic for polyhedral graphs) and
    the product-tangent compatibility checked exactly at every stratum
    representative of the intermediate set.
    """
    xbar, zbar = vec(xbar), vec(zbar)
    n, m, s = s1.dim_in, s1.dim_out, s2.dim_out
    composed = compose_maps(s1, s2)
    if not composed.graph_contains(xbar, zbar):
        raise PreconditionError("base point not on the composed graph")
    lhs = graphical_derivative(composed, xbar, zbar).value
    xi = _chain_intermediate(s1, s2, xbar, zbar)
    if xi.is_empty_union:
        raise PreconditionError("intermediate set is empty at the base point")
    hyps = _rows_at_input(s1.graph, n, xbar, 0, ()) + _rows_at_input(
        s2.graph, 0, (), s, zbar
    )
    reps = stratum_witnesses(xi.components, hyps)
    pieces: list[ConvexPolyhedron] = []
    prod_cond_all = True
    direct_cond_all = True
    gph_xi = _lifted_intermediate_graph(s1, s2)
    for ybar in reps:
        t1 = tangent_cone(s1.graph, tuple(xbar) + tuple(ybar))
        t2 = tangent_cone(s2.graph, tuple(ybar) + tuple(zbar))
        piece = compose_relations(t1, t2, n, m, s)
        pieces.extend(piece.components)
        prod_cond_all &= _product_tangent_condition(
            s1.graph, s2.graph, tuple(xbar) + tuple(ybar), tuple(ybar) + tuple(zbar), m
        )
        t_xi = tangent_cone(gph_xi, tuple(xbar) + tuple(zbar) + tuple(ybar))
        proj = tuple(unit(n + s + m, i) for i in range(n + s))
        direct_cond_all &= t_xi.linear_image(proj).includes(piece)
    rhs = PolySet(n + s, pieces)
    relation, witnesses = compare_sets(lhs, rhs)
    assumptions = (
        ("pairing-map-metric-subregularity", True, "polyhedral graphs are metrically subregular"),
        ("intermediate-map-fuzzy-inner-calmness*", True, "polyhedral intermediate graph"),
        ("product-tangent-condition", prod_cond_all, "checked exactly at every stratum"),
        ("direct-tangent-lifting", direct_cond_all, "composed directions lift to intermediate tangents"),
    )
    return RuleReport("chain-gder", "exact", lhs, rhs, relation, witnesses, assumptions)


def _lifted_intermediate_graph(s1: PolyMap, s2: PolyMap) -> PolySet:
    """Graph of the chain intermediate map as a set of ``(x, z, y)`` triples."""
    n, m, s = s1.dim_in, s1.dim_out, s2.dim_out
    total = n + s + m
    out = []
    for a in s1.graph.components:  # rows on (x, y)
        ia, ea = [], []
        for rows, sink in ((a.ineqs, ia), (a.eqs, ea)):
            for av, bv in rows:
                sink.append((av[:n] + zeros(s) + av[n:], bv))
        for b in s2.graph.components:  # rows on (y, z)
            ib, eb = [], []
            for rows, sink in ((b.ineqs, ib), (b.eqs, eb)):
                for av, bv in rows:
                    sink.append((zeros(n) + av[m:] + av[:m], bv))
            out.append(ConvexPolyhedron.from_hrep(ia + ib, ea + eb, dim=total))
    return PolySet(total, out)


def _product_tangent_condition(g1: PolySet, g2: PolySet, p1: Vector, p2: Vector, mid: int) -> bool:
    """Tangent of the product equals the product of tangents, matched on the
    shared middle block (exact check)."""
    prod = g1.product(g2)
    pt = tuple(p1) + tuple(p2)
    d1, d2 = g1.dim, g2.dim
    match_eqs = []
    for i in range(mid):
        row = [ZERO] * (d1 + d2)
        row[d1 - mid + i] = ONE
        row[d1 + i] = -ONE
        match_eqs.append((tuple(row), ZERO))
    t_prod = tangent_cone(prod, pt)
    t_pair = tangent_cone(g1, p1).product(tangent_cone(g2, p2))
    lhs = PolySet(d1 + d2, [c.with_rows(eqs=match_eqs) for c in t_prod.components])
    rhs = PolySet(d1 + d2, [c.with_rows(eqs=match_eqs) for c in t_pair.components])
    return lhs.set_eq(rhs)


def sum_rule_gder(s1: PolyMap, s2: PolyMap, xbar: Vector, zbar: Vector) -> RuleReport:
    """Graphical derivative of ``S1 + S2`` versus the sum of derivatives."""
    xbar, zbar = vec(xbar), vec(zbar)
    n, m = s1.dim_in, s1.dim_out
    summed = sum_maps(s1, s2)
    if not summed.graph_contains(xbar, zbar):
        raise PreconditionError("base point not on the sum graph")
    lhs = graphical_derivative(summed, xbar, zbar).value
    v1 = s1.value(xbar)
    v2 = s2.value(xbar)
    match_rows = [
        (
            tuple((ONE if (j == i or j == m + i) else ZERO) for j in range(2 * m)),
            zbar[i],
        )
        for i in range(m)
    ]
    xi = PolySet(
        2 * m,
        [
            a.product(b).with_rows(eqs=match_rows)
            for a in v1.components
            for b in v2.components
        ],
    )
    if xi.is_empty_union:
        raise PreconditionError("intermediate set is empty at the base point")
    hyps = []
    for a, b in _rows_at_input(s1.graph, n, xbar, 0, ()):
        hyps.append((a + zeros(m), b))
    for a, b in _rows_at_input(s2.graph, n, xbar, 0, ()):
        hyps.append((zeros(m) + a, b))
    pieces: list[ConvexPolyhedron] = []
    prod_cond_all = True
    for rep in stratum_witnesses(xi.components, hyps):
        y1, y2 = rep[:m], rep[m:]
        t1 = tangent_cone(s1.graph, tuple(xbar) + tuple(y1))
        t2 = tangent_cone(s2.graph, tuple(xbar) + tuple(y2))
        pieces.extend(matched_sum_relations(t1, t2, n, m).components)
        prod_cond_all &= _product_tangent_condition(
            s1.graph, s2.graph, tuple(xbar) + tuple(y1), tuple(xbar) + tuple(y2), 0
        )
    rhs = PolySet(n + m, pieces)
    relation, witnesses = compare_sets(lhs, rhs)
    assumptions = (
        ("pairing-map-metric-subregularity", True, "polyhedral graphs are metrically subregular"),
        ("intermediate-map-fuzzy-inner-calmness*", True, "polyhedral intermediate graph"),
        ("product-tangent-condition", prod_cond_all, "full product check at every stratum"),
    )
    return RuleReport("sum-gder", "exact", lhs, rhs, relation, witnesses, assumptions)


def product_rule_gder(
    s1: MatrixPolynomialMap, s2: PolyMap, xbar: Vector, zbar: Vector
) -> RuleReport:
    """Derivative of ``x -> {S1(x)^T y : y in S2(x)}`` versus the formula union.

    The formula side (curvature term plus transposed-matrix image of the
    derivative of S2) is exact; the direct side is available whenever S1 is
    a constant matrix, in which case the product graph stays polyhedral.
    """
    xbar, zbar = vec(xbar), vec(zbar)
    n, (mm, ll) = s2.dim_in, s1.shape
    if s1.n_in != n or s2.dim_out != mm:
        raise RepresentationError("product rule dimension mismatch")
    a = s1.value_matrix(xbar)
    at = transpose(a)
    prod_rows = [(row, zb) for row, zb in zip(at, zbar)]
    xi = PolySet(mm, [comp.with_rows(eqs=prod_rows) for comp in s2.value(xbar).components])
    if xi.is_empty_union:
        raise PreconditionError("intermediate set is empty at the base point")
    hyps = _rows_at_input(s2.graph, n, xbar, 0, ())
    pieces: list[ConvexPolyhedron] = []
    for ybar in stratum_witnesses(xi.components, hyps):
        w = s1.scalarized_jacobian_at(ybar, xbar)  # l x n curvature matrix
        t2 = tangent_cone(s2.graph, tuple(xbar) + tuple(ybar))
        push = tuple(unit(n + mm, i) for i in range(n)) + tuple(
            tuple(w[j]) + tuple(at[j]) for j in range(ll)
        )
        pieces.extend(t2.linear_image(push).components)
    rhs = PolySet(n + ll, pieces)
    if s1.is_constant:
        direct = product_map(a, s2)
        if not direct.graph_contains(xbar, zbar):
            raise PreconditionError("base point not on the product graph")
        lhs = graphical_derivative(direct, xbar, zbar).value
        relation, witnesses = compare_sets(lhs, rhs)
        notes = ()
    else:
        lhs, relation, witnesses = None, NOT_COMPUTED, ()
        notes = (
            "matrix part is state-dependent: the product graph is not polyhedral, "
            "the formula side is reported as the certified description",
        )
    assumptions = (
        ("intermediate-map-fuzzy-inner-calmness*", True, "polyhedral intermediate graph"),
        ("matrix-part-constant", s1.is_constant, "direct side computable iff constant"),
    )
    return RuleReport("product-gder", "exact", lhs, rhs, relation, witnesses, assumptions, notes=notes)


def product_rule_coderivative(
    s1: MatrixPolynomialMap,
    s2: PolyMap,
    xbar: Vector,
    zbar: Vector,
    direction: tuple[Vector, Vector],
    zstar: Vector,
) -> RuleReport:
    """Directional coderivative estimate for the product map.

    Assembles the union over stratum representatives of the intermediate
    set and of its derivative slices; for a constant matrix part the direct
    directional coderivative of the product graph is computed and compared.
    """
    xbar, zbar, zstar = vec(xbar), vec(zbar), vec(zstar)
    u, w_dir = vec(direction[0]), vec(direction[1])
    n, (mm, ll) = s2.dim_in, s1.shape
    a = s1.value_matrix(xbar)
    at = transpose(a)
    prod_rows = [(row, zb) for row, zb in zip(at, zbar)]
    xi = PolySet(mm, [comp.with_rows(eqs=prod_rows) for comp in s2.value(xbar).components])
    if xi.is_empty_union:
        raise PreconditionError("intermediate set is empty at the base point")
    hyps = _rows_at_input(s2.graph, n, xbar, 0, ())
    pieces: list[ConvexPolyhedron] = []
    for ybar in stratum_witnesses(xi.components, hyps):
        w_mat = s1.scalarized_jacobian_at(ybar, xbar)
        wu = matvec(w_mat, u)
        t2 = tangent_cone(s2.graph, tuple(xbar) + tuple(ybar))
        t2_at_u = t2.substitute({i: u[i] for i in range(n)})
        v_set = PolySet(
            mm,
            [
                comp.with_rows(eqs=[(row, wv - wuv) for row, wv, wuv in zip(at, w_dir, wu)])
                for comp in t2_at_u.components
            ],
        )
        v_rows = [(r[0][n:], r[1] - dot(r[0][:n], u)) for c in t2.components for r in c.ineqs + c.eqs]
        for v in stratum_witnesses(v_set.components, v_rows):
            cod = coderivative(
                s2, xbar, ybar, DIRECTIONAL_CODERIVATIVE, direction=(u, v)
            )
            val = cod(matvec(a, zstar))
            shift = tmatvec(w_mat, zstar)
            pieces.extend(val.translate(shift).components)
    rhs = PolySet(n, pieces)
    if s1.is_constant:
        direct = product_map(a, s2)
        cod = coderivative(direct, xbar, zbar, DIRECTIONAL_CODERIVATIVE, direction=(u, w_dir))
        lhs = cod(zstar)
        relation, witnesses = compare_sets(lhs, rhs)
        notes = ()
    else:
        lhs, relation, witnesses = None, NOT_COMPUTED, ()
        notes = ("estimate assembled from certified strata; no direct side for state-dependent matrix part",)
    assumptions = (
        ("intermediate-map-inner-calmness*-in-direction", True, "polyhedral intermediate graph"),
        ("matrix-part-constant", s1.is_constant, "direct side computable iff constant"),
    )
    return RuleReport(
        "product-coderivative", "exact", lhs, rhs, relation, witnesses, assumptions, notes=notes
    )
