"""Generalized derivatives of normal-cone maps to constraint systems.

For a feasible region ``Gamma = {x : g(x) in D}`` with polynomial ``g`` and
convex polyhedral ``D``, this module computes the multiplier set, assembles
the graphical derivative and the directional limiting coderivative of
``x -> N_Gamma(x)`` as finite unions over stratum representatives, checks
directional nondegeneracy and metric-subregularity certificates, and
verifies the semismoothness identity exactly on every enumerated stratum.
The parametric variant handles feasible sets ``Gamma(p, x)`` depending on a
parameter and on the reference solution, where the derivative data splits
into the pair ``(grad of the reduced map, partial Jacobian beta)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cones import (
    PolySet,
    convex_normal_cone,
    convex_tangent_cone,
    directional_limiting_normal_cone,
    normal_cone_graph,
    stratum_witnesses,
    tangent_cone,
)
from .geometry import (
    ConvexPolyhedron,
    PolyCone,
    PreconditionError,
    RepresentationError,
    as_cone,
    face_lattice,
    linear_image,
    linear_preimage,
)
from .maps import PolyMap, graphical_derivative
from .polynomials import MatrixPolynomialMap, Polynomial, PolynomialMap
from .rational import (
    Matrix,
    ONE,
    Vector,
    ZERO,
    add,
    dot,
    kernel_basis,
    matvec,
    neg,
    primitive,
    rref,
    sub,
    tmatvec,
    transpose,
    unit,
    vec,
    zeros,
)


@dataclass(frozen=True)
class ConstraintSystem:
    """Constraint data ``g(x) in D`` with exact feasibility decisions."""

    g: PolynomialMap
    d: ConvexPolyhedron

    def __post_init__(self):
        if self.g.n_out != self.d.dim:
            raise RepresentationError("g output dimension != dimension of D")

    @property
    def n(self) -> int:
        return self.g.n_in

    @property
    def s(self) -> int:
        return self.d.dim

    def feasible(self, x: Vector) -> bool:
        return self.d.contains(self.g.value(x))

    def require_feasible(self, x: Vector) -> Vector:
        x = vec(x)
        if not self.feasible(x):
            raise PreconditionError("infeasible reference point")
        return x


@dataclass(frozen=True)
class MultiplierSet:
    """Polyhedron of multipliers with a face decomposition and representatives."""

    polyhedron: ConvexPolyhedron
    base_x: Vector
    base_xstar: Vector
    faces: tuple[ConvexPolyhedron, ...]
    representatives: tuple[Vector, ...]

    @property
    def is_empty(self) -> bool:
        return self.polyhedron.is_empty


def multiplier_set(sys: ConstraintSystem, x: Vector, xstar: Vector) -> MultiplierSet:
    """``{lambda in N_D(g(x)) : grad g(x)^T lambda = xstar}`` exactly.

    Emptiness signals that ``xstar`` is not a certified normal at ``x``.
    The face representatives drive every union-over-multipliers reduction:
    the critical cone depends on the multiplier only through the face of
    ``N_D(g(x))`` whose relative interior contains it, and that face is
    constant on relative interiors of faces of the multiplier set.
    """
    x = sys.require_feasible(x)
    xstar = vec(xstar)
    z = sys.g.value(x)
    jac = sys.g.jacobian_at(x)
    nd = convex_normal_cone(sys.d, z)
    cols = transpose(jac)
    lam_poly = nd.with_rows(eqs=[(cols[j], xstar[j]) for j in range(sys.n)])
    if lam_poly.is_empty:
        return MultiplierSet(lam_poly, x, xstar, (), ())
    faces = tuple(face_lattice(lam_poly))
    reps = tuple(f.relint_point() for f in faces)
    return MultiplierSet(lam_poly, x, xstar, faces, reps)


# ---------------------------------------------------------------------------
# nondegeneracy and subregularity certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NondegeneracyReport:
    holds: bool
    vacuous: bool
    certificate: tuple[Vector, ...]  # kernel basis when the condition fails
    note: str


def _directional_nondegeneracy(
    d: ConvexPolyhedron, z: Vector, w: Vector, bt_cols: Matrix
) -> NondegeneracyReport:
    """Injectivity of ``mu -> B^T mu`` on ``span N_{T_D(z)}(w)``.

    ``bt_cols`` lists the rows of ``B^T`` (each of length s).  When the
    condition fails the returned certificate spans the offending kernel.
    """
    td = convex_tangent_cone(d, z)
    if not td.contains(w):
        return NondegeneracyReport(True, True, (), "direction leaves the tangent cone; condition vacuous")
    nt = convex_normal_cone(td, w)
    span_rows = nt.span_basis()
    if not span_rows:
        return NondegeneracyReport(True, False, (), "normal span is trivial")
    k = len(span_rows)
    # mu = span_rows^T c;  B^T mu = 0  <=>  (B^T span_rows^T) c = 0
    cond = tuple(tuple(dot(col, span_rows[j]) for j in range(k)) for col in bt_cols)
    ker = kernel_basis(cond, n=k)
    if not ker:
        return NondegeneracyReport(True, False, (), "kernel restricted to the normal span is trivial")
    cert = tuple(primitive(tmatvec(span_rows, c)) for c in ker)
    cert_red, _ = rref(cert)
    return NondegeneracyReport(
        False, False, tuple(primitive(r) for r in cert_red),
        f"kernel of the adjoint on the normal span has dimension {len(cert_red)}",
    )


def check_directional_nondegeneracy(
    sys: ConstraintSystem, x: Vector, u: Vector
) -> NondegeneracyReport:
    x = sys.require_feasible(x)
    u = vec(u)
    jac = sys.g.jacobian_at(x)
    return _directional_nondegeneracy(
        sys.d, sys.g.value(x), matvec(jac, u), transpose(jac)
    )


@dataclass(frozen=True)
class CertificateEntry:
    condition: str
    verdict: bool
    note: str


def subregularity_certificates(
    sys: ConstraintSystem, x: Vector, u: Optional[Vector] = None
) -> tuple[CertificateEntry, ...]:
    """Sufficient conditions for metric subregularity of ``g(.) - D``, in order.

    (a) affine data; (b) directional nondegeneracy in the queried direction;
    (c) trivial intersection of ``ker grad g(x)^T`` with ``N_D(g(x))``.
    None passing means undetermined, never a negative certificate.
    """
    x = sys.require_feasible(x)
    out = [
        CertificateEntry(
            "affine-data", sys.g.is_affine,
            "affine polyhedral systems are metrically subregular",
        )
    ]
    if u is not None:
        nd = check_directional_nondegeneracy(sys, x, u)
        out.append(
            CertificateEntry(
                "directional-nondegeneracy", nd.holds,
                nd.note if nd.holds else "kernel certificate present",
            )
        )
    z = sys.g.value(x)
    jac = sys.g.jacobian_at(x)
    ndc = convex_normal_cone(sys.d, z)
    cols = transpose(jac)
    inter = ndc.with_rows(eqs=[(cols[j], ZERO) for j in range(sys.n)])
    mfcq = (not inter.rays) and (not inter.lineality)
    out.append(
        CertificateEntry(
            "kernel-normal-intersection-trivial", mfcq,
            "adjoint kernel meets the normal cone only at the origin" if mfcq
            else "nontrivial intersection; condition inconclusive",
        )
    )
    return tuple(out)


def has_subregularity_certificate(entries: Sequence[CertificateEntry]) -> bool:
    return any(e.verdict for e in entries)


# ---------------------------------------------------------------------------
# graphical derivative of the normal-cone map
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GderResult:
    value: PolySet
    value_via_kgamma: PolySet
    forms_agree: bool
    multipliers: MultiplierSet
    certificates: tuple[CertificateEntry, ...]
    exact: bool  # False = upper estimate only (no subregularity certificate)
    notes: tuple[str, ...] = ()


def _critical_cone_of_face(d: ConvexPolyhedron, z: Vector, lam: Vector) -> PolyCone:
    td = convex_tangent_cone(d, z)
    return as_cone(td.with_rows(eqs=[(lam, ZERO)]))


def gder_normal_cone_map(
    sys: ConstraintSystem, x: Vector, xstar: Vector, u: Vector
) -> GderResult:
    """Value of the graphical-derivative formula for ``N_Gamma`` at ``u``.

    Union over multiplier-face representatives of the curvature term plus
    the adjoint image of the normal cone to the critical cone; the second
    form through the critical cone of ``Gamma`` is computed alongside and
    compared exactly.
    """
    x = sys.require_feasible(x)
    xstar, u = vec(xstar), vec(u)
    lams = multiplier_set(sys, x, xstar)
    if lams.is_empty:
        raise PreconditionError("empty multiplier set: xstar is not a certified normal")
    z = sys.g.value(x)
    jac = sys.g.jacobian_at(x)
    jac_t = transpose(jac)
    gu = matvec(jac, u)
    pieces: list[ConvexPolyhedron] = []
    pieces_kg: list[ConvexPolyhedron] = []
    forms_agree = True
    for lam in lams.representatives:
        kd = _critical_cone_of_face(sys.d, z, lam)
        if not kd.contains(gu):
            continue
        curvature = matvec(sys.g.hessian_contraction_at(lam, x), u)
        nk = convex_normal_cone(kd, gu)
        piece = linear_image(nk, jac_t).translate(curvature)
        pieces.append(piece)
        kgamma = as_cone(linear_preimage(kd, jac))
        if kgamma.contains(u):
            nkg = convex_normal_cone(kgamma, u)
            piece2 = nkg.translate(curvature)
            pieces_kg.append(piece2)
            forms_agree &= piece == piece2
        else:
            forms_agree = False
    value = PolySet(sys.n, pieces)
    value_kg = PolySet(sys.n, pieces_kg)
    certs = subregularity_certificates(sys, x, u)
    return GderResult(
        value, value_kg, forms_agree, lams, certs,
        exact=has_subregularity_certificate(certs),
        notes=() if has_subregularity_certificate(certs)
        else ("no subregularity certificate: value is an upper estimate only",),
    )


def affine_normal_cone_map(sys: ConstraintSystem) -> PolyMap:
    """Explicit polyhedral graph of ``x -> N_Gamma(x)`` for affine ``g``.

    Serves as the independent oracle: for affine data the graph is the
    linear image of the preimage of ``gph N_D``, so its graphical
    derivative can be computed directly and compared with the formula.
    """
    if not sys.g.is_affine:
        raise PreconditionError("explicit graph construction needs affine data")
    gmat, goff = sys.g.affine_parts()
    n, s = sys.n, sys.s
    gnd = normal_cone_graph(sys.d)
    comps = []
    for comp in gnd.components:
        ineqs, eqs = [], []
        for rows, sink in ((comp.ineqs, ineqs), (comp.eqs, eqs)):
            for a, b in rows:
                az, alam = a[:s], a[s:]
                row = tuple(
                    sum((az[i] * gmat[i][j] for i in range(s)), ZERO) for j in range(n)
                ) + alam
                sink.append((row, b - dot(az, goff)))
        comps.append(ConvexPolyhedron.from_hrep(ineqs, eqs, dim=n + s))
    pre = PolySet(n + s, comps)
    gt = transpose(gmat)
    push = tuple(unit(n + s, i) for i in range(n)) + tuple(
        zeros(n) + tuple(gmat[i][j] for i in range(s)) for j in range(n)
    )
    return PolyMap(pre.linear_image(push), n, n)


# ---------------------------------------------------------------------------
# directional coderivative estimate and semismoothness
# ---------------------------------------------------------------------------


def _multiplier_derivative_slice(
    sys_data, lam: Vector, u: Vector, ustar: Vector
) -> tuple[PolySet, list]:
    """``{eta : (Bu, eta) tangent to gph N_D at (z, lam), A^T eta = ustar - curvature}``.

    ``sys_data`` bundles ``(d, z, jac_primal, adj_rows, curvature)`` where
    ``jac_primal`` maps the primal direction and ``adj_rows`` are the rows
    of the adjoint acting on ``eta``.  Also returns the arrangement rows
    that keep the inner directional coderivative constant per cell.
    """
    d, z, w_primal, adj_rows, curvature = sys_data
    s = d.dim
    gnd = normal_cone_graph(d)
    t_graph = tangent_cone(gnd, tuple(z) + tuple(lam))
    eta_rhs = sub(ustar, curvature)
    slice_comps = []
    for comp in t_graph.components:
        fixed = comp.substitute({i: w_primal[i] for i in range(s)})
        slice_comps.append(
            fixed.with_rows(eqs=[(row, val) for row, val in zip(adj_rows, eta_rhs)])
        )
    eta_set = PolySet(s, slice_comps)
    arrangement = [
        (a[s:], b - dot(a[:s], w_primal))
        for c in t_graph.components
        for a, b in c.ineqs + c.eqs
    ]
    return eta_set, arrangement


def dir_coderivative_estimate(
    sys: ConstraintSystem,
    x: Vector,
    xstar: Vector,
    u: Vector,
    ustar: Vector,
    wstar: Vector,
) -> tuple[PolySet, "CoderivativeReport"]:
    """Directional limiting coderivative estimate of ``N_Gamma`` at ``wstar``."""
    graph_set, report = coderivative_graph_estimate(sys, x, xstar, u, ustar)
    wstar = vec(wstar)
    value = graph_set.substitute({i: wstar[i] for i in range(sys.n)})
    return value, report


@dataclass(frozen=True)
class CoderivativeReport:
    nondegeneracy: NondegeneracyReport
    multipliers: MultiplierSet
    strata_count: int
    notes: tuple[str, ...] = ()


def coderivative_graph_estimate(
    sys: ConstraintSystem, x: Vector, xstar: Vector, u: Vector, ustar: Vector
) -> tuple[PolySet, CoderivativeReport]:
    """Graph ``{(wstar, w)}`` of the directional coderivative estimate.

    Union over multiplier-face representatives and over stratum
    representatives of the multiplier-map derivative slice; refuses without
    the directional nondegeneracy certificate.
    """
    x = sys.require_feasible(x)
    xstar, u, ustar = vec(xstar), vec(u), vec(ustar)
    nd_report = check_directional_nondegeneracy(sys, x, u)
    if not nd_report.holds:
        raise PreconditionError(
            "missing certificate: directional nondegeneracy fails in this direction"
        )
    lams = multiplier_set(sys, x, xstar)
    if lams.is_empty:
        raise PreconditionError("empty multiplier set: xstar is not a certified normal")
    n, s = sys.n, sys.s
    z = sys.g.value(x)
    jac = sys.g.jacobian_at(x)
    jac_t = transpose(jac)
    gu = matvec(jac, u)
    gnd = normal_cone_graph(sys.d)
    pieces: list[ConvexPolyhedron] = []
    strata = 0
    for lam in lams.representatives:
        curvature_u = matvec(sys.g.hessian_contraction_at(lam, x), u)
        hess = sys.g.hessian_contraction_at(lam, x)
        eta_set, arrangement = _multiplier_derivative_slice(
            (sys.d, z, gu, jac_t, curvature_u), lam, u, ustar
        )
        if eta_set.is_empty_union:
            continue
        for eta in stratum_witnesses(eta_set.components, arrangement):
            strata += 1
            inner = directional_limiting_normal_cone(
                gnd, tuple(z) + tuple(lam), tuple(gu) + tuple(eta)
            )
            for comp in inner.components:
                # lifted set {(wstar, zeta) : (zeta, -grad g wstar) in comp}
                ineqs, eqs = [], []
                for rows, sink in ((comp.ineqs, ineqs), (comp.eqs, eqs)):
                    for a, b in rows:
                        a_zeta, a_xi = a[:s], a[s:]
                        row_wstar = tuple(
                            -sum((a_xi[i] * jac[i][j] for i in range(s)), ZERO)
                            for j in range(n)
                        )
                        sink.append((row_wstar + a_zeta, b))
                lifted = ConvexPolyhedron.from_hrep(ineqs, eqs, dim=n + s)
                # (wstar, zeta) -> (wstar, hess wstar + grad g^T zeta)
                push = tuple(unit(n + s, i) for i in range(n)) + tuple(
                    tuple(hess[j]) + tuple(jac[i][j] for i in range(s))
                    for j in range(n)
                )
                pieces.append(linear_image(lifted, push))
    graph_set = PolySet(2 * n, pieces)
    return graph_set, CoderivativeReport(nd_report, lams, strata)


@dataclass(frozen=True)
class SemismoothnessReport:
    holds: bool
    strata_checked: int
    violations: tuple[tuple[str, Vector], ...]
    coderivative: CoderivativeReport


def semismoothness_check(
    sys: ConstraintSystem, x: Vector, xstar: Vector, u: Vector, ustar: Vector
) -> SemismoothnessReport:
    """Exact verification of ``<u, w> == <ustar, wstar>`` on the estimate graph.

    The identity is linear in ``(wstar, w)``, so vanishing on all generators
    of every enumerated component certifies it on the whole stratum.
    """
    u, ustar = vec(u), vec(ustar)
    graph_set, rep = coderivative_graph_estimate(sys, x, xstar, u, ustar)
    functional = tuple(neg(ustar)) + tuple(u)  # <u,w> - <ustar,wstar>
    violations: list[tuple[str, Vector]] = []
    for comp in graph_set.components:
        for v in comp.vertices:
            if dot(functional, v) != 0:
                violations.append(("vertex", v))
        for r in comp.rays:
            if dot(functional, r) != 0:
                violations.append(("ray", r))
        for l in comp.lineality:
            if dot(functional, l) != 0:
                violations.append(("lineality", l))
    return SemismoothnessReport(
        not violations, len(graph_set.components), tuple(violations), rep
    )


# ---------------------------------------------------------------------------
# parametric systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParametricSystem:
    """Constraint data ``g(p, x, z) in D`` with derived reduced map and beta.

    ``g`` has ``l + n + n`` inputs (parameter, state, decision); the reduced
    map is ``g~(p, x) = g(p, x, x)`` and ``beta(p, x)`` is the partial
    Jacobian in the decision block evaluated on the diagonal.
    """

    g: PolynomialMap
    d: ConvexPolyhedron
    l: int
    n: int

    def __post_init__(self):
        if self.g.n_in != self.l + 2 * self.n:
            raise RepresentationError("g must have l + 2n input variables")
        if self.g.n_out != self.d.dim:
            raise RepresentationError("g output dimension != dimension of D")

    @property
    def s(self) -> int:
        return self.d.dim

    def _var_map(self) -> list[int]:
        # identify the decision block with the state block
        return list(range(self.l + self.n)) + list(range(self.l, self.l + self.n))

    def reduced_map(self) -> PolynomialMap:
        vm = self._var_map()
        return PolynomialMap(
            self.l + self.n,
            tuple(p.substitute_vars(vm, self.l + self.n) for p in self.g.components),
        )

    def beta(self) -> MatrixPolynomialMap:
        vm = self._var_map()
        entries = []
        for p in self.g.components:
            for j in range(self.n):
                entries.append(
                    p.partial(self.l + self.n + j).substitute_vars(vm, self.l + self.n)
                )
        pm = PolynomialMap(self.l + self.n, tuple(entries))
        return MatrixPolynomialMap((self.s, self.n), pm)

    def state_block_vanishes(self) -> bool:
        """True iff the state-block partial Jacobian of ``g`` is identically zero."""
        for p in self.g.components:
            for j in range(self.l, self.l + self.n):
                if p.partial(j).terms:
                    return False
        return True

    def feasible(self, y: Vector) -> bool:
        return self.d.contains(self.reduced_map().value(y))


@dataclass(frozen=True)
class ParametricGderResult:
    value: PolySet
    multipliers: MultiplierSet
    certificates: tuple[CertificateEntry, ...]
    cond_reduced: NondegeneracyReport  # span condition with the reduced Jacobian
    cond_beta: NondegeneracyReport  # span condition with beta
    exact: bool
    notes: tuple[str, ...] = ()


def parametric_multiplier_set(psys: ParametricSystem, y: Vector, xstar: Vector) -> MultiplierSet:
    y, xstar = vec(y), vec(xstar)
    if not psys.feasible(y):
        raise PreconditionError("infeasible reference point")
    z = psys.reduced_map().value(y)
    beta_mat = psys.beta().value_matrix(y)
    nd = convex_normal_cone(psys.d, z)
    cols = transpose(beta_mat)
    lam_poly = nd.with_rows(eqs=[(cols[j], xstar[j]) for j in range(psys.n)])
    if lam_poly.is_empty:
        return MultiplierSet(lam_poly, y, xstar, (), ())
    faces = tuple(face_lattice(lam_poly))
    return MultiplierSet(lam_poly, y, xstar, faces, tuple(f.relint_point() for f in faces))


def parametric_gder(
    psys: ParametricSystem, y: Vector, xstar: Vector, v: Vector
) -> ParametricGderResult:
    """Graphical-derivative formula for ``(p,x) -> N_{Gamma(p,x)}(x)`` at ``v``.

    Same stratum-union construction as the plain case with the Jacobian
    pair ``(grad reduced, beta)``; the report records both span conditions
    and, when the state block vanishes, their implication ordering.
    """
    y, xstar, v = vec(y), vec(xstar), vec(v)
    lams = parametric_multiplier_set(psys, y, xstar)
    if lams.is_empty:
        raise PreconditionError("empty multiplier set: xstar is not a certified normal")
    gtilde = psys.reduced_map()
    beta = psys.beta()
    z = gtilde.value(y)
    jac_red = gtilde.jacobian_at(y)
    beta_mat = beta.value_matrix(y)
    beta_t = transpose(beta_mat)
    gv = matvec(jac_red, v)
    pieces: list[ConvexPolyhedron] = []
    for lam in lams.representatives:
        kd = _critical_cone_of_face(psys.d, z, lam)
        if not kd.contains(gv):
            continue
        drift = matvec(beta.scalarized_jacobian_at(lam, y), v)
        nk = convex_normal_cone(kd, gv)
        pieces.append(linear_image(nk, beta_t).translate(drift))
    value = PolySet(psys.n, pieces)
    cond_red = _directional_nondegeneracy(psys.d, z, gv, transpose(jac_red))
    cond_beta = _directional_nondegeneracy(psys.d, z, gv, beta_t)
    certs = [
        CertificateEntry(
            "affine-data", psys.g.is_affine,
            "affine parametric systems satisfy the metric inequality",
        ),
        CertificateEntry(
            "both-span-conditions",
            cond_red.holds and cond_beta.holds,
            "reduced-Jacobian and beta span conditions hold in this direction",
        ),
    ]
    notes = []
    if psys.state_block_vanishes():
        notes.append(
            "state block of g vanishes: the beta span condition implies the reduced one"
            + ("; verified" if (not cond_beta.holds or cond_red.holds) else "; VIOLATED")
        )
    exact = any(c.verdict for c in certs)
    if not exact:
        notes.append("no certificate for the metric inequality: upper estimate only")
    return ParametricGderResult(
        value, lams, tuple(certs), cond_red, cond_beta, exact, tuple(notes)
    )


def parametric_coderivative_graph_estimate(
    psys: ParametricSystem, y: Vector, xstar: Vector, v: Vector, ustar: Vector
) -> tuple[PolySet, CoderivativeReport]:
    """Graph ``{(wstar, w)}`` of the parametric directional coderivative estimate."""
    y, xstar, v, ustar = vec(y), vec(xstar), vec(v), vec(ustar)
    gtilde = psys.reduced_map()
    beta = psys.beta()
    z = gtilde.value(y)
    jac_red = gtilde.jacobian_at(y)
    beta_mat = beta.value_matrix(y)
    gv = matvec(jac_red, v)
    cond_red = _directional_nondegeneracy(psys.d, z, gv, transpose(jac_red))
    cond_beta = _directional_nondegeneracy(psys.d, z, gv, transpose(beta_mat))
    if not (cond_red.holds and cond_beta.holds):
        raise PreconditionError(
            "missing certificate: both span conditions are required in this direction"
        )
    lams = parametric_multiplier_set(psys, y, xstar)
    if lams.is_empty:
        raise PreconditionError("empty multiplier set: xstar is not a certified normal")
    n, s, ny = psys.n, psys.s, psys.l + psys.n
    gnd = normal_cone_graph(psys.d)
    pieces: list[ConvexPolyhedron] = []
    strata = 0
    for lam in lams.representatives:
        w_lam = beta.scalarized_jacobian_at(lam, y)  # n x (l+n)
        drift_v = matvec(w_lam, v)
        eta_set, arrangement = _multiplier_derivative_slice(
            (psys.d, z, gv, transpose(beta_mat), drift_v), lam, v, ustar
        )
        if eta_set.is_empty_union:
            continue
        for eta in stratum_witnesses(eta_set.components, arrangement):
            strata += 1
            inner = directional_limiting_normal_cone(
                gnd, tuple(z) + tuple(lam), tuple(gv) + tuple(eta)
            )
            for comp in inner.components:
                ineqs, eqs = [], []
                for rows, sink in ((comp.ineqs, ineqs), (comp.eqs, eqs)):
                    for a, b in rows:
                        a_zeta, a_xi = a[:s], a[s:]
                        row_wstar = tuple(
                            -sum((a_xi[i] * beta_mat[i][j] for i in range(s)), ZERO)
                            for j in range(n)
                        )
                        sink.append((row_wstar + a_zeta, b))
                lifted = ConvexPolyhedron.from_hrep(ineqs, eqs, dim=n + s)
                # (wstar, zeta) -> (wstar, w_lam^T wstar + grad g~^T zeta)
                w_lam_t = transpose(w_lam)  # (l+n) x n
                push = tuple(unit(n + s, i) for i in range(n)) + tuple(
                    tuple(w_lam_t[j]) + tuple(jac_red[i][j] for i in range(s))
                    for j in range(ny)
                )
                pieces.append(linear_image(lifted, push))
    graph_set = PolySet(n + ny, pieces)
    return graph_set, CoderivativeReport(cond_red, lams, strata)


def parametric_coderivative_estimate(
    psys: ParametricSystem, y: Vector, xstar: Vector, v: Vector, ustar: Vector, wstar: Vector
) -> tuple[PolySet, CoderivativeReport]:
    wstar = vec(wstar)
    graph_set, rep = parametric_coderivative_graph_estimate(psys, y, xstar, v, ustar)
    value = graph_set.substitute({i: wstar[i] for i in range(psys.n)})
    return value, rep


def parametric_semismoothness_check(
    psys: ParametricSystem, y: Vector, xstar: Vector, v: Vector, ustar: Vector
) -> SemismoothnessReport:
    """Exact ``<v, w> == <ustar, wstar>`` on the parametric estimate graph."""
    v, ustar = vec(v), vec(ustar)
    graph_set, rep = parametric_coderivative_graph_estimate(psys, y, xstar, v, ustar)
    functional = tuple(neg(ustar)) + tuple(v)
    violations: list[tuple[str, Vector]] = []
    for comp in graph_set.components:
        for kind, gens in (("vertex", comp.vertices), ("ray", comp.rays), ("lineality", comp.lineality)):
            for g in gens:
                if dot(functional, g) != 0:
                    violations.append((kind, g))
    return SemismoothnessReport(not violations, len(graph_set.components), tuple(violations), rep)
