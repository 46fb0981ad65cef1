"""Convex polyhedron kernel over exact rationals.

A convex polyhedron carries two canonical representations that are kept
consistent at all times:

* H-representation: inequality rows ``a @ x <= b`` plus equality rows
  ``c @ x == e``;
* V-representation: a triple ``(vertices, rays, lineality)`` so the set is
  ``conv(vertices) + cone(rays) + span(lineality)``.

Conversion in both directions uses the double description method on the
homogenization cone.  Canonical form (lexicographically sorted primitive
rows/generators, redundancy removed, generators reduced modulo the lineality
space, rows reduced modulo the equality space) makes set equality a plain
tuple comparison.  Everything here is exact; there are no tolerances.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .rational import (
    Matrix,
    ONE,
    Vector,
    ZERO,
    add,
    dot,
    frac,
    identity,
    is_zero,
    kernel_basis,
    mat,
    matvec,
    neg,
    norm1,
    norm_sq,
    primitive,
    reduce_mod_rows,
    rref,
    scale,
    solve,
    sub,
    unit,
    vec,
    zeros,
)

Row = tuple[Vector, Fraction]  # (a, b) meaning a @ x <= b (or == b for equalities)


class RepresentationError(ValueError):
    """Raised for dimensionally inconsistent or malformed representations."""


class PreconditionError(ValueError):
    """Raised when an operation's geometric precondition fails."""


# ---------------------------------------------------------------------------
# double description on cones
# ---------------------------------------------------------------------------


def dd_cone(rows: Sequence[Vector], dim: int) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
    """Minimal generators of the cone ``{x : r @ x <= 0 for r in rows}``.

    Returns ``(lineality_basis, extreme_rays)``; the rays are extreme modulo
    the lineality space.  Incremental insertion with the combinatorial
    adjacency test; correct for any input rows, redundant or not.
    """
    lin: list[Vector] = list(identity(dim))
    rays: list[Vector] = []
    active: dict[int, frozenset[int]] = {}
    processed: list[Vector] = []

    def recompute_active(r: Vector) -> frozenset[int]:
        return frozenset(j for j, p in enumerate(processed) if dot(p, r) == 0)

    for a in rows:
        if is_zero(a):
            continue
        pivot = next((l for l in lin if dot(a, l) != 0), None)
        if pivot is not None:
            da = dot(a, pivot)
            lin = [primitive(sub(l, scale(dot(a, l) / da, pivot))) for l in lin if l is not pivot]
            new_rays = [primitive(sub(r, scale(dot(a, r) / da, pivot))) for r in rays]
            r0 = primitive(pivot if da < 0 else neg(pivot))
            rays = new_rays + [r0]
            processed.append(a)
            active = {i: recompute_active(r) for i, r in enumerate(rays)}
            continue
        sign_neg = [i for i, r in enumerate(rays) if dot(a, r) < 0]
        sign_zero = [i for i, r in enumerate(rays) if dot(a, r) == 0]
        sign_pos = [i for i, r in enumerate(rays) if dot(a, r) > 0]
        if not sign_pos:
            processed.append(a)
            active = {i: recompute_active(rays[i]) for i in range(len(rays))}
            rays = list(rays)
            continue
        combos: list[Vector] = []
        for ip, ineg in itertools.product(sign_pos, sign_neg):
            common = active[ip] & active[ineg]
            adjacent = not any(
                k != ip and k != ineg and common <= active[k] for k in active
            )
            if not adjacent:
                continue
            rp, rn = rays[ip], rays[ineg]
            combos.append(primitive(sub(scale(dot(a, rp), rn), scale(dot(a, rn), rp))))
        rays = [rays[i] for i in sign_neg + sign_zero] + combos
        processed.append(a)
        active = {i: recompute_active(r) for i, r in enumerate(rays)}
    return tuple(lin), tuple(rays)


_dd_cache: dict = {}


def dd_cone_cached(rows: tuple[Vector, ...], dim: int):
    key = (rows, dim)
    hit = _dd_cache.get(key)
    if hit is None:
        hit = dd_cone(rows, dim)
        _dd_cache[key] = hit
    return hit


# ---------------------------------------------------------------------------
# canonicalization helpers
# ---------------------------------------------------------------------------


def _canon_subspace(gens: Iterable[Vector]) -> tuple[Matrix, tuple[int, ...]]:
    rows = tuple(g for g in gens if not is_zero(g))
    if not rows:
        return (), ()
    red, pivots = rref(rows)
    return tuple(primitive(r) for r in red), pivots


def _canon_generators(
    vertices: Iterable[Vector], rays: Iterable[Vector], lineality: Iterable[Vector]
):
    lin, pivots = _canon_subspace(lineality)
    vs = sorted({reduce_mod_rows(v, lin, pivots) for v in vertices})
    rs = sorted(
        {
            primitive(reduce_mod_rows(r, lin, pivots))
            for r in rays
            if not is_zero(reduce_mod_rows(r, lin, pivots))
        }
    )
    return tuple(vs), tuple(rs), lin


def _canon_rows(ineqs: Iterable[Row], eqs: Iterable[Row], dim: int):
    """Canonicalize H-rep rows; returns (ineqs, eqs, infeasible_flag)."""
    eq_aug = tuple((a + (b,)) for a, b in eqs)
    eq_red, pivots = _canon_subspace(eq_aug)
    # an equality row 0 == nonzero marks infeasibility
    for row in eq_red:
        if is_zero(row[:-1]) and row[-1] != 0:
            return (), (), True
    eq_red = tuple(r for r in eq_red if not is_zero(r))
    out = set()
    infeasible = False
    for a, b in ineqs:
        r = reduce_mod_rows(a + (b,), eq_red, pivots)
        ra, rb = r[:-1], r[-1]
        if is_zero(ra):
            if rb < 0:
                infeasible = True
            continue
        p = primitive(ra + (-rb,))
        # store as (a, b) with joint primitive positive scaling
        s = next(c for c in p if c != 0) / next(c for c in ra + (-rb,) if c != 0)
        out.add((scale(s, ra), s * rb))
    ineq_rows = tuple(sorted(out))
    eq_rows = tuple(sorted((r[:-1], r[-1]) for r in eq_red))
    return ineq_rows, eq_rows, infeasible


# ---------------------------------------------------------------------------
# ConvexPolyhedron
# ---------------------------------------------------------------------------


class ConvexPolyhedron:
    """Canonical convex polyhedron carrying both representations.

    Instances are immutable; equality and hashing use the canonical key, so
    ``P == Q`` decides set equality exactly.
    """

    __slots__ = ("dim", "is_empty", "vertices", "rays", "lineality", "ineqs", "eqs", "_key")

    def __init__(self, *, dim, is_empty, vertices, rays, lineality, ineqs, eqs):
        self.dim = dim
        self.is_empty = is_empty
        self.vertices = vertices
        self.rays = rays
        self.lineality = lineality
        self.ineqs = ineqs
        self.eqs = eqs
        self._key = (dim, is_empty, vertices, rays, lineality, ineqs, eqs)

    # -- construction -------------------------------------------------------

    @staticmethod
    def empty(dim: int) -> "ConvexPolyhedron":
        marker = ((zeros(dim), Fraction(-1)),)
        return ConvexPolyhedron(
            dim=dim, is_empty=True, vertices=(), rays=(), lineality=(),
            ineqs=marker, eqs=(),
        )

    @staticmethod
    def from_hrep(ineqs: Iterable, eqs: Iterable = (), dim: Optional[int] = None) -> "ConvexPolyhedron":
        """Build from rows ``(a, b)``; ``a`` iterable of rationals, ``b`` rational."""
        ineq_rows = [(vec(a), frac(b)) for a, b in ineqs]
        eq_rows = [(vec(a), frac(b)) for a, b in eqs]
        if dim is None:
            if not ineq_rows and not eq_rows:
                raise RepresentationError("empty H-rep needs an explicit dimension")
            dim = len((ineq_rows + eq_rows)[0][0])
        for a, _ in ineq_rows + eq_rows:
            if len(a) != dim:
                raise RepresentationError(f"row length {len(a)} != ambient dimension {dim}")
        return _from_hrep_canonical(tuple(ineq_rows), tuple(eq_rows), dim)

    @staticmethod
    def from_vrep(
        vertices: Iterable = (), rays: Iterable = (), lineality: Iterable = (),
        dim: Optional[int] = None,
    ) -> "ConvexPolyhedron":
        vs = tuple(vec(v) for v in vertices)
        rs = tuple(vec(r) for r in rays)
        ls = tuple(vec(l) for l in lineality)
        if dim is None:
            gens = vs + rs + ls
            if not gens:
                raise RepresentationError("empty V-rep needs an explicit dimension")
            dim = len(gens[0])
        if not vs:
            if rs or ls:
                raise RepresentationError("V-rep with rays but no vertex; add a base point")
            return ConvexPolyhedron.empty(dim)
        for g in vs + rs + ls:
            if len(g) != dim:
                raise RepresentationError(f"generator length {len(g)} != ambient dimension {dim}")
        return _from_vrep_canonical(vs, rs, ls, dim)

    # -- basic queries -------------------------------------------------------

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, ConvexPolyhedron) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.is_empty:
            return f"ConvexPolyhedron(empty, dim={self.dim})"
        return (
            f"ConvexPolyhedron(dim={self.dim}, |V|={len(self.vertices)}, "
            f"|R|={len(self.rays)}, lin={len(self.lineality)}, "
            f"ineqs={len(self.ineqs)}, eqs={len(self.eqs)})"
        )

    def contains(self, x: Vector) -> bool:
        x = vec(x)
        if len(x) != self.dim:
            raise RepresentationError("point dimension mismatch")
        return all(dot(a, x) <= b for a, b in self.ineqs) and all(
            dot(c, x) == e for c, e in self.eqs
        )

    def recession_contains(self, u: Vector) -> bool:
        """Exact membership of ``u`` in the recession cone."""
        u = vec(u)
        if self.is_empty:
            return False
        return all(dot(a, u) <= 0 for a, _ in self.ineqs) and all(
            dot(c, u) == 0 for c, _ in self.eqs
        )

    def active_ineq_indices(self, x: Vector) -> tuple[int, ...]:
        x = vec(x)
        return tuple(i for i, (a, b) in enumerate(self.ineqs) if dot(a, x) == b)

    @property
    def is_cone(self) -> bool:
        return (not self.is_empty) and all(b == 0 for _, b in self.ineqs) and all(
            e == 0 for _, e in self.eqs
        ) and self.vertices == (zeros(self.dim),)

    def affine_dim(self) -> int:
        if self.is_empty:
            return -1
        return self.dim - len(self.eqs)

    def relint_point(self) -> Vector:
        """A rational point in the relative interior."""
        if self.is_empty:
            raise PreconditionError("empty polyhedron has no relative interior point")
        p = scale(Fraction(1, len(self.vertices)), _vector_sum(self.vertices, self.dim))
        for r in self.rays:
            p = add(p, r)
        return p

    # -- derived sets ---------------------------------------------------------

    def intersect(self, other: "ConvexPolyhedron") -> "ConvexPolyhedron":
        if self.dim != other.dim:
            raise RepresentationError("ambient dimension mismatch")
        if self.is_empty or other.is_empty:
            return ConvexPolyhedron.empty(self.dim)
        return ConvexPolyhedron.from_hrep(
            self.ineqs + other.ineqs, self.eqs + other.eqs, dim=self.dim
        )

    def with_rows(self, ineqs: Iterable = (), eqs: Iterable = ()) -> "ConvexPolyhedron":
        extra_i = tuple((vec(a), frac(b)) for a, b in ineqs)
        extra_e = tuple((vec(a), frac(b)) for a, b in eqs)
        if self.is_empty:
            return self
        return ConvexPolyhedron.from_hrep(
            self.ineqs + extra_i, self.eqs + extra_e, dim=self.dim
        )

    def product(self, other: "ConvexPolyhedron") -> "ConvexPolyhedron":
        if self.is_empty or other.is_empty:
            return ConvexPolyhedron.empty(self.dim + other.dim)
        pad_l = lambda a: a + zeros(other.dim)
        pad_r = lambda a: zeros(self.dim) + a
        return ConvexPolyhedron.from_hrep(
            [(pad_l(a), b) for a, b in self.ineqs] + [(pad_r(a), b) for a, b in other.ineqs],
            [(pad_l(a), b) for a, b in self.eqs] + [(pad_r(a), b) for a, b in other.eqs],
            dim=self.dim + other.dim,
        )

    def translate(self, v: Vector) -> "ConvexPolyhedron":
        v = vec(v)
        if self.is_empty:
            return self
        return ConvexPolyhedron.from_hrep(
            [(a, b + dot(a, v)) for a, b in self.ineqs],
            [(c, e + dot(c, v)) for c, e in self.eqs],
            dim=self.dim,
        )

    def scale_set(self, c: Fraction) -> "ConvexPolyhedron":
        c = frac(c)
        if self.is_empty or c == 0:
            raise PreconditionError("scaling by zero or scaling the empty set")
        if c > 0:
            return ConvexPolyhedron.from_vrep(
                [scale(c, v) for v in self.vertices], self.rays, self.lineality, dim=self.dim
            )
        return ConvexPolyhedron.from_vrep(
            [scale(c, v) for v in self.vertices],
            [neg(r) for r in self.rays],
            self.lineality,
            dim=self.dim,
        )

    def substitute(self, fixed: dict[int, Fraction]) -> "ConvexPolyhedron":
        """Fix coordinates ``{index: value}``; result lives in the free coordinates."""
        free = [j for j in range(self.dim) if j not in fixed]
        if self.is_empty:
            return ConvexPolyhedron.empty(len(free))

        def reduce_row(a: Vector, b: Fraction) -> Row:
            shift = sum((a[j] * fixed[j] for j in fixed), ZERO)
            return tuple(a[j] for j in free), b - shift

        return ConvexPolyhedron.from_hrep(
            [reduce_row(a, b) for a, b in self.ineqs],
            [reduce_row(c, e) for c, e in self.eqs],
            dim=len(free),
        )


def _vector_sum(vs: Sequence[Vector], dim: int) -> Vector:
    out = zeros(dim)
    for v in vs:
        out = add(out, v)
    return out


_poly_cache: dict = {}


def _from_hrep_canonical(ineqs, eqs, dim) -> ConvexPolyhedron:
    ineq_rows, eq_rows, infeasible = _canon_rows(ineqs, eqs, dim)
    if infeasible:
        return ConvexPolyhedron.empty(dim)
    key = ("h", ineq_rows, eq_rows, dim)
    hit = _poly_cache.get(key)
    if hit is not None:
        return hit
    # homogenize: rows act on (x, t); add t >= 0
    hom_rows = [a + (-b,) for a, b in ineq_rows]
    for c, e in eq_rows:
        hom_rows.append(c + (-e,))
        hom_rows.append(neg(c) + (e,))
    hom_rows.append(zeros(dim) + (Fraction(-1),))
    lin, rays = dd_cone_cached(tuple(hom_rows), dim + 1)
    verts = [scale(ONE / r[-1], r[:-1] + (r[-1],))[:-1] for r in rays if r[-1] > 0]
    rec = [r[:-1] for r in rays if r[-1] == 0]
    lin_x = [l[:-1] for l in lin]
    if not verts:
        out = ConvexPolyhedron.empty(dim)
        _poly_cache[key] = out
        return out
    out = _assemble(verts, rec, lin_x, dim)
    _poly_cache[key] = out
    return out


def _from_vrep_canonical(vertices, rays, lineality, dim) -> ConvexPolyhedron:
    vs, rs, lin = _canon_generators(vertices, rays, lineality)
    key = ("v", vs, rs, lin, dim)
    hit = _poly_cache.get(key)
    if hit is not None:
        return hit
    out = _assemble(vs, rs, lin, dim)
    _poly_cache[key] = out
    return out


def _assemble(vertices, rays, lineality, dim) -> ConvexPolyhedron:
    """Canonicalize a (possibly redundant) generator triple into a polyhedron."""
    # dual DD: generators of the homogenization cone become rows of its polar
    dual_rows: list[Vector] = [v + (ONE,) for v in vertices]
    dual_rows += [r + (ZERO,) for r in rays]
    for l in lineality:
        dual_rows.append(l + (ZERO,))
        dual_rows.append(neg(l) + (ZERO,))
    polar_lin, polar_rays = dd_cone_cached(tuple(dual_rows), dim + 1)
    # rows of the homogenization cone: r* @ (x,t) <= 0 and l* @ (x,t) == 0
    ineqs: list[Row] = []
    eqs: list[Row] = []
    for r in polar_rays:
        ineqs.append((r[:-1], -r[-1]))
    for l in polar_lin:
        eqs.append((l[:-1], -l[-1]))
    ineq_rows, eq_rows, infeasible = _canon_rows(tuple(ineqs), tuple(eqs), dim)
    assert not infeasible
    # primal DD on the canonical rows gives minimal canonical generators
    hom_rows = [a + (-b,) for a, b in ineq_rows]
    for c, e in eq_rows:
        hom_rows.append(c + (-e,))
        hom_rows.append(neg(c) + (e,))
    hom_rows.append(zeros(dim) + (Fraction(-1),))
    lin2, rays2 = dd_cone_cached(tuple(hom_rows), dim + 1)
    verts = [scale(ONE / r[-1], r)[:-1] for r in rays2 if r[-1] > 0]
    rec = [r[:-1] for r in rays2 if r[-1] == 0]
    lin_x = [l[:-1] for l in lin2]
    vs, rs, lin_c = _canon_generators(verts, rec, lin_x)
    return ConvexPolyhedron(
        dim=dim, is_empty=False, vertices=vs, rays=rs, lineality=lin_c,
        ineqs=ineq_rows, eqs=eq_rows,
    )


# ---------------------------------------------------------------------------
# PolyCone
# ---------------------------------------------------------------------------


class PolyCone(ConvexPolyhedron):
    """Convex polyhedral cone: a polyhedron with homogeneous rows."""

    @staticmethod
    def from_rays(rays: Iterable = (), lineality: Iterable = (), dim: Optional[int] = None) -> "PolyCone":
        rs = tuple(vec(r) for r in rays)
        ls = tuple(vec(l) for l in lineality)
        if dim is None:
            gens = rs + ls
            if not gens:
                raise RepresentationError("cone V-rep without generators needs a dimension")
            dim = len(gens[0])
        base = ConvexPolyhedron.from_vrep([zeros(dim)], rs, ls, dim=dim)
        return PolyCone._wrap(base)

    @staticmethod
    def from_ineqs(rows: Iterable, eq_rows: Iterable = (), dim: Optional[int] = None) -> "PolyCone":
        ineqs = [(vec(a), ZERO) for a in rows]
        eqs = [(vec(c), ZERO) for c in eq_rows]
        if dim is None:
            if not ineqs and not eqs:
                raise RepresentationError("cone H-rep without rows needs a dimension")
            dim = len((ineqs + eqs)[0][0])
        base = ConvexPolyhedron.from_hrep(ineqs, eqs, dim=dim)
        return PolyCone._wrap(base)

    @staticmethod
    def _wrap(p: ConvexPolyhedron) -> "PolyCone":
        if not p.is_cone:
            raise RepresentationError("set is not a cone")
        return PolyCone(
            dim=p.dim, is_empty=False, vertices=p.vertices, rays=p.rays,
            lineality=p.lineality, ineqs=p.ineqs, eqs=p.eqs,
        )

    @staticmethod
    def full(dim: int) -> "PolyCone":
        return PolyCone.from_ineqs([], dim=dim)

    @staticmethod
    def origin(dim: int) -> "PolyCone":
        return PolyCone.from_rays([], [], dim=dim)

    def polar(self) -> "PolyCone":
        """Negative polar cone ``{y : <y, x> <= 0 for all x in self}``."""
        rows = [(r, ZERO) for r in self.rays]
        eqs = [(l, ZERO) for l in self.lineality]
        base = ConvexPolyhedron.from_hrep(rows, eqs, dim=self.dim)
        return PolyCone._wrap(base)

    def span_basis(self) -> Matrix:
        gens = self.rays + self.lineality
        if not gens:
            return ()
        red, _ = rref(gens)
        return tuple(primitive(r) for r in red)


def as_cone(p: ConvexPolyhedron) -> PolyCone:
    return PolyCone._wrap(p)


def polar(k: PolyCone) -> PolyCone:
    """Module-level alias for the polar cone."""
    if not isinstance(k, PolyCone):
        k = as_cone(k)
    return k.polar()


def dd_convert(p: ConvexPolyhedron, direction: str = "H->V") -> ConvexPolyhedron:
    """Re-derive the canonical double description of ``p``.

    ``direction`` selects which representation seeds the conversion; both
    directions reproduce the identical canonical point set.
    """
    if direction not in ("H->V", "V->H"):
        raise RepresentationError(f"unknown conversion direction {direction!r}")
    if p.is_empty:
        return p
    if direction == "H->V":
        return ConvexPolyhedron.from_hrep(p.ineqs, p.eqs, dim=p.dim)
    return ConvexPolyhedron.from_vrep(p.vertices, p.rays, p.lineality, dim=p.dim)


# ---------------------------------------------------------------------------
# faces
# ---------------------------------------------------------------------------


def _row_active_on(p: ConvexPolyhedron, row: Row) -> bool:
    a, b = row
    return all(dot(a, v) == b for v in p.vertices) and all(
        dot(a, r) == 0 for r in p.rays
    ) and all(dot(a, l) == 0 for l in p.lineality)


def _full_active_set(parent: ConvexPolyhedron, face: ConvexPolyhedron) -> frozenset[int]:
    return frozenset(
        i for i, row in enumerate(parent.ineqs) if _row_active_on(face, row)
    )


def face_lattice(p: ConvexPolyhedron) -> list[ConvexPolyhedron]:
    """All nonempty faces of ``p`` (including ``p`` and its minimal face).

    Faces are found by breadth-first closure over active-row sets; each face
    of a polyhedron is obtained by turning some inequality rows into
    equalities.
    """
    if p.is_empty:
        raise PreconditionError("empty set has no faces")
    seen: dict[frozenset[int], ConvexPolyhedron] = {}
    start = _full_active_set(p, p)
    queue = [start]
    seen[start] = p if start == frozenset() else _face_from_active(p, start)
    out = []
    while queue:
        act = queue.pop()
        face = seen[act]
        out.append(face)
        for j in range(len(p.ineqs)):
            if j in act:
                continue
            cand = _face_from_active(p, act | {j})
            if cand.is_empty:
                continue
            key = _full_active_set(p, cand)
            if key not in seen:
                seen[key] = cand
                queue.append(key)
    return out


def _face_from_active(p: ConvexPolyhedron, active: frozenset[int]) -> ConvexPolyhedron:
    extra_eqs = [p.ineqs[j] for j in sorted(active)]
    return ConvexPolyhedron.from_hrep(p.ineqs, p.eqs + tuple(extra_eqs), dim=p.dim)


def minimal_face_containing(p: ConvexPolyhedron, x: Vector) -> ConvexPolyhedron:
    x = vec(x)
    if not p.contains(x):
        raise PreconditionError("point not in the set")
    act = p.active_ineq_indices(x)
    return _face_from_active(p, frozenset(act))


# ---------------------------------------------------------------------------
# linear images / preimages
# ---------------------------------------------------------------------------


def linear_image(p: ConvexPolyhedron, m: Matrix) -> ConvexPolyhedron:
    """Exact image ``{m @ x : x in p}``; polyhedral since p is."""
    m = mat(m)
    out_dim = len(m)
    if m and len(m[0]) != p.dim:
        raise RepresentationError("matrix columns != ambient dimension")
    if p.is_empty:
        return ConvexPolyhedron.empty(out_dim)
    return ConvexPolyhedron.from_vrep(
        [matvec(m, v) for v in p.vertices],
        [matvec(m, r) for r in p.rays],
        [matvec(m, l) for l in p.lineality],
        dim=out_dim,
    )


def linear_preimage(p: ConvexPolyhedron, m: Matrix) -> ConvexPolyhedron:
    """Exact preimage ``{x : m @ x in p}`` by row substitution on the H-rep."""
    m = mat(m)
    if len(m) != p.dim:
        raise RepresentationError("matrix rows != ambient dimension")
    in_dim = len(m[0]) if m else 0
    if p.is_empty:
        return ConvexPolyhedron.empty(in_dim)
    mt_apply = lambda a: tuple(
        sum((a[i] * m[i][j] for i in range(len(m))), ZERO) for j in range(in_dim)
    )
    return ConvexPolyhedron.from_hrep(
        [(mt_apply(a), b) for a, b in p.ineqs],
        [(mt_apply(c), e) for c, e in p.eqs],
        dim=in_dim,
    )


def affine_image(p: ConvexPolyhedron, m: Matrix, offset: Vector) -> ConvexPolyhedron:
    return linear_image(p, m).translate(vec(offset))


def affine_preimage(p: ConvexPolyhedron, m: Matrix, offset: Vector) -> ConvexPolyhedron:
    """Preimage of p under ``x -> m @ x + offset``."""
    return linear_preimage(p.translate(neg(vec(offset))), m)


# ---------------------------------------------------------------------------
# feasibility with strict rows, LP support via vertex enumeration
# ---------------------------------------------------------------------------


def feasible_point(
    ineqs: Sequence[Row] = (),
    eqs: Sequence[Row] = (),
    stricts: Sequence[Row] = (),
    dim: Optional[int] = None,
) -> Optional[Vector]:
    """Exact witness of ``{x : ineqs, eqs, a @ x < b for (a,b) in stricts}`` or None.

    Strictness is decided by maximizing a slack variable; the optimum is
    inspected on the vertex/ray generators, so the test is exact.
    """
    if dim is None:
        pool = list(ineqs) + list(eqs) + list(stricts)
        if not pool:
            raise RepresentationError("feasibility in unknown dimension")
        dim = len(pool[0][0])
    if not stricts:
        p = ConvexPolyhedron.from_hrep(ineqs, eqs, dim=dim)
        return None if p.is_empty else p.vertices[0]
    lift_i = [(a + (ZERO,), b) for a, b in ineqs]
    lift_i += [(a + (ONE,), b) for a, b in stricts]
    lift_i.append((zeros(dim) + (Fraction(-1),), ONE))  # -t <= 1 keeps t bounded below
    lift_i.append((zeros(dim) + (ONE,), ONE))  # t <= 1
    lift_e = [(c + (ZERO,), e) for c, e in eqs]
    lifted = ConvexPolyhedron.from_hrep(lift_i, lift_e, dim=dim + 1)
    if lifted.is_empty:
        return None
    best = max(lifted.vertices, key=lambda v: v[-1])
    if best[-1] > 0:
        return best[:-1]
    for r in lifted.rays + lifted.lineality + tuple(neg(l) for l in lifted.lineality):
        if r[-1] > 0:
            w = add(best, r)
            return w[:-1]
    return None


def maximize_linear(p: ConvexPolyhedron, c: Vector):
    """Exact ``sup {c @ x : x in p}``; returns (value, argmax) with value None for +inf.

    The supremum of a linear form over a polyhedron is found on the
    generators: unbounded iff positive on a ray or nonzero on the lineality.
    """
    c = vec(c)
    if p.is_empty:
        raise PreconditionError("maximizing over the empty set")
    if any(dot(c, r) > 0 for r in p.rays) or any(dot(c, l) != 0 for l in p.lineality):
        return None, None
    best = max(p.vertices, key=lambda v: dot(c, v))
    return dot(c, best), best


def dist_inf_lower(p: ConvexPolyhedron, x: Vector) -> Fraction:
    """Exact Chebyshev distance from ``x`` to ``p`` (0 if ``x in p``)."""
    x = vec(x)
    if p.is_empty:
        raise PreconditionError("distance to the empty set")
    dim = p.dim
    rows = [(a + (ZERO,), b) for a, b in p.ineqs]
    for j in range(dim):
        e = unit(dim, j)
        rows.append((e + (Fraction(-1),), x[j]))
        rows.append((neg(e) + (Fraction(-1),), -x[j]))
    eqs = [(c + (ZERO,), e) for c, e in p.eqs]
    lifted = ConvexPolyhedron.from_hrep(rows, eqs, dim=dim + 1)
    return min(v[-1] for v in lifted.vertices)


def euclidean_project(p: ConvexPolyhedron, x: Vector) -> tuple[Vector, Fraction]:
    """Exact Euclidean projection of ``x`` onto ``p`` and the squared distance.

    The projection of a rational point onto a rational polyhedron is
    rational; KKT active sets are enumerated (desk-scale row counts).
    """
    x = vec(x)
    if p.is_empty:
        raise PreconditionError("projecting onto the empty set")
    if p.contains(x):
        return x, ZERO
    m = len(p.ineqs)
    eq_mat = tuple(c for c, _ in p.eqs)
    eq_rhs = tuple(e for _, e in p.eqs)
    for size in range(0, m + 1):
        for subset in itertools.combinations(range(m), size):
            rows = eq_mat + tuple(p.ineqs[j][0] for j in subset)
            rhs = eq_rhs + tuple(p.ineqs[j][1] for j in subset)
            if not rows:
                z = x
                if p.contains(z):
                    return z, ZERO
                continue
            red, _ = rref(rows)
            if len(red) != len(rows):
                continue  # dependent rows; an independent subset covers this case
            gram = tuple(tuple(dot(r1, r2) for r2 in rows) for r1 in rows)
            resid = tuple(dot(r, x) - b for r, b in zip(rows, rhs))
            lam = solve(gram, resid)
            if lam is None:
                continue
            z = x
            for coeff, r in zip(lam, rows):
                z = sub(z, scale(coeff, r))
            n_eq = len(eq_mat)
            if any(coeff < 0 for coeff in lam[n_eq:]):
                continue
            if p.contains(z):
                return z, norm_sq(sub(x, z))
    raise AssertionError("projection active-set search failed")  # pragma: no cover


def box(dim: int, halfwidth) -> ConvexPolyhedron:
    """The closed hypercube ``[-halfwidth, halfwidth]^dim``."""
    h = frac(halfwidth)
    rows = []
    for j in range(dim):
        e = unit(dim, j)
        rows.append((e, h))
        rows.append((neg(e), h))
    return ConvexPolyhedron.from_hrep(rows, dim=dim)
