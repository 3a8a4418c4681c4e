"""Triangulations of polytopes: pulling, star, and spinal constructions.

The central correspondence implemented here: given a spine U of a polytope P,
the orthogonal projection along the affine span of U sends P to a shadow in
the complementary subspace.  Triangulations of P whose cells all contain U
("spinal") fold to triangulations of the shadow whose cells all contain the
origin ("star"), and every star triangulation of the shadow lifts back.  The
two maps are mutually inverse bijections on maximal cells.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import QMatrix, QVector, inverse, kernel_basis
from .lp import EQ, LT, lp_feasible
from .polytope import (
    Polytope,
    PolytopeError,
    extreme_points,
    frame_coords,
    make_polytope,
)
from .spine import Spine


class TriangulationError(ValueError):
    pass


class ShadowInternalError(RuntimeError):
    """A projection property that the theory guarantees failed to hold."""


@dataclass(frozen=True)
class Triangulation:
    """Maximal simplices as sorted index tuples into a shared point table."""

    points: tuple[QVector, ...]
    simplices: tuple[tuple[int, ...], ...]
    dim: int

    @classmethod
    def make(
        cls,
        points: Sequence[QVector],
        simplices: Iterable[Sequence[int]],
        dim: int,
    ) -> "Triangulation":
        canon = sorted({tuple(sorted(s)) for s in simplices})
        return cls(tuple(points), tuple(canon), dim)

    @property
    def n_simplices(self) -> int:
        return len(self.simplices)


class _PullContext:
    """Recursive pulling machinery over the faces of one polytope.

    Faces are identified by their (global) vertex index sets; each face's
    pulling triangulation is memoized because neighbouring face chains share
    lower faces.
    """

    def __init__(self, p: Polytope, rank: dict[int, int]):
        self.p = p
        self.rank = rank
        self.all_indices = frozenset(range(p.n_vertices))
        self.memo: dict[frozenset, tuple[tuple[int, ...], ...]] = {}

    def pull(self, face: frozenset) -> tuple[tuple[int, ...], ...]:
        cached = self.memo.get(face)
        if cached is not None:
            return cached
        if len(face) == 1:
            result = ((next(iter(face)),),)
            self.memo[face] = result
            return result
        ordered = sorted(face)
        if face == self.all_indices:
            poly = self.p
        else:
            poly = Polytope._trusted(
                [self.p.vertices[i] for i in ordered], self.p.ambient_dim
            )
        first = min(face, key=self.rank.__getitem__)
        cells: set[tuple[int, ...]] = set()
        for facet in poly.facets():
            inc = frozenset(ordered[j] for j in facet.incident)
            if first in inc:
                continue
            for tau in self.pull(inc):
                cells.add(tuple(sorted((first,) + tau)))
        result = tuple(sorted(cells))
        self.memo[face] = result
        return result


def _normalize_order(p: Polytope, order: Sequence[int] | None) -> list[int]:
    if order is None:
        return list(range(p.n_vertices))
    order = list(order)
    if sorted(order) != list(range(p.n_vertices)):
        raise TriangulationError("order must be a permutation of all vertex indices")
    return order


def pulling_triangulation(p: Polytope, order: Sequence[int] | None = None) -> Triangulation:
    """Pulling triangulation: recursively join each face's first vertex with
    the pulling triangulations of the face's facets avoiding that vertex."""
    order = _normalize_order(p, order)
    rank = {v: i for i, v in enumerate(order)}
    ctx = _PullContext(p, rank)
    cells = ctx.pull(ctx.all_indices)
    want = p.dim + 1
    if any(len(c) != want for c in cells):
        raise TriangulationError("pulling produced a cell of the wrong dimension")
    return Triangulation.make(p.vertices, cells, p.dim)


def star_triangulation(
    points: Sequence[QVector], order: Sequence[int] | None = None
) -> Triangulation:
    """Star triangulation with respect to the origin.

    The input points must contain the origin exactly once, with the other
    points in convex position; non-extreme nonzero points are rejected.
    Three positions of the origin are handled: strictly inside the hull of
    the others, on its boundary, or outside with the whole point set in
    convex position.  The optional order steers the underlying pulling
    triangulations, which is what makes distinct star triangulations of the
    same shadow reachable; the default is input order.
    """
    pts = [q if isinstance(q, QVector) else QVector(q) for q in points]
    zeros = [i for i, q in enumerate(pts) if q.is_zero()]
    if len(zeros) != 1:
        raise TriangulationError(
            f"need the origin exactly once among the points, found {len(zeros)}"
        )
    z = zeros[0]
    if order is not None:
        order = list(order)
        if sorted(order) != list(range(len(pts))):
            raise TriangulationError("order must be a permutation of the point indices")
    others = [i for i in range(len(pts)) if i != z]
    hull = make_polytope([pts[i] for i in others])  # rejects non-extreme points

    if not hull.contains(pts[z]):
        # Origin outside: the full point set must be in convex position and
        # the origin is then a hull vertex; pulling with the origin first is
        # a star triangulation.
        full = make_polytope(pts)
        base = order if order is not None else list(range(len(pts)))
        pull_order = [z] + [i for i in base if i != z]
        return pulling_triangulation(full, pull_order)

    # Origin inside or on the boundary: cone from the origin over the
    # boundary cells of every facet whose affine hull misses the origin.
    base = order if order is not None else list(range(len(pts)))
    local_of = {g: l for l, g in enumerate(others)}
    local_rank = {local_of[g]: i for i, g in enumerate(base) if g != z}
    ctx = _PullContext(hull, local_rank)
    cells: set[tuple[int, ...]] = set()
    for facet in hull.facets():
        if facet.normal.dot(pts[z]) == facet.offset:
            continue  # origin lies in this facet's hyperplane; cone is flat
        for tau in ctx.pull(frozenset(facet.incident)):
            cells.add(tuple(sorted((z,) + tuple(others[j] for j in tau))))
    tri = Triangulation.make(pts, cells, hull.dim)
    used = set(itertools.chain.from_iterable(tri.simplices))
    if used != set(range(len(pts))):
        raise ShadowInternalError("star construction failed to use every point")
    return tri


def spinal_triangulation(s: Spine) -> Triangulation:
    """Pulling triangulation with the spine pulled first; every maximal cell
    then contains the whole spine."""
    p = s.polytope
    rest = [i for i in range(p.n_vertices) if i not in set(s.indices)]
    t = pulling_triangulation(p, list(s.indices) + rest)
    uset = set(s.indices)
    if any(not uset <= set(c) for c in t.simplices):
        raise ShadowInternalError("pulling with spine-first order was not spinal")
    return t


class ShadowMap:
    """Projection data for a spine: the orthogonal projector onto the
    complement of the spine's span, the projected vertex images, and the
    bijection from nonzero images back to original vertices."""

    def __init__(self, sp: Spine):
        p = sp.polytope
        d = p.ambient_dim
        self.spine = sp
        self.translation = p.vertices[sp.indices[0]]
        directions = [p.vertices[i] - self.translation for i in sp.indices[1:]]
        if directions:
            a = QMatrix.from_cols(directions, dim=d)
            gram_inv = inverse(a.transpose() @ a)
            proj = QMatrix.identity(d) - a @ gram_inv @ a.transpose()
        else:
            proj = QMatrix.identity(d)
        if proj.transpose() != proj or proj @ proj != proj:
            raise ShadowInternalError("projector is not symmetric idempotent")
        self.projection = proj
        images = tuple(proj @ (v - self.translation) for v in p.vertices)
        uset = set(sp.indices)
        for i in sp.indices:
            if not images[i].is_zero():
                raise ShadowInternalError("a spine point escaped the kernel")
        seen: dict[tuple, int] = {}
        for i, img in enumerate(images):
            if i in uset:
                continue
            if img.is_zero():
                raise ShadowInternalError(f"non-spine vertex {i} projected to zero")
            if img.entries in seen:
                raise ShadowInternalError(
                    f"vertices {seen[img.entries]} and {i} share a projection"
                )
            seen[img.entries] = i
        self.shadow_points = images
        nonspine = [i for i in range(p.n_vertices) if i not in uset]
        self.star_points = (QVector.zero(d),) + tuple(images[i] for i in nonspine)
        self.lift_indices = (-1,) + tuple(nonspine)
        self.e = p.dim - sp.n + 1
        self._shadow_poly: Polytope | None = None

    @property
    def lift_table(self) -> dict[QVector, int]:
        return {
            self.star_points[k]: self.lift_indices[k]
            for k in range(1, len(self.star_points))
        }


def shadow(sp: Spine) -> ShadowMap:
    return ShadowMap(sp)


def shadow_polytope(sm: ShadowMap) -> Polytope:
    """Convex hull of the projected vertex images (the origin included)."""
    if sm._shadow_poly is None:
        ext = extreme_points(list(sm.shadow_points))
        sm._shadow_poly = Polytope._trusted(ext, sm.spine.polytope.ambient_dim)
    return sm._shadow_poly


def fold(t: Triangulation, sm: ShadowMap, *, check: bool = True) -> Triangulation:
    """Project a spinal triangulation: spine vertices collapse to the origin,
    other vertices map to their shadow images."""
    p = sm.spine.polytope
    if t.points != p.vertices:
        raise TriangulationError("triangulation is not over the spine's polytope")
    uset = set(sm.spine.indices)
    star_of = {g: k for k, g in enumerate(sm.lift_indices) if g >= 0}
    cells = []
    for c in t.simplices:
        if not uset <= set(c):
            raise TriangulationError("triangulation is not spinal for this spine")
        cells.append(tuple(sorted([0] + [star_of[i] for i in c if i not in uset])))
    result = Triangulation.make(sm.star_points, cells, sm.e)
    if check and not _is_valid_star(result, sm):
        raise ShadowInternalError("fold of a spinal triangulation failed validation")
    return result


def lift(star: Triangulation, sm: ShadowMap, *, check: bool = True) -> Triangulation:
    """Reconstruct the spinal triangulation over the original polytope from a
    star triangulation of the shadow: the origin expands to the whole spine,
    nonzero shadow vertices are replaced by their unique preimages."""
    p = sm.spine.polytope
    table = sm.lift_table
    cells = []
    for c in star.simplices:
        pts = [star.points[i] for i in c]
        zero_count = sum(1 for q in pts if q.is_zero())
        if zero_count != 1:
            raise TriangulationError("star cell must contain the origin exactly once")
        lifted = list(sm.spine.indices)
        for q in pts:
            if q.is_zero():
                continue
            orig = table.get(q)
            if orig is None:
                raise TriangulationError(f"star vertex {q!r} not in the lift table")
            lifted.append(orig)
        cells.append(tuple(sorted(lifted)))
    result = Triangulation.make(p.vertices, cells, p.dim)
    if check and not validate(result, p):
        raise TriangulationError("lift is not a triangulation of the polytope")
    return result


def _is_valid_star(t: Triangulation, sm: ShadowMap) -> bool:
    if any(0 not in c for c in t.simplices):
        return False
    return validate(t, shadow_polytope(sm))


def validate(t: Triangulation, p: Polytope) -> bool:
    ok, _ = validate_detailed(t, p)
    return ok


def validate_detailed(t: Triangulation, p: Polytope) -> tuple[bool, str]:
    """Exact triangulation validation: full-dimensional cells, volumes summing
    to the polytope volume, pairwise disjoint interiors, every point used."""
    from .volume import polytope_relative_volume, simplex_relative_volume

    k = p.dim
    n = len(t.points)
    if k == 0:
        if tuple(t.simplices) == ((0,),) and n == 1:
            return True, "ok"
        return False, "a point polytope is triangulated by itself only"
    try:
        coords = [frame_coords(p, q) for q in t.points]
    except PolytopeError:
        return False, "a point lies outside the affine hull of the polytope"
    if not t.simplices:
        return False, "no maximal simplices"
    for c in t.simplices:
        if len(c) != k + 1 or len(set(c)) != k + 1:
            return False, f"cell {c} does not have {k + 1} distinct vertices"
        if any(not 0 <= i < n for i in c):
            return False, f"cell {c} references a missing point"
    rel = []
    for c in t.simplices:
        v = simplex_relative_volume([coords[i] for i in c])
        if v == 0:
            return False, f"cell {c} is degenerate"
        rel.append(v)
    total = sum(rel)
    expected = polytope_relative_volume(p)
    if total != expected:
        return False, f"cell volumes sum to {total}, polytope volume is {expected}"
    used = set(itertools.chain.from_iterable(t.simplices))
    if used != set(range(n)):
        return False, "some points are not vertices of any cell"
    cells = [tuple(coords[i] for i in c) for c in t.simplices]
    planes = [_simplex_planes(cell) for cell in cells]
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            if _plane_separated(cells[i], cells[j], planes[i], planes[j]):
                continue
            if _interiors_meet(cells[i], cells[j]):
                return False, (
                    f"cells {t.simplices[i]} and {t.simplices[j]} overlap"
                )
    return True, "ok"


def _simplex_planes(cell: tuple[QVector, ...]):
    """Facet hyperplanes of a nondegenerate k-simplex, oriented so the
    dropped vertex is on the positive side."""
    k = len(cell) - 1
    planes = []
    for drop in range(k + 1):
        rest = [cell[i] for i in range(k + 1) if i != drop]
        edges = QMatrix([list(q - rest[0]) for q in rest[1:]], cols=k)
        (normal,) = kernel_basis(edges)
        offset = normal.dot(rest[0])
        side = normal.dot(cell[drop]) - offset
        if side < 0:
            normal, offset, side = -normal, -offset, -side
        planes.append((normal, offset))
    return planes


def _plane_separated(cell_a, cell_b, planes_a, planes_b) -> bool:
    for normal, offset in planes_a:
        if all(normal.dot(q) <= offset for q in cell_b):
            return True
    for normal, offset in planes_b:
        if all(normal.dot(q) <= offset for q in cell_a):
            return True
    return False


def _interiors_meet(cell_a, cell_b) -> bool:
    """Exact test for a common interior point of two k-simplices in R^k."""
    na, nb = len(cell_a), len(cell_b)
    k = len(cell_a[0])
    total = na + nb
    cons = []
    for i in range(total):
        coeff = [Fraction(0)] * total
        coeff[i] = Fraction(-1)
        cons.append((coeff, Fraction(0), LT))  # strictly positive weights
    cons.append(([1] * na + [0] * nb, Fraction(1), EQ))
    cons.append(([0] * na + [1] * nb, Fraction(1), EQ))
    for c in range(k):
        row = [q[c] for q in cell_a] + [-q[c] for q in cell_b]
        cons.append((row, Fraction(0), EQ))
    return lp_feasible(cons)
