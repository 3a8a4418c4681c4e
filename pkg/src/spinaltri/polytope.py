"""V-representation polytopes with exact facet enumeration.

Polytopes are stored as ordered vertex lists over Q.  Facets are enumerated
by brute force over candidate hyperplanes spanned by vertex subsets, which
is O(C(#vertices, dim)) and perfectly auditable at desk scale.  Polytopes
whose affine hull is lower-dimensional than the ambient space are handled
by switching to exact coordinates in a basis of the hull first.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import (
    DimensionError,
    QMatrix,
    QVector,
    inverse,
)
from .lp import EQ, LE, lp_feasible

DEFAULT_MAX_AMBIENT_DIM = 16
DEFAULT_MAX_VERTICES = 30
ENV_MAX_DIM = "SPINALTRI_MAX_DIM"


class PolytopeError(ValueError):
    """Base class for polytope construction and query failures."""


class DuplicatePoint(PolytopeError):
    def __init__(self, index: int, first: int):
        super().__init__(f"point {index} duplicates point {first}")
        self.index = index
        self.first = first


class NotInConvexPosition(PolytopeError):
    def __init__(self, index: int):
        super().__init__(
            f"point {index} lies in the convex hull of the others; "
            "input must be in convex position"
        )
        self.index = index


class DegeneratePolytope(PolytopeError):
    pass


def max_ambient_dim() -> int:
    """Desk-scale ambient dimension cap; override via SPINALTRI_MAX_DIM."""
    raw = os.environ.get(ENV_MAX_DIM)
    if raw:
        return int(raw)
    return DEFAULT_MAX_AMBIENT_DIM


@dataclass(frozen=True)
class Facet:
    """A facet-defining inequality normal.v <= offset plus its incident set.

    The normal has coprime integer entries, points outward, and lies in the
    direction space of the polytope's affine hull, which makes the canonical
    form unique.
    """

    normal: QVector
    offset: Fraction
    incident: tuple[int, ...]


@dataclass(frozen=True)
class _Frame:
    """Exact coordinates of the vertices in a basis of the affine hull."""

    dim: int
    origin: QVector
    basis: tuple[QVector, ...]
    coords: tuple[QVector, ...]
    gram_det: Fraction
    identity: bool
    bmat: QMatrix | None = None
    gram_inv: QMatrix | None = None


class Polytope:
    """Convex polytope given by its vertices, in convex position."""

    def __init__(self, vertices: Sequence[QVector], ambient_dim: int):
        self.vertices: tuple[QVector, ...] = tuple(vertices)
        self.ambient_dim = ambient_dim
        self._dim: int | None = None
        self._facets: list[Facet] | None = None
        self._frame: _Frame | None = None
        self._relvol: Fraction | None = None

    @classmethod
    def _trusted(cls, vertices: Sequence[QVector], ambient_dim: int) -> "Polytope":
        # Constructor for vertex subsets already known to be in convex
        # position (faces of a validated polytope, extreme-point output).
        return cls(vertices, ambient_dim)

    def __repr__(self) -> str:
        return f"Polytope({len(self.vertices)} vertices in R^{self.ambient_dim}, dim {self.dim})"

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def dim(self) -> int:
        if self._dim is None:
            self._dim = self.frame().dim
        return self._dim

    def frame(self) -> _Frame:
        if self._frame is None:
            self._frame = _build_frame(self.vertices, self.ambient_dim)
        return self._frame

    def facets(self) -> list[Facet]:
        if self._facets is None:
            self._facets = _enumerate_facets(self)
        return self._facets

    def contains(self, x: QVector) -> bool:
        """Exact membership test via LP on convex-combination weights."""
        if len(x) != self.ambient_dim:
            raise DimensionError(
                f"point of dim {len(x)} against ambient dim {self.ambient_dim}"
            )
        return _in_convex_hull(x, self.vertices)


def make_polytope(
    points: Sequence[QVector], *, max_vertices: int = DEFAULT_MAX_VERTICES
) -> Polytope:
    """Validate convex position and pairwise distinctness, then build.

    Points inside the hull of the others are rejected rather than filtered;
    use extreme_points() for explicit filtering.
    """
    pts = [p if isinstance(p, QVector) else QVector(p) for p in points]
    if not pts:
        raise PolytopeError("empty point list")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise DimensionError("points of mixed dimension")
    if dim > max_ambient_dim():
        raise PolytopeError(
            f"ambient dimension {dim} exceeds the desk-scale cap "
            f"{max_ambient_dim()}; set {ENV_MAX_DIM} to override"
        )
    if len(pts) > max_vertices:
        raise PolytopeError(
            f"{len(pts)} vertices exceed the desk-scale cap {max_vertices}"
        )
    seen: dict[tuple, int] = {}
    for i, p in enumerate(pts):
        if p.entries in seen:
            raise DuplicatePoint(i, seen[p.entries])
        seen[p.entries] = i
    for i in range(len(pts)):
        if len(pts) > 1 and _in_convex_hull(pts[i], pts[:i] + pts[i + 1 :]):
            raise NotInConvexPosition(i)
    return Polytope(pts, dim)


def extreme_points(points: Sequence[QVector]) -> list[QVector]:
    """Sublist of points that are vertices of the hull; duplicates collapsed."""
    pts = [p if isinstance(p, QVector) else QVector(p) for p in points]
    unique: list[QVector] = []
    seen: set[tuple] = set()
    for p in pts:
        if p.entries not in seen:
            seen.add(p.entries)
            unique.append(p)
    if len(unique) <= 1:
        return unique
    keep = []
    for i, p in enumerate(unique):
        if not _in_convex_hull(p, unique[:i] + unique[i + 1 :]):
            keep.append(p)
    return keep


def _in_convex_hull(x: QVector, hull_points: Sequence[QVector]) -> bool:
    if not hull_points:
        return False
    n = len(hull_points)
    constraints = []
    for i in range(n):
        coeff = [Fraction(0)] * n
        coeff[i] = Fraction(-1)
        constraints.append((coeff, Fraction(0), LE))  # lambda_i >= 0
    constraints.append(([Fraction(1)] * n, Fraction(1), EQ))  # sum = 1
    for c in range(len(x)):
        constraints.append(([p[c] for p in hull_points], x[c], EQ))
    return lp_feasible(constraints)


def _build_frame(vertices: tuple[QVector, ...], ambient_dim: int) -> _Frame:
    if len(vertices) == 1:
        return _Frame(0, vertices[0], (), (QVector([]),), Fraction(1), False)
    # Greedy: scan edge vectors from vertices[0] for a maximal independent set.
    origin = vertices[0]
    basis: list[QVector] = []
    echelon: list[list[Fraction]] = []
    for v in vertices[1:]:
        e = v - origin
        red = _reduce_against(list(e.entries), echelon)
        if red is not None:
            echelon.append(red)
            basis.append(e)
        if len(basis) == ambient_dim:
            break
    k = len(basis)
    if k == ambient_dim:
        return _Frame(
            k, QVector.zero(ambient_dim), tuple(basis), vertices, Fraction(1), True
        )
    bmat = QMatrix.from_cols(basis, dim=ambient_dim)
    gram = bmat.transpose() @ bmat
    gram_inv = inverse(gram)
    gram_det = _det_small(gram)
    coords = []
    for v in vertices:
        rhs = bmat.transpose() @ (v - origin)
        c = gram_inv @ rhs
        # Consistency: v must lie in the affine hull of the chosen basis.
        if bmat @ c != v - origin:
            raise PolytopeError("point outside the affine hull of the basis")
        coords.append(c)
    return _Frame(
        k, origin, tuple(basis), tuple(coords), gram_det, False, bmat, gram_inv
    )


def _det_small(m: QMatrix) -> Fraction:
    from .linalg import det

    return det(m)


def _reduce_against(
    vec: list[Fraction], echelon: list[list[Fraction]]
) -> list[Fraction] | None:
    """Reduce vec by echelon rows; return the reduced row or None if dependent."""
    v = list(vec)
    for row in echelon:
        lead = next(i for i, x in enumerate(row) if x != 0)
        if v[lead] != 0:
            f = v[lead] / row[lead]
            v = [a - f * b for a, b in zip(v, row)]
    if all(x == 0 for x in v):
        return None
    return v


def frame_coords(p: Polytope, point: QVector) -> QVector:
    """Coordinates of an ambient point in p's hull frame (must lie in the hull)."""
    fr = p.frame()
    if fr.identity:
        return point
    if not fr.basis:
        if point != fr.origin:
            raise PolytopeError("point outside the affine hull")
        return QVector([])
    c = fr.gram_inv @ (fr.bmat.transpose() @ (point - fr.origin))
    if fr.bmat @ c != point - fr.origin:
        raise PolytopeError("point outside the affine hull")
    return c


def _scaled_int_coords(coords: Sequence[QVector]) -> list[tuple[int, ...]]:
    denoms = [x.denominator for q in coords for x in q]
    mult = math.lcm(*denoms) if denoms else 1
    return [tuple(int(x * mult) for x in q) for q in coords]


def _enumerate_facets(p: Polytope) -> list[Facet]:
    k = p.dim
    if k == 0:
        raise DegeneratePolytope("a single point has no facets")
    fr = p.frame()
    int_pts = _scaled_int_coords(fr.coords)
    raw = _supporting_hyperplanes(int_pts, k)
    facets = []
    n = len(p.vertices)
    for normal_ints, offset_int, mask in raw:
        incident = tuple(i for i in range(n) if mask >> i & 1)
        normal_amb, offset = _lift_normal(p, fr, normal_ints, offset_int, incident)
        facets.append(Facet(normal_amb, offset, incident))
    facets.sort(key=lambda f: (f.normal.entries, f.offset))
    return facets


def _lift_normal(
    p: Polytope,
    fr: _Frame,
    normal_ints: Sequence[int],
    offset_int: int,
    incident: tuple[int, ...],
) -> tuple[QVector, Fraction]:
    """Turn a hull-coordinate hyperplane into canonical ambient form."""
    if fr.identity:
        n_amb = QVector(normal_ints)
        # Undo the integer scaling of the coordinates via any incident vertex.
        offset = n_amb.dot(p.vertices[incident[0]])
    else:
        g = QVector(normal_ints)
        n_amb = fr.bmat @ (fr.gram_inv @ g)
        offset = n_amb.dot(p.vertices[incident[0]])
    mult = math.lcm(*(x.denominator for x in n_amb))
    ints = [int(x * mult) for x in n_amb]
    g0 = math.gcd(*(abs(v) for v in ints))
    ints = [v // g0 for v in ints]
    normal = QVector(ints)
    offset = offset * mult / g0
    # Outward orientation: every vertex satisfies normal.v <= offset.
    if any(normal.dot(v) > offset for v in p.vertices):
        normal = -normal
        offset = -offset
    return normal, offset


def _supporting_hyperplanes(
    pts: list[tuple[int, ...]], k: int
) -> list[tuple[tuple[int, ...], int, int]]:
    """All supporting hyperplanes of a dim-k integer point set in Z^k.

    Returns (normal, offset, incident_mask) triples with normal.p <= offset
    for every point.  Enumerates k-subsets depth-first so that the partial
    eliminations of shared prefixes are computed once; affinely dependent
    prefixes are pruned, and subsets lying inside an already found facet are
    skipped before the expensive leaf work.
    """
    n = len(pts)
    found: dict[int, tuple[tuple[int, ...], int]] = {}
    found_masks: list[int] = []
    if n < k:
        return []

    def leaf(base: int, rows: list[list[int]], pivots: list[int], mask: int) -> None:
        for fm in found_masks:
            if mask & fm == mask:
                return
        free = next(c for c in range(k) if c not in pivots)
        # Back-substitute the echelon (creation order) for the kernel vector.
        x: list[Fraction] = [Fraction(0)] * k
        x[free] = Fraction(1)
        for idx in range(len(rows) - 1, -1, -1):
            row = rows[idx]
            c = pivots[idx]
            s = row[free] * x[free]
            for later in pivots[idx + 1 :]:
                if row[later] != 0:
                    s += row[later] * x[later]
            x[c] = -s / row[c]
        mult = math.lcm(*(f.denominator for f in x))
        normal = [int(f * mult) for f in x]
        g0 = math.gcd(*(abs(v) for v in normal))
        if g0 > 1:
            normal = [v // g0 for v in normal]
        base_pt = pts[base]
        offset = sum(normal[c] * base_pt[c] for c in range(k))
        above = below = False
        inc_mask = 0
        for i, q in enumerate(pts):
            s = sum(normal[c] * q[c] for c in range(k)) - offset
            if s > 0:
                above = True
                if below:
                    return
            elif s < 0:
                below = True
                if above:
                    return
            else:
                inc_mask |= 1 << i
        if above:
            normal = [-v for v in normal]
            offset = -offset
        if inc_mask not in found:
            found[inc_mask] = (tuple(normal), offset)
            found_masks.append(inc_mask)

    def descend(
        base: int,
        start: int,
        count: int,
        rows: list[list[int]],
        pivots: list[int],
        mask: int,
    ) -> None:
        remaining = k - count
        for i in range(start, n - remaining + 1):
            edge = [pts[i][c] - pts[base][c] for c in range(k)]
            red = list(edge)
            for row, c in zip(rows, pivots):
                if red[c] != 0:
                    piv = row[c]
                    f = red[c]
                    red = [piv * a - f * b for a, b in zip(red, row)]
            piv_col = next((c for c, v in enumerate(red) if v != 0), None)
            if piv_col is None:
                continue  # affinely dependent on the chosen prefix
            rows.append(red)
            pivots.append(piv_col)
            if count + 1 == k:
                leaf(base, rows, pivots, mask | 1 << i)
            else:
                descend(base, i + 1, count + 1, rows, pivots, mask | 1 << i)
            rows.pop()
            pivots.pop()

    for base in range(n - k + 1):
        if k == 1:
            leaf(base, [], [], 1 << base)
        else:
            descend(base, base + 1, 1, [], [], 1 << base)
    return [(nrm, off, m) for m, (nrm, off) in found.items()]
