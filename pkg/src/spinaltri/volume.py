"""Exact polytope volumes via triangulation, and the projection volume law.

Full-dimensional volumes are rational and reported directly.  For a polytope
whose affine hull is a proper subspace, each cell volume carries the same
irrational factor sqrt(det G) of the hull basis Gram matrix G, so the
rational "relative" volumes are summed first and only the square of the
total is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import QVector, det, gram_sq_volume, QMatrix
from .polytope import Polytope
from .spine import Spine, SpineError
from .triangulation import pulling_triangulation, shadow, shadow_polytope


@dataclass(frozen=True)
class VolumeReport:
    dim: int
    n_simplices: int
    sq_volume: Fraction
    volume: Fraction | None


def simplex_relative_volume(coords: Sequence[QVector]) -> Fraction:
    """|det of edge matrix| / k! for k+1 points given in hull coordinates."""
    k = len(coords) - 1
    if k == 0:
        return Fraction(1)
    edges = QMatrix([list(q - coords[0]) for q in coords[1:]], cols=k)
    d = det(edges)
    return abs(d) / math.factorial(k)


def triangulation_relative_volume(p: Polytope, simplices) -> Fraction:
    coords = p.frame().coords
    return sum(
        (simplex_relative_volume([coords[i] for i in c]) for c in simplices),
        Fraction(0),
    )


def polytope_relative_volume(p: Polytope) -> Fraction:
    """Hull-frame volume of p via a pulling triangulation (cached)."""
    if p._relvol is None:
        if p.dim == 0:
            p._relvol = Fraction(0)
        else:
            t = pulling_triangulation(p)
            p._relvol = triangulation_relative_volume(p, t.simplices)
    return p._relvol


def polytope_volume(p: Polytope, order: Sequence[int] | None = None) -> VolumeReport:
    """Triangulate-and-sum volume.

    Full-dimensional polytopes report the rational volume and its square;
    lower-dimensional ones report the (rational) squared volume only.
    """
    if p.dim == 0:
        return VolumeReport(0, 0, Fraction(0), Fraction(0))
    t = pulling_triangulation(p, order)
    rel = triangulation_relative_volume(p, t.simplices)
    fr = p.frame()
    if fr.identity:
        return VolumeReport(p.dim, t.n_simplices, rel * rel, rel)
    return VolumeReport(p.dim, t.n_simplices, rel * rel * fr.gram_det, None)


@dataclass(frozen=True)
class LiftingRelationReport:
    """Both sides of the squared volume relation

    C(d, n-1)^2 vol(P)^2 = vol(U)^2 vol(shadow)^2
    for a spine U of size n in a d-dimensional polytope P."""

    binom: int
    vol_p_sq: Fraction
    vol_spine_sq: Fraction
    vol_shadow_sq: Fraction

    @property
    def lhs(self) -> Fraction:
        return self.binom**2 * self.vol_p_sq

    @property
    def rhs(self) -> Fraction:
        return self.vol_spine_sq * self.vol_shadow_sq

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def lifting_relation_report(s: Spine) -> LiftingRelationReport:
    if s.n < 2:
        raise SpineError("the volume relation needs a spine with at least 2 points")
    p = s.polytope
    d = p.dim
    vol_p_sq = polytope_volume(p).sq_volume
    vol_u_sq = gram_sq_volume(s.points(), s.n - 1)
    sm = shadow(s)
    if sm.e == 0:
        vol_shadow_sq = Fraction(1)  # the shadow is a single point
    else:
        vol_shadow_sq = polytope_volume(shadow_polytope(sm)).sq_volume
    return LiftingRelationReport(
        math.comb(d, s.n - 1), vol_p_sq, vol_u_sq, vol_shadow_sq
    )


def verify_lifting_relation(s: Spine) -> bool:
    """Exact check of the squared projection volume law for a spine."""
    return lifting_relation_report(s).holds
