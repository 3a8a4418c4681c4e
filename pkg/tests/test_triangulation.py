import itertools
import math
from fractions import Fraction

import pytest

from spinaltri.linalg import QVector, gram_sq_volume
from spinaltri.polytope import NotInConvexPosition, make_polytope
from spinaltri.spine import spine
from spinaltri.everest import simplotope_with_spine
from spinaltri.triangulation import (
    Triangulation,
    TriangulationError,
    fold,
    lift,
    pulling_triangulation,
    shadow,
    shadow_polytope,
    spinal_triangulation,
    star_triangulation,
    validate,
    validate_detailed,
)

def qv(*xs):
    return QVector(xs)


def cube(d):
    return make_polytope([QVector(b) for b in itertools.product((0, 1), repeat=d)])


def simplex(d):
    pts = [QVector([0] * d)] + [
        QVector([1 if j == i else 0 for j in range(d)]) for i in range(d)
    ]
    return make_polytope(pts)


def hexagon_points():
    # Centrally symmetric hexagon with the origin strictly inside.
    return [qv(1, 0), qv(0, 1), qv(-1, 1), qv(-1, 0), qv(0, -1), qv(1, -1)]


class TestPulling:
    def test_segment(self):
        t = pulling_triangulation(make_polytope([qv(0), qv(1)]))
        assert t.simplices == ((0, 1),)

    def test_square_two_triangles_through_first_vertex(self):
        t = pulling_triangulation(cube(2))
        assert t.n_simplices == 2
        assert all(0 in c for c in t.simplices)
        shared = set(t.simplices[0]) & set(t.simplices[1])
        assert 0 in shared and len(shared) == 2

    def test_cube_diagonal_first_gives_staircase(self):
        p = cube(3)
        t = pulling_triangulation(p, [0, 7, 1, 2, 3, 4, 5, 6])
        assert t.n_simplices == 6
        assert all({0, 7} <= set(c) for c in t.simplices)

    def test_validates(self):
        for p in (cube(2), cube(3), simplex(3)):
            assert validate(pulling_triangulation(p), p)

    def test_bad_order_rejected(self):
        with pytest.raises(TriangulationError):
            pulling_triangulation(cube(2), [0, 1, 2])


class TestStar:
    def test_hexagon_fan(self):
        t = star_triangulation(hexagon_points() + [qv(0, 0)])
        assert t.n_simplices == 6
        assert all(6 in c for c in t.simplices)

    def test_square_with_origin_vertex(self):
        pts = [qv(0, 0), qv(1, 0), qv(1, 1), qv(0, 1)]
        t = star_triangulation(pts)
        assert t.n_simplices == 2
        assert all(0 in c for c in t.simplices)

    def test_square_with_origin_on_edge_midpoint(self):
        # Origin at the midpoint of the bottom edge of [-1,1] x [0,2]:
        # three triangles, using all four corners.
        pts = [qv(-1, 0), qv(1, 0), qv(1, 2), qv(-1, 2), qv(0, 0)]
        t = star_triangulation(pts)
        assert t.n_simplices == 3
        assert all(4 in c for c in t.simplices)
        assert set(itertools.chain.from_iterable(t.simplices)) == set(range(5))

    def test_missing_origin(self):
        with pytest.raises(TriangulationError):
            star_triangulation(hexagon_points())

    def test_non_extreme_point_rejected(self):
        pts = hexagon_points() + [qv(Fraction(1, 2), 0), qv(0, 0)]
        with pytest.raises(NotInConvexPosition):
            star_triangulation(pts)

    def test_validates_against_hull(self):
        pts = hexagon_points() + [qv(0, 0)]
        t = star_triangulation(pts)
        hull = make_polytope(hexagon_points())  # the origin is not a vertex
        assert validate(t, hull)


class TestSpinal:
    def test_cube_diagonal(self):
        t = spinal_triangulation(spine(cube(3), [0, 7]))
        assert t.n_simplices == 6
        assert all({0, 7} <= set(c) for c in t.simplices)

    def test_simplex_full_spine_is_itself(self):
        p = simplex(3)
        t = spinal_triangulation(spine(p, range(4)))
        assert t.simplices == ((0, 1, 2, 3),)

    def test_simplotope22_contains_spine(self):
        p, sp = simplotope_with_spine(2, 2)
        t = spinal_triangulation(sp)
        assert all(set(sp.indices) <= set(c) for c in t.simplices)
        assert validate(t, p)

    def test_dcube_has_factorial_cells(self):
        for d in (2, 3, 4):
            p = cube(d)
            sp = spine(p, [0, 2**d - 1])
            t = spinal_triangulation(sp)
            assert t.n_simplices == math.factorial(d)


class TestShadow:
    def test_cube_diagonal_shadow(self):
        sm = shadow(spine(cube(3), [0, 7]))
        assert sm.e == 2
        zeros = [img for img in sm.shadow_points if img.is_zero()]
        assert len(zeros) == 2
        nonzero = [img for img in sm.shadow_points if not img.is_zero()]
        assert len(nonzero) == 6
        assert len(set(v.entries for v in nonzero)) == 6
        hull = shadow_polytope(sm)
        assert hull.n_vertices == 6 and hull.dim == 2

    def test_projection_is_symmetric_idempotent(self):
        sm = shadow(spine(cube(3), [0, 7]))
        assert sm.projection.transpose() == sm.projection
        assert sm.projection @ sm.projection == sm.projection

    def test_full_spine_shadow_is_origin(self):
        p = simplex(3)
        sm = shadow(spine(p, range(4)))
        assert sm.e == 0
        assert all(img.is_zero() for img in sm.shadow_points)

    def test_simplotope_shadow_matches_everest_polytope(self):
        from spinaltri.everest import EverestParams, everest_polytope

        p, sp = simplotope_with_spine(2, 2)
        sm = shadow(sp)
        hull = shadow_polytope(sm)
        # Shadow of S(2,2) along the single-column spine is a linear copy of
        # E(1,2): same vertex and facet counts.
        e12 = everest_polytope(EverestParams(1, 2))
        assert sm.e == 2
        assert hull.n_vertices == e12.n_vertices == 6
        assert len(hull.facets()) == len(e12.facets()) == 6


class TestFoldLift:
    def test_cube_fold_is_hexagon_fan(self):
        sp = spine(cube(3), [0, 7])
        sm = shadow(sp)
        t = spinal_triangulation(sp)
        f = fold(t, sm)
        assert f.n_simplices == 6
        assert all(0 in c for c in f.simplices)

    def test_full_spine_folds_to_point(self):
        p = simplex(3)
        sp = spine(p, range(4))
        sm = shadow(sp)
        t = spinal_triangulation(sp)
        f = fold(t, sm)
        assert f.simplices == ((0,),)
        assert lift(f, sm).simplices == t.simplices

    def test_square_diag_folds_to_two_segments(self):
        p, sp_ = simplotope_with_spine(2, 1)
        idx = sp_.indices
        sm = shadow(sp_)
        f = fold(spinal_triangulation(sp_), sm)
        assert f.n_simplices == 2
        assert f.dim == 1

    def test_round_trip_cube(self):
        sp = spine(cube(3), [0, 7])
        sm = shadow(sp)
        t = spinal_triangulation(sp)
        assert lift(fold(t, sm), sm).simplices == t.simplices

    def test_fold_requires_spinal(self):
        p = cube(3)
        sp = spine(p, [0, 7])
        sm = shadow(sp)
        t = pulling_triangulation(p, [1, 2, 3, 4, 5, 6, 7, 0])
        assert any(not {0, 7} <= set(c) for c in t.simplices)
        with pytest.raises(TriangulationError):
            fold(t, sm)

    def test_lift_of_synthetic_star(self):
        sp = spine(cube(3), [0, 7])
        sm = shadow(sp)
        star = star_triangulation(list(sm.star_points))
        lifted = lift(star, sm)
        assert all({0, 7} <= set(c) for c in lifted.simplices)
        assert validate(lifted, cube(3))
        assert fold(lifted, sm).simplices == star.simplices

    def test_lift_rejects_foreign_points(self):
        sp = spine(cube(3), [0, 7])
        sm = shadow(sp)
        bogus = Triangulation.make(
            [QVector.zero(3), qv(5, 5, 5)], [(0, 1)], 1
        )
        with pytest.raises(TriangulationError):
            lift(bogus, sm)


class TestPerCellVolumeLaw:
    @staticmethod
    def _check_cells(p, sp):
        sm = shadow(sp)
        t = spinal_triangulation(sp)
        d = p.dim
        uset = set(sp.indices)
        vol_u_sq = gram_sq_volume(sp.points(), sp.n - 1)
        binom = math.comb(d, sp.n - 1)
        star_of = {g: k for k, g in enumerate(sm.lift_indices) if g >= 0}
        for cell in t.simplices:
            pts = [p.vertices[i] for i in cell]
            cell_sq = gram_sq_volume(pts, d)
            folded = sorted([0] + [star_of[i] for i in cell if i not in uset])
            fpts = [sm.star_points[i] for i in folded]
            fold_sq = gram_sq_volume(fpts, sm.e)
            assert binom**2 * cell_sq == vol_u_sq * fold_sq

    def test_fold_volume_factor_cube(self):
        # For each spinal cell and its fold: binom(d, n-1)^2 vol(cell)^2
        # equals vol(spine simplex)^2 times vol(folded cell)^2.
        self._check_cells(cube(3), spine(cube(3), [0, 7]))

    def test_fold_volume_factor_simplotope(self):
        p, sp = simplotope_with_spine(2, 2)
        self._check_cells(p, sp)


class TestValidate:
    def test_detects_dropped_cell(self):
        p = cube(3)
        t = pulling_triangulation(p)
        broken = Triangulation(t.points, t.simplices[1:], t.dim)
        ok, reason = validate_detailed(broken, p)
        assert not ok

    def test_detects_duplicate_cell(self):
        p = cube(3)
        t = pulling_triangulation(p)
        broken = Triangulation(t.points, t.simplices + (t.simplices[0],), t.dim)
        assert not validate(broken, p)

    def test_detects_overlap(self):
        # Two triangles both covering the square's center region.
        pts = [qv(0, 0), qv(1, 0), qv(1, 1), qv(0, 1)]
        p = make_polytope(pts)
        overlap = Triangulation(tuple(pts), ((0, 1, 2), (0, 1, 3), (0, 2, 3)), 2)
        assert not validate(overlap, p)

    def test_detects_nested_cell_by_volume(self):
        pts = [qv(0, 0), qv(4, 0), qv(0, 4), qv(1, 1), qv(2, 1), qv(1, 2)]
        p = make_polytope(pts[:3])
        nested = Triangulation(tuple(pts), ((0, 1, 2), (3, 4, 5)), 2)
        assert not validate(nested, p)

    def test_detects_volume_preserving_overlap_via_lp(self):
        # Two area-2 triangles overlapping inside an area-4 square: the
        # volume check passes and no facet plane of either separates them,
        # so only the exact LP fallback can reject the pair.
        pts = [qv(0, 0), qv(2, 0), qv(2, 2), qv(0, 2)]
        p = make_polytope(pts)
        t = Triangulation(tuple(pts), ((0, 1, 2), (0, 1, 3)), 2)
        assert not validate(t, p)

    def test_detects_degenerate_cell(self):
        pts = [qv(0, 0), qv(1, 0), qv(1, 1), qv(0, 1)]
        p = make_polytope(pts)
        t = Triangulation(tuple(pts), ((0, 1, 2), (0, 1, 3)), 2)
        assert not validate(t, p)  # (0,1,3) is fine but (0,1,2),(0,1,3) miss area

    def test_accepts_pulling_any_order(self):
        import random

        p = cube(3)
        rng = random.Random(7)
        for _ in range(5):
            order = list(range(8))
            rng.shuffle(order)
            assert validate(pulling_triangulation(p, order), p)
