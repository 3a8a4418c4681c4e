import itertools
import random
from fractions import Fraction

import pytest

from spinaltri.linalg import QVector
from spinaltri.polytope import make_polytope
from spinaltri.spine import SpineError, enumerate_spines, spine
from spinaltri.everest import EverestParams, everest_polytope, simplotope_with_spine
from spinaltri.triangulation import pulling_triangulation
from spinaltri.volume import (
    lifting_relation_report,
    polytope_volume,
    triangulation_relative_volume,
    verify_lifting_relation,
)


def cube(d):
    return make_polytope([QVector(b) for b in itertools.product((0, 1), repeat=d)])


def simplex(d):
    pts = [QVector([0] * d)] + [
        QVector([1 if j == i else 0 for j in range(d)]) for i in range(d)
    ]
    return make_polytope(pts)


class TestPolytopeVolume:
    def test_unit_cube(self):
        rep = polytope_volume(cube(3))
        assert rep.volume == 1
        assert rep.sq_volume == 1
        assert rep.dim == 3

    def test_simplex(self):
        assert polytope_volume(simplex(3)).volume == Fraction(1, 6)

    def test_simplotope_32(self):
        p, _ = simplotope_with_spine(2, 2)
        assert polytope_volume(p).volume == Fraction(1, 4)

    def test_everest_12_is_three(self):
        rep = polytope_volume(everest_polytope(EverestParams(1, 2)))
        assert rep.volume == 3

    def test_point_convention(self):
        rep = polytope_volume(make_polytope([QVector([2, 3])]))
        assert rep.volume == 0 and rep.n_simplices == 0

    def test_lower_dimensional_square_root_free(self):
        # Unit segment along the diagonal of the plane: squared length 2.
        p = make_polytope([QVector([0, 0]), QVector([1, 1])])
        rep = polytope_volume(p)
        assert rep.volume is None
        assert rep.sq_volume == 2

    def test_order_invariance(self):
        rng = random.Random(42)
        dim4 = simplotope_with_spine(2, 2)[0]
        for p in (cube(3), simplex(3), everest_polytope(EverestParams(2, 1)), dim4):
            base = polytope_volume(p).volume
            for _ in range(5):
                order = list(range(p.n_vertices))
                rng.shuffle(order)
                assert polytope_volume(p, order).volume == base

    def test_additivity_on_triangulations(self):
        p = cube(3)
        t = pulling_triangulation(p, [5, 2, 7, 0, 1, 3, 4, 6])
        assert triangulation_relative_volume(p, t.simplices) == 1


class TestLiftingRelation:
    def test_cube_diagonal_both_sides_nine(self):
        rep = lifting_relation_report(spine(cube(3), [0, 7]))
        assert rep.lhs == 9
        assert rep.rhs == 9
        assert rep.holds

    def test_square_diagonal(self):
        p, sp = simplotope_with_spine(2, 1)
        rep = lifting_relation_report(sp)
        assert rep.binom == 2
        assert rep.vol_p_sq == 1
        assert rep.vol_spine_sq == 2
        assert rep.vol_shadow_sq == 2
        assert rep.holds

    def test_needs_two_points(self):
        with pytest.raises(SpineError):
            verify_lifting_relation(spine(cube(3), [0]))

    @pytest.mark.parametrize("d", [2, 3])
    def test_all_enumerated_cube_spines(self, d):
        p = cube(d)
        for idx in enumerate_spines(p, 2):
            assert verify_lifting_relation(spine(p, idx))

    def test_all_simplex_spines(self):
        p = simplex(3)
        for idx in enumerate_spines(p, 2):
            assert verify_lifting_relation(spine(p, idx))

    def test_full_spine_of_simplex(self):
        # Shadow degenerates to the origin; its zero-dimensional volume is 1.
        rep = lifting_relation_report(spine(simplex(3), range(4)))
        assert rep.vol_shadow_sq == 1
        assert rep.holds
