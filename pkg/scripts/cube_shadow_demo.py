#!/usr/bin/env python3
"""Walk the cube-to-hexagon pipeline end to end.

The d-cube with a main-diagonal spine projects to a shadow in the diagonal's
orthogonal complement (a hexagon for d = 3, a rhombic dodecahedron for
d = 4).  The script prints the spinal triangulation, its fold, the lift back,
and the exact squared-volume bookkeeping between the three objects.
"""

import argparse
import itertools
import math

from spinaltri.linalg import QVector, format_rational, gram_sq_volume
from spinaltri.polytope import make_polytope
from spinaltri.spine import spine
from spinaltri.triangulation import fold, lift, shadow, shadow_polytope, spinal_triangulation
from spinaltri.volume import lifting_relation_report, polytope_volume


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-d", type=int, default=3, help="cube dimension (2..4)")
    args = ap.parse_args()
    d = args.d

    cube = make_polytope([QVector(b) for b in itertools.product((0, 1), repeat=d)])
    sp = spine(cube, [0, 2**d - 1])
    print(f"{d}-cube, diagonal spine {sp.indices}")
    print(f"volume: {format_rational(polytope_volume(cube).volume)}")
    print(f"spine squared length: {format_rational(gram_sq_volume(sp.points(), 1))}")

    t = spinal_triangulation(sp)
    print(f"spinal triangulation: {t.n_simplices} cells (expected {math.factorial(d)})")

    sm = shadow(sp)
    hull = shadow_polytope(sm)
    rep = polytope_volume(hull)
    print(f"shadow: {hull.n_vertices} vertices, dim {hull.dim}, "
          f"squared volume {format_rational(rep.sq_volume)}")

    star = fold(t, sm)
    print(f"fold: {star.n_simplices} cells around the origin")
    back = lift(star, sm)
    print(f"lift returns the original triangulation: {back.simplices == t.simplices}")

    law = lifting_relation_report(sp)
    print(
        f"volume law: binom({d},{sp.n - 1})^2 * vol^2 = {format_rational(law.lhs)}"
        f" equals vol(spine)^2 * vol(shadow)^2 = {format_rational(law.rhs)}:"
        f" {law.holds}"
    )


if __name__ == "__main__":
    main()
