"""Cross-check the shared-prefix facet enumeration against a naive oracle.

The oracle below recomputes supporting hyperplanes with plain rational
row reduction over every vertex subset, with no prefix sharing, no pruning,
and no integer scaling; agreement on random instances guards the optimized
path in the library.
"""

import itertools
import random
from fractions import Fraction

from spinaltri.linalg import QMatrix, QVector, kernel_basis
from spinaltri.polytope import extreme_points, frame_coords, make_polytope


def naive_facets(p):
    """Supporting hyperplanes via direct rational linear algebra."""
    k = p.dim
    coords = [frame_coords(p, v) for v in p.vertices]
    found = {}
    for combo in itertools.combinations(range(len(coords)), k):
        base = coords[combo[0]]
        edges = [list(coords[i] - base) for i in combo[1:]]
        mat = QMatrix(edges, cols=k)
        basis = kernel_basis(mat)
        if len(basis) != 1:
            continue  # affinely dependent subset
        normal = basis[0]
        offset = normal.dot(base)
        sides = [normal.dot(q) - offset for q in coords]
        if any(s > 0 for s in sides) and any(s < 0 for s in sides):
            continue
        if any(s > 0 for s in sides):
            normal, offset = -normal, -offset
            sides = [-s for s in sides]
        incident = tuple(i for i, s in enumerate(sides) if s == 0)
        found[incident] = True
    return set(found)


def random_polytope(rng):
    while True:
        d = rng.choice((2, 3, 4))
        count = rng.randint(d + 1, 8 if d < 4 else 7)
        pts = []
        seen = set()
        while len(pts) < count:
            q = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 2)) for _ in range(d))
            if q not in seen:
                seen.add(q)
                pts.append(QVector(q))
        ext = extreme_points(pts)
        if len(ext) >= d + 1:
            p = make_polytope(ext)
            if p.dim == d:
                return p


def test_agrees_with_naive_oracle_on_random_instances():
    rng = random.Random(31337)
    for _ in range(25):
        p = random_polytope(rng)
        got = {f.incident for f in p.facets()}
        assert got == naive_facets(p)


def test_agrees_on_lower_dimensional_embedding():
    # A 2-polytope embedded in R^4 via an affine map with a skew basis.
    rng = random.Random(5)
    square = [QVector(b) for b in itertools.product((0, 1), repeat=2)]
    a = QMatrix([[1, 2], [0, 1], [3, -1], [1, 1]])
    shift = QVector([1, -1, 0, 2])
    p = make_polytope([(a @ v) + shift for v in square])
    assert p.dim == 2
    got = {f.incident for f in p.facets()}
    assert got == naive_facets(p)
    assert len(got) == 4
