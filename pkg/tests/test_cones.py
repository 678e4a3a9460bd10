from fractions import Fraction

from affscat.cones import Cone

F = Fraction


def test_full_space_generators():
    c = Cone.full_space(2)
    lin, rays = c.generators
    assert len(lin) == 2 and rays == ()
    assert c.dim == 2


def test_halfplane_and_quadrant():
    half = Cone.from_constraints(2, ineqs=[(-1, 0)])  # x >= 0
    lin, rays = half.generators
    assert len(lin) == 1 and len(rays) == 1
    quad = Cone.from_constraints(2, ineqs=[(-1, 0), (0, -1)])
    lin, rays = quad.generators
    assert lin == ()
    assert set(rays) == {(1, 0), (0, 1)}
    assert quad.contains((2, 3))
    assert not quad.contains((-1, 2))
    assert quad.relint_contains((1, 1))
    assert not quad.relint_contains((0, 1))


def test_ray_in_plane():
    # {x : x_1 = 0, x_2 <= 0} in dim 2 is the ray through (0,-1).
    c = Cone.from_constraints(2, eqs=[(1, 0)], ineqs=[(0, 1)])
    lin, rays = c.generators
    assert lin == ()
    assert rays == ((0, -1),)
    assert c.dim == 1


def test_simplicial_cone_3d():
    c = Cone.from_constraints(3, ineqs=[(-1, 0, 0), (0, -1, 0), (0, 0, -1)])
    assert set(c.rays) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert c.dim == 3
    p = c.relint_point()
    assert c.relint_contains(p)


def test_redundant_inequality_same_cone():
    a = Cone.from_constraints(2, ineqs=[(-1, 0), (0, -1)])
    b = Cone.from_constraints(2, ineqs=[(-1, 0), (0, -1), (-1, -1)])
    assert a.same_cone(b)


def test_from_rays_roundtrip():
    rays = [(1, 0, 0), (1, 1, 0), (1, 1, 1)]
    c = Cone.from_rays(3, rays)
    assert set(c.rays) == set(rays)
    assert c.contains((3, 2, 1))
    assert not c.contains((0, 1, 0))


def test_from_rays_with_lineality():
    c = Cone.from_rays(3, [(1, 0, 0)], lineality=[(0, 0, 1)])
    assert c.dim == 2
    assert c.contains((1, 0, 5))
    assert c.contains((1, 0, -5))
    assert not c.contains((-1, 0, 0))


def test_contains_cone_and_intersection():
    big = Cone.from_constraints(2, ineqs=[(0, -1)])  # y >= 0
    small = Cone.from_constraints(2, ineqs=[(-1, 0), (0, -1)])
    assert big.contains_cone(small)
    assert not small.contains_cone(big)
    meet = big.intersect(Cone.from_constraints(2, ineqs=[(1, 0)]))  # x <= 0, y >= 0
    assert set(meet.rays) == {(-1, 0), (0, 1)}


def test_implicit_equalities_relint():
    # {x <= 0, -x <= 0} pins x = 0: relative interior needs y side strict.
    c = Cone.from_constraints(2, ineqs=[(1, 0), (-1, 0), (0, -1)])
    assert c.dim == 1
    assert c.relint_contains((0, 1))
    assert not c.relint_contains((0, 0))


def test_negate():
    c = Cone.from_constraints(2, eqs=[(1, 1)], ineqs=[(0, 1)])
    n = c.negate()
    assert c.rays == ((1, -1),)
    assert n.rays == ((-1, 1),)


def test_extreme_filter_drops_interior_ray():
    c = Cone.from_rays(2, [(1, 0), (1, 1), (0, 1)])
    assert set(c.rays) == {(1, 0), (0, 1)}


def test_span_covectors():
    c = Cone.from_constraints(3, eqs=[(1, 0, 0)], ineqs=[(0, 0, -1)])
    covs = c.span_covectors()
    # span is the plane x = 0; its annihilator is spanned by (1,0,0).
    assert len(covs) == 1
    assert covs[0][1] == 0 and covs[0][2] == 0
