import random
from fractions import Fraction as F

from wassalg import Euclidean, MatrixSpace, RealLine, wasserstein
from wassalg.maps import (
    Clamp,
    Contract,
    NonexpansiveMap,
    Translate,
    certify_index_table,
    dirac_valued,
    distance_to,
    mixture_valued,
    random_nonexpansive,
)
from wassalg.random_instances import random_point, random_space


def test_steps():
    plane = Euclidean(2)
    f = NonexpansiveMap(plane, (Translate((F(1), F(0))), Contract((F(0), F(0)), F(1, 2)), Clamp((F(0), F(0)), (F(1), F(1)))))
    assert f((F(3), F(1))) == (F(1), F(1, 2))
    g = NonexpansiveMap(RealLine(), (Clamp((0,), (2,)),))
    assert g(5) == 2 and g(-1) == 0 and g(1) == 1


def test_index_table_certification():
    space = MatrixSpace([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    assert certify_index_table(space, (0, 0, 1))
    assert not certify_index_table(space, (0, 2, 0))


def test_random_maps_are_nonexpansive():
    rng = random.Random(8)
    for kind in ("line", "plane", "matrix"):
        for _ in range(40):
            space = random_space(rng, kind)
            f = random_nonexpansive(rng, space)
            x, y = random_point(rng, space), random_point(rng, space)
            assert space.distance(f(x), f(y)) <= space.distance(x, y)


def test_codomain_builders():
    rng = random.Random(2)
    space = random_space(rng, "plane")
    g, h = random_nonexpansive(rng, space), random_nonexpansive(rng, space)
    x, y = random_point(rng, space), random_point(rng, space)
    d = space.distance(x, y)
    assert wasserstein(dirac_valued(g, space)(x), dirac_valued(g, space)(y), 2) <= d
    m = mixture_valued(g, h, F(1, 3), space)
    assert wasserstein(m(x), m(y), 2) <= d + 1e-12
    dist = distance_to(space, x, F(1, 2))
    assert dist(x) == (0,)
