import pytest
from hypothesis import given, strategies as st

from torix.fan import (Fan, NotComplete, NotPrimitive, NotSmooth, TooFewRays, blow_down,
                       blow_up, character_from_pairings, irrelevant_generators,
                       make_hirzebruch, make_projective_plane, pairing, parse_fan_spec,
                       validate, winding_number)


def det(u, v):
    return u[0] * v[1] - u[1] * v[0]


def test_projective_plane():
    f = make_projective_plane()
    validate(f)
    assert f.num_rays == 3 and len(f.cones()) == 3
    assert irrelevant_generators(f) == [(0, 0, 1), (1, 0, 0), (0, 1, 0)]


@pytest.mark.parametrize("a", [0, 1, 2, 5])
def test_hirzebruch(a):
    f = make_hirzebruch(a)
    validate(f)
    assert f.num_rays == 4
    assert [det(f.rays[k], f.rays[(k + 1) % 4]) for k in range(4)] == [1, 1, 1, 1]


def test_blow_up_examples():
    f = blow_up(make_projective_plane(), 0)
    assert f.rays == ((1, 0), (1, 1), (0, 1), (-1, -1))
    g = make_projective_plane()
    for k in (0, 2, 4):
        g = blow_up(g, k)
    validate(g)
    assert g.num_rays == 6
    for k in range(4):
        assert blow_up(make_hirzebruch(0), k).num_rays == 5


def test_validate_errors():
    validate(Fan(((1, 0), (0, 1), (-1, -1))))
    with pytest.raises(TooFewRays):
        validate(Fan(((1, 0), (0, 1))))
    with pytest.raises(NotPrimitive):
        validate(Fan(((1, 0), (0, 2), (-1, -1))))
    with pytest.raises(NotSmooth):
        validate(Fan(((1, 0), (-1, -1), (0, 1))))
    with pytest.raises(NotSmooth):
        validate(Fan(((1, 0), (1, 2), (-1, -1), (0, -1))))


def test_winding_twice_is_incomplete():
    # Unimodular steps going around the origin twice.
    rays = ((1, 0), (0, 1), (-1, -1)) * 2
    assert winding_number(rays) == 2
    with pytest.raises(NotComplete):
        validate(Fan(rays))


def test_pairing():
    assert pairing((-1, -1), (1, 0)) == -1
    assert pairing((0, 0), (5, -7)) == 0
    assert pairing((2, 3), (-1, 1)) == 1


@pytest.mark.parametrize("fan_name,support", [("f0", 2), ("blowup6", 4)])
def test_irrelevant_generators_supports(fans, fan_name, support):
    f = fans[fan_name]
    gens = irrelevant_generators(f)
    assert len(gens) == f.num_rays
    for k, g in enumerate(gens):
        assert sum(g) == support
        assert {i for i, e in enumerate(g) if e == 0} == set(f.cone(k))
    assert all(any(g[i] for g in gens) for i in range(f.num_rays))


def test_f0_generators_are_opposite_pairs():
    gens = irrelevant_generators(make_hirzebruch(0))
    assert gens == [(0, 0, 1, 1), (1, 0, 0, 1), (1, 1, 0, 0), (0, 1, 1, 0)]


@given(st.lists(st.integers(0, 20), min_size=1, max_size=5), st.sampled_from(["p2", "f0", "f1", "f3"]))
def test_blow_up_valid_and_reversible(ks, spec):
    f = parse_fan_spec(spec)
    for k in ks:
        g = blow_up(f, k)
        validate(g)
        i = (k % f.num_rays) + 1
        assert blow_down(g, i) == f
        f = g


@given(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
       st.tuples(st.integers(-5, 5), st.integers(-5, 5)), st.integers(-3, 3))
def test_pairing_bilinear(m1, m2, r, c):
    s = (m1[0] + c * m2[0], m1[1] + c * m2[1])
    assert pairing(s, r) == pairing(m1, r) + c * pairing(m2, r)
    assert pairing(m1, (r[0] * c, r[1] * c)) == c * pairing(m1, r)


def test_character_from_pairings(fans):
    for f in fans.values():
        for k in range(f.num_rays):
            a, b = f.cone(k)
            for u in range(-2, 3):
                for v in range(-2, 3):
                    m = character_from_pairings(f, k, u, v)
                    assert (pairing(m, f.rays[a]), pairing(m, f.rays[b])) == (u, v)
