from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dunkl.root_data import UnknownType, all_weights_in_ball, build_root_system, parse_cartan_type

TYPES = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"]
ORDERS = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "B3": 48, "C3": 48, "D4": 192, "G2": 12, "F4": 1152}


@pytest.mark.parametrize("t", TYPES)
def test_classical_invariants(t):
    rs = build_root_system(t)
    assert rs.weyl_order == ORDERS[t]
    # sum of exponents = number of positive roots, product of degrees = |W|
    assert sum(rs.exponents) == len(rs.positive_roots)
    prod = 1
    for d in rs.degrees:
        prod *= d
    assert prod == rs.weyl_order
    assert rs.coxeter_number * rs.rank == 2 * len(rs.positive_roots)


@pytest.mark.parametrize("t", ["A1", "A2", "B2", "G2", "B3"])
def test_group_enumeration(t):
    rs = build_root_system(t)
    W = rs.weyl_group()
    assert len(W) == rs.weyl_order
    assert len({w.matrix for w in W}) == len(W)
    w0 = rs.longest_element
    assert w0.length == len(rs.positive_roots)
    assert all(not w0.root_image(r).positive for r in rs.positive_roots)


def test_theta_is_highest_short_root():
    for t in ("B2", "G2", "C3", "F4"):
        rs = build_root_system(t)
        th = rs.theta
        short = min(r.norm2 for r in rs.roots)
        assert th.norm2 == short
        assert all(rs.dominance_leq(r.weight, th.weight) for r in rs.positive_roots if r.norm2 == short)


def test_cartan_parse_errors():
    with pytest.raises(UnknownType):
        build_root_system("Q3")
    with pytest.raises(UnknownType):
        parse_cartan_type("G3")


def test_order_examples():
    rs = build_root_system("A1")
    # same orbit: the larger weight is the lower one
    assert rs.cher_order_lt((1,), (-1,))
    assert not rs.cher_order_lt((-1,), (1,))
    assert rs.cher_order_lt((0,), (2,)) and rs.cher_order_lt((0,), (-2,))
    # different cosets of P/Q are incomparable
    assert not rs.cher_order_lt((0,), (1,)) and not rs.cher_order_lt((1,), (0,))


weights2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


@settings(max_examples=60, deadline=None)
@given(weights2, st.sampled_from(["A2", "B2", "G2"]))
def test_reflections_and_dominant_rep(lam, t):
    rs = build_root_system(t)
    for r in rs.positive_roots:
        img = rs.reflect(r, lam)
        assert rs.reflect(r, img) == lam
        assert rs.inner(img, img) == rs.inner(lam, lam)
    dom, w = rs.dominant_representative(lam)
    assert rs.is_dominant(dom)
    assert w.act(dom) == tuple(lam)


@settings(max_examples=40, deadline=None)
@given(weights2)
def test_orbit_size_matches_stabilizer(lam):
    rs = build_root_system("B2")
    dom, _ = rs.dominant_representative(lam)
    assert len(rs.orbit(dom)) * len(rs.parabolic_subgroup([i for i, x in enumerate(dom) if x == 0])) == 8


def test_ball_is_symmetric():
    rs = build_root_system("A2")
    ball = set(all_weights_in_ball(rs, 2))
    assert all(tuple(-x for x in w) in ball for w in ball)
    assert (0, 0) in ball and all(isinstance(x, (int, Fraction)) for w in ball for x in w)
