import random

import pytest
from hypothesis import given, settings, strategies as st

from coverwreath.errors import BudgetExceeded
from coverwreath.grp import (act, cayley_graph, elem_order_grp, enumerate_elements, fixed_points,
                             inv, mul, point_perm, power, project, sl_order,
                             stabilizer_abelianization_order)
from conftest import make_ctx

SUITE_GROUPS = [(2, 5), (2, 7), (2, 9), (2, 11), (2, 13), (3, 4), (2, 3)]


def test_generators_examples():
    sl25 = make_ctx(2, 5)
    assert sorted(sl25.rows(g) for g in sl25.generators) == [[[1, 0], [1, 1]], [[1, 1], [0, 1]]]
    sl24 = make_ctx(2, 4)
    w = 2  # class of x in F_4 = F_2[x]/(x^2+x+1)
    assert [sl24.rows(g) for g in sl24.generators] == [
        [[1, 1], [0, 1]], [[1, w], [0, 1]], [[1, 0], [1, 1]], [[1, 0], [w, 1]]]
    assert len(make_ctx(3, 4).generators) == 12


def test_mul_examples():
    sl, psl = make_ctx(2, 5), make_ctx(2, 5, 2)
    d_sl, d_psl = sl.diag([2, 3]), psl.diag([2, 3])
    assert mul(psl, d_psl, d_psl) == psl.identity
    assert mul(sl, d_sl, d_sl) == sl.diag([4, 4]) != sl.identity
    for g in sl.generators:
        assert mul(sl, g, inv(sl, g)) == sl.identity


def test_order_examples():
    sl, psl = make_ctx(2, 5), make_ctx(2, 5, 2)
    assert elem_order_grp(sl, sl.diag([2, 3])) == 4
    assert elem_order_grp(psl, psl.diag([2, 3])) == 2
    assert elem_order_grp(psl, psl.identity) == 1


@pytest.mark.parametrize("n,q,m,size", [(2, 5, 1, 120), (2, 7, 2, 168), (3, 4, 3, 20160)])
def test_enumerate_examples(n, q, m, size):
    els = enumerate_elements(make_ctx(n, q, m))
    assert len(els) == len(set(els)) == size


@pytest.mark.parametrize("n,q", SUITE_GROUPS + [(2, 4), (3, 3)])
def test_enumerate_matches_order_formula(n, q):
    for m in {1, make_ctx(n, q).d}:
        ctx = make_ctx(n, q, m)
        assert len(cayley_graph(ctx)) == ctx.order == sl_order(n, q) // m


def test_budget():
    with pytest.raises(BudgetExceeded):
        cayley_graph(make_ctx(3, 7, 3), budget=1000)


def test_points_examples():
    assert make_ctx(2, 5).points == [(0, 1), (1, 0), (1, 1), (1, 2), (1, 3), (1, 4)]
    assert len(make_ctx(3, 4).points) == 21
    assert len(make_ctx(2, 7).points) == 8


def test_act_examples():
    ctx = make_ctx(2, 5)
    g = ctx.from_rows([[1, 1], [0, 1]])
    assert act(ctx, (1, 0), g) == (1, 1)
    assert act(ctx, (0, 1), g) == (0, 1)


def test_fixed_points_examples():
    psl = make_ctx(2, 5, 2)
    assert set(fixed_points(psl, psl.diag([2, 3]))) == {(1, 0), (0, 1)}
    assert fixed_points(psl, psl.identity) == psl.points
    psl34 = make_ctx(3, 4, 3)
    f = psl34.field
    a = next(x for x in range(2, 4) if f.pow(x, 3) == 1)
    assert (1, 0, 0) in fixed_points(psl34, psl34.diag([a, a, f.inv(f.mul(a, a))]))


@pytest.mark.parametrize("n,q,expected", [(2, 5, 2), (2, 7, 3), (3, 4, 1)])
def test_stabilizer_abelianization(n, q, expected):
    ctx = make_ctx(n, q, make_ctx(n, q).d)
    for x in (ctx.points[0], ctx.points[-1]):
        assert stabilizer_abelianization_order(ctx, x) == expected


@pytest.mark.parametrize("n,q", [(2, 5), (2, 9), (3, 4), (2, 13)])
def test_canonical_invariant_under_kernel(n, q):
    rng = random.Random(1)
    ctx = make_ctx(n, q, make_ctx(n, q).d)
    f = ctx.field
    for g in rng.sample(enumerate_elements(ctx), 30):
        for lam in ctx.scalars:
            assert ctx.canonical(f.mul(lam, e) for e in g) == g


@pytest.mark.parametrize("n,q", [(2, 5), (2, 7), (2, 9), (3, 4), (3, 3)])
def test_right_action_and_transitivity(n, q):
    ctx = make_ctx(n, q)
    rng = random.Random(n * 100 + q)
    els = enumerate_elements(ctx)
    for _ in range(50):
        g, h = rng.choice(els), rng.choice(els)
        x = rng.choice(ctx.points)
        assert act(ctx, act(ctx, x, g), h) == act(ctx, x, mul(ctx, g, h))
    orbit, frontier = {ctx.points[0]}, [ctx.points[0]]
    while frontier:
        x = frontier.pop()
        for g in ctx.generators:
            y = act(ctx, x, g)
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    assert orbit == set(ctx.points)


@pytest.mark.parametrize("n,q", [(2, 5), (2, 7), (2, 9), (2, 4), (3, 3)])
def test_action_kernel_is_center(n, q):
    ctx = make_ctx(n, q)
    ident = list(range(len(ctx.points)))
    kernel = {g for g in enumerate_elements(ctx) if point_perm(ctx, g) == ident}
    assert kernel == {ctx.scalar(lam) for lam in ctx.center}


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 5), (2, 9), (3, 4)]), st.integers(0, 10**6), st.integers(0, 10**6))
def test_projection_is_homomorphism(nq, i, j):
    sl = make_ctx(*nq)
    psl = make_ctx(*nq, sl.d)
    els = enumerate_elements(sl)
    g, h = els[i % len(els)], els[j % len(els)]
    assert project(psl, mul(sl, g, h)) == mul(psl, project(psl, g), project(psl, h))


def test_power_and_inverse():
    ctx = make_ctx(3, 4, 3)
    rng = random.Random(5)
    for g in rng.sample(enumerate_elements(ctx), 20):
        k = elem_order_grp(ctx, g)
        assert power(ctx, g, k) == ctx.identity
        assert power(ctx, g, k - 1) == inv(ctx, g)
