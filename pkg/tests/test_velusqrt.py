import pytest
from hypothesis import given, strategies as st

from conftest import kernel, toy
from sqrtvelu import testkit
from sqrtvelu.curve import XPoint, ladder
from sqrtvelu.field import Jet, OpTally
from sqrtvelu.poly import poly_from_roots
from sqrtvelu.velusqrt import (
    IndexHitsIdentity,
    InvalidTuning,
    WrongOrder,
    b_window,
    delta,
    hs_eval,
    hs_eval_jet,
    hs_pair_projective,
    hs_plan,
    hs_units,
    index_system_for,
    kernel_poly_eval,
)


def half_xs(ell, seed=0):
    F, E, x, y = toy(ell, seed)
    return testkit.kernel_xs(E.a(), (x, y), ell)[: (ell - 1) // 2]


def s_xs(ell, seed=0):
    F, E, x, y = toy(ell, seed)
    allx = testkit.kernel_xs(E.a(), (x, y), ell)
    return [allx[s - 1] for s in range(1, ell - 1, 2)]


def test_index_system_examples():
    s3 = index_system_for(3)
    assert (s3.b, s3.I, s3.J, s3.K) == (0, (), (), (1,))
    s13 = index_system_for(13)
    assert (s13.b, s13.bp, s13.I, s13.J, s13.K) == (1, 3, (2, 6, 10), (1,), ())
    s5 = index_system_for(5)
    assert (s5.b, s5.bp, s5.I, s5.J, s5.K) == (1, 1, (2,), (1,), ())
    assert s13.covered() == [1, 3, 5, 7, 9, 11]


def test_index_system_rejects():
    with pytest.raises(InvalidTuning):
        index_system_for(13, 4)
    with pytest.raises(InvalidTuning):
        index_system_for(13, -1)
    with pytest.raises(ValueError):
        index_system_for(4)


@given(st.sampled_from(testkit.odd_primes(3, 10000)), st.integers(-6, 6))
def test_partition_in_sweep_window(ell, db):
    b0 = index_system_for(ell).b
    b = b0 + db
    if b < 0 or 4 * b > ell - 1:
        with pytest.raises(InvalidTuning):
            index_system_for(ell, b)
        return
    sys = index_system_for(ell, b)
    assert sys.is_valid()
    assert testkit.brute_index_cover(sys.I, sys.J, sys.K) == list(range(1, ell - 1, 2))
    if b:
        assert len(sys.K) <= 2 * b - 1


def test_b_window():
    assert b_window(587, 2) == [10, 11, 12, 13, 14]
    assert b_window(5, 3) == [0, 1]


def test_plan_examples():
    F, E, P = kernel(3)
    plan = hs_plan(E, P, 3, index_system_for(3))
    assert plan.tree is None and plan.xK == [P.X]
    F, E, P = kernel(13)
    plan = hs_plan(E, P, 13, index_system_for(13))
    assert len(plan.xI) == 3 and len(plan.xJ) == 1 and plan.xK == []
    assert plan.xI == [ladder(i, P, E).affine() for i in (2, 6, 10)]


def test_plan_errors():
    F, E, P = kernel(13)
    with pytest.raises(WrongOrder):
        hs_plan(E, P, 11, index_system_for(11))
    # P of order 3 with the system for 13 (I contains 6), order check disabled
    F3, E3, P3 = kernel(3)
    with pytest.raises(IndexHitsIdentity):
        hs_plan(E3, P3, 13, index_system_for(13), check=False)


def test_plan_reuse_is_cheaper():
    F, E, P = kernel(101)
    sys = index_system_for(101)
    rng = testkit.rng_for("reuse")
    a1, a2 = F.random(rng), F.random(rng)
    warm = OpTally()
    plan = hs_plan(E, P, 101, sys, warm)
    hs_eval(plan, a1, warm)
    hs_eval(plan, a2, warm)
    cold = OpTally()
    for a in (a1, a2):
        hs_eval(hs_plan(E, P, 101, sys), a, cold)
        hs_plan(E, P, 101, sys, cold)
    assert warm.muls < cold.muls


def test_hs_eval_examples():
    F, E, P = kernel(13)
    plan = hs_plan(E, P, 13, index_system_for(13))
    for s in (1, 5, 11):
        assert hs_eval(plan, ladder(s, P, E).affine()) == 0
    F3, E3, P3 = kernel(3)
    plan3 = hs_plan(E3, P3, 3, index_system_for(3))
    alpha = F3(12345)
    assert hs_eval(plan3, alpha) == alpha - P3.X
    assert delta(plan3) == 1
    rng = testkit.rng_for("eval13")
    for _ in range(5):
        alpha = F.random(rng)
        assert hs_eval(plan, alpha) / delta(plan) == testkit.naive_hs(s_xs(13), alpha)


@pytest.mark.parametrize("ell", [5, 7, 11, 17, 19, 23, 31, 61, 101, 127])
def test_hs_eval_matches_naive(ell):
    F, E, P = kernel(ell)
    plan = hs_plan(E, P, ell, index_system_for(ell))
    d = delta(plan)
    rng = testkit.rng_for("naive", ell)
    for _ in range(5):
        alpha = F.random(rng)
        assert hs_eval(plan, alpha) == d * testkit.naive_hs(half_xs(ell), alpha)


def test_half_orbit_equals_s_set():
    # {1, 2, ..., m} and {1, 3, ..., ell-2} pick one x from every +-pair
    assert sorted(v.v for v in half_xs(19)) == sorted(v.v for v in s_xs(19))


def test_jet_examples():
    F, E, P = kernel(3)
    plan = hs_plan(E, P, 3, index_system_for(3))
    alpha = F(77)
    assert hs_eval_jet(plan, alpha) == Jet(alpha - P.X, F.one)
    F, E, P = kernel(13)
    plan = hs_plan(E, P, 13, index_system_for(13))
    assert hs_eval_jet(plan, F(77)).a0 == hs_eval(plan, F(77))


@pytest.mark.parametrize("ell", testkit.odd_primes(3, 31))
def test_jet_matches_formal_derivative(ell):
    F, E, P = kernel(ell)
    plan = hs_plan(E, P, ell, index_system_for(ell))
    psi = poly_from_roots(F, half_xs(ell))
    d = delta(plan)
    alpha = F.random(testkit.rng_for("jet", ell))
    j = hs_eval_jet(plan, alpha)
    assert j.a0 == d * psi(alpha)
    assert j.a1 == d * psi.derivative()(alpha)


def test_kernel_poly_eval_examples():
    F, E, P = kernel(3)
    assert kernel_poly_eval(E, P, 3, F(9)) == F(9) - P.X
    F, E, P = kernel(19)
    assert kernel_poly_eval(E, P, 19, P.X) == 0
    alpha = F.random(testkit.rng_for("k19"))
    assert kernel_poly_eval(E, P, 19, alpha) == testkit.naive_hs(half_xs(19), alpha)
    with pytest.raises(WrongOrder):
        kernel_poly_eval(E, P, 23, alpha)


def test_projective_pair_and_units():
    ell = 37
    F, E, P = kernel(ell)
    plan = hs_plan(E, P, ell, index_system_for(ell))
    d = delta(plan)
    rng = testkit.rng_for("pair")
    X, Z = F.random(rng), F.random(rng)
    h, hrev = hs_pair_projective(plan, X, Z)
    xs = half_xs(ell)
    m = (ell - 1) // 2
    assert h == d * Z ** m * testkit.naive_hs(xs, X / Z)
    assert hrev == d * X ** m * testkit.naive_hs(xs, Z / X)
    hp, hm = hs_units(plan)
    assert hp == d * testkit.naive_hs(xs, F.one)
    assert hm == d * testkit.naive_hs(xs, -F.one)


def test_degenerate_b_zero_matches_general():
    ell = 13
    F, E, P = kernel(ell)
    general = hs_plan(E, P, ell, index_system_for(ell))
    plain = hs_plan(E, P, ell, index_system_for(ell, 0))
    assert plain.tree is None and len(plain.xK) == 6
    alpha = F(4242)
    assert hs_eval(plain, alpha) == hs_eval(general, alpha) / delta(general)


def test_cost_is_sublinear():
    ell_small, ell_big = 101, 397
    counts = {}
    for ell in (ell_small, ell_big):
        F, E, P = kernel(ell)
        plan = hs_plan(E, P, ell, index_system_for(ell))
        t = OpTally()
        hs_eval(plan, F(31337), t)
        counts[ell] = t.muls
    assert counts[ell_big] / counts[ell_small] < ell_big / ell_small
