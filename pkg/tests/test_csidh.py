import random

import pytest

from sqrtvelu import csidh
from sqrtvelu.csidh import (
    PrivateKey,
    PublicCurve,
    SharedSecretMismatch,
    UnknownParams,
    action,
    base_curve,
    key_exchange_demo,
    params,
)
from sqrtvelu.field import OpTally
from sqrtvelu.isogeny import EngineChoice

TOY = params("toy419")
E0 = base_curve(TOY)


def test_parameter_sets():
    assert TOY.p == 419 and TOY.ells == (3, 5, 7)
    big = params("csidh512")
    assert big.p.bit_length() == 511
    assert len(big.ells) == 74 and max(big.ells) == 587 and big.ells[0] == 3
    assert big.p % 4 == 3
    with pytest.raises(UnknownParams):
        params("csidh1024")
    with pytest.raises(ValueError):
        csidh.CsidhParams("bad", 419, (3, 11))


def test_zero_key_is_identity():
    assert action(TOY, PrivateKey.parse("", TOY), E0).a == E0.a
    k = PrivateKey((1, 0, -1))
    pub = action(TOY, k, E0, seed=1)
    assert action(TOY, PrivateKey((0, 0, 0)), pub).a == pub.a


def test_result_independent_of_seed():
    k = PrivateKey((2, -1, 1))
    results = {action(TOY, k, E0, seed=s).a for s in range(5)}
    assert len(results) == 1


def test_action_is_supersingular():
    # a supersingular curve over F_419 has exactly 420 points: [420]x = inf for every x
    from sqrtvelu.curve import MontgomeryCurve, XPoint, ladder

    rng = random.Random(3)
    for _ in range(4):
        pub = action(TOY, PrivateKey.random(TOY, 3, rng), E0, seed=rng.randrange(100))
        E = MontgomeryCurve.from_a(pub.a)
        for x in range(1, 30):
            assert ladder(420, XPoint.from_x(TOY.field(x)), E).is_infinity()


@pytest.mark.parametrize("seed", range(5))
def test_commutative_and_invertible(seed):
    rng = random.Random(seed)
    k1, k2 = PrivateKey.random(TOY, 4, rng), PrivateKey.random(TOY, 4, rng)
    a = action(TOY, k2, action(TOY, k1, E0, seed=1), seed=2)
    b = action(TOY, k1, action(TOY, k2, E0, seed=3), seed=4)
    assert a.a == b.a
    assert action(TOY, -k1, action(TOY, k1, E0, seed=5), seed=6).a == E0.a


def test_additive_in_the_key():
    k1, k2 = PrivateKey((1, 2, -1)), PrivateKey((-2, 1, 1))
    both = PrivateKey(tuple(x + y for x, y in zip(k1.exponents, k2.exponents)))
    assert action(TOY, k2, action(TOY, k1, E0)).a == action(TOY, both, E0).a


@pytest.mark.parametrize("mode", ["conventional", "sqrt", "auto"])
def test_engines_agree(mode):
    k = PrivateKey((3, -2, 2))
    ref = action(TOY, k, E0, EngineChoice("conventional"), seed=9)
    assert action(TOY, k, E0, EngineChoice(mode, 3), seed=9).a == ref.a


def test_tally_collected():
    t = OpTally()
    action(TOY, PrivateKey((1, 1, 1)), E0, tally=t)
    assert t.muls > 0 and t.inv >= 3


def test_key_exchange():
    assert key_exchange_demo(TOY, PrivateKey((0, 0, 0)), PrivateKey((0, 0, 0))) == 0
    rng = random.Random(11)
    for _ in range(3):
        alice, bob = PrivateKey.random(TOY, 3, rng), PrivateKey.random(TOY, 3, rng)
        key_exchange_demo(TOY, alice, bob)


def test_key_exchange_detects_mismatch(monkeypatch):
    real = csidh.action
    calls = []

    def broken(prm, key, start, engine=None, seed=0, tally=None):
        calls.append(seed)
        out = real(prm, key, start, engine, seed, tally)
        return PublicCurve(out.a + 1) if len(calls) == 4 else out

    monkeypatch.setattr(csidh, "action", broken)
    with pytest.raises(SharedSecretMismatch):
        key_exchange_demo(TOY, PrivateKey((1, 0, 0)), PrivateKey((0, 1, 0)))


def test_key_serialization():
    k = PrivateKey((1, -2, 0))
    assert str(k) == "1,-2,0"
    assert PrivateKey.parse(str(k), TOY) == k
    assert PrivateKey.parse(" ", TOY) == PrivateKey((0, 0, 0))
    assert (-k).exponents == (-1, 2, 0)
    with pytest.raises(ValueError):
        PrivateKey.parse("1,2", TOY)
    with pytest.raises(ValueError):
        PrivateKey.parse("1,x,3", TOY)
    with pytest.raises(ValueError):
        action(TOY, PrivateKey((1,)), E0)


def test_public_curve_hex_roundtrip():
    pub = action(TOY, PrivateKey((1, 1, 0)), E0)
    assert PublicCurve.from_hex(TOY, pub.hex()) == pub


def test_random_key_bounds():
    rng = random.Random(0)
    for _ in range(20):
        k = PrivateKey.random(TOY, 2, rng)
        assert len(k.exponents) == 3 and all(-2 <= e <= 2 for e in k.exponents)
