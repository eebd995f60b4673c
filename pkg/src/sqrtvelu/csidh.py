"""The CSIDH class-group action on supersingular Montgomery curves over F_p.

NOT constant time: sampling, branching and the isogeny engines all leak
the secret exponents through timing.  This is a measurement and
correctness harness, not a cryptographic implementation.

The action follows the usual sampling loop.  Draw a random x; if
x^3 + a x^2 + x is a square the point lives on the curve and serves the
positive exponents, otherwise it lives on the twist and serves the
negative ones.  Clear the cofactor, then peel off one ell-isogeny per
still-active prime of that sign.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import gmpy2

from .curve import MontgomeryCurve, XPoint, ladder
from .field import FieldContext, FieldElement, counting
from .isogeny import EngineChoice, isogeny_eval


class UnknownParams(KeyError):
    pass


class SharedSecretMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class CsidhParams:
    name: str
    p: int
    ells: tuple[int, ...]

    def __post_init__(self):
        prod = 4
        for ell in self.ells:
            prod *= ell
        if self.p % 4 != 3 or (self.p + 1) % prod:
            raise ValueError("p must be 3 mod 4 with 4 * prod(ells) | p + 1")

    @property
    def field(self) -> FieldContext:
        return _field(self.p)


_FIELDS: dict[int, FieldContext] = {}


def _field(p: int) -> FieldContext:
    F = _FIELDS.get(p)
    if F is None:
        F = _FIELDS[p] = FieldContext(p)
    return F


def _csidh512() -> CsidhParams:
    ells, q = [], 2
    while len(ells) < 73:
        q = int(gmpy2.next_prime(q))
        ells.append(q)
    ells = tuple(ells) + (587,)
    p = 4
    for ell in ells:
        p *= ell
    return CsidhParams("csidh512", p - 1, ells)


_PARAMS = {
    "toy419": lambda: CsidhParams("toy419", 419, (3, 5, 7)),
    "csidh512": _csidh512,
}


def params(name: str) -> CsidhParams:
    try:
        return _PARAMS[name]()
    except KeyError:
        raise UnknownParams(f"unknown parameter set {name!r}; known: {', '.join(sorted(_PARAMS))}") from None


@dataclass(frozen=True)
class PrivateKey:
    exponents: tuple[int, ...]

    @classmethod
    def random(cls, prm: CsidhParams, bound: int, rng) -> PrivateKey:
        return cls(tuple(rng.randint(-bound, bound) for _ in prm.ells))

    @classmethod
    def parse(cls, text: str, prm: CsidhParams | None = None) -> PrivateKey:
        """Comma-separated decimal exponents; an empty string is the zero key."""
        text = text.strip()
        exps = tuple(int(t) for t in text.split(",")) if text else ()
        if prm is not None:
            if not exps:
                exps = (0,) * len(prm.ells)
            if len(exps) != len(prm.ells):
                raise ValueError(f"key has {len(exps)} exponents, expected {len(prm.ells)}")
        return cls(exps)

    def __neg__(self) -> PrivateKey:
        return PrivateKey(tuple(-e for e in self.exponents))

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.exponents)


@dataclass(frozen=True)
class PublicCurve:
    a: FieldElement

    def hex(self) -> str:
        return self.a.hex()

    @classmethod
    def from_hex(cls, prm: CsidhParams, text: str) -> PublicCurve:
        return cls(prm.field.from_hex(text))


def base_curve(prm: CsidhParams) -> PublicCurve:
    return PublicCurve(prm.field.zero)


def action(prm: CsidhParams, key: PrivateKey, start: PublicCurve, engine: EngineChoice | None = None, seed=0, tally=None) -> PublicCurve:
    """Apply the ideal class encoded by ``key`` to ``start``; deterministic given ``seed``."""
    engine = engine or EngineChoice()
    if len(key.exponents) != len(prm.ells):
        raise ValueError("key length does not match the parameter set")
    F = prm.field
    p = prm.p
    rng = random.Random(seed)
    todo = list(key.exponents)
    a = F(start.a)
    with counting(tally):
        MontgomeryCurve.from_a(a)
        while any(todo):
            E = MontgomeryCurve.from_a(a)
            x = F(rng.randrange(p))
            sign = 1 if (x * (x.sq() + a * x + 1)).is_square() else -1
            active = [i for i, e in enumerate(todo) if e * sign > 0]
            if not active:
                continue
            k = 1
            for i in active:
                k *= prm.ells[i]
            Q = ladder((p + 1) // k, XPoint.from_x(x), E)
            for n, i in enumerate(reversed(active)):
                ell = prm.ells[i]
                if Q.is_infinity():
                    break
                R = ladder(k // ell, Q, E)
                k //= ell
                if R.is_infinity():
                    continue
                last = n == len(active) - 1
                out = isogeny_eval(E, R, ell, [] if last else [Q], engine, check=False)
                a = out.codomain.A / out.codomain.C
                E = MontgomeryCurve.from_a(a)
                if not last:
                    Q = out.images[0]
                todo[i] -= sign
    return PublicCurve(a)


def key_exchange_demo(prm: CsidhParams, alice: PrivateKey, bob: PrivateKey, engine: EngineChoice | None = None, seeds=(1, 2, 3, 4), tally=None) -> FieldElement:
    """Run both sides of a key exchange and check that the shared curves agree."""
    E0 = base_curve(prm)
    s1, s2, s3, s4 = seeds
    pub_a = action(prm, alice, E0, engine, s1, tally)
    pub_b = action(prm, bob, E0, engine, s2, tally)
    shared_a = action(prm, alice, pub_b, engine, s3, tally)
    shared_b = action(prm, bob, pub_a, engine, s4, tally)
    if shared_a.a != shared_b.a:
        raise SharedSecretMismatch(f"{shared_a.hex()} != {shared_b.hex()}")
    return shared_a.a
