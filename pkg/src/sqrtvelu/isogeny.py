"""Odd-degree isogenies of Montgomery curves: codomain plus pushed points.

Two engines compute the same map.  The conventional one walks the half
orbit x([s]P), s = 1..(ell-1)/2, in Theta(ell) operations; the square-root
one evaluates the kernel polynomial through :mod:`sqrtvelu.velusqrt`.
Both get the codomain from the twisted Edwards parameter

    d' = ((A - 2C)/(A + 2C))^ell * (h_S(1)/h_S(-1))^8,   A'/C' = 2(1 + d')/(1 - d').

Everything stays projective; inversions only appear inside the
square-root engine's batch normalisation of the kernel multiples.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import gmpy2

from .curve import CurveError, MontgomeryCurve, XPoint, xadd, xdbl
from .field import counting
from .velusqrt import WrongOrder, check_order, hs_pair_projective, hs_plan, hs_units, index_system_for

DEFAULT_CROSSOVER = 113


class KernelPointIsIdentity(CurveError, ValueError):
    pass


class SingularCodomain(CurveError):
    pass


@dataclass
class IsogenyOutput:
    codomain: MontgomeryCurve
    images: list[XPoint] = field(default_factory=list)


@dataclass(frozen=True)
class EngineChoice:
    mode: str = "auto"
    crossover: int = DEFAULT_CROSSOVER
    b: int | None = None

    def __post_init__(self):
        if self.mode not in ("conventional", "sqrt", "auto"):
            raise ValueError(f"unknown engine mode {self.mode!r}")
        if self.crossover < 3:
            raise ValueError("crossover must be >= 3")

    def uses_sqrt(self, ell: int) -> bool:
        if self.mode == "auto":
            return ell >= self.crossover
        return self.mode == "sqrt"


def _check_inputs(curve: MontgomeryCurve, P: XPoint, ell: int, check: bool) -> None:
    if ell < 3 or ell % 2 == 0 or not gmpy2.is_prime(ell):
        raise ValueError(f"ell must be an odd prime, got {ell}")
    if P.is_infinity():
        raise KernelPointIsIdentity("kernel generator is the identity")
    if check:
        check_order(P, ell, curve)


def _codomain(curve: MontgomeryCurve, ell: int, hp, hm) -> MontgomeryCurve:
    """A'/C' from h(1), h(-1) (any common scalar cancels)."""
    A, C = curve.A, curve.C
    c2 = C + C
    num = (A - c2) ** ell * hp.sq().sq().sq()
    den = (A + c2) ** ell * hm.sq().sq().sq()
    s = den + num
    A2, C2 = s + s, den - num
    try:
        return MontgomeryCurve(A2, C2)
    except CurveError:
        raise SingularCodomain("codomain is singular; kernel or curve is invalid") from None


def velu_conventional(curve: MontgomeryCurve, P: XPoint, ell: int, push=(), tally=None, check=True) -> IsogenyOutput:
    _check_inputs(curve, P, ell, check)
    push = list(push)
    m = (ell - 1) // 2
    with counting(tally):
        a24 = curve.a24()
        # (X+Z, X-Z) of each pushed point; numerator/denominator accumulators
        sums = [(Q.X + Q.Z, Q.X - Q.Z) for Q in push]
        acc = [[None, None] for _ in push]
        pm = pp = None
        prev, cur = None, P
        for s in range(1, m + 1):
            d, e = cur.X - cur.Z, cur.X + cur.Z
            pm = d if pm is None else pm * d
            pp = e if pp is None else pp * e
            for (qs, qd), a in zip(sums, acc):
                t0, t1 = d * qs, e * qd
                u, v = t0 + t1, t0 - t1
                a[0] = u if a[0] is None else a[0] * u
                a[1] = v if a[1] is None else a[1] * v
            if s < m:
                nxt = xdbl(P, curve, a24=a24) if prev is None else xadd(cur, P, prev)
                prev, cur = cur, nxt
        codomain = _codomain(curve, ell, pm, pp)
        images = [XPoint(Q.X * a[0].sq(), Q.Z * a[1].sq()) for Q, a in zip(push, acc)]
    return IsogenyOutput(codomain, [_tidy(Q) for Q in images])


def _tidy(Q: XPoint) -> XPoint:
    # (0:0) never arises for valid input; map it to the identity to keep XPoint well-formed
    if Q.X.v == 0 and Q.Z.v == 0:
        return XPoint.infinity(Q.X.ctx)
    return Q


def velu_sqrt(curve: MontgomeryCurve, P: XPoint, ell: int, push=(), tally=None, b=None, check=True) -> IsogenyOutput:
    _check_inputs(curve, P, ell, check)
    sys = index_system_for(ell, b)
    push = list(push)
    with counting(tally):
        plan = hs_plan(curve, P, ell, sys, check=False)
        hp, hm = hs_units(plan)
        codomain = _codomain(curve, ell, hp, hm)
        images = []
        for Q in push:
            h, hrev = hs_pair_projective(plan, Q.X, Q.Z)
            images.append(_tidy(XPoint(Q.X * hrev.sq(), Q.Z * h.sq())))
    return IsogenyOutput(codomain, images)


def isogeny_eval(curve: MontgomeryCurve, P: XPoint, ell: int, push=(), engine: EngineChoice = None, tally=None, check=True) -> IsogenyOutput:
    engine = engine or EngineChoice()
    if engine.uses_sqrt(ell):
        return velu_sqrt(curve, P, ell, push, tally, b=engine.b, check=check)
    return velu_conventional(curve, P, ell, push, tally, check=check)


__all__ = [
    "DEFAULT_CROSSOVER",
    "EngineChoice",
    "IsogenyOutput",
    "KernelPointIsIdentity",
    "SingularCodomain",
    "WrongOrder",
    "isogeny_eval",
    "velu_conventional",
    "velu_sqrt",
]
