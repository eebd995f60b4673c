"""x-only arithmetic on Montgomery curves B*y^2 = x*(x^2 + (A/C)*x + 1).

Points are projective x-coordinates (X:Z) with Z == 0 for the identity;
x-only arithmetic identifies P with -P and does not see B, so everything
here works on a curve and its quadratic twist alike.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import FieldContext, FieldElement, batch_inv, counting


class CurveError(ArithmeticError):
    pass


class SingularCurve(CurveError, ValueError):
    pass


class IdentityMultiple(CurveError):
    pass


@dataclass(frozen=True)
class XPoint:
    X: FieldElement
    Z: FieldElement

    @classmethod
    def infinity(cls, ctx: FieldContext) -> XPoint:
        return cls(ctx.one, ctx.zero)

    @classmethod
    def from_x(cls, x: FieldElement) -> XPoint:
        return cls(x, x.ctx.one)

    def is_infinity(self) -> bool:
        return self.Z.v == 0

    def affine(self) -> FieldElement:
        """x = X/Z (one inversion, uncounted unless a tally is active)."""
        if self.is_infinity():
            raise IdentityMultiple("the identity has no affine x-coordinate")
        return self.X / self.Z

    def same_as(self, other: XPoint) -> bool:
        """Projective equality, computed on raw residues (never tallied)."""
        p = self.X.ctx.p
        if self.is_infinity() or other.is_infinity():
            return self.is_infinity() and other.is_infinity()
        return self.X.v * other.Z.v % p == other.X.v * self.Z.v % p

    def __repr__(self):
        if self.is_infinity():
            return "XPoint(inf)"
        return f"XPoint({self.X.v}:{self.Z.v})"


@dataclass(frozen=True)
class MontgomeryCurve:
    A: FieldElement
    C: FieldElement

    def __post_init__(self):
        p = self.A.ctx.p
        if self.C.v == 0:
            raise SingularCurve("C must be nonzero")
        if (self.A.v * self.A.v - 4 * self.C.v * self.C.v) % p == 0:
            raise SingularCurve("(A/C)^2 == 4")

    @classmethod
    def from_a(cls, a: FieldElement) -> MontgomeryCurve:
        return cls(a, a.ctx.one)

    @property
    def ctx(self) -> FieldContext:
        return self.A.ctx

    def a(self) -> FieldElement:
        return self.A / self.C

    def a24(self) -> tuple[FieldElement, FieldElement]:
        """(A + 2C, 4C), the constants used by doubling."""
        c2 = self.C + self.C
        return self.A + c2, c2 + c2

    def is_on_curve(self, x: FieldElement) -> bool:
        """Whether x(x^2 + a x + 1) is a square, i.e. x lifts to the curve with B = 1."""
        a = self.a()
        return (x * (x.sq() + a * x + 1)).is_square()

    def j_invariant(self) -> FieldElement:
        a2 = self.a().sq()
        return 256 * (a2 - 3) ** 3 / (a2 - 4)

    def __repr__(self):
        return f"MontgomeryCurve(A={self.A.v}, C={self.C.v})"


def xdbl(P: XPoint, curve: MontgomeryCurve, tally=None, a24=None) -> XPoint:
    """x([2]P) in 4M + 2S given the cached (A+2C, 4C)."""
    with counting(tally):
        A24, C24 = a24 if a24 is not None else curve.a24()
        t0 = (P.X - P.Z).sq()
        t1 = (P.X + P.Z).sq()
        Z2 = C24 * t0
        X2 = Z2 * t1
        t1 = t1 - t0
        Z2 = (Z2 + A24 * t1) * t1
    return XPoint(X2, Z2)


def xadd(P: XPoint, Q: XPoint, PmQ: XPoint, curve: MontgomeryCurve = None, tally=None) -> XPoint:
    """x(P+Q) from x(P), x(Q), x(P-Q) in 4M + 2S.  Requires P != Q."""
    with counting(tally):
        t0 = (P.X - P.Z) * (Q.X + Q.Z)
        t1 = (P.X + P.Z) * (Q.X - Q.Z)
        X = PmQ.Z * (t0 + t1).sq()
        Z = PmQ.X * (t0 - t1).sq()
    return XPoint(X, Z)


def ladder(k: int, P: XPoint, curve: MontgomeryCurve, tally=None) -> XPoint:
    """x([k]P) by the Montgomery ladder."""
    ctx = curve.ctx
    if k < 0:
        k = -k
    if k == 0 or P.is_infinity():
        return XPoint.infinity(ctx)
    with counting(tally):
        a24 = curve.a24()
        R0, R1 = P, xdbl(P, curve, a24=a24)
        for bit in bin(k)[3:]:
            if bit == "1":
                R0, R1 = xadd(R1, R0, P), xdbl(R1, curve, a24=a24)
            else:
                R0, R1 = xdbl(R0, curve, a24=a24), xadd(R1, R0, P)
    return R0


class _Multiples:
    """Projective multiples of P, built by short differential chains."""

    def __init__(self, P: XPoint, curve: MontgomeryCurve):
        self.curve = curve
        self.a24 = curve.a24()
        self.P = P
        self.cache = {1: P}

    def get(self, k: int) -> XPoint:
        k = abs(k)
        if k == 0:
            return XPoint.infinity(self.curve.ctx)
        pt = self.cache.get(k)
        if pt is not None:
            return pt
        if k % 2 == 0:
            pt = xdbl(self.get(k // 2), self.curve, a24=self.a24)
        else:
            pt = xadd(self.get(k // 2 + 1), self.get(k // 2), self.P)
        self.cache[k] = pt
        return pt

    def step(self, k: int, d: int) -> XPoint:
        """x([k]P) as x([k-d]P) + x([d]P), reusing a progression of difference d."""
        k = abs(k)
        if k in self.cache:
            return self.cache[k]
        if d <= 0 or d >= k or (k - d) not in self.cache or abs(k - 2 * d) not in self.cache and k != 2 * d:
            return self.get(k)
        if k == 2 * d:
            return self.get(k)
        pt = xadd(self.cache[k - d], self.get(d), self.cache[abs(k - 2 * d)])
        self.cache[k] = pt
        return pt

    def progression(self, indices) -> list[XPoint]:
        out, prev = [], None
        for k in indices:
            out.append(self.get(k) if prev is None else self.step(k, k - prev))
            prev = k
        return out


def multiples_proj(P: XPoint, groups, curve: MontgomeryCurve, tally=None) -> list[list[XPoint]]:
    """Projective x([k]P) for each index in each group (groups share one cache)."""
    with counting(tally):
        chain = _Multiples(P, curve)
        return [chain.progression(g) for g in groups]


def normalize(points: list[XPoint]) -> list[FieldElement]:
    """Affine x-coordinates with one shared inversion."""
    if any(pt.is_infinity() for pt in points):
        raise IdentityMultiple("a requested multiple is the identity")
    invs = batch_inv([pt.Z for pt in points])
    return [pt.X * zi for pt, zi in zip(points, invs)]


def multiples_x(P: XPoint, indices, curve: MontgomeryCurve, tally=None) -> dict[int, FieldElement]:
    """Affine x([k]P) for every k in a sorted index set."""
    indices = sorted(set(indices))
    with counting(tally):
        (pts,) = multiples_proj(P, [indices], curve)
        xs = normalize(pts)
    return dict(zip(indices, xs))


def biquad_coeffs(x1: FieldElement, x2: FieldElement, curve: MontgomeryCurve, tally=None):
    """C-scaled biquadratics (C*F0, C*F1, C*F2) for the Montgomery model.

    (X - x(P+Q)) (X - x(P-Q)) = X^2 + (F1/F0) X + F2/F0 whenever the four
    points P, Q, P+Q, P-Q are all nonzero.
    """
    A, C = curve.A, curve.C
    with counting(tally):
        s = x1 * x2
        F0 = C * (x1 - x2).sq()
        t = C * ((s + 1) * (x1 + x2)) + (A * s + A * s)
        F1 = -(t + t)
        F2 = C * (s - 1).sq()
    return F0, F1, F2


def random_x(ctx: FieldContext, rng) -> FieldElement:
    return ctx(rng.randrange(ctx.p))
