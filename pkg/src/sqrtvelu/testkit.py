"""Independent oracles for small fields.  Test-only and never tallied.

Nothing in here uses the x-only code paths it is meant to check: points
carry y-coordinates and are added with the affine short Weierstrass group
law, kernel polynomials are expanded naively, codomains come from Velu's
original formulas and are compared through the j-invariant.
"""

from __future__ import annotations

import itertools
import math
import random

import gmpy2

from .curve import MontgomeryCurve, XPoint, ladder
from .field import FieldContext, FieldElement, uncounted

Point = tuple  # affine (x, y); None is the identity


class Weierstrass:
    """y^2 = x^3 + a4 x + a6, the short model of the Montgomery curve y^2 = x(x^2 + a x + 1)."""

    def __init__(self, a: FieldElement):
        self.ctx = a.ctx
        self.a = a
        three = self.ctx(3)
        self.shift = a / three
        self.a4 = 1 - a.sq() / three
        self.a6 = 2 * a ** 3 / 27 - a / three

    def to_w(self, x: FieldElement, y: FieldElement) -> Point:
        return (x + self.shift, y)

    def to_mont_x(self, P: Point) -> FieldElement:
        return P[0] - self.shift

    def on_curve(self, P: Point) -> bool:
        if P is None:
            return True
        x, y = P
        return y.sq() == x ** 3 + self.a4 * x + self.a6

    def neg(self, P: Point) -> Point:
        return None if P is None else (P[0], -P[1])

    def add(self, P: Point, Q: Point) -> Point:
        if P is None:
            return Q
        if Q is None:
            return P
        (x1, y1), (x2, y2) = P, Q
        if x1 == x2:
            if (y1 + y2).is_zero():
                return None
            lam = (3 * x1.sq() + self.a4) / (y1 + y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam.sq() - x1 - x2
        return (x3, lam * (x1 - x3) - y1)

    def mul(self, k: int, P: Point) -> Point:
        if k < 0:
            return self.mul(-k, self.neg(P))
        R = None
        while k:
            if k & 1:
                R = self.add(R, P)
            P = self.add(P, P)
            k >>= 1
        return R

    def j_invariant(self) -> FieldElement:
        t = 4 * self.a4 ** 3
        return 1728 * t / (t + 27 * self.a6.sq())


def mont_rhs(a: FieldElement, x: FieldElement) -> FieldElement:
    return x * (x.sq() + a * x + 1)


def random_mont_point(a: FieldElement, rng) -> tuple[FieldElement, FieldElement]:
    """A random affine point (x, y) on y^2 = x(x^2 + a x + 1) with y != 0."""
    ctx = a.ctx
    while True:
        x = ctx.random(rng)
        rhs = mont_rhs(a, x)
        if not rhs.is_zero() and rhs.is_square():
            return x, rhs.sqrt()


def count_points(a: FieldElement) -> int:
    """#E(F_p) by the Legendre sum; small p only."""
    p = a.ctx.p
    av = a.v
    total = 1
    for x in range(p):
        rhs = x * (x * x + av * x + 1) % p
        total += 1 + int(gmpy2.legendre(rhs, p)) if rhs else 1
    return total


def order_of(W: Weierstrass, P: Point, group_order: int) -> int:
    """Exact order of P given a multiple of it."""
    n = group_order
    for q, _ in _factor(group_order):
        while n % q == 0 and W.mul(n // q, P) is None:
            n //= q
    return n


def _factor(n: int):
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def velu_codomain_j(a: FieldElement, kernel: Point, ell: int) -> FieldElement:
    """j-invariant of E/<P> by Velu's formulas on the short Weierstrass model."""
    W = Weierstrass(a)
    v = w = a.ctx.zero
    Q = kernel
    for _ in range((ell - 1) // 2):
        xq, yq = Q
        gx = 3 * xq.sq() + W.a4
        vq = gx + gx
        uq = 4 * yq.sq()
        v = v + vq
        w = w + uq + xq * vq
        Q = W.add(Q, kernel)
    a4 = W.a4 - 5 * v
    a6 = W.a6 - 7 * w
    t = 4 * a4 ** 3
    return 1728 * t / (t + 27 * a6.sq())


def kernel_xs(a: FieldElement, kernel: Point, ell: int) -> list[FieldElement]:
    """Montgomery x([s]P) for s = 1..ell-1 by the affine group law."""
    W = Weierstrass(a)
    out, Q = [], W.to_w(*kernel)
    for _ in range(ell - 1):
        out.append(W.to_mont_x(Q))
        Q = W.add(Q, W.to_w(*kernel))
    return out


def naive_phi_x(xs: list[FieldElement], x: FieldElement):
    """x * prod (x x_s - 1)/(x - x_s) over the full kernel; None when x is a kernel x."""
    num, den = x, x.ctx.one
    for xs_ in xs:
        num = num * (x * xs_ - 1)
        den = den * (x - xs_)
    if den.is_zero():
        return None
    return num / den


def naive_hs(xs_half: list[FieldElement], alpha: FieldElement) -> FieldElement:
    acc = alpha.ctx.one
    for x in xs_half:
        acc = acc * (alpha - x)
    return acc


def toy_prime(ell: int, rng, bits: tuple[int, int] = (20, 40), extra: int = 3) -> int:
    """A prime p = 4 * extra * ell * k - 1 in the given bit range."""
    base = 4 * extra * ell
    lo = max(1, (1 << (bits[0] - 1)) // base + 1)
    hi = ((1 << bits[1]) - 1) // base
    if lo > hi:
        raise ValueError("bit range too narrow for this ell")
    while True:
        k = rng.randint(lo, hi)
        p = base * k - 1
        if p.bit_length() >= bits[0] and gmpy2.is_prime(p):
            return p


def random_supersingular(F: FieldContext, rng, steps: int = 4) -> MontgomeryCurve:
    """Walk from a = 0 along random 3-isogenies (needs 3 | p + 1 and p = 3 mod 4)."""
    from .isogeny import velu_conventional

    p = F.p
    if (p + 1) % 12:
        raise ValueError("need 12 | p + 1")
    E = MontgomeryCurve.from_a(F(0))
    with uncounted():
        done = 0
        while done < steps:
            K = ladder((p + 1) // 3, XPoint.from_x(F.random(rng)), E)
            if K.is_infinity():
                continue
            out = velu_conventional(E, K, 3)
            E = MontgomeryCurve.from_a(out.codomain.a())
            done += 1
    return E


def point_of_order(E: MontgomeryCurve, n: int, rng, group_order: int) -> XPoint:
    """A random x-only point of exact prime order n (curve or twist side)."""
    F = E.ctx
    with uncounted():
        while True:
            P = ladder(group_order // n, XPoint.from_x(F.random(rng)), E)
            if not P.is_infinity():
                return XPoint.from_x(P.affine())


def curve_point_of_order(a: FieldElement, n: int, rng, group_order: int) -> tuple[FieldElement, FieldElement]:
    """An affine Montgomery point (x, y) of exact prime order n on the curve itself."""
    W = Weierstrass(a)
    while True:
        x, y = random_mont_point(a, rng)
        Q = W.mul(group_order // n, W.to_w(x, y))
        if Q is not None:
            return W.to_mont_x(Q), Q[1]


def toy_setup(ell: int, rng, bits=(20, 40), steps: int = 3):
    """(curve, x-only kernel point of order ell) over a fresh toy prime."""
    p = toy_prime(ell, rng, bits)
    F = FieldContext(p)
    E = random_supersingular(F, rng, steps)
    return E, point_of_order(E, ell, rng, p + 1)


def odd_primes(lo: int, hi: int) -> list[int]:
    return [n for n in range(max(3, lo), hi + 1) if n % 2 and gmpy2.is_prime(n)]


def sylvester_resultant(f: list[int], g: list[int], p: int) -> int:
    """Res(f, g) mod p by the Sylvester determinant (coefficients lowest degree first)."""
    m, n = len(f) - 1, len(g) - 1
    if m == 0:
        return pow(f[0], n, p)
    if n == 0:
        return pow(g[0], m, p)
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + f[::-1] + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + g[::-1] + [0] * (size - n - 1 - i))
    return _det(rows, p)


def _det(M: list[list[int]], p: int) -> int:
    M = [[v % p for v in row] for row in M]
    n = len(M)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c] % p
        inv = pow(M[c][c], -1, p)
        for r in range(c + 1, n):
            f = M[r][c] * inv % p
            if f:
                M[r] = [(x - f * y) % p for x, y in zip(M[r], M[c])]
    return det % p


def brute_index_cover(I, J, K) -> list[int]:
    return sorted([i + j for i, j in itertools.product(I, J)] + [i - j for i, j in itertools.product(I, J)] + list(K))


def rng_for(*parts) -> random.Random:
    return random.Random(":".join(str(x) for x in parts))


def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))
