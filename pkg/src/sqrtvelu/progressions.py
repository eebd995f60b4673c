"""Baby-step giant-step evaluators for arithmetic and geometric root sets.

``factorial_mod`` is Strassen's blocked modular factorial; ``geometric_hs``
evaluates prod_{s in S} (alpha - zeta^s) for S = (I+J) u K through one
resultant against the tree of zeta^i.  Both are the warm-up versions of
the elliptic evaluator in :mod:`sqrtvelu.velusqrt`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .field import FieldElement, ModRing, counting
from .poly import ProductTree, linear_tree, tree_resultant


class InvalidIndexPair(ValueError):
    pass


@dataclass(frozen=True)
class IndexPair:
    I: tuple[int, ...]
    J: tuple[int, ...]
    K: tuple[int, ...]

    def __post_init__(self):
        for name in ("I", "J", "K"):
            vals = getattr(self, name)
            if len(set(vals)) != len(vals):
                raise InvalidIndexPair(f"{name} has repeated elements")
            object.__setattr__(self, name, tuple(sorted(vals)))

    @property
    def S(self) -> list[int]:
        return sorted({i + j for i in self.I for j in self.J} | set(self.K))

    def validate(self) -> None:
        di = {a - b for a in self.I for b in self.I if a != b}
        dj = {a - b for a in self.J for b in self.J if a != b}
        if di & dj:
            raise InvalidIndexPair("I and J have a common difference")
        if {i + j for i in self.I for j in self.J} & set(self.K):
            raise InvalidIndexPair("K meets I+J")


def ap_index_pair(m: int, r: int, n: int) -> IndexPair:
    """Split the progression m, m+r, ..., m+(n-1)r as (I+J) u K."""
    if n < 0:
        raise ValueError("negative length")
    b = math.isqrt(n)
    return IndexPair(
        tuple(i * r for i in range(b)),
        tuple(m + j * b * r for j in range(b)),
        tuple(m + k * r for k in range(b * b, n)),
    )


def _blocked_range(lo: int, hi: int, R: ModRing):
    """prod_{lo < k <= hi} k in R, blocked with b = isqrt(hi - lo).

    h_I(X) = X (X-1) ... (X-(b-1)) is built by a product tree and evaluated
    at lo + b, lo + 2b, ..., lo + b^2 by a remainder tree; the tail
    lo + b^2 + 1 .. hi is multiplied in directly.
    """
    acc = R.one
    b = math.isqrt(hi - lo)
    if b:
        hI = linear_tree([R(i) for i in range(b)]).root.poly
        giant = linear_tree([R(lo + j * b) for j in range(1, b + 1)])
        for v in giant.remainders(hI):
            acc = acc * v
    for k in range(lo + b * b + 1, hi + 1):
        acc = acc * R(k)
    return acc


def factorial_mod(ell: int, n: int, tally=None) -> int:
    """ell! mod n with O~(sqrt(ell)) ring operations in Z/nZ."""
    if ell < 1 or n < 2:
        raise ValueError("need ell >= 1 and n >= 2")
    with counting(tally):
        return _blocked_range(0, ell, ModRing(n)).v


# Below this many factors a plain running product is cheaper, even in multiplications.
BLOCK_MIN = 50_000


def range_product(lo: int, hi: int, R: ModRing):
    if hi - lo < BLOCK_MIN:
        acc = R.one
        for k in range(lo + 1, hi + 1):
            acc = acc * R(k)
        return acc
    return _blocked_range(lo, hi, R)


def smallest_factor(n: int) -> int:
    """Smallest prime factor of n: the least ell with gcd(n, ell! mod n) > 1.

    Desk-scale only.  ell gallops upwards in doubling steps and is then
    bisected; each probe extends the last known factorial by a range
    product instead of starting over, so a full search costs about one
    factorial up to isqrt(n).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    top = math.isqrt(n)
    if top < 2:
        return n
    R = ModRing(n)
    lo, acc, step = 1, R.one, 1
    while True:
        hi = min(lo + step, top)
        nxt = acc * range_product(lo, hi, R)
        if math.gcd(n, nxt.v) > 1:
            break
        if hi == top:
            return n
        lo, acc, step = hi, nxt, 2 * step
    # gcd(n, lo!) == 1 < gcd(n, hi!)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        cand = acc * range_product(lo, mid, R)
        if math.gcd(n, cand.v) > 1:
            hi = mid
        else:
            lo, acc = mid, cand
    return hi


def _power(zeta: FieldElement, zinv: FieldElement, e: int) -> FieldElement:
    return zeta ** e if e >= 0 else zinv ** (-e)


def geometric_hs(zeta: FieldElement, pair: IndexPair, alpha: FieldElement, tally=None) -> FieldElement:
    """prod_{s in (I+J) u K} (alpha - zeta^s)."""
    ctx = zeta.ctx
    if zeta.is_zero():
        raise ValueError("zeta must be invertible")
    pair.validate()
    with counting(tally):
        zinv = zeta.inv() if any(e < 0 for e in pair.I + pair.J + pair.K) else None
        acc = ctx.one
        if pair.I and pair.J:
            tree = linear_tree([_power(zeta, zinv, i) for i in pair.I])
            # H_J(alpha, Z) = prod_j (alpha - zeta^j Z)
            HJ = ProductTree([[alpha, -_power(zeta, zinv, j)] for j in pair.J]).root.poly
            acc = tree_resultant(tree, HJ)
        for k in pair.K:
            acc = acc * (alpha - _power(zeta, zinv, k))
    return acc


def naive_geometric_hs(zeta: FieldElement, S, alpha: FieldElement) -> FieldElement:
    acc = zeta.ctx.one
    for s in S:
        acc = acc * (alpha - _power(zeta, zeta.inv() if s < 0 else None, s))
    return acc
