"""Dense univariate polynomials over F_p (or Z/nZ), lowest degree first.

The tree algorithms work on plain coefficient lists; :class:`Poly` is the
small public wrapper.  Coefficients may be :class:`~sqrtvelu.field.Jet`
values as long as every divisor in a remainder tree has base-field
coefficients.

Multiplication is Karatsuba down to ``KARATSUBA_THRESHOLD`` (schoolbook
below), with a dedicated 6-multiplication 3x3 kernel.  In the
multiplication-count metric Karatsuba wins at every size >= 2, so the
default threshold is 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .field import FieldElement, Jet, ModRing, counting


KARATSUBA_THRESHOLD = 2
# Reciprocal lengths up to this use the direct power-series recurrence.
NEWTON_BASE = 4


class EmptyInput(ValueError):
    pass


def _zero_of(c):
    if isinstance(c, Jet):
        return c.a0.ctx.zero
    return c.ctx.zero


def add(f: list, g: list) -> list:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = out[i] + c
    return out


def sub(f: list, g: list) -> list:
    out = list(f)
    for i, c in enumerate(g):
        if i < len(out):
            out[i] = out[i] - c
        else:
            out.append(-c)
    return out


def _schoolbook(f: list, g: list) -> list:
    out = [None] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            t = a * b
            k = i + j
            out[k] = t if out[k] is None else out[k] + t
    return out


def _mul3(f: list, g: list) -> list:
    a0, a1, a2 = f
    b0, b1, b2 = g
    p0, p1, p2 = a0 * b0, a1 * b1, a2 * b2
    p01 = (a0 + a1) * (b0 + b1)
    p02 = (a0 + a2) * (b0 + b2)
    p12 = (a1 + a2) * (b1 + b2)
    return [p0, p01 - p0 - p1, p02 - p0 - p2 + p1, p12 - p1 - p2, p2]


def _add_into(out: list, src: list, offset: int) -> None:
    for i, c in enumerate(src):
        k = offset + i
        out[k] = c if out[k] is None else out[k] + c


def mul(f: list, g: list) -> list:
    """Full product of two coefficient lists."""
    a, b = len(f), len(g)
    if a == 0 or b == 0:
        return []
    if a < b:
        f, g, a, b = g, f, b, a
    if b == 1:
        c = g[0]
        return [x * c for x in f]
    if b < KARATSUBA_THRESHOLD:
        return _schoolbook(f, g)
    if a == 3 and b == 3:
        return _mul3(f, g)
    h = (a + 1) // 2
    out = [None] * (a + b - 1)
    if b <= h:
        _add_into(out, mul(f[:h], g), 0)
        _add_into(out, mul(f[h:], g), h)
        return out
    f0, f1, g0, g1 = f[:h], f[h:], g[:h], g[h:]
    z0 = mul(f0, g0)
    z2 = mul(f1, g1)
    z1 = sub(sub(mul(add(f0, f1), add(g0, g1)), z0), z2)
    _add_into(out, z0, 0)
    _add_into(out, z1, h)
    _add_into(out, z2, 2 * h)
    return out


def mul_low(f: list, g: list, n: int) -> list:
    """The first ``n`` coefficients of ``f*g`` (short product)."""
    f, g = f[:n], g[:n]
    a, b = len(f), len(g)
    if a == 0 or b == 0 or n <= 0:
        return []
    if a + b - 1 <= n:
        return mul(f, g)
    if a == 1 or b == 1 or n == 1:
        return mul(f, g)[:n]
    h = (n + 1) // 2
    out = [None] * n
    _add_into(out, mul(f[:h], g[:h])[:n], 0)
    if b > h:
        _add_into(out, mul_low(f[:n - h], g[h:], n - h), h)
    if a > h:
        _add_into(out, mul_low(f[h:], g[:n - h], n - h), h)
    zero = _zero_of(f[0])
    return [zero if c is None else c for c in out]


def mul_monic(f: list, g: list) -> list:
    """Product of two monic polynomials; the leading ones cost nothing."""
    m, n = len(f) - 1, len(g) - 1
    fl, gl = f[:m], g[:n]
    out = [None] * (m + n + 1)
    _add_into(out, mul(fl, gl), 0)
    _add_into(out, fl, n)
    _add_into(out, gl, m)
    out[m + n] = f[m]
    return out


def horner(f: list, x):
    if not f:
        return None
    acc = f[-1]
    for c in reversed(f[:-1]):
        acc = acc * x + c
    return acc


def series_inverse(u: list, k: int) -> list:
    """Inverse of ``u`` modulo X^k, for ``u[0] == 1``.

    Newton iteration ``g <- g - g*(u*g - 1)`` on top of the direct
    recurrence for short lengths.  No field inversion is needed, so this
    also works over Z/nZ.
    """
    one = u[0]
    u = u[:k] + [_zero_of(one)] * max(0, k - len(u))
    if k <= NEWTON_BASE:
        g = [one]
        for i in range(1, k):
            acc = u[i]
            for t in range(1, i):
                acc = acc + u[t] * g[i - t]
            g.append(-acc)
        return g
    j = (k + 1) // 2
    g = series_inverse(u, j)
    e = mul_low(u, g, k)[j:]
    corr = mul_low(g, e, k - j)
    return g + [-c for c in corr]


@dataclass(eq=False)
class TreeNode:
    poly: list
    left: TreeNode | None = None
    right: TreeNode | None = None
    _recip: list = dc_field(default_factory=list, repr=False)

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    def reciprocal(self, k: int) -> list:
        """Inverse of the reversed (monic) node modulo X^k, cached."""
        if len(self._recip) < k:
            rev = self.poly[::-1]
            self._recip = series_inverse(rev, k)
        return self._recip[:k]


class ProductTree:
    """Balanced product tree; the root is the product of all leaves.

    When every leaf is monic the tree is built with :func:`mul_monic` and
    can drive a division-free remainder tree (:meth:`remainders`).
    """

    def __init__(self, leaves: list[list], monic: bool = False):
        if not leaves:
            raise EmptyInput("product tree needs at least one factor")
        self.monic = monic
        self.leaves = [TreeNode(list(f)) for f in leaves]
        self.root = self._build(self.leaves)

    def _build(self, nodes: list[TreeNode]) -> TreeNode:
        if len(nodes) == 1:
            return nodes[0]
        mid = (len(nodes) + 1) // 2
        left, right = self._build(nodes[:mid]), self._build(nodes[mid:])
        prod = mul_monic(left.poly, right.poly) if self.monic else mul(left.poly, right.poly)
        return TreeNode(prod, left, right)

    def nodes(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            if node.left is not None:
                stack.extend((node.left, node.right))

    def precompute_reciprocals(self, dividend_len: int) -> None:
        """Fill the reciprocal caches needed to reduce a dividend of the given length."""
        self._precompute(self.root, dividend_len)

    def _precompute(self, node: TreeNode, n: int) -> None:
        if node.left is None:
            return
        if n > node.degree and node.degree > 1:
            node.reciprocal(n - node.degree)
        n = min(n, node.degree)
        for child in (node.left, node.right):
            self._precompute(child, n)

    def remainders(self, f: list) -> list:
        """``f`` reduced modulo each leaf, leaves in input order.

        For linear monic leaves ``Z - x`` these are the values ``f(x)``.
        """
        if not self.monic:
            raise ValueError("remainder trees need monic nodes")
        out = []
        self._descend(self.root, f, out)
        return out

    def _descend(self, node: TreeNode, f: list, out: list) -> None:
        if node.degree == 1:
            # r mod (Z - x) == r(x)
            x = -node.poly[0]
            out.append(horner(f, x) if len(f) > 1 else (f[0] if f else None))
            return
        r = rem_monic(f, node)
        if node.left is None:
            out.append(r)
            return
        self._descend(node.left, r, out)
        self._descend(node.right, r, out)


def rem_monic(f: list, node: TreeNode) -> list:
    """Remainder of ``f`` modulo the monic polynomial held by ``node``."""
    m = node.degree
    n = len(f)
    if n <= m:
        return f
    k = n - m
    top = f[::-1][:k]
    # the reciprocal is 1 + X*r, so top*recip = top + X*(top*r)
    qrev = list(top)
    if k > 1:
        _add_into(qrev, mul_low(top[:k - 1], node.reciprocal(k)[1:], k - 1), 1)
    q = qrev[::-1]
    return sub(f[:m], mul_low(q, node.poly[:m], m))


class Poly:
    """Immutable dense polynomial bound to one residue ring."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: ModRing, coeffs):
        cs = [ctx(c) for c in coeffs]
        while cs and cs[-1].v == 0:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @classmethod
    def from_roots(cls, ctx: ModRing, roots, tally=None) -> Poly:
        return poly_from_roots(ctx, roots, tally)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1].v == 1

    def __call__(self, x):
        if not self.coeffs:
            return self.ctx.zero
        return horner(list(self.coeffs), x)

    def __mul__(self, other: Poly) -> Poly:
        return poly_mul(self, other)

    def __add__(self, other: Poly) -> Poly:
        _check(self, other)
        return Poly(self.ctx, add(list(self.coeffs), list(other.coeffs)))

    def __sub__(self, other: Poly) -> Poly:
        _check(self, other)
        return Poly(self.ctx, sub(list(self.coeffs), list(other.coeffs)))

    def derivative(self) -> Poly:
        return Poly(self.ctx, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx.p == other.ctx.p and [c.v for c in self.coeffs] == [c.v for c in other.coeffs]

    def __repr__(self):
        return f"Poly({[c.v for c in self.coeffs]})"


def _check(f: Poly, g: Poly) -> None:
    from .field import ContextMismatch

    if f.ctx.p != g.ctx.p:
        raise ContextMismatch("polynomials over different rings")


def poly_mul(f: Poly, g: Poly, tally=None) -> Poly:
    _check(f, g)
    with counting(tally):
        return Poly(f.ctx, mul(list(f.coeffs), list(g.coeffs)))


def product_tree(factors: list[Poly], tally=None) -> ProductTree:
    if not factors:
        raise EmptyInput("product tree needs at least one factor")
    for f in factors[1:]:
        _check(factors[0], f)
    monic = all(f.is_monic() for f in factors)
    with counting(tally):
        return ProductTree([list(f.coeffs) for f in factors], monic=monic)


def linear_tree(roots: list[FieldElement]) -> ProductTree:
    """Product tree of the monic linear factors ``Z - r``."""
    one = roots[0].ctx.one
    return ProductTree([[-r, one] for r in roots], monic=True)


def poly_from_roots(ctx: ModRing, roots, tally=None) -> Poly:
    roots = [ctx(r) for r in roots]
    if not roots:
        return Poly(ctx, [1])
    with counting(tally):
        return Poly(ctx, linear_tree(roots).root.poly)


def multipoint_eval(f: Poly, points, tally=None) -> list[FieldElement]:
    """Values of ``f`` at every point, by a remainder tree."""
    if not points:
        raise EmptyInput("no evaluation points")
    points = [f.ctx(x) for x in points]
    with counting(tally):
        tree = linear_tree(points)
        vals = tree.remainders(list(f.coeffs))
    zero = f.ctx.zero
    return [zero if v is None else v for v in vals]


def tree_resultant(tree: ProductTree, g: list):
    """Product of ``g`` over the roots of a linear-leaf tree.

    This is Res_Z(h, g) for the monic split ``h`` at the tree root.
    """
    vals = tree.remainders(g)
    acc = vals[0]
    for v in vals[1:]:
        acc = acc * v
    return acc


def resultant_via_roots(roots, g: Poly, tally=None) -> FieldElement:
    if not roots:
        raise EmptyInput("resultant against an empty root list")
    roots = [g.ctx(r) for r in roots]
    if not g.coeffs:
        return g.ctx.zero
    with counting(tally):
        return tree_resultant(linear_tree(roots), list(g.coeffs))


def poly_eval_jet(f: Poly, at: Jet, tally=None) -> Jet:
    """Horner evaluation in the jet algebra: ``(f(a), f'(a))``."""
    zero = f.ctx.zero
    if not f.coeffs:
        return Jet(zero, zero)
    with counting(tally):
        acc = Jet(f.coeffs[-1], zero)
        for c in reversed(f.coeffs[:-1]):
            acc = acc * at + c
    return acc
