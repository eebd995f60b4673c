"""Index systems and the elliptic baby-step giant-step evaluator.

For a point P of odd order n and S = {1, 3, ..., n-2} the kernel
polynomial is h_S(alpha) = prod_{s in S} (alpha - x([s]P)).  With an index
system (I, J) for S and leftovers K,

    Res_Z(h_I(Z), E_J(alpha, Z)) * h_K(alpha) = Delta_{I,J} * h_S(alpha),

where E_J is a product of #J quadratics in Z built from the biquadratics
and Delta_{I,J} = Res_Z(h_I, D_J) does not depend on alpha.  Everything
here works with the C-cleared biquadratics of :func:`curve.biquad_coeffs`;
the extra factor C^(#I #J) lands in Delta and cancels in every ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .curve import IdentityMultiple, MontgomeryCurve, XPoint, ladder, multiples_proj, normalize
from .field import FieldElement, Jet, counting, uncounted
from .poly import ProductTree, linear_tree, tree_resultant


class VeluError(ArithmeticError):
    pass


class InvalidTuning(VeluError, ValueError):
    pass


class WrongOrder(VeluError, ValueError):
    pass


class IndexHitsIdentity(VeluError):
    pass


@dataclass(frozen=True)
class IndexSystem:
    I: tuple[int, ...]
    J: tuple[int, ...]
    K: tuple[int, ...]
    b: int
    bp: int
    m: int

    @property
    def S(self) -> range:
        return range(1, self.m + 1, 2)

    def covered(self) -> list[int]:
        """The multiset (I+J) + (I-J) + K as a sorted list."""
        out = [i + j for i in self.I for j in self.J]
        out += [i - j for i in self.I for j in self.J]
        out += list(self.K)
        return sorted(out)

    def is_valid(self) -> bool:
        return self.covered() == list(self.S)


def index_system_for(ell: int, b_override: int | None = None) -> IndexSystem:
    """The progression-shaped index system for S = {1, 3, ..., ell-2}.

    I = {2b(2i+1) : i < b'}, J = {2j+1 : j < b}, and K holds the odd
    numbers from 4bb'+1 to ell-2.
    """
    if ell < 3 or ell % 2 == 0:
        raise ValueError(f"ell must be odd and >= 3, got {ell}")
    if b_override is None:
        b = math.isqrt(ell - 1) // 2
    else:
        b = int(b_override)
        if b < 0 or 4 * b > ell - 1:
            raise InvalidTuning(f"b={b} is out of range for ell={ell} (need 0 <= 4b <= ell-1)")
    bp = (ell - 1) // (4 * b) if b else 0
    I = tuple(2 * b * (2 * i + 1) for i in range(bp))
    J = tuple(2 * j + 1 for j in range(b))
    K = tuple(range(4 * b * bp + 1, ell - 1, 2))
    return IndexSystem(I, J, K, b, bp, ell - 2)


def b_window(ell: int, width: int) -> list[int]:
    """Valid b values within ``width`` of the default."""
    b0 = math.isqrt(ell - 1) // 2
    top = (ell - 1) // 4
    return [b for b in range(max(0, b0 - width), min(top, b0 + width) + 1)]


@dataclass(eq=False)
class HsPlan:
    """Alpha-independent data for one kernel: multiples, h_I tree, per-j constants."""

    curve: MontgomeryCurve
    n: int
    sys: IndexSystem
    xI: list
    xJ: list
    xK: list
    tree: ProductTree | None
    # C*x_j, C*x_j^2, C*(x_j^2 + 1) + 2A*x_j
    pj: list
    rj: list
    qj: list


def check_order(P: XPoint, n: int, curve: MontgomeryCurve) -> None:
    """Raise WrongOrder unless [n]P is the identity.  Never tallied."""
    with uncounted():
        if not ladder(n, P, curve).is_infinity():
            raise WrongOrder(f"[{n}]P is not the identity")


def hs_plan(curve: MontgomeryCurve, P: XPoint, n: int, sys: IndexSystem, tally=None, check=True) -> HsPlan:
    if check:
        check_order(P, n, curve)
    # x([k]P) = x([n-k]P): K sits just below n, so use the small side
    kk = [min(k, n - k) for k in sys.K]
    with counting(tally):
        groups = multiples_proj(P, [sys.J, sys.I, kk], curve)
        flat = [pt for g in groups for pt in g]
        try:
            xs = normalize(flat)
        except IdentityMultiple as exc:
            raise IndexHitsIdentity(str(exc)) from None
        nJ, nI = len(sys.J), len(sys.I)
        xJ, xI, xK = xs[:nJ], xs[nJ:nJ + nI], xs[nJ + nI:]
        tree = None
        A, C = curve.A, curve.C
        pj, rj, qj = [], [], []
        if xI:
            tree = linear_tree(xI)
            tree.precompute_reciprocals(2 * len(xJ) + 1)
            for x in xJ:
                p = C * x
                r = p * x
                ax = A * x
                pj.append(p)
                rj.append(r)
                qj.append(r + C + ax + ax)
    return HsPlan(curve, n, sys, xI, xJ, xK, tree, pj, rj, qj)


def _double(u):
    return u + u


def _ej_affine(plan: HsPlan, alpha):
    """Leaves c2 Z^2 + c1 Z + c0 of E_J(alpha, Z) for an affine alpha (field element or jet)."""
    C = plan.curve.C
    a2 = alpha.sq()
    Ca2 = a2 * C
    a2p1 = a2 + 1
    leaves = []
    for p, r, q in zip(plan.pj, plan.rj, plan.qj):
        pa2 = _double(alpha * p)
        c2 = Ca2 - pa2 + r
        c1 = -_double(a2p1 * p + alpha * q)
        c0 = a2 * r - pa2 + C
        leaves.append([c0, c1, c2])
    return leaves


def _ej_projective(plan: HsPlan, X: FieldElement, Z: FieldElement):
    """Leaves of Z^(2#J) E_J(X/Z, .); swapping X and Z swaps c0 and c2."""
    C = plan.curve.C
    X2, Z2, XZ = X.sq(), Z.sq(), X * Z
    CX2, CZ2 = C * X2, C * Z2
    s2 = X2 + Z2
    leaves = []
    for p, r, q in zip(plan.pj, plan.rj, plan.qj):
        u = _double(p * XZ)
        c2 = CX2 - u + r * Z2
        c0 = r * X2 - u + CZ2
        c1 = -_double(p * s2 + q * XZ)
        leaves.append([c0, c1, c2])
    return leaves


def _ej_unit(plan: HsPlan, sign: int):
    """Leaves of E_J(+-1, Z): palindromic and multiplication-free."""
    C = plan.curve.C
    leaves = []
    for p, r, q in zip(plan.pj, plan.rj, plan.qj):
        p2 = _double(p)
        if sign > 0:
            c = C - p2 + r
            c1 = -_double(p2 + q)
        else:
            c = C + p2 + r
            c1 = -_double(p2 - q)
        leaves.append([c, c1, c])
    return leaves


def _ej_poly(leaves) -> list:
    return ProductTree(leaves).root.poly


def _resultant(plan: HsPlan, ej: list):
    return tree_resultant(plan.tree, ej)


def _k_product(plan: HsPlan, alpha):
    acc = None
    for x in plan.xK:
        f = alpha - x
        acc = f if acc is None else acc * f
    return acc


def _times(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a * b


def _one_if_none(v, like):
    if v is not None:
        return v
    if isinstance(like, Jet):
        ctx = like.a0.ctx
        return Jet(ctx.one, ctx.zero)
    return like.ctx.one


def hs_eval(plan: HsPlan, alpha: FieldElement, tally=None):
    """Delta * h_S(alpha) (the scaled value; see :func:`delta`)."""
    with counting(tally):
        res = _resultant(plan, _ej_poly(_ej_affine(plan, alpha))) if plan.tree else None
        return _one_if_none(_times(res, _k_product(plan, alpha)), alpha)


def hs_eval_jet(plan: HsPlan, alpha: FieldElement, tally=None) -> Jet:
    """(Delta * h_S(alpha), Delta * h_S'(alpha)) by running the evaluator over 1-jets."""
    return hs_eval(plan, Jet.variable(alpha), tally)


def delta(plan: HsPlan, tally=None) -> FieldElement:
    """Delta_{I,J} = Res_Z(h_I, D_J) with the same C-clearing as :func:`hs_eval`."""
    ctx = plan.curve.ctx
    if plan.tree is None:
        return ctx.one
    C = plan.curve.C
    with counting(tally):
        leaves = [[r, -_double(p), C] for p, r in zip(plan.pj, plan.rj)]
        return _resultant(plan, _ej_poly(leaves))


def hs_pair_projective(plan: HsPlan, X: FieldElement, Z: FieldElement, tally=None):
    """(H(X, Z), H(Z, X)) for the homogenised, Delta-scaled H(X, Z) = Z^m h_S(X/Z)."""
    with counting(tally):
        r1 = r2 = None
        if plan.tree is not None:
            e = _ej_poly(_ej_projective(plan, X, Z))
            r1 = _resultant(plan, e)
            r2 = _resultant(plan, e[::-1])
        k1 = k2 = None
        for x in plan.xK:
            f1, f2 = X - x * Z, Z - x * X
            k1 = f1 if k1 is None else k1 * f1
            k2 = f2 if k2 is None else k2 * f2
        one = X.ctx.one
        return _one_if_none(_times(r1, k1), one), _one_if_none(_times(r2, k2), one)


def hs_units(plan: HsPlan, tally=None):
    """(Delta * h_S(1), Delta * h_S(-1))."""
    ctx = plan.curve.ctx
    with counting(tally):
        rp = rm = None
        if plan.tree is not None:
            rp = _resultant(plan, _ej_poly(_ej_unit(plan, 1)))
            rm = _resultant(plan, _ej_poly(_ej_unit(plan, -1)))
        kp = km = None
        for x in plan.xK:
            fp, fm = 1 - x, -1 - x
            kp = fp if kp is None else kp * fp
            km = fm if km is None else km * fm
        return _one_if_none(_times(rp, kp), ctx.one), _one_if_none(_times(rm, km), ctx.one)


def kernel_poly_eval(curve: MontgomeryCurve, P: XPoint, ell: int, alpha: FieldElement, tally=None, b=None) -> FieldElement:
    """The kernel polynomial prod_{s in S} (alpha - x([s]P)) itself (one inversion)."""
    sys = index_system_for(ell, b)
    with counting(tally):
        plan = hs_plan(curve, P, ell, sys)
        return hs_eval(plan, alpha) / delta(plan)
