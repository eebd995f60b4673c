"""Toy-scale invariant suites behind ``sqrtvelu selftest``.

Each suite is a list of named checks; a check passes when it returns a
truthy value without raising.  Module attributes are looked up at call
time so a patched function is what gets tested.
"""

from __future__ import annotations

import random
import traceback

from . import curve, field, isogeny, poly, progressions, testkit, velusqrt
from . import csidh as csidh_mod


def _field_checks(rng):
    F = field.FieldContext(419)

    def axioms():
        for _ in range(50):
            a, b, c = (F.random(rng) for _ in range(3))
            if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c:
                return False
            if not a.is_zero() and a * a.inv() != 1:
                return False
        return True

    def tally_exact():
        t = field.OpTally()
        with field.counting(t):
            x = F(5) * F(7)
            x = x.sq()
            x.inv()
        return (t.mul, t.sqr, t.inv) == (1, 1, 1)

    def jets():
        f = poly.Poly(F, [F.random(rng) for _ in range(6)])
        a = F.random(rng)
        j = poly.poly_eval_jet(f, field.Jet.variable(a))
        return j.a0 == f(a) and j.a1 == f.derivative()(a)

    return [("field axioms", axioms), ("tally exactness", tally_exact), ("jet derivative", jets)]


def _poly_checks(rng):
    F = field.FieldContext(1000003)

    def rand_poly(n):
        return poly.Poly(F, [F.random(rng) for _ in range(n)])

    def product():
        fs = [rand_poly(rng.randint(1, 5)) for _ in range(9)]
        acc = fs[0]
        for f in fs[1:]:
            acc = poly.Poly(F, poly._schoolbook(list(acc.coeffs), list(f.coeffs)))
        return poly.product_tree(fs).root.poly == list(acc.coeffs)

    def multipoint():
        f = rand_poly(40)
        pts = [F.random(rng) for _ in range(17)]
        return poly.multipoint_eval(f, pts) == [f(x) for x in pts]

    def resultant():
        roots = [rng.randrange(F.p) for _ in range(4)]
        g = rand_poly(4)
        h = poly.poly_from_roots(F, roots)
        want = testkit.sylvester_resultant([c.v for c in h.coeffs], [c.v for c in g.coeffs], F.p)
        return poly.resultant_via_roots(roots, g).v == want

    return [("product tree", product), ("multipoint eval", multipoint), ("resultant", resultant)]


def _progressions_checks(rng):
    def factorial():
        import math

        return all(progressions.factorial_mod(n, 1009) == math.factorial(n) % 1009 for n in range(1, 60))

    def smallest():
        return all(progressions.smallest_factor(n) == min(d for d in range(2, n + 1) if n % d == 0) for n in range(2, 400))

    def geometric():
        F = field.FieldContext(1009)
        zeta, alpha = F(11), F.random(rng)
        pair = progressions.ap_index_pair(3, 2, 30)
        return progressions.geometric_hs(zeta, pair, alpha) == progressions.naive_geometric_hs(zeta, pair.S, alpha)

    return [("factorial", factorial), ("smallest factor", smallest), ("geometric progression", geometric)]


def _toy(ell, rng):
    p = testkit.toy_prime(ell, rng, (20, 28))
    F = field.FieldContext(p)
    E = testkit.random_supersingular(F, rng, 2)
    x, y = testkit.curve_point_of_order(E.a(), ell, rng, p + 1)
    return F, E, x, y


def _curve_checks(rng):
    def ladder_vs_affine():
        F, E, _, _ = _toy(5, rng)
        W = testkit.Weierstrass(E.a())
        x, y = testkit.random_mont_point(E.a(), rng)
        k = rng.randrange(2, 1000)
        R = W.mul(k, W.to_w(x, y))
        got = curve.ladder(k, curve.XPoint.from_x(x), E)
        return got.is_infinity() if R is None else got.affine() == W.to_mont_x(R)

    def vieta():
        F, E, _, _ = _toy(5, rng)
        a = E.a()
        W = testkit.Weierstrass(a)
        for _ in range(20):
            P, Q = (W.to_w(*testkit.random_mont_point(a, rng)) for _ in range(2))
            S, D = W.add(P, Q), W.add(P, W.neg(Q))
            if S is None or D is None:
                continue
            f0, f1, f2 = curve.biquad_coeffs(W.to_mont_x(P), W.to_mont_x(Q), E)
            xs, xd = W.to_mont_x(S), W.to_mont_x(D)
            if f1 != -(xs + xd) * f0 or f2 != xs * xd * f0:
                return False
        return True

    def triquadratic():
        F, E, _, _ = _toy(5, rng)
        A = E.a()
        for _ in range(20):
            x0, x1, x2 = (F.random(rng) for _ in range(3))
            f0, f1, f2 = curve.biquad_coeffs(x1, x2, E)
            lhs = x0.sq() * f0 + x0 * f1 + f2
            rhs = (x0 * x1 - 1).sq() + (x0 * x2 - 1).sq() + (x1 * x2 - 1).sq() - 2 * x0 * x1 * x2 * (x0 + x1 + x2 + 2 * A) - 2
            if lhs != rhs:
                return False
        return True

    return [("ladder vs affine law", ladder_vs_affine), ("biquadratic Vieta", vieta), ("triquadratic identity", triquadratic)]


def _velusqrt_checks(rng):
    def partition():
        return all(velusqrt.index_system_for(ell).is_valid() for ell in testkit.odd_primes(3, 600))

    def hs_oracle():
        for ell in (3, 5, 13, 31, 61):
            F, E, x, y = _toy(ell, rng)
            xs = testkit.kernel_xs(E.a(), (x, y), ell)
            plan = velusqrt.hs_plan(E, curve.XPoint.from_x(x), ell, velusqrt.index_system_for(ell))
            alpha = F.random(rng)
            want = testkit.naive_hs(xs[: (ell - 1) // 2], alpha)
            if velusqrt.hs_eval(plan, alpha) != velusqrt.delta(plan) * want:
                return False
        return True

    def jet():
        ell = 19
        F, E, x, y = _toy(ell, rng)
        xs = testkit.kernel_xs(E.a(), (x, y), ell)[: (ell - 1) // 2]
        plan = velusqrt.hs_plan(E, curve.XPoint.from_x(x), ell, velusqrt.index_system_for(ell))
        alpha = F.random(rng)
        h = poly.poly_from_roots(F, xs)
        d = velusqrt.delta(plan)
        j = velusqrt.hs_eval_jet(plan, alpha)
        return j.a0 == d * h(alpha) and j.a1 == d * h.derivative()(alpha)

    return [("index partition", partition), ("h_S oracle", hs_oracle), ("jet derivative", jet)]


def _isogeny_checks(rng):
    def engines():
        for ell in (3, 5, 7, 11, 13, 37, 101):
            F, E, x, _ = _toy(ell, rng)
            P = curve.XPoint.from_x(x)
            push = [curve.XPoint.from_x(F.random(rng)) for _ in range(3)]
            a = isogeny.velu_conventional(E, P, ell, push)
            b = isogeny.velu_sqrt(E, P, ell, push)
            if a.codomain.a() != b.codomain.a():
                return False
            if not all(u.same_as(v) for u, v in zip(a.images, b.images)):
                return False
        return True

    def velu_j():
        for ell in (3, 7, 19):
            F, E, x, y = _toy(ell, rng)
            out = isogeny.velu_sqrt(E, curve.XPoint.from_x(x), ell)
            W = testkit.Weierstrass(E.a())
            if out.codomain.j_invariant() != testkit.velu_codomain_j(E.a(), W.to_w(x, y), ell):
                return False
        return True

    def images():
        ell = 13
        F, E, x, y = _toy(ell, rng)
        xs = testkit.kernel_xs(E.a(), (x, y), ell)
        qs = [F.random(rng) for _ in range(4)]
        out = isogeny.velu_sqrt(E, curve.XPoint.from_x(x), ell, [curve.XPoint.from_x(q) for q in qs])
        return all(testkit.naive_phi_x(xs, q) == R.affine() for q, R in zip(qs, out.images))

    return [("engine equivalence", engines), ("Velu codomain j", velu_j), ("images vs naive map", images)]


def _csidh_checks(rng):
    prm = csidh_mod.params("toy419")
    E0 = csidh_mod.base_curve(prm)

    def commute():
        for _ in range(3):
            k1, k2 = (csidh_mod.PrivateKey.random(prm, 3, rng) for _ in range(2))
            a = csidh_mod.action(prm, k2, csidh_mod.action(prm, k1, E0, seed=1), seed=2)
            b = csidh_mod.action(prm, k1, csidh_mod.action(prm, k2, E0, seed=3), seed=4)
            if a.a != b.a:
                return False
        return True

    def inverse():
        k = csidh_mod.PrivateKey.random(prm, 3, rng)
        return csidh_mod.action(prm, -k, csidh_mod.action(prm, k, E0, seed=5), seed=6).a == E0.a

    def engines():
        k = csidh_mod.PrivateKey.random(prm, 3, rng)
        conv = csidh_mod.action(prm, k, E0, isogeny.EngineChoice("conventional"), seed=7)
        sq = csidh_mod.action(prm, k, E0, isogeny.EngineChoice("sqrt"), seed=7)
        return conv.a == sq.a

    return [("commutativity", commute), ("inverse key", inverse), ("engine swap", engines)]


SUITES = {
    "field": _field_checks,
    "poly": _poly_checks,
    "progressions": _progressions_checks,
    "curve": _curve_checks,
    "velusqrt": _velusqrt_checks,
    "isogeny": _isogeny_checks,
    "csidh": _csidh_checks,
}


def run(only=None, seed: int = 2024, out=print) -> bool:
    """Run the suites (all, or those named in ``only``); True when everything passed."""
    names = list(SUITES) if not only else [n for n in SUITES if n in set(only)]
    if only and len(names) != len(set(only)):
        unknown = sorted(set(only) - set(SUITES))
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    ok = True
    for name in names:
        rng = random.Random(f"{seed}:{name}")
        passed, failures = 0, []
        checks = SUITES[name](rng)
        for label, fn in checks:
            try:
                good = bool(fn())
            except Exception:
                good = False
                failures.append(f"{label}: {traceback.format_exc(limit=2).strip().splitlines()[-1]}")
            else:
                if not good:
                    failures.append(label)
            passed += good
        out(f"{name}: {passed}/{len(checks)} passed")
        for f in failures:
            out(f"  FAILED {f}")
        ok = ok and not failures
    return ok
