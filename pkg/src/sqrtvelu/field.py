"""Prime-field arithmetic with operation counting.

Elements carry their modulus context and support the usual Python
operators.  Every semantic field operation is recorded on the *active*
:class:`OpTally`, which the caller installs with :func:`counting`::

    t = OpTally()
    with counting(t):
        z = x * y + x.sq()
    assert (t.mul, t.sqr, t.add_sub) == (1, 1, 1)

No tally is active by default, so uncounted code pays nothing beyond a
context-variable lookup.  Arithmetic is NOT constant time.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, fields

import gmpy2


class FieldError(ArithmeticError):
    pass


class EvenModulus(FieldError, ValueError):
    pass


class CompositeModulus(FieldError, ValueError):
    pass


class ContextMismatch(FieldError, TypeError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


@dataclass
class OpTally:
    """Counts of field operations, one unit per semantic operation."""

    mul: int = 0
    sqr: int = 0
    add_sub: int = 0
    inv: int = 0

    @property
    def muls(self) -> int:
        """Headline metric: multiplications including squarings."""
        return self.mul + self.sqr

    def __add__(self, other: OpTally) -> OpTally:
        return OpTally(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))

    def __iadd__(self, other: OpTally) -> OpTally:
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))
        return self

    def copy(self) -> OpTally:
        return OpTally(self.mul, self.sqr, self.add_sub, self.inv)

    def __str__(self) -> str:
        return f"mul={self.mul} sqr={self.sqr} add={self.add_sub} inv={self.inv}"


_ACTIVE: contextvars.ContextVar[OpTally | None] = contextvars.ContextVar("sqrtvelu_tally", default=None)


@contextlib.contextmanager
def counting(tally: OpTally | None):
    """Route operation counts to ``tally`` for the duration of the block.

    ``counting(None)`` leaves whatever tally is already active in place, so
    library entry points can accept an optional tally and wrap themselves
    unconditionally.
    """
    if tally is None:
        yield None
        return
    token = _ACTIVE.set(tally)
    try:
        yield tally
    finally:
        _ACTIVE.reset(token)


@contextlib.contextmanager
def uncounted():
    """Suspend counting, e.g. for precondition checks that are not part of a measured algorithm."""
    token = _ACTIVE.set(None)
    try:
        yield
    finally:
        _ACTIVE.reset(token)


def active_tally() -> OpTally | None:
    return _ACTIVE.get()


def parse_int(text: str) -> int:
    """Parse a hex integer, with or without a ``0x`` prefix."""
    text = text.strip().lower()
    if text.startswith("0x"):
        text = text[2:]
    if not text:
        raise ValueError("empty hex literal")
    return int(text, 16)


def format_int(value: int) -> str:
    return format(value, "x")


class ModRing:
    """Residue ring Z/nZ.  Inversion is only available in :class:`FieldContext`."""

    is_field = False

    def __init__(self, n: int):
        n = int(n)
        if n < 2:
            raise ValueError(f"modulus must be >= 2, got {n}")
        self.p = n
        self.bit_length = n.bit_length()
        self.zero = FieldElement(self, 0)
        self.one = FieldElement(self, 1)

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.ctx is not self and value.ctx.p != self.p:
                raise ContextMismatch("element belongs to a different modulus")
            return value
        return FieldElement(self, int(value) % self.p)

    def from_hex(self, text: str) -> FieldElement:
        return self(parse_int(text))

    def __eq__(self, other):
        return isinstance(other, ModRing) and other.p == self.p and other.is_field == self.is_field

    def __hash__(self):
        return hash((self.p, self.is_field))

    def __repr__(self):
        return f"{type(self).__name__}({self.p:#x})"


class FieldContext(ModRing):
    """The prime field F_p, p an odd prime."""

    is_field = True

    def __init__(self, p: int):
        p = int(p)
        if p % 2 == 0:
            raise EvenModulus(f"modulus {p} is even")
        if p < 3 or not gmpy2.is_prime(p, 32):
            raise CompositeModulus(f"modulus {p} is not prime")
        super().__init__(p)
        self._euler = (p - 1) // 2

    def random(self, rng) -> FieldElement:
        return FieldElement(self, rng.randrange(self.p))


def _same_ctx(a: FieldElement, b: FieldElement) -> None:
    if a.ctx is not b.ctx and a.ctx != b.ctx:
        raise ContextMismatch(f"{a.ctx!r} vs {b.ctx!r}")


class FieldElement:
    __slots__ = ("ctx", "v")

    def __init__(self, ctx: ModRing, v: int):
        self.ctx = ctx
        self.v = v

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            _same_ctx(self, other)
            return other.v
        if isinstance(other, int):
            return other % self.ctx.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = _ACTIVE.get()
        if t is not None:
            t.add_sub += 1
        s = self.v + o
        p = self.ctx.p
        return FieldElement(self.ctx, s - p if s >= p else s)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = _ACTIVE.get()
        if t is not None:
            t.add_sub += 1
        s = self.v - o
        return FieldElement(self.ctx, s + self.ctx.p if s < 0 else s)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = _ACTIVE.get()
        if t is not None:
            t.add_sub += 1
        s = o - self.v
        return FieldElement(self.ctx, s + self.ctx.p if s < 0 else s)

    def __neg__(self):
        t = _ACTIVE.get()
        if t is not None:
            t.add_sub += 1
        return FieldElement(self.ctx, (-self.v) % self.ctx.p)

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                _same_ctx(self, other)
            o = other.v
        elif isinstance(other, int):
            o = other % self.ctx.p
        else:
            return NotImplemented
        t = _ACTIVE.get()
        if t is not None:
            t.mul += 1
        return FieldElement(self.ctx, self.v * o % self.ctx.p)

    __rmul__ = __mul__

    def sq(self) -> FieldElement:
        t = _ACTIVE.get()
        if t is not None:
            t.sqr += 1
        return FieldElement(self.ctx, self.v * self.v % self.ctx.p)

    def inv(self) -> FieldElement:
        if not self.ctx.is_field:
            raise FieldError("inversion is not available in a non-field residue ring")
        if self.v == 0:
            raise DivisionByZero("inverse of zero")
        t = _ACTIVE.get()
        if t is not None:
            t.inv += 1
        return FieldElement(self.ctx, pow(self.v, -1, self.ctx.p))

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.ctx(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.ctx(other) * self.inv()

    def __pow__(self, e: int) -> FieldElement:
        """Left-to-right square-and-multiply; ``0**0 == 1``."""
        e = int(e)
        if e < 0:
            return self.inv() ** (-e)
        if e == 0:
            return self.ctx.one
        r = self
        for bit in bin(e)[3:]:
            r = r.sq()
            if bit == "1":
                r = r * self
        return r

    def is_square(self) -> bool:
        """Euler's criterion; zero counts as a square."""
        r = self ** ((self.ctx.p - 1) // 2)
        return r.v == 1 or self.v == 0

    def sqrt(self) -> FieldElement:
        """Tonelli-Shanks square root (uncounted path for small test fields too)."""
        if not self.is_square():
            raise ValueError("not a square")
        r = gmpy2.mpz(self.v)
        p = self.ctx.p
        if self.v == 0:
            return self.ctx.zero
        if p % 4 == 3:
            return FieldElement(self.ctx, int(pow(r, (p + 1) // 4, p)))
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, x = s, pow(z, q, p), pow(self.v, q, p), pow(self.v, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c, t, x = i, b * b % p, t * b * b % p, x * b % p
        return FieldElement(self.ctx, x)

    def is_zero(self) -> bool:
        return self.v == 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.v == other.v and self.ctx.p == other.ctx.p
        if isinstance(other, int):
            return self.v == other % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.ctx.p))

    def __int__(self):
        return self.v

    def __bool__(self):
        return self.v != 0

    def hex(self) -> str:
        return format_int(self.v)

    def __repr__(self):
        return f"FieldElement({self.v})"


def batch_inv(xs: list[FieldElement]) -> list[FieldElement]:
    """Montgomery's trick: 1 inversion + 3(n-1) multiplications."""
    n = len(xs)
    if n == 0:
        return []
    prefix = [xs[0]]
    for x in xs[1:]:
        prefix.append(prefix[-1] * x)
    acc = prefix[-1].inv()
    out = [None] * n
    for i in range(n - 1, 0, -1):
        out[i] = acc * prefix[i - 1]
        acc = acc * xs[i]
    out[0] = acc
    return out


class Jet:
    """A 1-jet ``a0 + a1*eps`` with ``eps**2 == 0``.

    Mixed arithmetic with :class:`FieldElement` embeds the field element as
    ``c + 0*eps`` without paying for the zero part.
    """

    __slots__ = ("a0", "a1")

    def __init__(self, a0: FieldElement, a1: FieldElement):
        self.a0 = a0
        self.a1 = a1

    @classmethod
    def variable(cls, a: FieldElement) -> Jet:
        return cls(a, a.ctx.one)

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.a0 + other.a0, self.a1 + other.a1)
        return Jet(self.a0 + other, self.a1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet):
            return Jet(self.a0 - other.a0, self.a1 - other.a1)
        return Jet(self.a0 - other, self.a1)

    def __rsub__(self, other):
        return Jet(other - self.a0, -self.a1)

    def __neg__(self):
        return Jet(-self.a0, -self.a1)

    def __mul__(self, other):
        if isinstance(other, Jet):
            return Jet(self.a0 * other.a0, self.a0 * other.a1 + self.a1 * other.a0)
        return Jet(self.a0 * other, self.a1 * other)

    __rmul__ = __mul__

    def sq(self) -> Jet:
        t = self.a0 * self.a1
        return Jet(self.a0.sq(), t + t)

    def inv(self) -> Jet:
        if self.a0.is_zero():
            raise DivisionByZero("jet with zero value part is not invertible")
        u = self.a0.inv()
        return Jet(u, -(u.sq() * self.a1))

    def __eq__(self, other):
        if isinstance(other, Jet):
            return self.a0 == other.a0 and self.a1 == other.a1
        return NotImplemented

    def __hash__(self):
        return hash((self.a0, self.a1))

    def __repr__(self):
        return f"Jet({self.a0.v}, {self.a1.v})"
