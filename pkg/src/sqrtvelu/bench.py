"""Operation-count sweeps over ell for both engines.

Tallies are value-independent for fixed ell and tuning, so one kernel
point per ell on the base curve of the chosen field is enough.  Each row
measures the single-point subroutine: the codomain plus one pushed point.
"""

from __future__ import annotations

import csv
import io
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .curve import MontgomeryCurve, XPoint, ladder
from .field import FieldContext, OpTally, uncounted
from .isogeny import velu_conventional, velu_sqrt
from .velusqrt import b_window, index_system_for

THREADS_ENV = "SQRTVELU_THREADS"
CSV_HEADER = ("ell", "engine", "b", "muls", "sqrs", "adds", "invs", "normalized")
DEFAULT_WIDTH = 6


@dataclass(frozen=True)
class BenchRow:
    ell: int
    engine: str
    b: int | None
    muls: int
    sqrs: int
    adds: int
    invs: int

    @property
    def total(self) -> int:
        return self.muls + self.sqrs

    @property
    def normalized(self) -> float:
        return self.total / (self.ell + 2)

    def csv_fields(self) -> list[str]:
        b = "" if self.b is None else str(self.b)
        return [str(self.ell), self.engine, b, str(self.muls), str(self.sqrs), str(self.adds), str(self.invs), f"{self.normalized:.3f}"]


def _row(ell: int, engine: str, b, t: OpTally) -> BenchRow:
    return BenchRow(ell, engine, b, t.mul, t.sqr, t.add_sub, t.inv)


def kernel_point(F: FieldContext, ell: int, seed: int = 0):
    E = MontgomeryCurve.from_a(F.zero)
    rng = random.Random(f"{F.p}:{ell}:{seed}")
    with uncounted():
        while True:
            P = ladder((F.p + 1) // ell, XPoint.from_x(F.random(rng)), E)
            if not P.is_infinity():
                return E, XPoint.from_x(P.affine()), XPoint.from_x(F.random(rng))


def measure_conventional(F: FieldContext, ell: int) -> BenchRow:
    E, P, Q = kernel_point(F, ell)
    t = OpTally()
    velu_conventional(E, P, ell, [Q], t, check=False)
    return _row(ell, "conventional", None, t)


def measure_sqrt(F: FieldContext, ell: int, b: int | None = None) -> BenchRow:
    E, P, Q = kernel_point(F, ell)
    t = OpTally()
    velu_sqrt(E, P, ell, [Q], t, b=b, check=False)
    return _row(ell, "sqrt", index_system_for(ell, b).b, t)


def sweep_b(F: FieldContext, ell: int, width: int = DEFAULT_WIDTH) -> BenchRow:
    """The cheapest sqrt row over the tuning window (ties go to the smaller b)."""
    window = b_window(ell, width)
    if len(window) > 1:
        window = [b for b in window if b > 0]
    rows = [measure_sqrt(F, ell, b) for b in window]
    return min(rows, key=lambda r: (r.total, r.b))


def _pair(args) -> tuple[BenchRow, BenchRow]:
    p, ell, width = args
    F = FieldContext(p)
    return measure_conventional(F, ell), sweep_b(F, ell, width)


def worker_count() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def crossover_rows(p: int, ells, width: int = DEFAULT_WIDTH, workers: int | None = None) -> list[tuple[BenchRow, BenchRow]]:
    """(conventional, tuned sqrt) per ell, in ell order."""
    jobs = [(p, ell, width) for ell in sorted(ells)]
    workers = workers or worker_count()
    if workers <= 1 or len(jobs) <= 1:
        return [_pair(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_pair, jobs))


def crossover_ell(pairs) -> int | None:
    """Least ell from which the sqrt engine is strictly cheaper for every larger ell measured."""
    best = None
    for conv, sq in reversed(pairs):
        if sq.total < conv.total:
            best = conv.ell
        else:
            break
    return best


def first_win(pairs) -> int | None:
    """Least ell where the sqrt engine is strictly cheaper."""
    for conv, sq in pairs:
        if sq.total < conv.total:
            return conv.ell
    return None


def to_csv(pairs) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for conv, sq in pairs:
        w.writerow(conv.csv_fields())
        w.writerow(sq.csv_fields())
    return buf.getvalue()
