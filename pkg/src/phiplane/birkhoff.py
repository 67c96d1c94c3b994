"""Exact ergodic sums S_n = sum_{k=0}^{n} ({x0 + k/phi**2} - 1/2).

The fractional parts are tracked incrementally: the step 1/phi**2 lies
in (0, 1), so each update either stays below 1 or wraps once.  A scaled
integer fast path keeps million-term runs cheap; a direct floor-based
evaluation provides an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .field import HALF, QPhi, ZERO, phi_power
from .fastorbit import sgn_pair

STEP = phi_power(-2)                 # 1/phi**2 = 2 - phi
DRIFT = phi_power(-3) * HALF         # 1/(2 phi**3)


@dataclass(frozen=True)
class SumRecord:
    n: int
    value: QPhi
    is_record: bool


def birkhoff_sum(x0: QPhi, n: int) -> QPhi:
    """S_n, incrementally, with the running fractional part reused."""
    if n < 0:
        raise ValueError("n must be >= 0")
    _, f = x0.floor_frac()
    total = f - HALF
    for _ in range(n):
        f = f + STEP
        if f >= 1:
            f = f - 1
        total = total + f - HALF
    return total


def birkhoff_sum_direct(x0: QPhi, n: int) -> QPhi:
    """S_n recomputed from scratch, one exact floor per term."""
    total = ZERO
    for k in range(n + 1):
        total = total + (x0 + k * STEP).frac() - HALF
    return total


def display_difference(x0: QPhi, n: int) -> QPhi:
    """First-display minus second-display y-part of the orbit formula.

    The variant with drift n/(2 phi**3) and centering 1/phi differs from
    the {x} - 1/2 form by the constant -1/(2 phi**3), every n, because
    1/phi - 1/2 equals 1/(2 phi**3) exactly.
    """
    first = n * DRIFT
    second = ZERO
    inv_phi = phi_power(-1)
    for k in range(n + 1):
        f = (x0 + k * STEP).frac()
        first = first + f - inv_phi
        second = second + f - HALF
    return first - second


def record_maxima(x0: QPhi, N: int) -> list[SumRecord]:
    """All n <= N where |S_n| strictly exceeds every earlier |S_j|."""
    if N < 0:
        raise ValueError("N must be >= 0")
    _, f = x0.floor_frac()
    d = lcm(2, f.a.denominator, f.b.denominator)
    fa = int(f.a * d)
    fb = int(f.b * d)
    half = d // 2
    step_a, step_b = 2 * d, -d
    sa, sb = fa - half, fb          # running sum, scaled by d
    best_a, best_b = 0, 0
    out: list[SumRecord] = []

    def push(n: int, va: int, vb: int) -> None:
        out.append(SumRecord(n, QPhi(Fraction(va, d), Fraction(vb, d)), True))

    for n in range(N + 1):
        if n > 0:
            fa += step_a
            fb += step_b
            if sgn_pair(fa - d, fb) >= 0:
                fa -= d
            sa += fa - half
            sb += fb
        aa, ab = (sa, sb) if sgn_pair(sa, sb) >= 0 else (-sa, -sb)
        if sgn_pair(aa - best_a, ab - best_b) > 0:
            best_a, best_b = aa, ab
            push(n, sa, sb)
    return out


def max_abs_sum(x0: QPhi, N: int) -> QPhi:
    """max_{n<=N} |S_n|."""
    recs = record_maxima(x0, N)
    return abs(recs[-1].value)


def sums_csv(x0: QPhi, N: int) -> str:
    """CSV rows (n, S_n to 12 decimal places, is_record)."""
    records = {r.n for r in record_maxima(x0, N)}
    lines = ["n,s_n,is_record"]
    _, f = x0.floor_frac()
    total = f - HALF
    for n in range(N + 1):
        if n > 0:
            f = f + STEP
            if f >= 1:
                f = f - 1
            total = total + f - HALF
        val = total.approx(64)
        lines.append(f"{n},{float(val):.12f},{int(n in records)}")
    return "\n".join(lines)
