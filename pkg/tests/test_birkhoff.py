import random
from fractions import Fraction
from math import floor

import pytest

from phiplane.birkhoff import (DRIFT, STEP, SumRecord, birkhoff_sum,
                               birkhoff_sum_direct, display_difference,
                               max_abs_sum, record_maxima, sums_csv)
from phiplane.field import HALF, PHI, QPhi, ZERO, phi_power

PHI_F = (1 + 5 ** 0.5) / 2


def test_first_sums_from_zero():
    assert birkhoff_sum(ZERO, 0) == -HALF
    # S_1 = -1/2 + (1/phi**2 - 1/2) = 1 - phi
    assert birkhoff_sum(ZERO, 1) == QPhi(1) - PHI


def test_incremental_matches_direct():
    starts = [ZERO, HALF, PHI - 1, QPhi(Fraction(3, 7), Fraction(-1, 5))]
    for x0 in starts:
        for n in (0, 1, 5, 34, 89):
            assert birkhoff_sum(x0, n) == birkhoff_sum_direct(x0, n)


def test_float_oracle():
    x0 = QPhi(Fraction(1, 3))
    n = 5000
    exact = float(birkhoff_sum(x0, n).approx(80))
    step = 1 / PHI_F ** 2
    approx = sum((1 / 3 + k * step) % 1.0 - 0.5 for k in range(n + 1))
    assert exact == pytest.approx(approx, abs=1e-6)


def test_display_difference_is_constant():
    for x0 in (ZERO, HALF, QPhi(Fraction(2, 9), Fraction(1, 4))):
        for n in (0, 3, 21, 100):
            assert display_difference(x0, n) == -DRIFT


def test_step_and_drift_constants():
    assert STEP == 2 - PHI
    assert DRIFT == phi_power(-3) * HALF
    # 1/phi - 1/2 = 1/(2 phi**3) exactly
    assert phi_power(-1) - HALF == DRIFT


def test_record_maxima_structure():
    recs = record_maxima(ZERO, 10000)
    assert recs[0] == SumRecord(0, -HALF, True)
    mags = [abs(r.value) for r in recs]
    for a, b in zip(mags, mags[1:]):
        assert b > a
    # values agree with the plain evaluation
    for r in recs[:6]:
        assert birkhoff_sum(ZERO, r.n) == r.value


def test_records_keep_appearing():
    # unbounded sums: a new record inside every decade checked
    recs = record_maxima(ZERO, 100000)
    ns = [r.n for r in recs]
    for lo in (100, 1000, 10000):
        assert any(lo <= n < 10 * lo for n in ns)


def test_max_abs_sum_monotone():
    vals = [max_abs_sum(ZERO, N) for N in (10, 100, 1000, 10000)]
    for a, b in zip(vals, vals[1:]):
        assert b >= a
    assert vals[-1] > vals[0]


def test_record_maxima_random_start_matches_slow():
    rng = random.Random(17)
    x0 = QPhi(Fraction(rng.randint(-9, 9), 10), Fraction(rng.randint(-9, 9), 10))
    recs = record_maxima(x0, 400)
    best = ZERO
    expected = []
    for n in range(401):
        v = birkhoff_sum(x0, n)
        if abs(v) > best:
            best = abs(v)
            expected.append((n, v))
    assert [(r.n, r.value) for r in recs] == expected


def test_sums_csv_format_and_determinism():
    out = sums_csv(ZERO, 50)
    lines = out.splitlines()
    assert lines[0] == "n,s_n,is_record"
    assert len(lines) == 52
    assert lines[1] == "0,-0.500000000000,1"
    assert out == sums_csv(ZERO, 50)


def test_negative_inputs_rejected():
    with pytest.raises(ValueError):
        birkhoff_sum(ZERO, -1)
    with pytest.raises(ValueError):
        record_maxima(ZERO, -2)
