"""Acceptance gate: every top-level criterion, one pass/fail line each."""

import time

import pytest

from phiplane.acceptance import CRITERIA


@pytest.mark.parametrize("name,check", CRITERIA, ids=[n for n, _ in CRITERIA])
def test_criterion(name, check):
    start = time.monotonic()
    ok, detail = check()
    elapsed = time.monotonic() - start
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail} ({elapsed:.1f}s)")
    assert ok, f"{name}: {detail}"
