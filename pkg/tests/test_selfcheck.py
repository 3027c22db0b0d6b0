from __future__ import annotations

import pytest

from affine_kahler.selfcheck import run_selftest


def test_selftest_passes_and_is_deterministic():
    first = run_selftest(2, 3, 11)
    assert first.ok
    assert first.render() == run_selftest(2, 3, 11).render()
    assert "checks passed" in first.render()


def test_selftest_seed_changes_draws_but_not_verdict():
    assert run_selftest(2, 2, 1).ok
    assert run_selftest(2, 2, 2).ok


def test_selftest_rejects_zero_trials():
    with pytest.raises(ValueError):
        run_selftest(2, 0, 1)
