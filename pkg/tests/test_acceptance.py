"""Acceptance criteria, each run at its stated time bound with default settings."""

import pytest

from leibkit.harness import ACCEPTANCE_GROUPS, SuiteConfig, run_group


@pytest.mark.parametrize("name,fn,bound", ACCEPTANCE_GROUPS, ids=[g[0] for g in ACCEPTANCE_GROUPS])
def test_criterion(name, fn, bound, capsys):
    res = run_group(name, fn, SuiteConfig())
    within = res.elapsed <= bound
    status = "PASS" if res.passed and within else "FAIL"
    with capsys.disabled():
        print(f"\n{status} criterion {name}: {res.checks} checks, {res.elapsed:.2f}s (bound {bound:.0f}s)")
    for f in res.failures[:5]:
        print(f"  {f.label}: {f.message}")
    assert res.passed, res.line()
    assert within, f"{res.elapsed:.2f}s exceeds {bound}s"
