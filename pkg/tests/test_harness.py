"""Mutation checks: each deliberately broken component must turn its group red."""

import itertools
import os

import pytest

from leibkit import harness
from leibkit.harness import GroupResult, SuiteConfig, run_group
from leibkit.linalg import Subspace
from leibkit.modrep import nil_chain, operators_of_element


def _one_sided(side):
    def chain(R, I):
        ops = [operators_of_element(R, x)[side] for x in I.rows]
        out = [R.full()]
        while True:
            nxt = Subspace.span(R.field, R.module_dim, [X @ v for X in ops for v in out[-1].rows])
            if nxt == out[-1]:
                return out, out[-1].is_zero()
            out.append(nxt)
    return chain


FAST = SuiteConfig(scrambles=2, tamperings=10)


def test_right_only_nil_chain_is_caught(monkeypatch):
    monkeypatch.setattr(harness, "nil_chain", _one_sided(1))
    res = run_group("engel", harness.group_engel, FAST)
    assert not res.passed
    assert any("antisymmetric" in f.label for f in res.failures)


def test_left_only_nil_chain_agrees_on_bimodules():
    # S acts as 0 on span{xm + mx} and as -T on the quotient, so the left
    # operators of an ideal already decide nilness; the mutant is equivalent.
    monkeypatch = pytest.MonkeyPatch()
    with monkeypatch.context() as m:
        m.setattr(harness, "nil_chain", _one_sided(0))
        res = run_group("engel", harness.group_engel, FAST)
    assert res.passed, res.line()


def test_accepting_verifier_is_caught(monkeypatch):
    monkeypatch.setattr(harness, "verify_document", lambda A, doc, *a: [])
    assert not run_group("flag", harness.group_theorem2, FAST).passed


def test_field_dependent_triangulability_is_caught(monkeypatch):
    real = harness.is_triangulable
    monkeypatch.setattr(harness, "is_triangulable", lambda A: (not real(A)[0], None) if A.dim == 3 else real(A))
    assert not run_group("t4", harness.group_theorem4, FAST).passed


def test_nondeterministic_output_is_caught(monkeypatch):
    import leibkit.cli as cli
    counter = itertools.count()
    real = cli.dumps
    monkeypatch.setattr(cli, "dumps", lambda obj: real(obj) + f"{next(counter)}\n")
    res = GroupResult("det")
    try:
        harness.group_determinism(SuiteConfig(fields=harness.SMALL_FIELDS[:1]), res)
    except Exception as exc:  # subprocess stage is unaffected by the patch
        pytest.fail(str(exc))
    assert not res.passed


def test_repro_files(tmp_path, monkeypatch):
    monkeypatch.setattr(harness, "is_strongly_solvable", lambda A: (False, None))
    res = run_group("1 theorem4-consistency", harness.group_theorem4,
                    SuiteConfig(scrambles=0, repro_dir=str(tmp_path)))
    assert not res.passed and res.repro_files
    notes = [p for p in res.repro_files if p.endswith(".txt")]
    text = open(notes[0]).read()
    assert text.startswith("# ") and "leibkit analyze" in text
    assert all(os.path.exists(p) for p in res.repro_files)


def test_runtime_bound_enforced(monkeypatch):
    def slow(cfg, res):
        res.check(True, "x", "")
        import time
        time.sleep(0.05)
    monkeypatch.setattr(harness, "ACCEPTANCE_GROUPS", [("0 slow", slow, 0.01)])
    ok, results = harness.run_theorem_suite(SuiteConfig(), extra=False)
    assert not ok and results[0].failures[0].label == "runtime"


def test_crash_becomes_failure():
    def boom(cfg, res):
        raise RuntimeError("kaput")
    res = run_group("boom", boom, SuiteConfig())
    assert not res.passed and "kaput" in res.line()


def test_real_nil_chain_untouched():
    assert harness.nil_chain is nil_chain
