import pytest

from leibkit.catalog import catalog_build, direct_sum
from leibkit.decide import is_triangulable
from leibkit.errors import BudgetExhausted, ModeUnsupportedForField, TheoremViolation
from leibkit.exactfield import GF, Q
from leibkit.recognize import (
    audit_two_recognizability,
    reverify_witness,
    two_generated_subalgebra,
    witness_search,
)


def test_two_generated_examples():
    A = catalog_build("abelian(3)")
    U, B = two_generated_subalgebra(A, (1, 0, 0), (0, 1, 0))
    assert U.dim == 2 and not B.nonzero_products()
    sl2 = catalog_build("sl2")
    assert two_generated_subalgebra(sl2, (1, 0, 0), (0, 1, 0))[0] == sl2.full()
    heis = catalog_build("heis3")
    assert two_generated_subalgebra(heis, (1, 0, 0), (0, 1, 0))[0] == heis.full()


def test_abelian_exhaustive():
    r = audit_two_recognizability(catalog_build("abelian(2)", GF(2)), "exhaustive")
    assert r.pairs_total == r.pairs_checked == 16
    assert r.all_pairs_triangulable and r.algebra_triangulable and r.theorem_consistency
    assert r.theorem5 == "confirmed"
    r = audit_two_recognizability(catalog_build("abelian(3)", GF(3)), "exhaustive")
    assert r.witness is None and r.theorem_consistency


def test_weylheis_exhaustive():
    A = catalog_build("weylheis(2)", GF(2))
    r = audit_two_recognizability(A, "exhaustive", stop_at_first=False)
    assert r.pairs_checked == 1024 and r.witness_count >= 1
    assert r.theorem5 == "confirmed by witness" and r.corollary6 == "not applicable"
    assert reverify_witness(A, r.witness)
    first = audit_two_recognizability(A, "exhaustive")
    assert first.witness == r.witness and first.pairs_checked == r.witness.index + 1


def test_sl2_sampled():
    A = catalog_build("sl2")
    r = audit_two_recognizability(A, "sampled", seed=1, samples=200, height=3)
    assert r.witness is not None and reverify_witness(A, r.witness)
    assert r.corollary6 == "confirmed by witness" and r.theorem5 == "not applicable"
    assert not r.complete


def test_mode_and_budget_errors():
    with pytest.raises(ModeUnsupportedForField):
        audit_two_recognizability(catalog_build("heis3"), "exhaustive")
    with pytest.raises(BudgetExhausted):
        audit_two_recognizability(catalog_build("heis3", GF(7)), "exhaustive", budget=1000)
    with pytest.raises(ValueError):
        audit_two_recognizability(catalog_build("heis3"), "random")


def test_witness_search():
    assert witness_search(catalog_build("heis3")) is None
    w = witness_search(catalog_build("sl2"))
    assert w is not None and not is_triangulable(two_generated_subalgebra(catalog_build("sl2"), w.x, w.y)[1])[0]
    assert witness_search(catalog_build("weylheis(2)", GF(2))) is not None


def test_witness_survives_padding():
    A = catalog_build("weylheis(2)", GF(2))
    w = witness_search(A)
    for k in (1, 2):
        S = direct_sum(A, catalog_build(f"abelian({k})", GF(2)))
        pad = (0,) * k
        U, B = two_generated_subalgebra(S, w.x + pad, w.y + pad)
        assert U.dim == w.subalgebra.dim and not is_triangulable(B)[0]


def test_parallel_equals_sequential():
    A = catalog_build("weylheis(2)", GF(2))
    for stop in (True, False):
        seq = audit_two_recognizability(A, "exhaustive", stop_at_first=stop)
        par = audit_two_recognizability(A, "exhaustive", stop_at_first=stop, workers=3)
        assert seq == par


@pytest.mark.parametrize("name", ["abelian(2)", "lie2", "heis3", "leib2", "r3", "sl2"])
@pytest.mark.parametrize("p", [2, 3])
def test_solvable_consistency_small_fields(name, p):
    r = audit_two_recognizability(catalog_build(name, GF(p)), "exhaustive", stop_at_first=False)
    assert r.theorem_consistency
