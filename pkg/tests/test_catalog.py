import pytest

from leibkit.algebra import check_leibniz_identity, derived_series, derived_subalgebra, lower_central_series
from leibkit.catalog import (
    catalog_build,
    catalog_entries,
    enumerate_ideals,
    enumerate_ideals_bruteforce,
    enumerate_subspaces,
    expected_booleans,
    irreducible_submodules,
    oracle_irreducible,
    oracle_nil_elementwise,
    oracle_supersolvable,
    parse_entry_name,
    scramble,
    supported_fields,
)
from leibkit.decide import analyze, is_supersolvable, split_check
from leibkit.errors import BudgetExhausted, FieldUnsupported, UnknownEntry
from leibkit.exactfield import GF, Q
from leibkit.linalg import Subspace
from leibkit.modrep import adjoint_representation, is_submodule


def test_names():
    assert parse_entry_name("abelian(3)") == ("abelian", 3)
    assert parse_entry_name("abelian:3") == ("abelian", 3)
    assert parse_entry_name("WEYLHEIS(2)") == ("weylheis", 2)
    with pytest.raises(UnknownEntry):
        catalog_build("octonions")
    with pytest.raises(FieldUnsupported):
        catalog_build("weylheis(3)", Q)
    assert supported_fields("weylheis(5)") == (GF(5),)


def test_weylheis2_series():
    A = catalog_build("weylheis(2)", GF(2))
    assert [U.dim for U in derived_series(A)] == [5, 3, 2, 0]
    lcs = lower_central_series(A, derived_subalgebra(A))
    V = A.span([(0, 0, 0, 1, 0), (0, 0, 0, 0, 1)])
    assert lcs == [derived_subalgebra(A), V]
    assert expected_booleans("weylheis(2)", GF(2))["solvable"]


def test_r3_expectations_follow_minus_one_being_a_square():
    for F in (GF(2), GF(3), GF(5), GF(7), GF(13)):
        A = catalog_build("r3", F)
        assert is_supersolvable(A)[0] == expected_booleans("r3", F)["supersolvable"]


def test_scramble_examples():
    A = catalog_build("abelian(3)")
    assert not scramble(A, 5).nonzero_products()
    assert check_leibniz_identity(scramble(catalog_build("sl2"), 7)) == []


def test_subspace_enumeration_counts():
    # Gaussian binomials over GF(2): total subspaces of GF(2)^3 is 1 + 7 + 7 + 1
    assert sum(1 for _ in enumerate_subspaces(GF(2), 3)) == 16
    assert sum(1 for _ in enumerate_subspaces(GF(3), 2, 1)) == 4
    with pytest.raises(BudgetExhausted):
        list(enumerate_subspaces(GF(2), 4, budget=5))
    with pytest.raises(FieldUnsupported):
        list(enumerate_subspaces(Q, 2))


def test_oracle_examples():
    assert oracle_supersolvable(catalog_build("abelian(2)", GF(2)))[0]
    assert not oracle_supersolvable(catalog_build("r3", GF(7)))[0]
    ok, chain = oracle_supersolvable(catalog_build("r3", GF(5)))
    assert ok and [U.dim for U in chain] == [0, 1, 2, 3]
    sl2 = catalog_build("sl2", GF(5))
    R = adjoint_representation(sl2)
    assert oracle_nil_elementwise(R, sl2.zero_space())
    assert not oracle_nil_elementwise(R, sl2.full())
    W = catalog_build("weylheis(2)", GF(2))
    assert not oracle_nil_elementwise(adjoint_representation(W), derived_subalgebra(W))


def test_irreducibility_oracle():
    H = catalog_build("heis3", GF(2))
    R = adjoint_representation(H)
    assert oracle_irreducible(R, Subspace.span(GF(2), 3, [(0, 0, 1)]))
    assert not oracle_irreducible(R, Subspace.span(GF(2), 3, [(1, 0, 0), (0, 0, 1)]))


@pytest.mark.parametrize("entry", [e for e in catalog_entries() if e.field.p and e.field.p ** e.build().dim <= 800],
                         ids=lambda e: e.label)
def test_oracles_agree_with_decisions(entry):
    A = entry.build()
    assert oracle_supersolvable(A)[0] == is_supersolvable(A)[0]
    assert enumerate_ideals(A) == enumerate_ideals_bruteforce(A)


@pytest.mark.parametrize("entry", [e for e in catalog_entries() if e.field.p and e.field.p ** e.build().dim <= 800],
                         ids=lambda e: e.label)
def test_irreducible_submodules_are_lines_when_split(entry):
    A = entry.build()
    R = adjoint_representation(A)
    if not entry.expected["triangulable"] or split_check(R) is not None:
        return
    for B in irreducible_submodules(R):
        assert B.dim == 1 and is_submodule(R, B)


@pytest.mark.parametrize("entry", catalog_entries(), ids=lambda e: e.label)
def test_expected_booleans_match(entry):
    assert analyze(entry.build()).booleans() == entry.expected
