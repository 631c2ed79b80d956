import pytest

from leibkit.algebra import is_ideal, quotient_algebra, restrict_to_subalgebra
from leibkit.catalog import catalog_build, catalog_entries, enumerate_ideals, scramble
from leibkit.decide import (
    ChainTail,
    NonSplitting,
    analyze,
    barnes_dichotomy_check,
    construct_flag,
    is_strongly_solvable,
    is_supersolvable,
    is_triangulable,
    lemma1_check,
    module_triangulation_check,
    theorem3_crosscheck,
)
from leibkit.errors import PreconditionViolated, TheoremViolation
from leibkit.exactfield import GF, Q
from leibkit.linalg import Matrix, Subspace, is_upper_triangular_under
from leibkit.modrep import Representation, adjoint_representation, trivial_representation


def test_strong_solvability():
    assert is_strongly_solvable(catalog_build("abelian(2)"))[0]
    ok, w = is_strongly_solvable(catalog_build("sl2"))
    assert not ok and isinstance(w, ChainTail) and w.tail.dim == 3
    assert is_strongly_solvable(catalog_build("r3"))[0]


def test_triangulability_is_field_independent_on_r3():
    assert is_triangulable(catalog_build("abelian(3)"))[0]
    assert not is_triangulable(catalog_build("sl2"))[0]
    for F in (Q, GF(5), GF(7)):
        assert is_triangulable(catalog_build("r3", F))[0]


def test_module_triangulation():
    r3 = catalog_build("r3")
    assert module_triangulation_check(trivial_representation(r3, 2)) == (True, None)
    ok, w = module_triangulation_check(adjoint_representation(r3))
    assert not ok and isinstance(w, NonSplitting)
    assert w.minimal_polynomial.format() == "t^3+t" and w.remainder.format() == "t^2+1"
    assert module_triangulation_check(adjoint_representation(catalog_build("r3", GF(5))))[0]


def test_flag_examples():
    r3 = catalog_build("r3")
    assert construct_flag(trivial_representation(r3, 3)).basis_change == Matrix.identity(Q, 3)
    heis = adjoint_representation(catalog_build("heis3"))
    P = construct_flag(heis).basis_change
    assert P.columns() == [(0, 0, 1), (1, 0, 0), (0, 1, 0)]  # (z, x, y)
    R5 = adjoint_representation(catalog_build("r3", GF(5)))
    cert = construct_flag(R5)
    v = cert.basis_change.column(0)
    assert v[0] == 0 and any(v)
    Tt = R5.left[0]
    lam = next(l for l in (2, 3) if Tt @ v == tuple(l * x % 5 for x in v))
    assert lam in (2, 3)
    assert cert.verify(R5)
    with pytest.raises(PreconditionViolated):
        construct_flag(adjoint_representation(r3))


def test_flag_without_narrowing_also_triangulates():
    for name in ("heis3", "lie2", "leib2"):
        R = adjoint_representation(catalog_build(name))
        assert is_upper_triangular_under(construct_flag(R, narrow=False).basis_change, R.operators)


def test_supersolvable_examples():
    ok, chain = is_supersolvable(catalog_build("abelian(3)"))
    assert ok and [U.dim for U in chain] == [0, 1, 2, 3]
    ok, w = is_supersolvable(catalog_build("r3"))
    assert not ok and w.remainder.format() == "t^2+1"
    A = catalog_build("r3", GF(5))
    ok, chain = is_supersolvable(A)
    assert ok and all(is_ideal(A, U) for U in chain)
    assert chain[2] == A.span([(0, 1, 0), (0, 0, 1)])


def test_theorem3_examples():
    r = theorem3_crosscheck(catalog_build("r3", GF(5)))
    assert r.splits and r.supersolvable and r.strongly_solvable
    r = theorem3_crosscheck(catalog_build("r3"))
    assert not r.splits and not r.equivalence_applicable and r.strongly_solvable and not r.supersolvable
    for F in (Q, GF(2), GF(3)):
        r = theorem3_crosscheck(catalog_build("heis3", F))
        assert r.splits and r.supersolvable and r.strongly_solvable


def test_lemma1_and_dichotomy_examples():
    heis = catalog_build("heis3")
    R = adjoint_representation(heis)
    Bz = Subspace.span(Q, 3, [(0, 0, 1)])
    assert lemma1_check(R, Bz)
    assert barnes_dichotomy_check(R, Bz) == "both"
    T = trivial_representation(heis, 2)
    assert lemma1_check(T, Subspace.span(Q, 2, [(1, 1)]))
    assert barnes_dichotomy_check(T, Subspace.span(Q, 2, [(1, 1)])) == "both"
    lie2 = catalog_build("lie2")
    assert barnes_dichotomy_check(adjoint_representation(lie2), Subspace.span(Q, 2, [(1, 0)])) == "symmetric"
    with pytest.raises(PreconditionViolated):
        lemma1_check(R, Subspace.span(Q, 3, [(1, 0, 0)]))


def test_dichotomy_rejects_mixed_line():
    A = catalog_build("lie2")
    # right action neither 0 nor -T on the line: not a bimodule, so the check must object
    R = Representation(A, 1, (Matrix(Q, [[0]]), Matrix(Q, [[1]])), (Matrix(Q, [[0]]), Matrix(Q, [[1]])))
    with pytest.raises(TheoremViolation):
        barnes_dichotomy_check(R, Subspace.full(Q, 1))


@pytest.mark.parametrize("entry", catalog_entries(), ids=lambda e: e.label)
def test_analyze_matches_catalog(entry):
    A = entry.build()
    rep = analyze(A)
    assert rep.booleans() == entry.expected
    assert rep.implications_hold()
    if rep.supersolvable:
        assert rep.triangular_basis.verify(adjoint_representation(A))
        assert all(is_ideal(A, U) and U.dim == k for k, U in enumerate(rep.ideal_chain))


def test_basis_change_invariance_sl2_seed7():
    A = catalog_build("sl2")
    assert analyze(scramble(A, 7)).booleans() == analyze(A).booleans()


@pytest.mark.parametrize("entry", catalog_entries(fields=(GF(2), GF(3)), max_dim=5), ids=lambda e: e.label)
def test_strong_solvability_passes_to_ideals_and_quotients(entry):
    A = entry.build()
    if not is_strongly_solvable(A)[0]:
        return
    for I in enumerate_ideals(A):
        assert is_strongly_solvable(restrict_to_subalgebra(A, I)[0])[0]
        assert is_strongly_solvable(quotient_algebra(A, I)[0])[0]
