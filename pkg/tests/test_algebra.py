import pytest
from hypothesis import given, settings, strategies as st

from leibkit.algebra import (
    Algebra,
    centralizer,
    check_leibniz_identity,
    derived_series,
    derived_subalgebra,
    is_ideal,
    is_nilpotent,
    is_solvable,
    lower_central_series,
    multiply_elements,
    product_subspaces,
    quotient_algebra,
    restrict_to_subalgebra,
    subalgebra_closure,
)
from leibkit.catalog import SMALL_FIELDS, catalog_build, catalog_entries, direct_sum, scramble
from leibkit.errors import NotClosed
from leibkit.exactfield import GF, Q
from leibkit.linalg import Subspace

X, Y, Z = (1, 0, 0), (0, 1, 0), (0, 0, 1)


@pytest.fixture
def heis3():
    return catalog_build("heis3", Q)


@pytest.fixture
def sl2():
    return catalog_build("sl2", Q)


def test_identity_examples(heis3):
    assert check_leibniz_identity(catalog_build("abelian(3)")) == []
    assert check_leibniz_identity(heis3) == []
    bad = Algebra(Q, 3, {(0, 1): Z, (1, 0): (0, 0, -1), (2, 0): X}, ["x", "y", "z"])
    assert check_leibniz_identity(bad)
    assert not bad.verified


def test_non_lie_example_satisfies_left_identity_only():
    leib2 = catalog_build("leib2")
    assert not leib2.is_lie()
    assert check_leibniz_identity(leib2) == []
    # l·x = 0, x·l = l is left Leibniz; the mirrored table is not
    left = Algebra(Q, 2, {(0, 1): (0, 1)})
    right = Algebra(Q, 2, {(1, 0): (0, 1)})
    assert check_leibniz_identity(left) == []
    assert check_leibniz_identity(right)


def test_products(heis3, sl2):
    A = catalog_build("abelian(2)")
    assert multiply_elements(A, (1, 2), (3, 4)) == (0, 0)
    assert multiply_elements(heis3, X, Y) == Z
    e, h = (1, 0, 0), (0, 0, 1)
    assert multiply_elements(sl2, h, e) == (2, 0, 0)
    assert product_subspaces(heis3, heis3.full(), heis3.zero_space()).is_zero()
    assert product_subspaces(heis3, heis3.full(), heis3.full()) == heis3.span([Z])
    assert product_subspaces(sl2, sl2.full(), sl2.full()) == sl2.full()


def test_series(sl2):
    A = catalog_build("abelian(3)")
    assert derived_subalgebra(A).is_zero()
    assert len(derived_series(A)) == 2 and len(lower_central_series(A)) == 2
    assert derived_subalgebra(sl2) == sl2.full()
    assert lower_central_series(sl2) == [sl2.full()]
    r3 = catalog_build("r3")
    A2 = derived_subalgebra(r3)
    assert A2 == r3.span([(0, 1, 0), (0, 0, 1)])
    assert lower_central_series(r3, A2) == [A2, r3.zero_space()]


def test_nilpotent_solvable(heis3, sl2):
    A = catalog_build("abelian(2)")
    assert is_nilpotent(A) and is_solvable(A)
    assert not is_nilpotent(sl2) and not is_solvable(sl2)
    assert is_nilpotent(heis3) and is_solvable(heis3)
    assert len(lower_central_series(heis3)) <= 3


def test_series_need_closed_input(heis3):
    with pytest.raises(NotClosed):
        derived_series(heis3, heis3.span([X, Y]))


def test_closure(heis3, sl2):
    A = catalog_build("abelian(3)")
    assert subalgebra_closure(A, [X, Y]) == A.span([X, Y])
    assert subalgebra_closure(sl2, [(1, 0, 0), (0, 1, 0)]) == sl2.full()
    assert subalgebra_closure(heis3, [X]) == heis3.span([X])


def test_ideals_and_centralizers(heis3, sl2):
    A = catalog_build("abelian(2)")
    assert centralizer(A, A.span([(1, 1)])) == A.full()
    assert centralizer(heis3, heis3.span([Z])) == heis3.full()
    assert not is_ideal(sl2, sl2.span([(1, 0, 0)]))


def test_quotients_and_restrictions(heis3, sl2):
    Q0, _ = quotient_algebra(heis3, heis3.full())
    assert Q0.dim == 0
    Q1, proj = quotient_algebra(heis3, heis3.span([Z]))
    assert Q1.dim == 2 and not Q1.nonzero_products()
    B, inc = restrict_to_subalgebra(sl2, sl2.span([(0, 0, 1), (1, 0, 0)]))
    e_, h_ = (1, 0), (0, 1)  # RREF order puts e first
    assert multiply_elements(B, h_, e_) == (2, 0)
    assert multiply_elements(B, e_, h_) == (-2, 0)


@pytest.mark.parametrize("entry", catalog_entries(), ids=lambda e: e.label)
def test_catalog_invariants(entry):
    A = entry.build()
    assert check_leibniz_identity(A) == []
    assert is_ideal(A, derived_subalgebra(A))
    for series in (derived_series(A), lower_central_series(A)):
        dims = [U.dim for U in series]
        assert dims == sorted(dims, reverse=True) and len(set(dims)) == len(dims)
        assert len(series) <= A.dim + 1
    if A.dim <= 5 and entry.field.p:
        from leibkit.catalog import enumerate_ideals
        for I in enumerate_ideals(A):
            assert check_leibniz_identity(quotient_algebra(A, I)[0]) == []
            assert check_leibniz_identity(restrict_to_subalgebra(A, I)[0]) == []


@settings(max_examples=30)
@given(st.sampled_from(["heis3", "lie2", "leib2", "sl2", "r3"]), st.sampled_from(SMALL_FIELDS),
       st.integers(0, 10**6))
def test_scramble_preserves_identity_and_series_flags(name, F, seed):
    A = catalog_build(name, F)
    B = scramble(A, seed)
    assert check_leibniz_identity(B) == []
    assert (is_nilpotent(B), is_solvable(B)) == (is_nilpotent(A), is_solvable(A))
    U = subalgebra_closure(B, [tuple(F((seed >> k) % 3) for k in range(B.dim))])
    assert product_subspaces(B, U, U) <= U


def test_direct_sum():
    S = direct_sum(catalog_build("heis3"), catalog_build("abelian(1)"))
    assert S.dim == 4 and is_nilpotent(S)
    with pytest.raises(ValueError):
        direct_sum(catalog_build("heis3", GF(2)), catalog_build("lie2"))
