import pickle
import random

import pytest
from hypothesis import given, strategies as st

from leibkit.errors import BudgetExhausted, SingularMatrix
from leibkit.exactfield import GF, Q
from leibkit.linalg import (
    Matrix,
    Subspace,
    common_eigenvector,
    inverse,
    is_nilpotent_matrix,
    is_upper_triangular_under,
    kernel,
    matrix_power,
    minimal_polynomial,
    rank,
    rref,
    subspace_intersect,
    subspace_sum,
)


def M(rows, F=Q):
    return Matrix(F, rows)


def span(F, n, *vecs):
    return Subspace.span(F, n, list(vecs))


# -- echelon forms and kernels -------------------------------------------------

def test_rref_examples():
    R, r, piv = rref(M([[1, 2], [2, 4]]))
    assert r == 1 and piv == [0] and R.rows[0] == (1, 2)
    I3 = Matrix.identity(Q, 3)
    assert rref(I3)[:2] == (I3, 3)
    R, r, _ = rref(M([[1, 1], [1, 1]], GF(2)))
    assert r == 1 and R.rows[0] == (1, 1)


def test_kernel_examples():
    assert kernel(Matrix.zeros(Q, 2, 2)) == Subspace.full(Q, 2)
    assert kernel(Matrix.identity(Q, 3)).is_zero()
    assert kernel(M([[0, 1], [0, 0]])) == span(Q, 2, (1, 0))


def test_lattice_examples():
    e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    U = span(Q, 3, e1, e2)
    assert subspace_sum(U, Subspace.zero(Q, 3)) == U
    assert subspace_intersect(U, Subspace.full(Q, 3)) == U
    assert subspace_intersect(span(Q, 2, (1, 0)), span(Q, 2, (0, 1))).is_zero()
    assert (U & span(Q, 3, e2, e3)) == span(Q, 3, e2)


def test_subspace_equality_is_representation_equality():
    a = span(Q, 3, (1, 1, 0), (0, 1, 1))
    b = span(Q, 3, (1, 2, 1), (2, 3, 1))
    assert a == b and a.rows == b.rows and hash(a) == hash(b)


def test_inverse_and_singular():
    A = M([[2, 1], [1, 1]])
    assert A @ inverse(A) == Matrix.identity(Q, 2)
    with pytest.raises(SingularMatrix):
        inverse(M([[1, 2], [2, 4]]))


small = st.integers(-3, 3)


def matrices(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.integers(1, max_n).flatmap(
            lambda m: st.lists(st.lists(small, min_size=m, max_size=m), min_size=n, max_size=n)))


@given(matrices(), st.sampled_from([Q, GF(2), GF(5)]))
def test_rref_idempotent(rows, F):
    A = Matrix(F, rows)
    R, r, piv = rref(A)
    assert rref(R)[0] == R
    assert r == len(piv) == rank(A)
    assert r + kernel(A).dim == A.ncols


@given(matrices(), st.sampled_from([Q, GF(3)]))
def test_kernel_is_annihilated(rows, F):
    A = Matrix(F, rows)
    for v in kernel(A).rows:
        assert not any(A @ v)


def rand_space(F, n, rng):
    return Subspace.span(F, n, [tuple(F(rng.randint(-2, 2)) for _ in range(n)) for _ in range(rng.randint(0, n))])


@pytest.mark.parametrize("F", [Q, GF(2), GF(3), GF(5)], ids=str)
def test_lattice_dimension_identity(F):
    rng = random.Random(f"lattice-{F.p}")
    for _ in range(200):
        n = rng.randint(1, 6)
        U, V = rand_space(F, n, rng), rand_space(F, n, rng)
        S, I = U + V, U & V
        assert S.dim + I.dim == U.dim + V.dim
        assert U <= S and V <= S and I <= U and I <= V


# -- minimal polynomials and nilpotency ----------------------------------------

def test_minimal_polynomial_examples():
    assert minimal_polynomial(Matrix.zeros(Q, 3, 3)).format() == "t"
    assert minimal_polynomial(M([[0, 1], [0, 0]])).format() == "t^2"
    assert minimal_polynomial(M([[0, -1], [1, 0]])).format() == "t^2+1"
    assert minimal_polynomial(Matrix.identity(GF(5), 4)).format() == "t+4"


def _powers_rank(A, d):
    P = Matrix.identity(A.field, A.nrows)
    vecs = []
    for _ in range(d + 1):
        vecs.append([x for r in P.rows for x in r])
        P = P @ A
    return rank(Matrix(A.field, vecs, A.nrows ** 2))


def test_minimal_polynomial_minimality_bruteforce():
    F = GF(5)
    rng = random.Random(11)
    for t in range(100):
        n = rng.randint(1, 5)
        rows = [[rng.randrange(5) for _ in range(n)] for _ in range(n)]
        if t % 3 == 0:  # force repeated eigenvalues and small degrees
            rows = [[rows[i][j] if j > i else (2 if i == j else 0) for j in range(n)] for i in range(n)]
        A = Matrix(F, rows)
        mp = minimal_polynomial(A)
        d = mp.degree
        assert mp.leading == 1
        assert mp.evaluate_matrix(A).is_zero()
        # I, A, ..., A^(d-1) independent, so no monic polynomial of lower degree annihilates
        for k in range(d):
            assert _powers_rank(A, k) == k + 1


def test_nilpotent_matrix():
    assert is_nilpotent_matrix(Matrix.zeros(Q, 3, 3))
    assert not is_nilpotent_matrix(Matrix.identity(Q, 2))
    assert is_nilpotent_matrix(M([[0, 1, 1], [0, 0, 1], [0, 0, 0]]))
    assert matrix_power(M([[0, 1], [0, 0]]), 2).is_zero()


# -- eigenvectors and triangularity --------------------------------------------

def test_common_eigenvector_examples():
    full = Subspace.full(Q, 2)
    v, lams = common_eigenvector([M([[1, 0], [0, 2]])], full)
    assert v == (1, 0) and lams == [1]
    v, lams = common_eigenvector([M([[0, 1], [0, 0]]), Matrix.identity(Q, 2)], full)
    assert v == (1, 0) and lams == [0, 1]
    assert common_eigenvector([M([[0, -1], [1, 0]])], full) is None


def test_common_eigenvector_budget():
    F = GF(7)
    ops = [Matrix(F, [[k if i == j else 0 for j in range(6)] for i in range(6)]) for k in (1, 2)]
    with pytest.raises(BudgetExhausted):
        common_eigenvector(ops + [Matrix(F, [[0, 6] + [0] * 4, [1] + [0] * 5] + [[0] * 6] * 4)],
                           Subspace.full(F, 6), budget=1)


@given(st.lists(st.lists(st.integers(0, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_common_eigenvector_is_exact(rows):
    F = GF(5)
    upper = Matrix(F, [[rows[i][j] if j >= i else 0 for j in range(3)] for i in range(3)])
    ops = [upper, upper @ upper]
    found = common_eigenvector(ops, Subspace.full(F, 3))
    assert found is not None  # triangular matrices always share e1
    v, lams = found
    for X, lam in zip(ops, lams):
        assert X @ v == tuple(F.mul(lam, x) for x in v)


def test_upper_triangular_under():
    I2 = Matrix.identity(Q, 2)
    lower = M([[0, 0], [1, 0]])
    assert is_upper_triangular_under(I2, [M([[1, 2], [0, 3]])])
    assert not is_upper_triangular_under(I2, [lower])
    assert is_upper_triangular_under(M([[0, 1], [1, 0]]), [lower])


def test_matrix_pickles():
    A = M([[1, 2], [3, 4]])
    assert pickle.loads(pickle.dumps(A)) == A
    U = span(Q, 2, (1, 2))
    assert pickle.loads(pickle.dumps(U)) == U
