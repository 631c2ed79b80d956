"""Leibniz bimodules: left/right action matrices and the nil-chain criterion.

The module axioms are the three placements of a module element into the
left Leibniz identity x(yz) = (xy)z + y(xz):

* P3 (m in the z slot):  T_x T_y - T_y T_x = T_{xy}
* P2 (m in the y slot):  T_x S_z - S_z T_x = S_{xz}
* P1 (m in the x slot):  S_{yz} = S_z S_y + T_y S_z

The adjoint representation satisfies all three exactly when the algebra is
Leibniz.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, complement_indices, projection_matrix
from .errors import (
    AmbientMismatch,
    InvalidRepresentation,
    NotClosed,
    NotSubmodule,
    SizeMismatch,
    UnverifiedAlgebra,
)
from .linalg import Matrix, Subspace, lin_comb

__all__ = [
    "Representation",
    "check_bimodule_axioms",
    "adjoint_representation",
    "operators_of_element",
    "submodule_closure",
    "is_submodule",
    "nil_chain",
    "quotient_representation",
    "restrict_representation",
]


@dataclass(frozen=True)
class Representation:
    algebra: Algebra
    module_dim: int
    left: tuple
    right: tuple

    def __post_init__(self):
        A, m = self.algebra, self.module_dim
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        if len(self.left) != A.dim or len(self.right) != A.dim:
            raise SizeMismatch(f"need {A.dim} left and right matrices")
        for X in self.left + self.right:
            if X.shape != (m, m):
                raise SizeMismatch(f"action matrix of shape {X.shape} on a {m}-dim module")
            if X.field != A.field:
                raise SizeMismatch("action matrix over a different field")

    @property
    def field(self):
        return self.algebra.field

    @property
    def operators(self):
        """All basis operators, left ones first."""
        return self.left + self.right

    def full(self):
        return Subspace.full(self.field, self.module_dim)

    def validate(self):
        bad = check_bimodule_axioms(self)
        if bad:
            name, i, j = bad[0]
            raise InvalidRepresentation(f"bimodule axiom {name} fails at (b{i}, b{j}); {len(bad)} violations")
        return self


def _combo(field, coeffs, mats, m):
    acc = Matrix.zeros(field, m)
    for c, X in zip(coeffs, mats):
        if c:
            acc = acc + X.scale(c)
    return acc


def operators_of_element(R: Representation, x):
    """(T_x, S_x) by linearity in x."""
    x = tuple(x)
    if len(x) != R.algebra.dim:
        raise SizeMismatch("element of wrong length")
    return (_combo(R.field, x, R.left, R.module_dim),
            _combo(R.field, x, R.right, R.module_dim))


def check_bimodule_axioms(R: Representation):
    """Violations as ``[(name, i, j), ...]``; empty means R is a bimodule."""
    A = R.algebra
    T, S = R.left, R.right
    out = []
    for i in range(A.dim):
        for j in range(A.dim):
            Tij, Sij = operators_of_element(R, A.basis_product(i, j))
            if T[i] @ T[j] - T[j] @ T[i] != Tij:
                out.append(("P3", i, j))
            if T[i] @ S[j] - S[j] @ T[i] != Sij:
                out.append(("P2", i, j))
            if S[j] @ S[i] + T[i] @ S[j] != Sij:
                out.append(("P1", i, j))
    return out


def adjoint_representation(A: Algebra) -> Representation:
    if not A.verified:
        raise UnverifiedAlgebra("run check_leibniz_identity first")
    return Representation(A, A.dim, A.left_matrices(), A.right_matrices())


def trivial_representation(A: Algebra, m: int) -> Representation:
    z = Matrix.zeros(A.field, m)
    return Representation(A, m, (z,) * A.dim, (z,) * A.dim)


def _images(ops, vectors):
    return [X @ v for X in ops for v in vectors]


def submodule_closure(R: Representation, vectors) -> Subspace:
    m = R.module_dim
    U = Subspace.span(R.field, m, vectors)
    while True:
        W = Subspace.span(R.field, m, list(U.rows) + _images(R.operators, U.rows))
        if W == U:
            return U
        U = W


def is_submodule(R: Representation, U: Subspace) -> bool:
    if U.ambient_dim != R.module_dim:
        raise AmbientMismatch("subspace lives in a different space")
    return all(w in U for w in _images(R.operators, U.rows))


def acting_operators(R: Representation, I: Subspace):
    """T_x and S_x for x over the basis of I."""
    ops = []
    for x in I.rows:
        ops.extend(operators_of_element(R, x))
    return ops


def nil_chain(R: Representation, I: Subspace):
    """M_0 = M, M_{k+1} = I·M_k + M_k·I; returns (chain, chain reaches 0)."""
    from .algebra import product_subspaces

    A = R.algebra
    if I.ambient_dim != A.dim:
        raise AmbientMismatch("I must be a subspace of the algebra")
    if not product_subspaces(A, I, I) <= I:
        raise NotClosed("I is not closed under multiplication")
    ops = acting_operators(R, I)
    chain = [R.full()]
    while True:
        nxt = Subspace.span(R.field, R.module_dim, _images(ops, chain[-1].rows))
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return chain, chain[-1].is_zero()


def quotient_representation(R: Representation, U: Subspace):
    """Induced action on M/U in complement coordinates; returns (rep, projection)."""
    if not is_submodule(R, U):
        raise NotSubmodule("quotient by a non-submodule")
    comp = complement_indices(U)
    proj = projection_matrix(U)
    field, m = R.field, R.module_dim

    def induced(X):
        cols = []
        for c in comp:
            e = [field.zero] * m
            e[c] = field.one
            cols.append(proj @ (X @ e))
        return Matrix.from_columns(field, cols, len(comp))

    Rq = Representation(R.algebra, len(comp), [induced(X) for X in R.left], [induced(X) for X in R.right])
    return Rq, proj


def restrict_representation(R: Representation, U: Subspace) -> Representation:
    """The action on a submodule U, in U's RREF basis."""
    if not is_submodule(R, U):
        raise NotSubmodule("restriction to a non-submodule")
    field = R.field

    def restricted(X):
        return Matrix.from_columns(field, [U.coordinates(X @ u) for u in U.rows], U.dim)

    return Representation(R.algebra, U.dim, [restricted(X) for X in R.left], [restricted(X) for X in R.right])


def lift_from_quotient(U: Subspace, coords):
    """Lift quotient coordinates back to M via the complement basis."""
    field = U.field
    v = [field.zero] * U.ambient_dim
    for c, x in zip(complement_indices(U), coords):
        v[c] = x
    return tuple(v)


def lin_comb_vectors(R: Representation, coeffs, vectors):
    return lin_comb(R.field, coeffs, vectors, R.module_dim)
