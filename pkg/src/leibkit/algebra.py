"""Leibniz algebras given by structure constants.

Convention (left Leibniz): ``x(yz) = (xy)z + y(xz)``, with
``b_i · b_j = sum_k c[i][j][k] b_k``.
"""

from __future__ import annotations

from .errors import AmbientMismatch, InternalContradiction, NotClosed, NotIdeal, SizeMismatch
from .exactfield import FieldSpec
from .linalg import Matrix, Subspace, _kernel_vectors, lin_comb

__all__ = [
    "Algebra",
    "check_leibniz_identity",
    "multiply_elements",
    "product_subspaces",
    "derived_subalgebra",
    "derived_series",
    "lower_central_series",
    "is_nilpotent",
    "is_solvable",
    "subalgebra_closure",
    "is_ideal",
    "centralizer",
    "quotient_algebra",
    "restrict_to_subalgebra",
]


class Algebra:
    """Finite-dimensional algebra over Q or GF(p) from its multiplication table.

    ``products`` maps ``(i, j)`` to the coordinate vector of ``b_i · b_j``
    (missing pairs are zero).  Alternatively pass the full tensor ``c``.
    The ``verified`` flag is set by :func:`check_leibniz_identity`.
    """

    def __init__(self, field: FieldSpec, dim: int, products=None, names=None, *, c=None, coerce=True):
        self.field = field
        self.dim = dim
        if names is None:
            names = [f"b{i}" for i in range(dim)]
        if len(names) != dim:
            raise SizeMismatch(f"{len(names)} names for dimension {dim}")
        self.names = tuple(names)
        table = {}
        if c is not None:
            if len(c) != dim or any(len(row) != dim for row in c):
                raise SizeMismatch("structure tensor has wrong shape")
            for i in range(dim):
                for j in range(dim):
                    vec = c[i][j]
                    if len(vec) != dim:
                        raise SizeMismatch("structure tensor has wrong shape")
                    vec = tuple(field(x) for x in vec) if coerce else tuple(vec)
                    if any(vec):
                        table[(i, j)] = vec
        for (i, j), vec in (products or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise SizeMismatch(f"product index ({i}, {j}) out of range")
            if isinstance(vec, dict):
                full = [field.zero] * dim
                for k, x in vec.items():
                    full[k] = field(x)
                vec = tuple(full)
            else:
                vec = tuple(field(x) for x in vec) if coerce else tuple(vec)
            if len(vec) != dim:
                raise SizeMismatch("product vector has wrong length")
            if any(vec):
                table[(i, j)] = vec
            else:
                table.pop((i, j), None)
        self._table = table
        self._zero = (field.zero,) * dim
        self._left = None
        self._right = None
        self.verified = False

    def __repr__(self):
        return f"<Algebra dim={self.dim} over {self.field}>"

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.field, self.dim, self.names, self._table) == (other.field, other.dim, other.names, other._table)

    def __hash__(self):
        return hash((self.field, self.dim, self.names, tuple(sorted(self._table.items()))))

    @property
    def c(self):
        """Dense structure tensor c[i][j][k]."""
        return tuple(tuple(self.basis_product(i, j) for j in range(self.dim)) for i in range(self.dim))

    def basis_product(self, i, j):
        return self._table.get((i, j), self._zero)

    def nonzero_products(self):
        return sorted(self._table.items())

    def basis_vector(self, i):
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return tuple(v)

    def multiply(self, x, y):
        n = self.dim
        if len(x) != n or len(y) != n:
            raise SizeMismatch("element of wrong length")
        acc = [0] * n
        for (i, j), vec in self._table.items():
            xi = x[i]
            if xi:
                yj = y[j]
                if yj:
                    f = xi * yj
                    for k, v in enumerate(vec):
                        if v:
                            acc[k] += f * v
        red = self.field.reduce
        return tuple(red(a) for a in acc)

    def left_matrices(self):
        """Matrices of x -> b_i·x (column j is the product b_i·b_j)."""
        if self._left is None:
            self._left = tuple(
                Matrix.from_columns(self.field, [self.basis_product(i, j) for j in range(self.dim)], self.dim)
                for i in range(self.dim))
        return self._left

    def right_matrices(self):
        """Matrices of x -> x·b_i (column j is the product b_j·b_i)."""
        if self._right is None:
            self._right = tuple(
                Matrix.from_columns(self.field, [self.basis_product(j, i) for j in range(self.dim)], self.dim)
                for i in range(self.dim))
        return self._right

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero_space(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def span(self, vectors) -> Subspace:
        return Subspace.span(self.field, self.dim, vectors)

    def is_lie(self):
        return all(
            not any(self.field.add(a, b) for a, b in zip(self.basis_product(i, j), self.basis_product(j, i)))
            for i in range(self.dim) for j in range(i, self.dim))


def check_leibniz_identity(A: Algebra):
    """All basis triples violating b_i(b_j b_k) = (b_i b_j) b_k + b_j (b_i b_k).

    Returns ``[(i, j, k, lhs, rhs), ...]``; marks ``A.verified`` when empty.
    """
    n = A.dim
    field = A.field
    basis = [A.basis_vector(i) for i in range(n)]
    violations = []
    for i in range(n):
        for j in range(n):
            bij = A.basis_product(i, j)
            for k in range(n):
                lhs = A.multiply(basis[i], A.basis_product(j, k))
                r1 = A.multiply(bij, basis[k])
                r2 = A.multiply(basis[j], A.basis_product(i, k))
                rhs = tuple(field.add(a, b) for a, b in zip(r1, r2))
                if lhs != rhs:
                    violations.append((i, j, k, lhs, rhs))
    if not violations:
        A.verified = True
    return violations


def multiply_elements(A: Algebra, x, y):
    return A.multiply(tuple(x), tuple(y))


def _check_ambient(A, *spaces):
    for U in spaces:
        if U.ambient_dim != A.dim or U.field != A.field:
            raise AmbientMismatch(f"subspace of F^{U.ambient_dim} in algebra of dim {A.dim}")


def product_subspaces(A: Algebra, U: Subspace, V: Subspace) -> Subspace:
    """Span of all u·v, computed on the two bases."""
    _check_ambient(A, U, V)
    return A.span(A.multiply(u, v) for u in U.rows for v in V.rows)


def _two_sided(A, I, J):
    return A.span([A.multiply(u, v) for u in I.rows for v in J.rows]
                  + [A.multiply(v, u) for u in I.rows for v in J.rows])


def derived_subalgebra(A: Algebra) -> Subspace:
    """A² = A·A, the span of the nonzero basis products."""
    return A.span(vec for _, vec in A.nonzero_products())


def _require_closed(A, I):
    _check_ambient(A, I)
    if not product_subspaces(A, I, I) <= I:
        raise NotClosed("subspace is not closed under multiplication")


def derived_series(A: Algebra, I: Subspace = None):
    """I, I·I, (I·I)·(I·I), ... up to (not repeating) the first stable term."""
    I = A.full() if I is None else I
    _require_closed(A, I)
    series = [I]
    while True:
        nxt = product_subspaces(A, series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def lower_central_series(A: Algebra, I: Subspace = None):
    """Two-sided series I_1 = I, I_{k+1} = I·I_k + I_k·I, until stable."""
    I = A.full() if I is None else I
    _require_closed(A, I)
    series = [I]
    while True:
        nxt = _two_sided(A, I, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_nilpotent(A: Algebra, I: Subspace = None) -> bool:
    return lower_central_series(A, I)[-1].is_zero()


def is_solvable(A: Algebra, I: Subspace = None) -> bool:
    return derived_series(A, I)[-1].is_zero()


def subalgebra_closure(A: Algebra, gens) -> Subspace:
    """Least subalgebra containing ``gens``."""
    U = A.span(gens)
    while True:
        W = A.span(list(U.rows) + [A.multiply(u, v) for u in U.rows for v in U.rows])
        if W == U:
            return U
        U = W


def is_ideal(A: Algebra, U: Subspace) -> bool:
    """A·U + U·A ⊆ U."""
    _check_ambient(A, U)
    for i in range(A.dim):
        b = A.basis_vector(i)
        for u in U.rows:
            if A.multiply(b, u) not in U or A.multiply(u, b) not in U:
                return False
    return True


def centralizer(A: Algebra, B: Subspace) -> Subspace:
    """{a : a·b = 0 = b·a for every b in B}."""
    _check_ambient(A, B)
    n = A.dim
    basis = [A.basis_vector(i) for i in range(n)]
    system = []
    for b in B.rows:
        left = [A.multiply(e, b) for e in basis]
        right = [A.multiply(b, e) for e in basis]
        for k in range(n):
            system.append(tuple(v[k] for v in left))
            system.append(tuple(v[k] for v in right))
    if not system:
        return A.full()
    return A.span(_kernel_vectors(A.field, system, n))


def complement_indices(U: Subspace):
    piv = set(U.pivots)
    return [i for i in range(U.ambient_dim) if i not in piv]


def projection_matrix(U: Subspace) -> Matrix:
    """F^n -> F^n / U in the coordinates of the non-pivot standard vectors."""
    comp = complement_indices(U)
    field, n = U.field, U.ambient_dim
    cols = []
    for j in range(n):
        e = [field.zero] * n
        e[j] = field.one
        r = U.reduce(e)
        cols.append(tuple(r[c] for c in comp))
    return Matrix.from_columns(field, cols, len(comp))


def quotient_algebra(A: Algebra, I: Subspace):
    """A/I on the complement basis; returns (algebra, projection matrix)."""
    _check_ambient(A, I)
    if not is_ideal(A, I):
        raise NotIdeal("quotient by a non-ideal")
    comp = complement_indices(I)
    proj = projection_matrix(I)
    products = {}
    for a, i in enumerate(comp):
        for b, j in enumerate(comp):
            v = A.basis_product(i, j)
            if any(v):
                products[(a, b)] = proj @ v
    Qa = Algebra(A.field, len(comp), products, [A.names[i] for i in comp], coerce=False)
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = proj @ A.basis_product(i, j)
            rhs = Qa.multiply(proj.column(i), proj.column(j))
            if lhs != rhs:
                raise InternalContradiction("projection is not an algebra morphism")
    if A.verified:
        Qa.verified = True
    return Qa, proj


def restrict_to_subalgebra(A: Algebra, U: Subspace):
    """U as an algebra on its RREF basis; returns (algebra, inclusion matrix)."""
    _check_ambient(A, U)
    if not product_subspaces(A, U, U) <= U:
        raise NotClosed("restriction to a non-subalgebra")
    k = U.dim
    products = {}
    for a in range(k):
        for b in range(k):
            v = A.multiply(U.rows[a], U.rows[b])
            if any(v):
                products[(a, b)] = U.coordinates(v)
    S = Algebra(A.field, k, products, [f"u{a}" for a in range(k)], coerce=False)
    inc = Matrix.from_columns(A.field, U.rows, A.dim)
    for a in range(k):
        for b in range(k):
            if inc @ S.basis_product(a, b) != A.multiply(U.rows[a], U.rows[b]):
                raise InternalContradiction("inclusion is not an algebra morphism")
    if A.verified:
        S.verified = True
    return S, inc


def element(A: Algebra, coords) -> tuple:
    """Coerce a coordinate sequence to a raw element of A."""
    coords = tuple(A.field(x) for x in coords)
    if len(coords) != A.dim:
        raise SizeMismatch("element of wrong length")
    return coords


def combine(A: Algebra, coeffs, vectors):
    return lin_comb(A.field, coeffs, vectors, A.dim)
