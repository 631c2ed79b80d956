"""Exact dense linear algebra over a :class:`~leibkit.exactfield.FieldSpec`.

Vectors are tuples of raw field values.  Matrices act on column vectors, so
the j-th column of an operator matrix is the image of the j-th basis vector.
Subspaces are stored as their canonical reduced row echelon basis, which makes
``==`` on subspaces set equality.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import count

from .config import default_budget
from .errors import (
    AmbientMismatch,
    BudgetExhausted,
    FieldMismatch,
    NonSquare,
    SingularMatrix,
    SizeMismatch,
)
from .exactfield import FieldSpec
from .poly import Polynomial, field_roots

__all__ = [
    "Matrix",
    "Subspace",
    "rref",
    "kernel",
    "subspace_sum",
    "subspace_intersect",
    "inverse",
    "minimal_polynomial",
    "common_eigenvector",
    "is_nilpotent_matrix",
    "is_upper_triangular_under",
]


def _rref_rows(field: FieldSpec, rows, ncols):
    """Row-reduce a list of rows; returns (nonzero rows, pivot columns)."""
    p = field.p
    A = [list(r) for r in rows]
    nrows = len(A)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        row = A[r]
        if row[c] != 1:
            inv = field.inv(row[c])
            if p:
                row = [x * inv % p for x in row]
            else:
                row = [x * inv for x in row]
            A[r] = row
        for i in range(nrows):
            if i == r:
                continue
            f = A[i][c]
            if f:
                Ai = A[i]
                if p:
                    A[i] = [(a - f * b) % p for a, b in zip(Ai, row)]
                else:
                    A[i] = [a - f * b for a, b in zip(Ai, row)]
        pivots.append(c)
        r += 1
    return [tuple(x) for x in A[:r]], pivots


class Matrix:
    """Immutable dense matrix with raw field entries, stored row-major."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: FieldSpec, rows, ncols=None, *, coerce=True):
        if coerce:
            rows = tuple(tuple(field(x) for x in r) for r in rows)
        else:
            rows = tuple(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise SizeMismatch("ragged matrix rows")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def __reduce__(self):
        return (_rebuild_matrix, (self.field, self.rows, self.ncols))

    @classmethod
    def _raw(cls, field, rows, ncols):
        return cls(field, rows, ncols, coerce=False)

    @classmethod
    def zeros(cls, field, nrows, ncols=None):
        ncols = nrows if ncols is None else ncols
        z = field.zero
        return cls._raw(field, tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls._raw(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, field, columns, nrows=None):
        columns = [tuple(c) for c in columns]
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        return cls._raw(field, tuple(zip(*columns)) if columns else tuple(() for _ in range(nrows)), len(columns))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self.rows[i][j]
        return self.rows[idx]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self):
        return Matrix._raw(self.field, tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols)), self.nrows)

    def _check_field(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check_field(other)
        if self.shape != other.shape:
            raise SizeMismatch(f"{self.shape} + {other.shape}")
        red = self.field.reduce
        return Matrix._raw(self.field, tuple(tuple(red(a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other):
        self._check_field(other)
        if self.shape != other.shape:
            raise SizeMismatch(f"{self.shape} - {other.shape}")
        red = self.field.reduce
        return Matrix._raw(self.field, tuple(tuple(red(a - b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def scale(self, c):
        """Multiply by a raw scalar."""
        red = self.field.reduce
        return Matrix._raw(self.field, tuple(tuple(red(c * a) for a in r) for r in self.rows), self.ncols)

    def __neg__(self):
        return self.scale(self.field.neg(self.field.one))

    def __matmul__(self, other):
        p = self.field.p
        if isinstance(other, Matrix):
            self._check_field(other)
            if self.ncols != other.nrows:
                raise SizeMismatch(f"{self.shape} @ {other.shape}")
            cols = tuple(zip(*other.rows)) if other.nrows else tuple(() for _ in range(other.ncols))
            if p:
                rows = tuple(tuple(sum(a * b for a, b in zip(r, c)) % p for c in cols) for r in self.rows)
            else:
                rows = tuple(tuple(_qdot(r, c) for c in cols) for r in self.rows)
            return Matrix._raw(self.field, rows, other.ncols)
        v = tuple(other)
        if len(v) != self.ncols:
            raise SizeMismatch(f"{self.shape} @ vector of length {len(v)}")
        if p:
            return tuple(sum(a * b for a, b in zip(r, v)) % p for r in self.rows)
        return tuple(_qdot(r, v) for r in self.rows)

    def is_zero(self):
        return not any(any(r) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.ncols, self.rows))

    def to_strings(self):
        fmt = self.field.format
        return [[fmt(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"Matrix({self.field}, {self.to_strings()})"


def _rebuild_matrix(field, rows, ncols):
    return Matrix(field, rows, ncols, coerce=False)


_QZERO = Fraction(0)


def _qdot(r, c):
    s = _QZERO
    for a, b in zip(r, c):
        if a and b:
            s += a * b
    return s


def lin_comb(field: FieldSpec, coeffs, vectors, n):
    """Raw linear combination sum(c_i v_i) of length-n vectors."""
    acc = [0] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, x in enumerate(v):
                if x:
                    acc[k] += c * x
    red = field.reduce
    return tuple(red(x) for x in acc)


class Subspace:
    """Subspace of F^n held as its canonical RREF basis (one vector per row)."""

    __slots__ = ("field", "ambient_dim", "rows", "pivots")

    def __init__(self, field, ambient_dim, rows, pivots):
        # trusted constructor: rows must already be canonical RREF
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    def __reduce__(self):
        return (Subspace, (self.field, self.ambient_dim, self.rows, self.pivots))

    @classmethod
    def span(cls, field, ambient_dim, vectors):
        vecs = []
        for v in vectors:
            v = tuple(v)
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in F^{ambient_dim}")
            if any(v):
                vecs.append(v)
        rows, piv = _rref_rows(field, vecs, ambient_dim)
        return cls(field, ambient_dim, rows, piv)

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field, n):
        return cls(field, n, Matrix.identity(field, n).rows, range(n))

    @property
    def dim(self):
        return len(self.rows)

    @property
    def basis(self) -> Matrix:
        return Matrix._raw(self.field, self.rows, self.ambient_dim)

    def reduce(self, v):
        """Remainder of v after eliminating this subspace's pivot columns."""
        p = self.field.p
        v = list(v)
        for row, c in zip(self.rows, self.pivots):
            f = v[c]
            if f:
                if p:
                    v = [(a - f * b) % p for a, b in zip(v, row)]
                else:
                    v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    def __contains__(self, v):
        return not any(self.reduce(v))

    def coordinates(self, v):
        """Coordinates of v in the RREF basis (entries at the pivot columns)."""
        if v not in self:
            raise ValueError("vector not in subspace")
        return tuple(v[c] for c in self.pivots)

    def _check(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if other.ambient_dim != self.ambient_dim:
            raise AmbientMismatch(f"F^{self.ambient_dim} vs F^{other.ambient_dim}")

    def __le__(self, other):
        self._check(other)
        return all(r in other for r in self.rows)

    def __lt__(self, other):
        return self <= other and self.dim < other.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient_dim == other.ambient_dim
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.rows))

    def __add__(self, other):
        return subspace_sum(self, other)

    def __and__(self, other):
        return subspace_intersect(self, other)

    def is_zero(self):
        return not self.rows

    def to_strings(self):
        fmt = self.field.format
        return [[fmt(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"Subspace({self.field}, n={self.ambient_dim}, basis={self.to_strings()})"


def rref(m: Matrix):
    """Canonical RREF with zero rows dropped; returns (R, rank, pivot_cols)."""
    rows, piv = _rref_rows(m.field, m.rows, m.ncols)
    return Matrix._raw(m.field, tuple(rows), m.ncols), len(piv), list(piv)


def _kernel_vectors(field, rows, ncols):
    R, piv = _rref_rows(field, rows, ncols)
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    z, o = field.zero, field.one
    out = []
    for f in free:
        v = [z] * ncols
        v[f] = o
        for row, c in zip(R, piv):
            if row[f]:
                v[c] = field.neg(row[f])
        out.append(tuple(v))
    return out


def kernel(m: Matrix) -> Subspace:
    """Null space {v : m v = 0}."""
    return Subspace.span(m.field, m.ncols, _kernel_vectors(m.field, m.rows, m.ncols))


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    u._check(v)
    if not v.rows:
        return u
    if not u.rows:
        return v
    return Subspace.span(u.field, u.ambient_dim, u.rows + v.rows)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    u._check(v)
    field, n = u.field, u.ambient_dim
    if not u.rows or not v.rows:
        return Subspace.zero(field, n)
    # (a, b) with sum a_i u_i = sum b_j v_j, i.e. kernel of [U^T | V^T]
    cols = list(u.rows) + list(v.rows)
    system = [tuple(c[k] for c in cols) for k in range(n)]
    ker = _kernel_vectors(field, system, len(cols))
    k = u.dim
    return Subspace.span(field, n, (lin_comb(field, a[:k], u.rows, n) for a in ker))


def restricted_kernel(op: Matrix, space: Subspace, shift=None) -> Subspace:
    """space ∩ ker(op - shift*I), solved in the coordinates of ``space``."""
    field, n = op.field, op.ncols
    images = []
    for s in space.rows:
        w = op @ s
        if shift:
            w = tuple(field.sub(a, field.mul(shift, b)) for a, b in zip(w, s))
        images.append(w)
    system = [tuple(w[k] for w in images) for k in range(n)]
    ker = _kernel_vectors(field, system, space.dim)
    return Subspace.span(field, n, (lin_comb(field, a, space.rows, n) for a in ker))


def inverse(m: Matrix) -> Matrix:
    if not m.is_square:
        raise NonSquare(f"shape {m.shape}")
    n = m.nrows
    field = m.field
    aug = [tuple(r) + e for r, e in zip(m.rows, Matrix.identity(field, n).rows)]
    R, piv = _rref_rows(field, aug, 2 * n)
    if piv[:n] != list(range(n)) or len(R) < n:
        raise SingularMatrix("matrix is singular")
    return Matrix._raw(field, tuple(r[n:] for r in R), n)


def rank(m: Matrix) -> int:
    return len(_rref_rows(m.field, m.rows, m.ncols)[1])


def matrix_power(L: Matrix, k: int) -> Matrix:
    result = Matrix.identity(L.field, L.nrows)
    base = L
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def minimal_polynomial(L: Matrix) -> Polynomial:
    """Monic annihilator of least degree, from the first linear dependency
    among vec(I), vec(L), vec(L^2), ..."""
    if not L.is_square:
        raise NonSquare(f"shape {L.shape}")
    field, n = L.field, L.nrows
    p = field.p
    # echelon store: pivot col -> (reduced vector, combination over powers)
    store = []
    power = Matrix.identity(field, n)
    for k in count():
        vec = [x for r in power.rows for x in r]
        comb = [field.zero] * (n + 1)
        comb[k] = field.one
        for piv, rv, rc in store:
            f = vec[piv]
            if f:
                if p:
                    vec = [(a - f * b) % p for a, b in zip(vec, rv)]
                    comb = [(a - f * b) % p for a, b in zip(comb, rc)]
                else:
                    vec = [a - f * b for a, b in zip(vec, rv)]
                    comb = [a - f * b for a, b in zip(comb, rc)]
        piv = next((i for i, x in enumerate(vec) if x), None)
        if piv is None:
            return Polynomial(field, comb[: k + 1], coerce=False)
        inv = field.inv(vec[piv])
        vec = [field.mul(x, inv) for x in vec]
        comb = [field.mul(x, inv) for x in comb]
        store.append((piv, vec, comb))
        power = power @ L
    raise AssertionError("unreachable")


def is_nilpotent_matrix(L: Matrix) -> bool:
    """L^n == 0, by repeated squaring."""
    if not L.is_square:
        raise NonSquare(f"shape {L.shape}")
    n = L.nrows
    P = L
    e = 1
    while e < n:
        if P.is_zero():
            return True
        P = P @ P
        e *= 2
    return P.is_zero()


def scalar_on(op: Matrix, space: Subspace):
    """The raw λ with op·s = λ·s for all s in ``space``, or None."""
    field = op.field
    lam = None
    for s, c in zip(space.rows, space.pivots):
        w = op @ s
        mu = w[c]
        if lam is None:
            lam = mu
        elif mu != lam:
            return None
        if any(a != field.mul(lam, b) for a, b in zip(w, s)):
            return None
    return lam


def common_eigenvector(ops, search_space: Subspace, budget=None, minpolys=None):
    """Find v != 0 in ``search_space`` with ops[i] v = λ_i v for every i.

    Backtracks over the in-field roots of each operator's minimal polynomial
    (ascending), intersecting with eigenspaces.  Returns ``(v, [λ_i])`` with
    raw scalars, or None when no common eigenvector exists.
    """
    ops = list(ops)
    n = search_space.ambient_dim
    for op in ops:
        if not op.is_square or op.nrows != n:
            raise SizeMismatch(f"operator of shape {op.shape} on F^{n}")
    if search_space.dim == 0:
        raise ValueError("search space must be nonzero")
    if budget is None:
        budget = default_budget()
    roots_cache = {}
    visits = [0]

    def roots(i):
        if i not in roots_cache:
            mp = minpolys[i] if minpolys is not None else minimal_polynomial(ops[i])
            roots_cache[i] = [r for r, _ in field_roots(mp)]
        return roots_cache[i]

    def search(i, S, lams):
        visits[0] += 1
        if visits[0] > budget:
            raise BudgetExhausted(f"common_eigenvector exceeded {budget} node visits")
        if i == len(ops):
            return S.rows[0], lams
        lam = scalar_on(ops[i], S)
        if lam is not None:
            return search(i + 1, S, lams + [lam])
        for r in roots(i):
            S2 = restricted_kernel(ops[i], S, r)
            if S2.dim:
                found = search(i + 1, S2, lams + [r])
                if found is not None:
                    return found
        return None

    return search(0, search_space, [])


def is_upper_triangular_under(P: Matrix, ops) -> bool:
    """True iff P^-1 · op · P is upper triangular for every op."""
    if not P.is_square:
        raise NonSquare(f"shape {P.shape}")
    Pinv = inverse(P)
    n = P.nrows
    for op in ops:
        if op.shape != (n, n):
            raise SizeMismatch(f"operator {op.shape} vs basis change {P.shape}")
        C = Pinv @ op @ P
        for i in range(1, n):
            if any(C.rows[i][:i]):
                return False
    return True
