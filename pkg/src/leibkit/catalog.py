"""Reference algebras with known answers, metamorphic generators, and
definition-level brute-force oracles over small prime fields."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
import random
import re

from .algebra import Algebra, check_leibniz_identity, is_ideal
from .config import default_budget
from .errors import BudgetExhausted, FieldUnsupported, InternalContradiction, SingularMatrix, UnknownEntry
from .exactfield import GF, Q, FieldSpec
from .linalg import Matrix, Subspace, inverse, is_nilpotent_matrix
from .modrep import Representation, adjoint_representation, submodule_closure

__all__ = [
    "ENTRY_NAMES",
    "SMALL_FIELDS",
    "CatalogEntry",
    "catalog_build",
    "catalog_entries",
    "expected_booleans",
    "scramble",
    "direct_sum",
    "enumerate_subspaces",
    "enumerate_ideals",
    "oracle_supersolvable",
    "oracle_nil_elementwise",
    "oracle_irreducible",
]

SMALL_FIELDS = (Q, GF(2), GF(3), GF(5), GF(7))

ENTRY_NAMES = ("abelian", "lie2", "heis3", "leib2", "sl2", "r3", "weylheis")


def _abelian(field, n):
    return Algebra(field, n, {}, [f"a{i}" for i in range(n)])


def _lie2(field):
    return Algebra(field, 2, {(0, 1): (1, 0), (1, 0): (-1, 0)}, ["e1", "e2"])


def _heis3(field):
    return Algebra(field, 3, {(0, 1): (0, 0, 1), (1, 0): (0, 0, -1)}, ["x", "y", "z"])


def _leib2(field):
    return Algebra(field, 2, {(0, 0): (0, 1)}, ["a", "b"])


def _sl2(field):
    # basis order (e, f, h)
    return Algebra(field, 3, {
        (0, 1): (0, 0, 1), (1, 0): (0, 0, -1),
        (2, 0): (2, 0, 0), (0, 2): (-2, 0, 0),
        (2, 1): (0, -2, 0), (1, 2): (0, 2, 0),
    }, ["e", "f", "h"])


def _r3(field):
    return Algebra(field, 3, {
        (0, 1): (0, 0, 1), (1, 0): (0, 0, -1),
        (0, 2): (0, -1, 0), (2, 0): (0, 1, 0),
    }, ["t", "u", "v"])


def _weylheis(field, p):
    # basis D, M, I, e_0..e_{p-1}: derivative, multiplication and identity
    # acting on truncated polynomials F[x]/(x^p)
    if field.p != p:
        raise FieldUnsupported(f"weylheis({p}) exists only over GF({p})")
    n = p + 3
    D, M, I = 0, 1, 2

    def e(k):
        return 3 + k

    prods = {}

    def put(i, j, k, c):
        vec = prods.setdefault((i, j), [0] * n)
        vec[k] += c

    put(D, M, I, 1)
    put(M, D, I, -1)
    for k in range(p):
        if k >= 1:
            put(D, e(k), e(k - 1), k)
            put(e(k), D, e(k - 1), -k)
        if k + 1 < p:
            put(M, e(k), e(k + 1), 1)
            put(e(k), M, e(k + 1), -1)
        put(I, e(k), e(k), 1)
        put(e(k), I, e(k), -1)
    return Algebra(field, n, {key: tuple(v) for key, v in prods.items()},
                   ["D", "M", "I"] + [f"e{k}" for k in range(p)])


def parse_entry_name(name: str):
    """Split ``abelian(3)``, ``abelian:3`` or ``weylheis(2)`` into (base, param)."""
    text = name.strip().lower()
    for base in ENTRY_NAMES:
        if text == base:
            return base, None
        m = re.fullmatch(re.escape(base) + r"(?:\((\d+)\)|:(\d+))", text)
        if m:
            return base, int(m.group(1) or m.group(2))
    raise UnknownEntry(name)


def catalog_build(name: str, field: FieldSpec = Q) -> Algebra:
    """Build a catalog algebra; it is always checked against the Leibniz identity."""
    base, param = parse_entry_name(name)
    if base == "abelian":
        A = _abelian(field, 3 if param is None else param)
    elif base == "weylheis":
        if param is None:
            raise UnknownEntry("weylheis needs its prime, e.g. weylheis(2)")
        A = _weylheis(field, param)
    else:
        if param is not None:
            raise UnknownEntry(name)
        A = {"lie2": _lie2, "heis3": _heis3, "leib2": _leib2, "sl2": _sl2, "r3": _r3}[base](field)
    if check_leibniz_identity(A):
        raise InternalContradiction(f"catalog entry {name} over {field} is not Leibniz")
    return A


def supported_fields(name: str):
    base, param = parse_entry_name(name)
    if base == "weylheis":
        return (GF(param),)
    return SMALL_FIELDS


_T = dict(nilpotent=True, solvable=True, strongly_solvable=True, supersolvable=True, triangulable=True)
_F = dict(nilpotent=False, solvable=False, strongly_solvable=False, supersolvable=False, triangulable=False)


def expected_booleans(name: str, field: FieldSpec) -> dict:
    """Hand-derived ground truth for each entry."""
    base, _ = parse_entry_name(name)
    if base in ("abelian", "heis3", "leib2"):
        return dict(_T)
    if base == "lie2":
        return dict(_T, nilpotent=False)
    if base == "sl2":
        # in characteristic 2, h·e = 2e = 0 and sl2 degenerates to heis3
        return dict(_T) if field.p == 2 else dict(_F)
    if base == "r3":
        # t acts on span{u, v} with minimal polynomial t^2 + 1
        splits = field.p == 2 or field.p % 4 == 1
        return dict(_T, nilpotent=False, supersolvable=splits)
    if base == "weylheis":
        return dict(_F, solvable=True)
    raise UnknownEntry(name)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    field: FieldSpec
    expected: dict
    note: str = ""

    def build(self) -> Algebra:
        return catalog_build(self.name, self.field)

    @property
    def label(self):
        return f"{self.name}/{self.field}"


_NOTES = {
    "abelian": "zero products",
    "lie2": "non-abelian 2-dim Lie algebra, e1·e2 = e1",
    "heis3": "Heisenberg, x·y = z",
    "leib2": "non-Lie nilpotent Leibniz, a·a = b",
    "sl2": "perfect outside characteristic 2",
    "r3": "t rotates span{u, v}: triangulable everywhere, supersolvable iff -1 is a square",
    "weylheis": "solvable, not strongly solvable; exists only in characteristic p",
}

DEFAULT_NAMES = ("abelian(1)", "abelian(2)", "abelian(3)", "lie2", "heis3", "leib2", "sl2", "r3",
                 "weylheis(2)", "weylheis(3)", "weylheis(5)")


def catalog_entries(names=DEFAULT_NAMES, fields=SMALL_FIELDS, max_dim=None):
    out = []
    for name in names:
        for F in supported_fields(name):
            if F not in fields:
                continue
            entry = CatalogEntry(name, F, expected_booleans(name, F), _NOTES[parse_entry_name(name)[0]])
            if max_dim is not None and entry.build().dim > max_dim:
                continue
            out.append(entry)
    return out


def _random_invertible(field, n, rng, height=2):
    while True:
        if field.p:
            rows = [[rng.randrange(field.p) for _ in range(n)] for _ in range(n)]
        else:
            rows = [[rng.randint(-height, height) for _ in range(n)] for _ in range(n)]
        P = Matrix(field, rows)
        try:
            return P, inverse(P)
        except SingularMatrix:
            continue


def transport(A: Algebra, P: Matrix, Pinv: Matrix = None) -> Algebra:
    """A rewritten in the basis given by the columns of P."""
    Pinv = inverse(P) if Pinv is None else Pinv
    n = A.dim
    cols = P.columns()
    products = {}
    for a in range(n):
        for b in range(n):
            v = A.multiply(cols[a], cols[b])
            if any(v):
                products[(a, b)] = Pinv @ v
    B = Algebra(A.field, n, products, [f"s{j}" for j in range(n)], coerce=False)
    if check_leibniz_identity(B):
        raise InternalContradiction("basis change broke the Leibniz identity")
    return B


def scramble(A: Algebra, seed, height=2, return_basis=False):
    """A in a random basis drawn from ``random.Random(seed)``."""
    rng = random.Random(seed)
    P, Pinv = _random_invertible(A.field, A.dim, rng, height)
    B = transport(A, P, Pinv)
    return (B, P) if return_basis else B


def direct_sum(A: Algebra, B: Algebra) -> Algebra:
    if A.field != B.field:
        raise ValueError("direct sum needs a common field")
    n, m = A.dim, B.dim
    z = A.field.zero
    products = {}
    for (i, j), v in A.nonzero_products():
        products[(i, j)] = tuple(v) + (z,) * m
    for (i, j), v in B.nonzero_products():
        products[(n + i, n + j)] = (z,) * n + tuple(v)
    names = list(A.names) + [nm if nm not in A.names else nm + "'" for nm in B.names]
    S = Algebra(A.field, n + m, products, names, coerce=False)
    if check_leibniz_identity(S):
        raise InternalContradiction("direct sum is not Leibniz")
    return S


# -- finite-field enumeration -------------------------------------------------

def _require_finite(field):
    if not field.p:
        raise FieldUnsupported("enumeration needs a prime field")


def enumerate_subspaces(field: FieldSpec, n: int, k=None, budget=None):
    """Every subspace of GF(p)^n (of dimension k if given), one canonical RREF each."""
    _require_finite(field)
    budget = default_budget() if budget is None else budget
    p = field.p
    dims = range(n + 1) if k is None else [k]
    produced = 0
    for d in dims:
        for pivots in combinations(range(n), d):
            pivset = set(pivots)
            slots = [(r, j) for r, c in enumerate(pivots) for j in range(c + 1, n) if j not in pivset]
            for values in product(range(p), repeat=len(slots)):
                produced += 1
                if produced > budget:
                    raise BudgetExhausted(f"more than {budget} subspaces")
                rows = [[0] * n for _ in range(d)]
                for r, c in enumerate(pivots):
                    rows[r][c] = 1
                for (r, j), x in zip(slots, values):
                    rows[r][j] = x
                yield Subspace(field, n, [tuple(r) for r in rows], pivots)


def _projective_points(field, n):
    """One nonzero vector per line of GF(p)^n (first nonzero entry 1)."""
    p = field.p
    for lead in range(n):
        for tail in product(range(p), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail


def enumerate_ideals(A: Algebra, budget=None):
    """All two-sided ideals of A over GF(p), as the join-closure of the
    principal ideals.  Sorted by (dim, basis)."""
    _require_finite(A.field)
    budget = default_budget() if budget is None else budget
    R = adjoint_representation(A)
    principal = set()
    for v in _projective_points(A.field, A.dim):
        principal.add(submodule_closure(R, [v]))
    zero = A.zero_space()
    ideals = {zero}
    frontier = [zero]
    principal = sorted(principal, key=_subspace_key)
    while frontier:
        nxt = []
        for J in frontier:
            for P in principal:
                if P <= J:
                    continue
                S = J + P
                if S not in ideals:
                    ideals.add(S)
                    nxt.append(S)
                    if len(ideals) > budget:
                        raise BudgetExhausted(f"more than {budget} ideals")
        frontier = nxt
    return sorted(ideals, key=_subspace_key)


def enumerate_ideals_bruteforce(A: Algebra, budget=None):
    """All ideals by filtering every subspace; slow, for cross-checking."""
    return sorted((U for U in enumerate_subspaces(A.field, A.dim, budget=budget) if is_ideal(A, U)),
                  key=_subspace_key)


def _subspace_key(U):
    return (U.dim, U.rows)


def oracle_supersolvable(A: Algebra, budget=None):
    """Depth-first search for a chain of ideals of dimensions 0, 1, ..., n,
    straight from the definition."""
    _require_finite(A.field)
    n = A.dim
    by_dim = [[] for _ in range(n + 1)]
    for U in enumerate_subspaces(A.field, n, budget=budget):
        if is_ideal(A, U):
            by_dim[U.dim].append(U)

    def dfs(chain):
        if len(chain) == n + 1:
            return chain
        for J in by_dim[len(chain)]:
            if chain[-1] <= J:
                found = dfs(chain + [J])
                if found:
                    return found
        return None

    chain = dfs([A.zero_space()])
    return (True, chain) if chain else (False, None)


def _elements(field, space: Subspace):
    n = space.ambient_dim
    p = field.p
    for coeffs in product(range(p), repeat=space.dim):
        acc = [0] * n
        for c, row in zip(coeffs, space.rows):
            if c:
                for k, x in enumerate(row):
                    acc[k] += c * x
        yield tuple(a % p for a in acc)


def _raw_combo(p, coeffs, flats):
    acc = [0] * len(flats[0])
    for c, f in zip(coeffs, flats):
        if c:
            for k, x in enumerate(f):
                if x:
                    acc[k] += c * x
    return [a % p for a in acc]


def oracle_nil_elementwise(R: Representation, I: Subspace, budget=None) -> bool:
    """True iff T_x and S_x are nilpotent for every single element x of I."""
    field = R.field
    _require_finite(field)
    budget = default_budget() if budget is None else budget
    if field.p ** I.dim > budget:
        raise BudgetExhausted(f"{field.p}^{I.dim} elements exceed budget {budget}")
    m = R.module_dim
    if m == 0:
        return True
    p = field.p
    flat_T = [[x for r in X.rows for x in r] for X in R.left]
    flat_S = [[x for r in X.rows for x in r] for X in R.right]
    for x in _elements(field, I):
        for flats in (flat_T, flat_S):
            f = _raw_combo(p, x, flats)
            X = Matrix._raw(field, tuple(tuple(f[i * m:(i + 1) * m]) for i in range(m)), m)
            if not is_nilpotent_matrix(X):
                return False
    return True


def oracle_irreducible(R: Representation, B: Subspace, budget=None) -> bool:
    """True iff every nonzero v in B generates all of B as a submodule."""
    field = R.field
    _require_finite(field)
    budget = default_budget() if budget is None else budget
    if B.is_zero():
        return False
    if field.p ** B.dim > budget:
        raise BudgetExhausted(f"{field.p}^{B.dim} vectors exceed budget {budget}")
    for coeffs in _projective_points(field, B.dim):
        v = [0] * B.ambient_dim
        for c, row in zip(coeffs, B.rows):
            if c:
                for k, x in enumerate(row):
                    v[k] += c * x
        v = tuple(a % field.p for a in v)
        if submodule_closure(R, [v]) != B:
            return False
    return True


def irreducible_submodules(R: Representation, budget=None):
    """Every irreducible submodule of R over GF(p), by exhaustive search."""
    out = []
    for U in enumerate_subspaces(R.field, R.module_dim, budget=budget):
        if U.is_zero():
            continue
        if all(R.operators[i] @ u in U for i in range(len(R.operators)) for u in U.rows):
            if oracle_irreducible(R, U, budget):
                out.append(U)
    return out
