"""Decision procedures with certificates.

* strongly solvable: A² nilpotent
* triangulable: A² nil on A (field independent, no extension of scalars)
* module triangulation: basis-operator minimal polynomials split and A² is
  nil on M; the flag is built one common eigenvector at a time
* supersolvable: the adjoint module triangulates over the base field, and the
  flag's prefix spans form the ideal chain
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .algebra import (
    Algebra,
    derived_series,
    derived_subalgebra,
    is_ideal,
    lower_central_series,
)
from .errors import InternalContradiction, PreconditionViolated, TheoremViolation
from .linalg import (
    Matrix,
    Subspace,
    common_eigenvector,
    is_upper_triangular_under,
    minimal_polynomial,
    restricted_kernel,
)
from .modrep import (
    Representation,
    acting_operators,
    adjoint_representation,
    is_submodule,
    lift_from_quotient,
    nil_chain,
    quotient_representation,
)
from .poly import Polynomial, splits_linearly

__all__ = [
    "TriangularCertificate",
    "PropertyReport",
    "NonSplitting",
    "ChainTail",
    "is_strongly_solvable",
    "is_triangulable",
    "module_triangulation_check",
    "construct_flag",
    "is_supersolvable",
    "theorem3_crosscheck",
    "lemma1_check",
    "barnes_dichotomy_check",
    "analyze",
]


@dataclass(frozen=True)
class NonSplitting:
    """A basis operator whose minimal polynomial has a non-linear factor."""

    operator_index: int
    side: str  # "T" (left) or "S" (right)
    basis_index: int
    minimal_polynomial: Polynomial
    remainder: Polynomial


@dataclass(frozen=True)
class ChainTail:
    """Nonzero subspace at which a descending chain stabilized."""

    tail: Subspace


@dataclass(frozen=True)
class FlagStep:
    rep: Representation
    line: Subspace
    eigenvalues: tuple


@dataclass(frozen=True)
class TriangularCertificate:
    basis_change: Matrix
    scope: str = "module"
    steps: tuple = dc_field(default=(), compare=False, repr=False)

    def verify(self, R: Representation) -> bool:
        return is_upper_triangular_under(self.basis_change, R.operators)


@dataclass
class PropertyReport:
    nilpotent: bool
    solvable: bool
    strongly_solvable: bool
    supersolvable: bool
    triangulable: bool
    lower_central_series: list
    derived_series: list
    strong_series: list
    nil_chain: list
    triangular_basis: Optional[TriangularCertificate] = None
    ideal_chain: Optional[list] = None
    supersolvable_witness: object = None

    def booleans(self):
        return {
            "nilpotent": self.nilpotent,
            "solvable": self.solvable,
            "strongly_solvable": self.strongly_solvable,
            "supersolvable": self.supersolvable,
            "triangulable": self.triangulable,
        }

    def implications_hold(self) -> bool:
        b = self
        return ((not b.nilpotent or b.strongly_solvable)
                and (not b.strongly_solvable or b.solvable)
                and (not b.supersolvable or b.strongly_solvable)
                and b.strongly_solvable == b.triangulable)


def is_strongly_solvable(A: Algebra):
    """(A² nilpotent, series of A² on success or its stable tail on failure)."""
    series = lower_central_series(A, derived_subalgebra(A))
    if series[-1].is_zero():
        return True, series
    return False, ChainTail(series[-1])


def is_triangulable(A: Algebra):
    """A² nil on A, cross-checked against strong solvability."""
    chain, ok = nil_chain(adjoint_representation(A), derived_subalgebra(A))
    strong, _ = is_strongly_solvable(A)
    if ok != strong:
        raise InternalContradiction(
            "nil chain of A² disagrees with nilpotency of A²",
            {"nil_chain": chain, "strongly_solvable": strong})
    return (True, chain) if ok else (False, ChainTail(chain[-1]))


def split_check(R: Representation):
    """First basis operator with a non-split minimal polynomial, or None."""
    n = R.algebra.dim
    for idx, X in enumerate(R.operators):
        mp = minimal_polynomial(X)
        ok, data = splits_linearly(mp)
        if not ok:
            side = "T" if idx < n else "S"
            return NonSplitting(idx, side, idx % n, mp, data)
    return None


def module_triangulation_check(R: Representation):
    """(triangulable over the base field, failure witness or None)."""
    chain, ok = nil_chain(R, derived_subalgebra(R.algebra))
    if not ok:
        return False, ChainTail(chain[-1])
    bad = split_check(R)
    if bad is not None:
        return False, bad
    return True, None


def _narrowed_space(Rq: Representation, A2: Subspace) -> Subspace:
    W = Rq.full()
    for X in acting_operators(Rq, A2):
        if W.is_zero():
            break
        W = restricted_kernel(X, W)
    return W


def construct_flag(R: Representation, narrow: bool = True, budget=None, checked: bool = False) -> TriangularCertificate:
    """Upper-triangularizing basis for R, built one invariant line at a time.

    Each step quotients by the lines found so far and picks a common
    eigenvector of every basis operator on the quotient (inside the joint
    kernel of A²'s operators when ``narrow``).
    """
    if not checked:
        ok, witness = module_triangulation_check(R)
        if not ok:
            raise PreconditionViolated(f"representation is not triangulable over {R.field}: {witness}")
    field, m = R.field, R.module_dim
    A2 = derived_subalgebra(R.algebra)
    U = Subspace.zero(field, m)
    cols, steps = [], []
    while len(cols) < m:
        Rq, _ = quotient_representation(R, U)
        W = _narrowed_space(Rq, A2) if narrow else Rq.full()
        if W.is_zero():
            raise TheoremViolation("A² has no common null vector on the quotient module",
                                   {"found": cols, "quotient": Rq})
        found = common_eigenvector(Rq.operators, W, budget=budget)
        if found is None:
            raise TheoremViolation("no common eigenvector on a quotient of a triangulable module",
                                   {"found": cols, "quotient": Rq, "search_space": W})
        vq, lams = found
        steps.append(FlagStep(Rq, Subspace.span(field, Rq.module_dim, [vq]), tuple(lams)))
        v = lift_from_quotient(U, vq)
        cols.append(v)
        U = U + Subspace.span(field, m, [v])
    P = Matrix.from_columns(field, cols, m)
    if not is_upper_triangular_under(P, R.operators):
        raise TheoremViolation("constructed flag does not triangulate", {"P": P})
    return TriangularCertificate(P, "module", tuple(steps))


def ideal_chain_from_flag(A: Algebra, P: Matrix):
    cols = P.columns()
    return [A.span(cols[:k]) for k in range(len(cols) + 1)]


def _supersolvable(A: Algebra, budget=None):
    R = adjoint_representation(A)
    ok, witness = module_triangulation_check(R)
    if not ok:
        return False, witness, None
    cert = construct_flag(R, budget=budget, checked=True)
    chain = ideal_chain_from_flag(A, cert.basis_change)
    for k, I in enumerate(chain):
        if I.dim != k or not is_ideal(A, I):
            raise TheoremViolation("flag prefix is not an ideal", {"k": k, "subspace": I})
    return True, chain, cert


def is_supersolvable(A: Algebra, budget=None):
    """(supersolvable, ideal chain 0 ⊂ I_1 ⊂ ... ⊂ A, or failure witness)."""
    ok, data, _ = _supersolvable(A, budget)
    return ok, data


def adjoint_splits(A: Algebra) -> bool:
    return split_check(adjoint_representation(A)) is None


@dataclass(frozen=True)
class Theorem3Result:
    supersolvable: bool
    strongly_solvable: bool
    splits: bool

    @property
    def equivalence_applicable(self):
        return self.splits


def theorem3_crosscheck(A: Algebra) -> Theorem3Result:
    """Supersolvable ⇒ strongly solvable always; ⇔ when the adjoint splits."""
    sup, _ = is_supersolvable(A)
    strong, _ = is_strongly_solvable(A)
    splits = adjoint_splits(A)
    if sup and not strong:
        raise TheoremViolation("supersolvable but not strongly solvable", {"algebra": A})
    if splits and sup != strong:
        raise TheoremViolation("split adjoint with supersolvable != strongly solvable", {"algebra": A})
    return Theorem3Result(sup, strong, splits)


def _line_eigenvalues(R: Representation, B: Subspace):
    if B.dim != 1 or not is_submodule(R, B):
        raise PreconditionViolated("B must be a 1-dimensional submodule")
    b = B.rows[0]
    c = B.pivots[0]
    alphas = tuple((X @ b)[c] for X in R.left)
    betas = tuple((X @ b)[c] for X in R.right)
    return alphas, betas


def lemma1_check(R: Representation, B: Subspace) -> bool:
    """x·B = 0 = B·x for every basis vector x of A²."""
    _line_eigenvalues(R, B)
    A2 = derived_subalgebra(R.algebra)
    b = B.rows[0]
    for X in acting_operators(R, A2):
        if any(X @ b):
            raise TheoremViolation("A² does not centralize a 1-dimensional submodule",
                                   {"line": B, "A2": A2})
    return True


def barnes_dichotomy_check(R: Representation, B: Subspace) -> str:
    """On a line B: S vanishes identically ("antisymmetric"), or S = -T
    ("symmetric"), or both.  Anything else raises."""
    field = R.field
    alphas, betas = _line_eigenvalues(R, B)
    s_zero = not any(betas)
    s_minus_t = all(bb == field.neg(a) for a, bb in zip(alphas, betas))
    if s_zero and s_minus_t:
        return "both"
    if s_zero:
        return "antisymmetric"
    if s_minus_t:
        return "symmetric"
    raise TheoremViolation("right action on a line is neither 0 nor -T",
                           {"alphas": alphas, "betas": betas})


def analyze(A: Algebra, budget=None) -> PropertyReport:
    lcs = lower_central_series(A)
    ds = derived_series(A)
    strong, strong_w = is_strongly_solvable(A)
    tri, tri_w = is_triangulable(A)
    sup, sup_w, cert = _supersolvable(A, budget)
    strong_series = strong_w if strong else lower_central_series(A, derived_subalgebra(A))
    chain, _ = nil_chain(adjoint_representation(A), derived_subalgebra(A))
    report = PropertyReport(
        nilpotent=lcs[-1].is_zero(),
        solvable=ds[-1].is_zero(),
        strongly_solvable=strong,
        supersolvable=sup,
        triangulable=tri,
        lower_central_series=lcs,
        derived_series=ds,
        strong_series=strong_series,
        nil_chain=chain,
    )
    if sup:
        report.ideal_chain = sup_w
        report.triangular_basis = cert
    else:
        report.supersolvable_witness = sup_w
    if not report.implications_hold():
        raise InternalContradiction("property implications violated", {"report": report})
    return report
