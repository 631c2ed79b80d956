"""2-generated subalgebras and recognizability audits for triangulability.

Subalgebra triangulability uses the field-independent test (the subalgebra's
square acts nilpotently on it), so no eigenvalue splitting is ever needed.

Exhaustive audits walk all pairs (x, y) of GF(p)^n in lexicographic order of
the index ``i = rank(x) * p^n + rank(y)``, where vectors are ranked with the
first coordinate most significant.  Sampled audits draw integer vectors with
entries in [-H, H] from ``random.Random(seed)``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import random
from typing import Optional

from .algebra import Algebra, is_solvable, restrict_to_subalgebra, subalgebra_closure
from .config import default_budget
from .decide import ChainTail, is_triangulable
from .errors import BudgetExhausted, ModeUnsupportedForField, TheoremViolation
from .linalg import Subspace

__all__ = [
    "Witness",
    "AuditReport",
    "two_generated_subalgebra",
    "audit_two_recognizability",
    "witness_search",
]

DEFAULT_SEED = 1
DEFAULT_HEIGHT = 3
DEFAULT_SAMPLES = 200


@dataclass(frozen=True)
class Witness:
    index: int
    x: tuple
    y: tuple
    subalgebra: Subspace
    tail: Subspace  # nonzero stable term of A²'s nil chain, in A's coordinates


@dataclass
class AuditReport:
    mode: str
    field: str
    dim: int
    pairs_total: int
    pairs_checked: int
    all_pairs_triangulable: bool
    complete: bool
    algebra_solvable: bool
    algebra_triangulable: bool
    theorem5: str
    corollary6: str
    theorem_consistency: bool
    witness: Optional[Witness] = None
    witness_count: Optional[int] = None
    seed: Optional[int] = None
    height: Optional[int] = None
    distinct_subalgebras: int = 0


def two_generated_subalgebra(A: Algebra, x, y):
    """(closure of {x, y}, that subalgebra as an algebra on its RREF basis)."""
    U = subalgebra_closure(A, [tuple(x), tuple(y)])
    return U, restrict_to_subalgebra(A, U)[0]


class _PairEvaluator:
    """Caches closures per span{x, y} and triangulability per subalgebra."""

    def __init__(self, A: Algebra):
        self.A = A
        self.cache = {}
        self.spans = {}

    def __call__(self, x, y):
        key = Subspace.span(self.A.field, self.A.dim, [x, y])
        U = self.spans.get(key)
        if U is None:
            U = self.spans[key] = subalgebra_closure(self.A, key.rows)
        hit = self.cache.get(U)
        if hit is None:
            N, inc = restrict_to_subalgebra(self.A, U)
            ok, data = is_triangulable(N)
            tail = None
            if not ok:
                tail = Subspace.span(self.A.field, self.A.dim, [inc @ v for v in data.tail.rows])
            hit = (ok, tail)
            self.cache[U] = hit
        return U, hit


def _vector(idx, p, n):
    out = [0] * n
    for k in range(n - 1, -1, -1):
        idx, out[k] = divmod(idx, p)
    return tuple(out)


def _pair(idx, p, n):
    hi, lo = divmod(idx, p ** n)
    return _vector(hi, p, n), _vector(lo, p, n)


def _scan_range(A, start, stop, stop_at_first):
    """Scan exhaustive indices [start, stop); returns (first witness, count, checked, distinct)."""
    p, n = A.field.p, A.dim
    ev = _PairEvaluator(A)
    first = None
    count = 0
    checked = 0
    for idx in range(start, stop):
        x, y = _pair(idx, p, n)
        U, (ok, tail) = ev(x, y)
        checked += 1
        if not ok:
            count += 1
            if first is None:
                first = Witness(idx, x, y, U, tail)
                if stop_at_first:
                    break
    return first, count, checked, set(ev.cache)


def _scan_worker(args):
    A, start, stop, stop_at_first = args
    first, count, checked, distinct = _scan_range(A, start, stop, stop_at_first)
    return first, count, checked, distinct


def _status(applicable, witness, triangulable, certified):
    if not applicable:
        return "not applicable"
    if witness is not None:
        return "violated" if triangulable else "confirmed by witness"
    if triangulable:
        return "confirmed"
    return "violated" if certified else "inconclusive"


def audit_two_recognizability(A: Algebra, mode: str = "exhaustive", budget=None, *,
                              seed=DEFAULT_SEED, samples=DEFAULT_SAMPLES, height=DEFAULT_HEIGHT,
                              stop_at_first=True, workers=1) -> AuditReport:
    """Check 2-generated subalgebras for triangulability and compare with A.

    ``theorem5`` covers solvable A; ``corollary6`` covers characteristic 0.
    A status is "violated" only when the outcome contradicts the theorem (or
    contradicts heredity: a triangulable A cannot contain a non-triangulable
    subalgebra).  Sampling never certifies the all-pairs hypothesis.
    """
    budget = default_budget() if budget is None else budget
    field, n = A.field, A.dim
    if mode == "exhaustive":
        if not field.p:
            raise ModeUnsupportedForField("exhaustive audits need a prime field; use sampled mode over Q")
        total = field.p ** (2 * n)
        if total > budget:
            raise BudgetExhausted(f"{total} pairs exceed budget {budget}")
        witness, count, checked, distinct = _exhaustive(A, total, stop_at_first, workers)
        complete = checked == total
    elif mode == "sampled":
        if samples > budget:
            raise BudgetExhausted(f"{samples} samples exceed budget {budget}")
        total = samples
        rng = random.Random(seed)
        ev = _PairEvaluator(A)
        witness, count, checked = None, 0, 0
        for idx in range(samples):
            if field.p:
                x = tuple(rng.randrange(field.p) for _ in range(n))
                y = tuple(rng.randrange(field.p) for _ in range(n))
            else:
                x = tuple(field(rng.randint(-height, height)) for _ in range(n))
                y = tuple(field(rng.randint(-height, height)) for _ in range(n))
            U, (ok, tail) = ev(x, y)
            checked += 1
            if not ok:
                count += 1
                if witness is None:
                    witness = Witness(idx, x, y, U, tail)
                    if stop_at_first:
                        break
        distinct = set(ev.cache)
        complete = False
    else:
        raise ValueError(f"unknown mode {mode!r}")

    solvable = is_solvable(A)
    triangulable = is_triangulable(A)[0]
    certified = mode == "exhaustive" and complete
    t5 = _status(solvable, witness, triangulable, certified)
    c6 = _status(field.p == 0, witness, triangulable, certified)
    report = AuditReport(
        mode=mode,
        field=str(field),
        dim=n,
        pairs_total=total,
        pairs_checked=checked,
        all_pairs_triangulable=witness is None,
        complete=complete,
        algebra_solvable=solvable,
        algebra_triangulable=triangulable,
        theorem5=t5,
        corollary6=c6,
        theorem_consistency="violated" not in (t5, c6),
        witness=witness,
        witness_count=count if not stop_at_first else None,
        seed=seed if mode == "sampled" else None,
        height=height if mode == "sampled" and not field.p else None,
        distinct_subalgebras=len(distinct),
    )
    return report


def _exhaustive(A, total, stop_at_first, workers):
    if workers <= 1 or total < 2 * workers:
        first, count, checked, distinct = _scan_range(A, 0, total, stop_at_first)
        return first, count, checked, distinct
    bounds = [total * k // workers for k in range(workers + 1)]
    jobs = [(A, bounds[k], bounds[k + 1], stop_at_first) for k in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_scan_worker, jobs))
    witnesses = [w for w, *_ in parts if w is not None]
    first = min(witnesses, key=lambda w: w.index) if witnesses else None
    if stop_at_first and first is not None:
        # chunks starting after the witness were never reached sequentially;
        # earlier chunks ran to completion and the witness chunk stopped at it
        kept = [part for k, part in enumerate(parts) if bounds[k] <= first.index]
        checked = first.index + 1
    else:
        kept = parts
        checked = sum(c for _, _, c, _ in parts)
    count = sum(c for _, c, _, _ in kept)
    distinct = set()
    for *_, d in kept:
        distinct |= d
    return first, count, checked, distinct


def witness_search(A: Algebra, budget=None, *, seed=DEFAULT_SEED, samples=DEFAULT_SAMPLES,
                   height=DEFAULT_HEIGHT) -> Optional[Witness]:
    """First non-triangulable 2-generated subalgebra in the deterministic order.

    Exhaustive over GF(p) when p^(2n) fits the budget, sampled otherwise.
    """
    budget = default_budget() if budget is None else budget
    field = A.field
    exhaustive = bool(field.p) and field.p ** (2 * A.dim) <= budget
    report = audit_two_recognizability(A, "exhaustive" if exhaustive else "sampled", budget,
                                       seed=seed, samples=min(samples, budget), height=height)
    if report.witness is None and exhaustive and report.algebra_solvable and not report.algebra_triangulable:
        raise TheoremViolation("solvable non-triangulable algebra with every 2-generated subalgebra triangulable",
                               {"algebra": A, "report": report})
    if report.witness is not None and report.algebra_triangulable:
        raise TheoremViolation("non-triangulable subalgebra inside a triangulable algebra",
                               {"algebra": A, "report": report})
    return report.witness


def reverify_witness(A: Algebra, w: Witness) -> bool:
    """Recompute the closure of (x, y) and confirm its square's chain sticks at a nonzero term."""
    U = subalgebra_closure(A, [w.x, w.y])
    if U != w.subalgebra:
        return False
    N, _ = restrict_to_subalgebra(A, U)
    ok, data = is_triangulable(N)
    return not ok and isinstance(data, ChainTail) and not data.tail.is_zero()

