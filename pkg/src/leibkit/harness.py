"""Theorem suite: every acceptance group as a callable, plus a runner that
writes a reproduction (algebra file + command line) for each failure."""

from __future__ import annotations

import contextlib
import io as _stdio
import os
import random
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

from .algebra import (
    Algebra,
    derived_series,
    derived_subalgebra,
    is_nilpotent,
    lower_central_series,
    restrict_to_subalgebra,
)
from .catalog import (
    SMALL_FIELDS,
    catalog_build,
    catalog_entries,
    direct_sum,
    enumerate_ideals,
    enumerate_ideals_bruteforce,
    oracle_nil_elementwise,
    oracle_supersolvable,
    scramble,
)
from .certcheck import check_ideal_chain, verify_document
from .decide import (
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
from .errors import TheoremViolation
from .exactfield import GF, Q
from .io import algebra_to_dict, dumps
from .linalg import Matrix, Subspace, minimal_polynomial, rank
from .modrep import adjoint_representation, nil_chain
from .poly import Polynomial, field_roots
from .recognize import audit_two_recognizability, witness_search


@dataclass
class SuiteConfig:
    fields: tuple = SMALL_FIELDS
    scrambles: int = 50
    tamperings: int = 100
    scramble_seed: int = 0
    audit_seed: int = 1
    samples: int = 200
    height: int = 3
    budget: int = 10**6
    # exhaustive witness sweeps above this many pairs fall back to sampling
    audit_budget: int = 10**6
    unit_seed: int = 2024
    workers: int = 2
    repro_dir: Optional[str] = None


@dataclass
class Failure:
    label: str
    message: str
    algebra: Optional[Algebra] = None
    command: str = "analyze --json"


@dataclass
class GroupResult:
    name: str
    checks: int = 0
    failures: list = dc_field(default_factory=list)
    elapsed: float = 0.0
    repro_files: list = dc_field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def check(self, ok, label, message, algebra=None, command="analyze --json"):
        self.checks += 1
        if not ok:
            self.failures.append(Failure(label, message, algebra, command))
        return ok

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        tail = "" if self.passed else f"; first failure: {self.failures[0].label}: {self.failures[0].message}"
        return f"{status} {self.name}: {self.checks} checks in {self.elapsed:.2f}s{tail}"


# -- corpus -------------------------------------------------------------------

def _rng(cfg, salt):
    return random.Random(f"{cfg.unit_seed}:{salt}")


def soundness_corpus(cfg: SuiteConfig, scrambles_each=2):
    """Inputs whose adjoint module triangulates over the base field."""
    base = [("heis3", Q), ("lie2", Q), ("leib2", Q), ("r3", GF(5))]
    base += [(f"abelian({n})", Q) for n in range(1, 6)]
    base += [(name, GF(p)) for name in ("heis3", "lie2", "leib2") for p in (2, 3)]
    out = []
    for name, F in base:
        A = catalog_build(name, F)
        out.append((f"{name}/{F}", A))
        for s in range(scrambles_each):
            out.append((f"{name}/{F}~{s}", scramble(A, cfg.scramble_seed + s)))
    sums = [("heis3", "lie2", Q), ("lie2", "leib2", Q), ("r3", "lie2", GF(5)), ("heis3", "abelian(2)", Q)]
    for a, b, F in sums:
        S = direct_sum(catalog_build(a, F), catalog_build(b, F))
        out.append((f"{a}+{b}/{F}", S))
        out.append((f"{a}+{b}/{F}~0", scramble(S, cfg.scramble_seed)))
    return out


def analysis_corpus(cfg: SuiteConfig, scrambles_each=2):
    out = []
    for e in catalog_entries(fields=cfg.fields):
        A = e.build()
        out.append((e.label, A))
        if A.dim <= 5:
            for s in range(scrambles_each):
                out.append((f"{e.label}~{s}", scramble(A, cfg.scramble_seed + s)))
    for a, b in (("lie2", "r3"), ("heis3", "leib2"), ("sl2", "abelian(1)")):
        for F in cfg.fields:
            out.append((f"{a}+{b}/{F}", direct_sum(catalog_build(a, F), catalog_build(b, F))))
    return out


# -- tampering ---------------------------------------------------------------

_TAMPER_KEYS = ("basis_change", "basis_inverse", "left_forms", "right_forms")


def _slots(doc):
    slots = []
    for key in _TAMPER_KEYS:
        if key in ("basis_change", "basis_inverse"):
            mats = [(key, None, doc[key])]
        else:
            mats = [(key, k, X) for k, X in enumerate(doc[key])]
        for key_, k, X in mats:
            for i, row in enumerate(X):
                for j in range(len(row)):
                    slots.append((key_, k, i, j))
    return slots


def tamper(doc, field, rng):
    """Copy of doc with one matrix entry replaced by a different scalar."""
    import copy
    out = copy.deepcopy(doc)
    key, k, i, j = rng.choice(_slots(doc))
    X = out[key] if k is None else out[key][k]
    old = field.parse(X[i][j])
    if field.p:
        new = field(old + rng.randrange(1, field.p))
    else:
        new = field(old + rng.choice([-3, -2, -1, 1, 2, 3]))
    X[i][j] = field.format(new)
    return out, (key, k, i, j)


def triangular_certificate(A: Algebra):
    """Certificate document for the adjoint module, as the CLI emits it."""
    from .cli import _triangulate_doc
    ok, witness, doc = _triangulate_doc(A, None, None, None)
    return doc if ok else None


# -- groups ------------------------------------------------------------------

def group_theorem4(cfg: SuiteConfig, res: GroupResult):
    for e in catalog_entries(fields=cfg.fields):
        A0 = e.build()
        want = e.expected["triangulable"]
        for s in range(cfg.scrambles + 1):
            A = A0 if s == 0 else scramble(A0, cfg.scramble_seed + s)
            tri = is_triangulable(A)[0]
            strong = is_strongly_solvable(A)[0]
            res.check(tri == strong == want, f"{e.label}~{s}",
                      f"triangulable={tri} strongly_solvable={strong} expected={want}", A)


def group_theorem2(cfg: SuiteConfig, res: GroupResult):
    for label, A in soundness_corpus(cfg):
        ok, _ = module_triangulation_check(adjoint_representation(A))
        if not res.check(ok, label, "adjoint module should triangulate", A, "triangulate"):
            continue
        doc = triangular_certificate(A)
        errs = verify_document(A, doc)
        if not res.check(not errs, label, f"verifier rejected a genuine certificate: {errs}", A, "triangulate"):
            continue
        rng = _rng(cfg, label)
        for t in range(cfg.tamperings):
            bad, where = tamper(doc, A.field, rng)
            res.check(bool(verify_document(A, bad)), label, f"tampering #{t} at {where} accepted", A, "triangulate")


def group_field_dependence(cfg: SuiteConfig, res: GroupResult):
    for F in (Q, GF(5), GF(7)):
        A = catalog_build("r3", F)
        res.check(is_triangulable(A)[0], f"r3/{F}", "should be triangulable", A)
        sup, data = is_supersolvable(A)
        if F == GF(5):
            if res.check(sup, "r3/GF(5)", "should be supersolvable", A, "chain"):
                res.check(not check_ideal_chain(A, data), "r3/GF(5)", "ideal chain failed verification", A, "chain")
        else:
            res.check(not sup, f"r3/{F}", "should not be supersolvable", A, "chain")
        if F == Q:
            ok = isinstance(data, NonSplitting) and data.remainder.format() == "t^2+1"
            res.check(ok, "r3/Q", f"witness polynomial should be t^2+1, got {data}", A, "chain")
        if F.p:
            res.check(oracle_supersolvable(A, cfg.budget)[0] == sup, f"r3/{F}", "oracle disagrees", A, "oracle")


def group_theorem3(cfg: SuiteConfig, res: GroupResult):
    for label, A in analysis_corpus(cfg):
        try:
            r = theorem3_crosscheck(A)
        except TheoremViolation as exc:
            res.check(False, label, str(exc), A)
            continue
        res.check(not r.supersolvable or r.strongly_solvable, label, "supersolvable but not strongly solvable", A)
        if r.splits:
            res.check(r.supersolvable == r.strongly_solvable, label, "split adjoint yet the two notions differ", A)


def left_modules(A: Algebra):
    """(L, 0) and (L, -L): bimodules for any Leibniz algebra.  On the first,
    a chain built from right actions alone stops at once, so it separates
    one-sided from two-sided nil chains."""
    from .modrep import Representation
    L = adjoint_representation(A).left
    zero = Matrix.zeros(A.field, A.dim, A.dim)
    return (("antisymmetric", Representation(A, A.dim, tuple(L), tuple(zero for _ in L))),
            ("symmetric", Representation(A, A.dim, tuple(L), tuple(-X for X in L))))


def group_engel(cfg: SuiteConfig, res: GroupResult):
    for e in catalog_entries(fields=(GF(2), GF(3)), max_dim=6):
        A = e.build()
        R = adjoint_representation(A)
        mods = left_modules(A)
        for I in enumerate_ideals(A, cfg.budget):
            _, fast = nil_chain(R, I)
            slow = oracle_nil_elementwise(R, I, cfg.budget)
            label = f"{e.label} ideal dim {I.dim}"
            res.check(fast == slow, label, f"nil chain {fast} vs elementwise {slow}", A, "oracle")
            res.check(fast == is_nilpotent(A, I), label, "nil on A differs from nilpotent", A, "oracle")
            for kind, M in mods:
                _, fast_m = nil_chain(M, I)
                slow_m = oracle_nil_elementwise(M, I, cfg.budget)
                res.check(fast_m == slow_m, f"{label} {kind} module",
                          f"nil chain {fast_m} vs elementwise {slow_m}", A, "oracle")


def group_theorem5(cfg: SuiteConfig, res: GroupResult):
    A = catalog_build("weylheis(2)", GF(2))
    ds = derived_series(A)
    res.check(ds[-1].is_zero() and len(ds) - 1 == 3, "weylheis(2)", f"derived series dims {[U.dim for U in ds]}", A)
    lcs2 = lower_central_series(A, derived_subalgebra(A))
    tail = lcs2[-1]
    res.check(tail.dim == 2 and not tail.is_zero() and is_nilpotent(A, tail) and not any(
        any(A.multiply(u, v)) for u in tail.rows for v in tail.rows),
        "weylheis(2)", f"series of A^2 should stop at a 2-dim abelian ideal, got dim {tail.dim}", A)
    res.check(not is_triangulable(A)[0], "weylheis(2)", "should not be triangulable", A)
    r = audit_two_recognizability(A, "exhaustive", cfg.budget, stop_at_first=False)
    res.check(r.pairs_total == 1024 and r.pairs_checked == 1024 and r.witness_count >= 1,
              "weylheis(2)", f"audit checked {r.pairs_checked} pairs, {r.witness_count} witnesses", A,
              "two-rec --mode exhaustive --all")
    res.check(r.theorem5 == "confirmed by witness", "weylheis(2)", f"theorem5 status {r.theorem5}", A,
              "two-rec --mode exhaustive --all")
    for e in catalog_entries(fields=tuple(F for F in cfg.fields if F.p)):
        if not e.expected["solvable"]:
            continue
        B = e.build()
        try:
            witness_search(B, cfg.audit_budget, seed=cfg.audit_seed, samples=cfg.samples)
            res.check(True, e.label, "")
        except TheoremViolation as exc:
            res.check(False, e.label, str(exc), B, "two-rec")


def group_corollary6(cfg: SuiteConfig, res: GroupResult):
    A = catalog_build("sl2", Q)
    r = audit_two_recognizability(A, "sampled", cfg.budget, seed=cfg.audit_seed,
                                  samples=cfg.samples, height=cfg.height)
    cmd = f"two-rec --mode sampled --seed {cfg.audit_seed} --samples {cfg.samples} --height {cfg.height}"
    if res.check(r.witness is not None, "sl2/Q", "no witness found", A, cmd):
        closure = restrict_to_subalgebra(A, r.witness.subalgebra)[0]
        res.check(not is_triangulable(closure)[0], "sl2/Q", "witness closure is triangulable", A, cmd)
    res.check(r.corollary6 == "confirmed by witness", "sl2/Q", f"corollary6 status {r.corollary6}", A, cmd)
    # (e, f) is inside the sampling box and closes to all of sl2
    res.check(not is_triangulable(A)[0], "sl2/Q", "sl2 should not be triangulable", A)


def _flag_inputs(cfg):
    from .modrep import trivial_representation
    seen = []
    for label, A in soundness_corpus(cfg, scrambles_each=1) + analysis_corpus(cfg, scrambles_each=0):
        R = adjoint_representation(A)
        if module_triangulation_check(R)[0]:
            seen.append((label, A, R))
        seen.append((f"{label} trivial", A, trivial_representation(A, 2)))
    return seen


def group_lemma1(cfg: SuiteConfig, res: GroupResult):
    for label, A, R in _flag_inputs(cfg):
        cert = construct_flag(R)
        for k, step in enumerate(cert.steps):
            try:
                lemma1_check(step.rep, step.line)
                kind = barnes_dichotomy_check(step.rep, step.line)
                res.check(kind in ("antisymmetric", "symmetric", "both"), f"{label} step {k}", kind, A, "triangulate")
            except TheoremViolation as exc:
                res.check(False, f"{label} step {k}", str(exc), A, "triangulate")


def _random_matrix(field, n, rng):
    return Matrix(field, [[rng.randrange(field.p) if field.p else rng.randint(-3, 3) for _ in range(n)]
                          for _ in range(n)])


def _powers_rank(M, d):
    """Rank of {I, M, ..., M^d} flattened to vectors."""
    n = M.nrows
    P = Matrix.identity(M.field, n)
    vecs = []
    for _ in range(d + 1):
        vecs.append([x for r in P.rows for x in r])
        P = P @ M
    return rank(Matrix(M.field, vecs, n * n))


def group_linalg(cfg: SuiteConfig, res: GroupResult):
    F = GF(5)
    rng = _rng(cfg, "minpoly")
    for t in range(100):
        n = rng.randint(1, 5)
        M = _random_matrix(F, n, rng)
        # random low-rank or nilpotent shapes hit small minimal polynomials
        if t % 4 == 1:
            M = M @ Matrix(F, [[1 if i == j and i < n // 2 else 0 for j in range(n)] for i in range(n)])
        mp = minimal_polynomial(M)
        d = mp.degree
        ok = mp.leading == F.one and mp.evaluate_matrix(M).is_zero() and _powers_rank(M, d - 1) == d
        res.check(ok, f"minpoly #{t}", f"not minimal for {M.to_strings()}")
    for t in range(100):
        Fq = (Q, GF(5), GF(7))[t % 3]
        r = _rng(cfg, f"roots{t}")
        roots = [Fq(r.randint(-4, 4)) for _ in range(r.randint(0, 4))]
        extra = Polynomial(Fq, [1, 0, 1]) if t % 2 else Polynomial(Fq, [r.randint(1, 3)])
        f = extra * Polynomial.from_roots(Fq, [(x, 1) for x in roots])
        rebuilt = Polynomial(Fq, [f.leading])
        rest = f
        for root, mult in field_roots(f):
            lin = Polynomial(Fq, [Fq.neg(root), 1])
            for _ in range(mult):
                rebuilt = rebuilt * lin
                rest, rem = divmod(rest, lin)
                res.check(rem.degree < 0, f"roots #{t}", "root does not divide")
        rebuilt = rebuilt * rest.monic() if rest.degree > 0 else rebuilt
        res.check(rebuilt == f, f"roots #{t}", f"deflation does not reproduce {f.format()}")
        res.check(all(rest(Fq(x)) != 0 for x in range(-6, 7)) if Fq.p == 0 else
                  all(rest(Fq(x)) != 0 for x in range(Fq.p)), f"roots #{t}", "remainder still has a root")
    for t in range(200):
        Fs = (Q, GF(2), GF(3), GF(5))[t % 4]
        r = _rng(cfg, f"lattice{t}")
        n = r.randint(1, 6)

        def rand_space():
            k = r.randint(0, n)
            return Subspace.span(Fs, n, [tuple(Fs(r.randint(-2, 2)) for _ in range(n)) for _ in range(k)])

        U, V = rand_space(), rand_space()
        S, I = U + V, U & V
        ok = S.dim + I.dim == U.dim + V.dim and I <= U and I <= V and U <= S and V <= S
        res.check(ok, f"lattice #{t}", f"dims U={U.dim} V={V.dim} U+V={S.dim} U&V={I.dim}")


def _cli_run(argv, env=None):
    from .cli import main
    buf = _stdio.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(_stdio.StringIO()):
        code = main(argv)
    return code, buf.getvalue()


def determinism_commands(path, A):
    cmds = [["validate", path], ["analyze", path], ["analyze", "--json", path],
            ["triangulate", path], ["chain", path]]
    if A.field.p:
        if A.field.p ** (2 * A.dim) <= 20000:
            cmds.append(["two-rec", path, "--mode", "exhaustive"])
        else:
            cmds.append(["two-rec", path, "--mode", "sampled", "--samples", "50"])
        if A.field.p ** A.dim <= 4096:
            cmds.append(["oracle", path])
    else:
        cmds.append(["two-rec", path, "--mode", "sampled", "--samples", "50"])
    return cmds


def group_determinism(cfg: SuiteConfig, res: GroupResult, workdir=None):
    import tempfile
    tmp = workdir or tempfile.mkdtemp(prefix="leibkit-det-")
    for e in catalog_entries(fields=cfg.fields):
        A = e.build()
        path = os.path.join(tmp, f"{e.name}-{e.field}.json".replace("(", "").replace(")", ""))
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps(algebra_to_dict(A)))
        for argv in determinism_commands(path, A):
            first, second = _cli_run(argv), _cli_run(argv)
            res.check(first == second, f"{e.label} {argv[0]}", "outputs differ between runs", A, " ".join(argv[:1]))
    # separate interpreters with different hash seeds catch set-order leaks
    import subprocess
    import sys
    for name, F, argv in (("heis3", Q, ["analyze", "--json"]), ("r3", GF(5), ["triangulate"]),
                          ("weylheis(2)", GF(2), ["two-rec", "--all"])):
        path = os.path.join(tmp, f"sub-{name}-{F}.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps(algebra_to_dict(catalog_build(name, F))))
        outs = []
        for seed in ("0", "12345"):
            env = dict(os.environ, PYTHONHASHSEED=seed)
            proc = subprocess.run([sys.executable, "-m", "leibkit", argv[0], path] + argv[1:],
                                  capture_output=True, env=env, check=False)
            outs.append((proc.returncode, proc.stdout))
        res.check(outs[0] == outs[1], f"{name}/{F} {argv[0]}", "output depends on the hash seed",
                  catalog_build(name, F), " ".join(argv))
    A = catalog_build("weylheis(2)", GF(2))
    for stop in (True, False):
        seq = audit_two_recognizability(A, "exhaustive", cfg.budget, stop_at_first=stop, workers=1)
        par = audit_two_recognizability(A, "exhaustive", cfg.budget, stop_at_first=stop, workers=cfg.workers)
        res.check(seq == par, f"weylheis(2) workers={cfg.workers} stop={stop}",
                  "parallel audit differs from sequential", A, f"two-rec --workers {cfg.workers}")


def group_roundtrip(cfg: SuiteConfig, res: GroupResult):
    """catalog --emit, validate, analyze --json reproduce each entry's booleans,
    and the emitted report re-verifies against the file alone."""
    import json
    import tempfile
    tmp = tempfile.mkdtemp(prefix="leibkit-rt-")
    for e in catalog_entries(fields=cfg.fields):
        path = os.path.join(tmp, "a.json")
        _cli_run(["catalog", "--emit", e.name, "--field", str(e.field), "--out", path])
        code, _ = _cli_run(["validate", path])
        res.check(code == 0, e.label, f"validate exit {code}")
        code, text = _cli_run(["analyze", "--json", path])
        doc = json.loads(text)
        res.check(code == 0 and doc["properties"] == e.expected, e.label,
                  f"booleans {doc['properties']} expected {e.expected}", e.build())
        from .io import load_algebra
        errs = verify_document(load_algebra(path), doc)
        res.check(not errs, e.label, f"report does not re-verify: {errs}", e.build())


def group_scramble_invariance(cfg: SuiteConfig, res: GroupResult):
    for e in catalog_entries(fields=cfg.fields):
        A = e.build()
        for s in range(3):
            B = scramble(A, cfg.scramble_seed + 1000 + s)
            got = analyze(B, cfg.budget).booleans()
            res.check(got == e.expected, f"{e.label}~{s}", f"booleans {got} expected {e.expected}", B)


def group_ideal_enumeration(cfg: SuiteConfig, res: GroupResult):
    for e in catalog_entries(fields=(GF(2), GF(3))):
        A = e.build()
        if A.field.p ** A.dim > 800:
            continue
        fast, brute = enumerate_ideals(A, cfg.budget), enumerate_ideals_bruteforce(A, cfg.budget)
        res.check(fast == brute, e.label, f"{len(fast)} ideals by joins, {len(brute)} by brute force", A, "oracle")


ACCEPTANCE_GROUPS = [
    ("1 theorem4-consistency", group_theorem4, 10.0),
    ("2 flag-soundness", group_theorem2, 10.0),
    ("3 field-dependence", group_field_dependence, 10.0),
    ("4 supersolvable-vs-strong", group_theorem3, 5.0),
    ("5 engel-nil", group_engel, 20.0),
    ("6 two-recognizability-exhaustive", group_theorem5, 20.0),
    ("7 char0-witness", group_corollary6, 5.0),
    ("8 line-submodules", group_lemma1, 5.0),
    ("9 exact-linalg", group_linalg, 10.0),
    ("10 determinism", group_determinism, 20.0),
]

EXTRA_GROUPS = [
    ("roundtrip", group_roundtrip, None),
    ("scramble-invariance", group_scramble_invariance, None),
    ("ideal-enumeration", group_ideal_enumeration, None),
]


def run_group(name, fn: Callable, cfg: SuiteConfig) -> GroupResult:
    res = GroupResult(name)
    t0 = time.perf_counter()
    try:
        fn(cfg, res)
    except Exception as exc:  # a crash is a failure of the group, not of the runner
        res.failures.append(Failure("crash", f"{type(exc).__name__}: {exc}"))
    res.elapsed = time.perf_counter() - t0
    if res.failures and cfg.repro_dir:
        res.repro_files = write_repros(cfg.repro_dir, res)
    return res


def write_repros(directory, res: GroupResult):
    """One algebra file and one shell line per failing instance (first 5)."""
    os.makedirs(directory, exist_ok=True)
    stem = res.name.replace(" ", "_")
    written = []
    for k, f in enumerate(res.failures[:5]):
        note = os.path.join(directory, f"{stem}-{k}.txt")
        lines = [f"# {f.label}: {f.message}"]
        if f.algebra is not None:
            path = os.path.join(directory, f"{stem}-{k}.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(dumps(algebra_to_dict(f.algebra)))
            cmd = f.command.split()
            lines.append("leibkit " + " ".join([cmd[0], path] + cmd[1:]))
            written.append(path)
        with open(note, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        written.append(note)
    return written


def run_theorem_suite(config: SuiteConfig = None, groups=None, extra=True):
    """Run every group; returns (all passed, list of GroupResult)."""
    cfg = config or SuiteConfig()
    selected = list(ACCEPTANCE_GROUPS) + (list(EXTRA_GROUPS) if extra else [])
    if groups:
        selected = [g for g in selected if any(g[0] == s or g[0].split(" ", 1)[-1] == s for s in groups)]
    results = []
    for name, fn, bound in selected:
        res = run_group(name, fn, cfg)
        if bound is not None and res.elapsed > bound:
            res.failures.append(Failure("runtime", f"{res.elapsed:.2f}s exceeds {bound:.0f}s"))
        results.append(res)
    return all(r.passed for r in results), results
