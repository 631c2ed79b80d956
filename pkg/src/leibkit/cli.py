"""Command-line interface.

Exit codes: 0 success (analysis outcomes are answers, never failures),
1 negative result for validate/triangulate/verify/chain, 2 invalid input,
3 internal theorem violation, 4 budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import sys

from . import __version__
from .algebra import Algebra, check_leibniz_identity, derived_subalgebra, is_ideal, is_nilpotent
from .catalog import (
    DEFAULT_NAMES,
    catalog_build,
    enumerate_ideals,
    enumerate_ideals_bruteforce,
    expected_booleans,
    oracle_nil_elementwise,
    oracle_supersolvable,
    supported_fields,
)
from .certcheck import verify_document
from .decide import ChainTail, NonSplitting, analyze, construct_flag, is_supersolvable, module_triangulation_check
from .errors import (
    BudgetExhausted,
    FieldUnsupported,
    LeibkitError,
    ModeUnsupportedForField,
    ParseError,
    TheoremViolation,
    UnknownEntry,
)
from .exactfield import FieldSpec
from .io import (
    algebra_to_dict,
    canonical_json,
    dumps,
    header,
    load_algebra,
    load_representation,
    matrix_to_json,
    read_json,
    representation_to_dict,
    subspace_to_json,
)
from .linalg import inverse
from .modrep import adjoint_representation, check_bimodule_axioms, nil_chain
from .recognize import audit_two_recognizability

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_THEOREM, EXIT_BUDGET = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _out(text):
    sys.stdout.write(text)


def _err(text):
    sys.stderr.write(text.rstrip("\n") + "\n")


def _load(path, check=True) -> Algebra:
    A = load_algebra(path)
    if check:
        bad = check_leibniz_identity(A)
        if bad:
            i, j, k = bad[0][:3]
            raise CliError(EXIT_INPUT, f"{path}: not a Leibniz algebra; identity fails at "
                                       f"({A.names[i]}, {A.names[j]}, {A.names[k]}); run 'validate' for the full list")
    return A


def _load_module(A, spec):
    """(representation or None for the adjoint, digest of the module file)."""
    if spec in (None, "adjoint"):
        return None, None
    R = load_representation(A, spec)
    bad = check_bimodule_axioms(R)
    if bad:
        name, i, j = bad[0]
        raise CliError(EXIT_INPUT, f"{spec}: bimodule axiom {name} fails for basis pair ({i}, {j})")
    digest = "sha256:" + hashlib.sha256(canonical_json(representation_to_dict(R)).encode()).hexdigest()
    return R, digest


def _series(seq):
    return [subspace_to_json(U) for U in seq]


def _witness(A, w):
    if w is None:
        return None
    if isinstance(w, ChainTail):
        return {"type": "chain_tail", "tail": subspace_to_json(w.tail)}
    if isinstance(w, NonSplitting):
        return {
            "type": "non_split_minimal_polynomial",
            "operator": f"{w.side}_{A.names[w.basis_index]}",
            "minimal_polynomial": w.minimal_polynomial.format(),
            "polynomial": w.remainder.format(),
        }
    raise TypeError(f"unexpected witness {w!r}")


def _witness_text(A, w):
    if isinstance(w, ChainTail):
        return f"chain stabilizes at a nonzero subspace of dimension {w.tail.dim}"
    return (f"{w.side}_{A.names[w.basis_index]} has minimal polynomial {w.minimal_polynomial.format()}; "
            f"factor {w.remainder.format()} has no root in {A.field}")


def _triangular_payload(P, ops_left, ops_right):
    Pinv = inverse(P)
    return {
        "basis_change": matrix_to_json(P),
        "basis_inverse": matrix_to_json(Pinv),
        "left_forms": [matrix_to_json(Pinv @ X @ P) for X in ops_left],
        "right_forms": [matrix_to_json(Pinv @ X @ P) for X in ops_right],
    }


def report_document(A, rep) -> dict:
    doc = header(A, "report")
    doc["names"] = list(A.names)
    doc["properties"] = rep.booleans()
    certs = {
        "lower_central_series": _series(rep.lower_central_series),
        "derived_series": _series(rep.derived_series),
        "strong_series": _series(rep.strong_series),
        "nil_chain": _series(rep.nil_chain),
        "triangular_basis": None,
        "ideal_chain": None,
    }
    if rep.triangular_basis is not None:
        R = adjoint_representation(A)
        certs["triangular_basis"] = _triangular_payload(rep.triangular_basis.basis_change, R.left, R.right)
        certs["ideal_chain"] = _series(rep.ideal_chain)
    doc["certificates"] = certs
    tail = None if rep.strongly_solvable else {"type": "chain_tail", "tail": subspace_to_json(rep.strong_series[-1])}
    doc["witnesses"] = {
        "strongly_solvable": tail,
        "triangulable": None if rep.triangulable else {"type": "chain_tail", "tail": subspace_to_json(rep.nil_chain[-1])},
        "supersolvable": _witness(A, rep.supersolvable_witness),
    }
    return doc


# -- subcommands -------------------------------------------------------------

def cmd_validate(args):
    A = _load(args.path, check=False)
    bad = check_leibniz_identity(A)
    if not bad:
        _out(f"valid: Leibniz algebra of dimension {A.dim} over {A.field}\n")
        return EXIT_OK
    _out(f"invalid: Leibniz identity a(bc) = (ab)c + b(ac) fails on {len(bad)} basis triple(s) (a, b, c)\n")
    fmt = A.field.format
    for i, j, k, lhs, rhs in bad:
        _out(f"  ({A.names[i]}, {A.names[j]}, {A.names[k]}): lhs [{', '.join(map(fmt, lhs))}]"
             f" rhs [{', '.join(map(fmt, rhs))}]\n")
    return EXIT_NEGATIVE


def cmd_analyze(args):
    A = _load(args.path)
    rep = analyze(A, budget=args.budget)
    if args.json:
        _out(dumps(report_document(A, rep)))
        return EXIT_OK
    _out(f"algebra: dimension {A.dim} over {A.field}, basis {' '.join(A.names)}\n")
    for key, val in rep.booleans().items():
        _out(f"{key}: {'true' if val else 'false'}\n")
    if rep.supersolvable:
        cols = rep.triangular_basis.basis_change.columns()
        _out("triangularizing basis (columns): " + "; ".join(
            "(" + ", ".join(A.field.format(x) for x in c) + ")" for c in cols) + "\n")
    else:
        _out(f"not supersolvable: {_witness_text(A, rep.supersolvable_witness)}\n")
    return EXIT_OK


def _triangulate_doc(A, R, digest, budget):
    Rm = adjoint_representation(A) if R is None else R
    ok, witness = module_triangulation_check(Rm)
    if not ok:
        return False, witness, None
    cert = construct_flag(Rm, budget=budget, checked=True)
    doc = header(A, "triangular_certificate")
    doc["module"] = "adjoint" if R is None else {"representation_digest": digest}
    doc["module_dim"] = Rm.module_dim
    doc.update(_triangular_payload(cert.basis_change, Rm.left, Rm.right))
    return True, None, doc


def cmd_triangulate(args):
    A = _load(args.path)
    R, digest = _load_module(A, args.module)
    ok, witness, doc = _triangulate_doc(A, R, digest, args.budget)
    if ok:
        _out(dumps(doc))
        return EXIT_OK
    out = header(A, "not_triangulable")
    out["module"] = "adjoint" if R is None else {"representation_digest": digest}
    out["witness"] = _witness(A, witness)
    _out(dumps(out))
    _err(f"not triangulable over {A.field}: {_witness_text(A, witness)}")
    return EXIT_NEGATIVE


def cmd_verify(args):
    A = _load(args.path)
    R, digest = _load_module(A, args.module)
    errs = verify_document(A, read_json(args.cert), R, digest)
    if errs:
        _out("rejected\n" + "".join(f"  {e}\n" for e in errs))
        return EXIT_NEGATIVE
    _out("verified\n")
    return EXIT_OK


def cmd_chain(args):
    A = _load(args.path)
    ok, data = is_supersolvable(A, budget=args.budget)
    if not ok:
        out = header(A, "not_supersolvable")
        out["witness"] = _witness(A, data)
        _out(dumps(out))
        _err(f"not supersolvable over {A.field}: {_witness_text(A, data)}")
        return EXIT_NEGATIVE
    doc = header(A, "ideal_chain")
    doc["chain"] = _series(data)
    _out(dumps(doc))
    return EXIT_OK


def _vec(field, v):
    return [field.format(field(x)) for x in v]


def audit_document(A, r) -> dict:
    doc = header(A, "two_rec_audit")
    doc.update({
        "mode": r.mode,
        "seed": r.seed,
        "height": r.height,
        "pairs_total": r.pairs_total,
        "pairs_checked": r.pairs_checked,
        "complete": r.complete,
        "all_pairs_triangulable": r.all_pairs_triangulable,
        "distinct_subalgebras": r.distinct_subalgebras,
        "witness_count": r.witness_count,
        "algebra_solvable": r.algebra_solvable,
        "algebra_triangulable": r.algebra_triangulable,
        "theorem5": r.theorem5,
        "corollary6": r.corollary6,
        "theorem_consistency": r.theorem_consistency,
    })
    w = r.witness
    doc["witness"] = None if w is None else {
        "index": w.index,
        "x": _vec(A.field, w.x),
        "y": _vec(A.field, w.y),
        "subalgebra": subspace_to_json(w.subalgebra),
        "tail": subspace_to_json(w.tail),
    }
    return doc


def cmd_two_rec(args):
    A = _load(args.path)
    budget = args.budget
    r = audit_two_recognizability(A, args.mode, budget, seed=args.seed, samples=args.samples,
                                  height=args.height, stop_at_first=not args.all, workers=args.workers)
    _out(dumps(audit_document(A, r)))
    if not r.theorem_consistency:
        _err("theorem violation: audit outcome contradicts the recognizability statement")
        return EXIT_THEOREM
    return EXIT_OK


def cmd_catalog(args):
    if args.list:
        for name in DEFAULT_NAMES:
            fields = ", ".join(str(F) for F in supported_fields(name))
            _out(f"{name}: {fields}\n")
        return EXIT_OK
    if not args.emit:
        raise CliError(EXIT_INPUT, "catalog: give --emit NAME or --list")
    field = FieldSpec.from_string(args.field)
    A = catalog_build(args.emit, field)
    text = dumps(algebra_to_dict(A))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        _out(text)
    return EXIT_OK


def oracle_document(A, budget=None) -> dict:
    """Decision procedures against brute-force oracles on a finite-field algebra."""
    doc = header(A, "oracle_comparison")
    sup, _ = is_supersolvable(A, budget=budget)
    osup, _ = oracle_supersolvable(A, budget=budget)
    ideals = enumerate_ideals(A, budget=budget)
    brute = enumerate_ideals_bruteforce(A, budget=budget)
    R = adjoint_representation(A)
    nil_rows = []
    for I in ideals:
        _, fast = nil_chain(R, I)
        elem = oracle_nil_elementwise(R, I, budget=budget)
        nilp = is_nilpotent(A, I)
        nil_rows.append({"ideal": subspace_to_json(I), "nil_chain": fast, "elementwise": elem, "nilpotent": nilp,
                         "agree": fast == elem == nilp})
    doc["supersolvable"] = {"decision": sup, "oracle": osup, "agree": sup == osup}
    doc["ideals"] = {"join_closure": len(ideals), "bruteforce": len(brute), "agree": ideals == brute}
    doc["nil"] = nil_rows
    a2 = derived_subalgebra(A)
    doc["derived_subalgebra_is_ideal"] = is_ideal(A, a2)
    doc["all_agree"] = (doc["supersolvable"]["agree"] and doc["ideals"]["agree"]
                        and all(row["agree"] for row in nil_rows) and doc["derived_subalgebra_is_ideal"])
    return doc


def cmd_oracle(args):
    A = _load(args.path)
    doc = oracle_document(A, args.budget)
    _out(dumps(doc))
    if not doc["all_agree"]:
        _err("oracle disagreement")
        return EXIT_THEOREM
    return EXIT_OK


def cmd_expected(args):
    field = FieldSpec.from_string(args.field)
    _out(dumps(expected_booleans(args.name, field)))
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    ap = argparse.ArgumentParser(prog="leibkit", description="Exact decision procedures for Leibniz algebras.")
    ap.add_argument("--version", action="version", version=f"leibkit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a structure-constant file and check the Leibniz identity")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="decide the five properties, with certificates")
    p.add_argument("path")
    p.add_argument("--json", action="store_true", help="emit the full report as JSON")
    p.add_argument("--budget", type=_positive)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("triangulate", help="emit an upper-triangularizing basis certificate")
    p.add_argument("path")
    p.add_argument("--module", default="adjoint", help="'adjoint' or a representation file")
    p.add_argument("--budget", type=_positive)
    p.set_defaults(func=cmd_triangulate)

    p = sub.add_parser("verify", help="check a certificate, chain or report independently")
    p.add_argument("path")
    p.add_argument("cert")
    p.add_argument("--module", default="adjoint")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chain", help="emit a supersolvable ideal chain")
    p.add_argument("path")
    p.add_argument("--budget", type=_positive)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("two-rec", help="audit 2-generated subalgebras for triangulability")
    p.add_argument("path")
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--samples", type=_positive, default=200)
    p.add_argument("--height", type=_positive, default=3)
    p.add_argument("--budget", type=_positive)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--all", action="store_true", help="scan every pair instead of stopping at the first witness")
    p.set_defaults(func=cmd_two_rec)

    p = sub.add_parser("catalog", help="list or emit catalog algebras")
    p.add_argument("--list", action="store_true")
    p.add_argument("--emit", metavar="NAME")
    p.add_argument("--field", default="Q", help="Q, GF(p) or p")
    p.add_argument("--out")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("expected", help="print the hand-derived booleans of a catalog entry")
    p.add_argument("name")
    p.add_argument("--field", default="Q")
    p.set_defaults(func=cmd_expected)

    p = sub.add_parser("oracle", help="compare decisions with brute-force oracles (finite fields)")
    p.add_argument("path")
    p.add_argument("--budget", type=_positive)
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "budget", None) is None and hasattr(args, "budget"):
            from .config import default_budget
            args.budget = default_budget()
        return args.func(args)
    except CliError as exc:
        _err(f"error: {exc}")
        return exc.code
    except BudgetExhausted as exc:
        _err(f"budget exhausted: {exc}")
        return EXIT_BUDGET
    except TheoremViolation as exc:
        _err(f"theorem violation: {exc}")
        return EXIT_THEOREM
    except UnknownEntry as exc:
        _err(f"invalid input: unknown catalog entry {exc.args[0]!r}")
        return EXIT_INPUT
    except (ParseError, FieldUnsupported, ModeUnsupportedForField) as exc:
        _err(f"invalid input: {exc}")
        return EXIT_INPUT
    except LeibkitError as exc:
        _err(f"invalid input: {exc}")
        return EXIT_INPUT
    except ValueError as exc:
        _err(f"invalid input: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
