"""Certificate verification.

Deliberately independent of the construction code: operators and products
are rebuilt here straight from the structure constants, and only the exact
linear-algebra primitives are shared.

A triangular certificate carries the basis change P, its inverse, and the
claimed upper-triangular form U_X of every action matrix X.  Verification
checks P·P⁻¹ = I, X·P = P·U_X, that each U_X is upper triangular, and
finally recomputes P⁻¹·X·P from scratch.  Since P is invertible, changing
any single entry of any of these matrices breaks one of the identities.
"""

from __future__ import annotations

from .errors import ParseError
from .io import digest_algebra, matrix_from_json, subspace_from_json
from .linalg import Matrix, Subspace, is_upper_triangular_under


def _columns_matrix(field, cols, n):
    return Matrix.from_columns(field, cols, n)


def adjoint_operators(A):
    """(left, right) multiplication matrices read directly off the table."""
    n, field = A.dim, A.field
    left = [_columns_matrix(field, [A.basis_product(i, j) for j in range(n)], n) for i in range(n)]
    right = [_columns_matrix(field, [A.basis_product(j, i) for j in range(n)], n) for i in range(n)]
    return left, right


def _product(A, x, y):
    field, n = A.field, A.dim
    acc = [0] * n
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            for k, c in enumerate(A.basis_product(i, j)):
                if c:
                    acc[k] += xi * yj * c
    return tuple(field.reduce(a) for a in acc)


def _basis(A, i):
    v = [A.field.zero] * A.dim
    v[i] = A.field.one
    return tuple(v)


def is_upper(M: Matrix) -> bool:
    return all(not any(M.rows[i][:i]) for i in range(M.nrows))


def check_triangular(field, P, Pinv, ops, forms):
    """Returns a list of failure messages (empty means verified)."""
    m = P.nrows
    errs = []
    if P @ Pinv != Matrix.identity(field, m) or Pinv @ P != Matrix.identity(field, m):
        errs.append("basis_inverse is not the inverse of basis_change")
        return errs
    for k, (X, U) in enumerate(zip(ops, forms)):
        if not is_upper(U):
            errs.append(f"form {k} is not upper triangular")
        elif X @ P != P @ U:
            errs.append(f"form {k} does not match its operator under the basis change")
    if not errs and not is_upper_triangular_under(P, ops):
        errs.append("P^-1 X P is not upper triangular")
    return errs


def is_ideal_direct(A, U: Subspace) -> bool:
    for i in range(A.dim):
        b = _basis(A, i)
        for u in U.rows:
            if _product(A, b, u) not in U or _product(A, u, b) not in U:
                return False
    return True


def check_ideal_chain(A, chain):
    errs = []
    n = A.dim
    if len(chain) != n + 1:
        return [f"chain has {len(chain)} terms, expected {n + 1}"]
    for k, U in enumerate(chain):
        if U.dim != k:
            errs.append(f"chain term {k} has dimension {U.dim}")
        if k and not chain[k - 1] <= U:
            errs.append(f"chain term {k - 1} is not contained in term {k}")
        if not is_ideal_direct(A, U):
            errs.append(f"chain term {k} is not an ideal")
    return errs


def _span_products(A, U, V, two_sided):
    vecs = [_product(A, u, v) for u in U.rows for v in V.rows]
    if two_sided:
        vecs += [_product(A, v, u) for u in U.rows for v in V.rows]
    return Subspace.span(A.field, A.dim, vecs)


def check_series(A, series, kind):
    """kind: 'derived', 'lower_central' (of the first term) or 'strong'."""
    if not series:
        return [f"{kind} series is empty"]
    errs = []
    first = series[0]
    if kind == "strong":
        expected = _span_products(A, Subspace.full(A.field, A.dim), Subspace.full(A.field, A.dim), False)
        if first != expected:
            errs.append("strong series does not start at A^2")
    elif first != Subspace.full(A.field, A.dim):
        errs.append(f"{kind} series does not start at A")
    terms = list(series) + [None]
    for k in range(len(series)):
        cur = series[k]
        if kind == "derived":
            nxt = _span_products(A, cur, cur, False)
        else:
            nxt = _span_products(A, first, cur, True)
        follow = terms[k + 1]
        if follow is None:
            if nxt != cur:
                errs.append(f"{kind} series does not stabilize at its last term")
        elif nxt != follow:
            errs.append(f"{kind} series term {k + 1} is wrong")
    return errs


def _forms(field, doc, m, count, key):
    mats = doc.get(key)
    if not isinstance(mats, list) or len(mats) != count:
        raise ParseError(f"'{key}' must list {count} matrices")
    return [matrix_from_json(field, X, (m, m), f"{key}[{k}]") for k, X in enumerate(mats)]


def verify_triangular_doc(A, doc, rep=None):
    field = A.field
    if rep is None:
        left, right = adjoint_operators(A)
        m = A.dim
    else:
        left, right = list(rep.left), list(rep.right)
        m = rep.module_dim
    if doc.get("module_dim") != m:
        return [f"certificate is for a module of dimension {doc.get('module_dim')}, not {m}"]
    P = matrix_from_json(field, doc.get("basis_change"), (m, m), "basis_change")
    Pinv = matrix_from_json(field, doc.get("basis_inverse"), (m, m), "basis_inverse")
    forms = _forms(field, doc, m, A.dim, "left_forms") + _forms(field, doc, m, A.dim, "right_forms")
    return check_triangular(field, P, Pinv, left + right, forms)


def verify_document(A, doc, rep=None, rep_digest=None):
    """Verify a certificate, chain or report document against algebra A.

    Returns a list of failure messages; empty means every claim checked out.
    """
    if not isinstance(doc, dict):
        raise ParseError("certificate must be a JSON object")
    errs = []
    if doc.get("input_digest") != digest_algebra(A):
        errs.append("certificate was issued for a different algebra")
    if doc.get("field") != A.field.to_json() or doc.get("dim") != A.dim:
        errs.append("field or dimension does not match the algebra")
    if errs:
        return errs
    kind = doc.get("kind")
    field = A.field
    if kind == "triangular_certificate":
        module = doc.get("module")
        if module == "adjoint":
            if rep is not None:
                return ["certificate is for the adjoint module, a representation file was given"]
            return verify_triangular_doc(A, doc)
        if rep is None:
            return ["certificate is for a representation; pass the same --module file"]
        if module != {"representation_digest": rep_digest}:
            return ["certificate was issued for a different representation"]
        return verify_triangular_doc(A, doc, rep)
    if kind == "ideal_chain":
        chain = [subspace_from_json(field, A.dim, rows, f"chain[{k}]") for k, rows in enumerate(doc.get("chain", []))]
        return check_ideal_chain(A, chain)
    if kind == "report":
        props = doc.get("properties", {})
        certs = doc.get("certificates", {})

        def series(key):
            return [subspace_from_json(field, A.dim, rows, key) for rows in certs.get(key, [])]

        lcs, ds, ss = series("lower_central_series"), series("derived_series"), series("strong_series")
        errs += check_series(A, lcs, "lower_central")
        errs += check_series(A, ds, "derived")
        errs += check_series(A, ss, "strong")
        if props.get("nilpotent") != (bool(lcs) and lcs[-1].is_zero()):
            errs.append("'nilpotent' disagrees with the lower central series")
        if props.get("solvable") != (bool(ds) and ds[-1].is_zero()):
            errs.append("'solvable' disagrees with the derived series")
        if props.get("strongly_solvable") != (bool(ss) and ss[-1].is_zero()):
            errs.append("'strongly_solvable' disagrees with the series of A^2")
        if props.get("triangulable") != props.get("strongly_solvable"):
            errs.append("'triangulable' and 'strongly_solvable' differ")
        if props.get("supersolvable"):
            tri = certs.get("triangular_basis")
            chain_rows = certs.get("ideal_chain")
            if not isinstance(tri, dict) or chain_rows is None:
                errs.append("supersolvable claimed without a triangular basis and ideal chain")
            else:
                errs += verify_triangular_doc(A, dict(tri, module_dim=A.dim))
                chain = [subspace_from_json(field, A.dim, rows, "ideal_chain") for rows in chain_rows]
                errs += check_ideal_chain(A, chain)
        return errs
    return [f"unknown certificate kind {kind!r}"]
