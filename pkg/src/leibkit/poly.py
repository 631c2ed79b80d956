"""Univariate polynomials with in-field root extraction.

Only linear factors are ever extracted; there is no general factorization.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
import random

from .errors import FieldMismatch, ZeroPolynomial
from .exactfield import FieldSpec

__all__ = ["Polynomial", "field_roots", "splits_linearly"]

# above this modulus roots come from gcd(f, t^p - t) instead of trial evaluation
TRIAL_LIMIT = 4096


class Polynomial:
    """Coefficients lowest degree first, trailing zeros stripped."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs, *, coerce=True):
        cs = [field(c) for c in coeffs] if coerce else list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    def __reduce__(self):
        return (_rebuild_polynomial, (self.field, self.coeffs))

    @classmethod
    def t(cls, field):
        return cls(field, (field.zero, field.one), coerce=False)

    @classmethod
    def constant(cls, field, c):
        return cls(field, (field(c),), coerce=False)

    @classmethod
    def from_roots(cls, field, roots):
        """prod (t - r)^m over ``[(r, m), ...]``."""
        f = cls.constant(field, 1)
        for r, m in roots:
            lin = cls(field, (field.neg(r), field.one), coerce=False)
            for _ in range(m):
                f = f * lin
        return f

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def _check(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __call__(self, x):
        field = self.field
        acc = field.zero
        for c in reversed(self.coeffs):
            acc = field.reduce(acc * x + c)
        return acc

    def evaluate_matrix(self, L):
        from .linalg import Matrix

        field = L.field
        acc = Matrix.zeros(field, L.nrows)
        I = Matrix.identity(field, L.nrows)
        for c in reversed(self.coeffs):
            acc = acc @ L + I.scale(c)
        return acc

    def __add__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        z = self.field.zero
        return Polynomial(self.field, [self.field.add(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)], coerce=False)

    def __neg__(self):
        return Polynomial(self.field, [self.field.neg(c) for c in self.coeffs], coerce=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial(self.field, (), coerce=False)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        red = self.field.reduce
        return Polynomial(self.field, [red(c) for c in out], coerce=False)

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroPolynomial("division by the zero polynomial")
        field = self.field
        rem = list(self.coeffs)
        d = other.degree
        inv_lead = field.inv(other.leading)
        if len(rem) - 1 < d:
            return Polynomial(field, (), coerce=False), self
        quo = [field.zero] * (len(rem) - d)
        for k in range(len(rem) - 1 - d, -1, -1):
            c = field.mul(rem[k + d], inv_lead)
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = field.sub(rem[k + j], field.mul(c, b))
        return Polynomial(field, quo, coerce=False), Polynomial(field, rem[:d], coerce=False)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero():
            return self
        inv = self.field.inv(self.leading)
        return Polynomial(self.field, [self.field.mul(c, inv) for c in self.coeffs], coerce=False)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __str__(self):
        return self.format()

    def format(self, var="t") -> str:
        """Compact text such as ``t^2+1`` or ``t^3-1/2*t``."""
        field = self.field
        if not self.coeffs:
            return "0"
        parts = []
        for d in range(self.degree, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            neg = field.is_rational and c < 0
            mag = field.format(-c if neg else c)
            if d == 0:
                term = mag
            else:
                mono = var if d == 1 else f"{var}^{d}"
                term = mono if mag == "1" else f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append(("-" if neg else "+") + term)
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({self.field}, {self.format()!r})"


def _rebuild_polynomial(field, coeffs):
    return Polynomial(field, coeffs, coerce=False)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _powmod(base: Polynomial, e: int, mod: Polynomial) -> Polynomial:
    result = Polynomial.constant(base.field, 1)
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        e >>= 1
        if e:
            base = (base * base) % mod
    return result


def _candidates_q(f: Polynomial):
    """Rational-root-theorem candidates for f with f(0) != 0, ascending."""
    from sympy import divisors

    den = lcm(*(c.denominator for c in f.coeffs))
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    num_divs = divisors(abs(ints[0]))
    den_divs = divisors(abs(ints[-1]))
    cands = {Fraction(a, b) for a in num_divs for b in den_divs}
    cands |= {-c for c in cands}
    return sorted(cands)


def _roots_large_prime(f: Polynomial):
    """Distinct roots via gcd(f, t^p - t) and equal-degree splitting."""
    field = f.field
    p = field.p
    t = Polynomial.t(field)
    g = poly_gcd(f, _powmod(t, p, f) - t)
    rng = random.Random(0)
    out = []
    stack = [g]
    while stack:
        h = stack.pop()
        if h.degree <= 0:
            continue
        if h.degree == 1:
            out.append(field.neg(field.mul(h.coeffs[0], field.inv(h.coeffs[1]))))
            continue
        while True:
            a = rng.randrange(p)
            shifted = Polynomial(field, (a, 1))
            w = poly_gcd(h, _powmod(shifted, (p - 1) // 2, h) - Polynomial.constant(field, 1))
            if 0 < w.degree < h.degree:
                stack.extend([w, h // w])
                break
    return sorted(out)


def _deflate(f: Polynomial, r):
    """Divide out (t - r) as often as it divides f."""
    field = f.field
    lin = Polynomial(field, (field.neg(r), field.one), coerce=False)
    m = 0
    while f.degree >= 1 and not f(r):
        f = f // lin
        m += 1
    return f, m


def _roots_and_remainder(f: Polynomial):
    if f.is_zero():
        raise ZeroPolynomial("roots of the zero polynomial")
    field = f.field
    roots = []
    # root 0 first: strip low-order zero coefficients
    k = 0
    while k < len(f.coeffs) and not f.coeffs[k]:
        k += 1
    rest = Polynomial(field, f.coeffs[k:], coerce=False)
    if field.is_rational:
        cands = _candidates_q(rest) if rest.degree >= 1 else []
    elif field.p <= TRIAL_LIMIT:
        cands = [x for x in range(1, field.p)] if rest.degree >= 1 else []
    else:
        cands = _roots_large_prime(rest) if rest.degree >= 1 else []
    found = []
    if k:
        found.append((field.zero, k))
    for c in cands:
        if rest.degree < 1:
            break
        rest, m = _deflate(rest, c)
        if m:
            found.append((c, m))
    found.sort(key=lambda rm: field.sort_key(rm[0]))
    return found, rest


def field_roots(f: Polynomial):
    """Roots of f lying in its base field, as ascending ``[(root, multiplicity)]``."""
    return _roots_and_remainder(f)[0]


def roots(f: Polynomial):
    return [r for r, _ in field_roots(f)]


def splits_linearly(f: Polynomial):
    """``(True, [(root, mult), ...])`` if f is a product of linear factors
    over its field, else ``(False, remainder)`` where the remainder is the
    monic factor left after removing every linear factor."""
    found, rest = _roots_and_remainder(f)
    if rest.degree <= 0:
        return True, found
    return False, rest.monic()
