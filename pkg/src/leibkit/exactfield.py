"""Exact scalars over Q and GF(p).

Raw scalar values are plain Python objects: ``Fraction`` over the rationals,
``int`` in ``range(p)`` over a prime field.  Linear-algebra code works on raw
values and calls :meth:`FieldSpec.reduce` after ring operations, which keeps
the inner loops free of wrapper overhead.  :class:`Scalar` is the public
field-tagged value type used at API boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
import re

from .errors import DivisionByZero, FieldMismatch, ParseError

__all__ = ["FieldSpec", "Q", "GF", "Scalar", "scalar_arith", "scalar_inverse", "is_prime"]

MAX_PRIME = 2**31

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p == 0``) or the prime field GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0:
            if not isinstance(self.p, int) or not 2 <= self.p <= MAX_PRIME:
                raise ValueError(f"prime modulus out of range: {self.p!r}")
            if not is_prime(self.p):
                raise ValueError(f"modulus {self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def kind(self) -> str:
        return "Rationals" if self.p == 0 else "PrimeField"

    def __str__(self):
        return "Q" if self.p == 0 else f"GF({self.p})"

    # -- raw value arithmetic -------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def reduce(self, a):
        """Canonicalize the result of integer/rational ring operations."""
        if self.p:
            return a % self.p
        return a if isinstance(a, Fraction) else Fraction(a)

    def __call__(self, value):
        """Coerce an int, Fraction, Scalar or scalar string to a raw value."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value.field} scalar used over {self}")
            return value.value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            value = int(value)
        if self.p:
            if isinstance(value, Fraction):
                if value.denominator % self.p == 0:
                    raise DivisionByZero(f"{value} has no image in {self}")
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        return Fraction(value)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        if self.p:
            return _egcd_inverse(a, self.p)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def sort_key(self, a):
        """Ascending canonical order: numeric value over Q, residue over GF(p)."""
        return a

    def elements(self):
        if not self.p:
            raise ValueError("Q is infinite")
        return range(self.p)

    # -- text form -----------------------------------------------------------

    def parse(self, text: str):
        m = _RATIONAL_RE.match(str(text))
        if not m:
            raise ParseError(f"not a scalar: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        if self.p:
            if den % self.p == 0:
                raise ParseError(f"denominator of {text!r} vanishes in {self}")
            return num * pow(den, -1, self.p) % self.p
        return Fraction(num, den)

    def format(self, a) -> str:
        if self.p:
            return str(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def to_json(self):
        return "Q" if self.p == 0 else {"p": self.p}

    @classmethod
    def from_json(cls, obj) -> "FieldSpec":
        if obj == "Q":
            return Q
        if isinstance(obj, dict) and set(obj) == {"p"} and isinstance(obj["p"], int):
            try:
                return cls(obj["p"])
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        raise ParseError(f"bad field specification: {obj!r}")

    @classmethod
    def from_string(cls, text: str) -> "FieldSpec":
        """Accepts ``Q``, ``GF(p)``, ``GF p``, ``p=5`` or a bare prime."""
        t = text.strip().replace(" ", "")
        if t.upper() in ("Q", "QQ"):
            return Q
        m = re.fullmatch(r"(?:GF\(?|p=)?(\d+)\)?", t, flags=re.IGNORECASE)
        if not m:
            raise ParseError(f"bad field specification: {text!r}")
        try:
            return cls(int(m.group(1)))
        except ValueError as exc:
            raise ParseError(str(exc)) from None


def _egcd_inverse(a: int, p: int) -> int:
    old_r, r = a % p, p
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise DivisionByZero(f"{a} is not invertible mod {p}")
    return old_s % p


Q = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


@total_ordering
class Scalar:
    """An immutable field element tagged with its field."""

    __slots__ = ("field", "value")

    def __init__(self, value, field: FieldSpec = Q):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field(value))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar, (self.value, self.field))

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        return self.field(other)

    def _wrap(self, raw):
        return Scalar(raw, self.field)

    def __add__(self, other):
        return self._wrap(self.field.add(self.value, self._other(other)))

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.value, self._other(other)))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.value, self._other(other)))

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.value, self._other(other)))

    def __radd__(self, other):
        return self + other

    def __rmul__(self, other):
        return self * other

    def __rsub__(self, other):
        return self._wrap(self.field.sub(self._other(other), self.value))

    def __rtruediv__(self, other):
        return self._wrap(self.field.div(self._other(other), self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return NotImplemented

    def __lt__(self, other):
        return self.field.sort_key(self.value) < self.field.sort_key(self._other(other))

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({str(self)!r}, {self.field})"

    @property
    def numerator(self):
        return self.value.numerator if self.field.is_rational else self.value

    @property
    def denominator(self):
        return self.value.denominator if self.field.is_rational else 1


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def scalar_inverse(a: Scalar) -> Scalar:
    return a.inverse()
