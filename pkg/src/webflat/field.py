"""Exact coefficient fields: the rationals and one quadratic extension.

Elements are `FieldScalar` values `a + b*theta` with `a`, `b` rational
(stdlib `Fraction`, which keeps gcd(|num|, den) = 1 and den >= 1 for us)
and `theta` a fixed root of `theta^2 = u*theta + v`.  The minimal
polynomial lives in a `FieldSpec`; construction rejects reducible ones
(u^2 + 4v a rational square), so every nonzero element has an inverse.

Scalars are immutable and every operation is pure, so values can be
shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch, NotQuadratic

Rational = Fraction


def is_rational_square(q: Fraction) -> bool:
    """True iff q is the square of a rational number."""
    if q < 0:
        return False
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    return rn * rn == q.numerator and rd * rd == q.denominator


@dataclass(frozen=True)
class FieldSpec:
    """Ambient coefficient field: `rationals`, or `quadratic` with
    theta^2 = u*theta + v."""

    kind: str
    u: Fraction | None = None
    v: Fraction | None = None

    def __post_init__(self):
        if self.kind == "rationals":
            if self.u is not None or self.v is not None:
                raise ValueError("rationals take no minimal polynomial")
        elif self.kind == "quadratic":
            object.__setattr__(self, "u", Fraction(self.u))
            object.__setattr__(self, "v", Fraction(self.v))
            if is_rational_square(self.u * self.u + 4 * self.v):
                raise ValueError(
                    "t^2 = %s*t + %s is reducible over the rationals" % (self.u, self.v)
                )
        else:
            raise ValueError("unknown field kind %r" % (self.kind,))

    @property
    def is_quadratic(self) -> bool:
        return self.kind == "quadratic"


RATIONALS = FieldSpec("rationals")


def quadratic_field(u, v) -> FieldSpec:
    return FieldSpec("quadratic", Fraction(u), Fraction(v))


class FieldScalar:
    """An exact element a + b*theta of the ambient field."""

    __slots__ = ("a", "b", "spec")

    def __init__(self, a, b=0, spec: FieldSpec = RATIONALS):
        a = Fraction(a)
        b = Fraction(b)
        if b != 0 and not spec.is_quadratic:
            raise NotQuadratic("theta component requires a quadratic field")
        self.a = a
        self.b = b
        self.spec = spec

    @classmethod
    def theta(cls, spec: FieldSpec) -> "FieldScalar":
        if not spec.is_quadratic:
            raise NotQuadratic("theta only exists in a quadratic field")
        return cls(0, 1, spec)

    @classmethod
    def _fast(cls, a: Fraction, b: Fraction, spec: FieldSpec) -> "FieldScalar":
        """Internal: adopt components already known to be Fractions."""
        scalar = object.__new__(cls)
        scalar.a = a
        scalar.b = b
        scalar.spec = spec
        return scalar

    def _coerce(self, other) -> "FieldScalar":
        if isinstance(other, FieldScalar):
            if other.spec != self.spec:
                raise FieldMismatch("operands live in different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldScalar(other, 0, self.spec)
        return NotImplemented

    # -- ring structure -------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldScalar._fast(self.a + other.a, self.b + other.b, self.spec)

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar._fast(-self.a, -self.b, self.spec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldScalar._fast(self.a - other.a, self.b - other.b, self.spec)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.a, self.b, other.a, other.b
        if b == 0 and d == 0:
            return FieldScalar._fast(a * c, b, self.spec)
        # (a + b*t)(c + d*t) with t^2 reduced via t^2 = u*t + v
        bd = b * d
        return FieldScalar._fast(
            a * c + bd * self.spec.v,
            a * d + b * c + bd * self.spec.u,
            self.spec,
        )

    __rmul__ = __mul__

    def inverse(self) -> "FieldScalar":
        if self.is_zero():
            raise DivisionByZero("zero has no inverse")
        a, b = self.a, self.b
        if b == 0:
            return FieldScalar(1 / a, 0, self.spec)
        n = self.norm_value()
        # conjugate / norm; n != 0 because the minimal polynomial is irreducible
        return FieldScalar((a + b * self.spec.u) / n, -b / n, self.spec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = FieldScalar(1, 0, self.spec)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- field-specific maps --------------------------------------------

    def conjugate(self) -> "FieldScalar":
        """Image under theta -> u - theta, the other root of the minimal
        polynomial."""
        if not self.spec.is_quadratic:
            raise NotQuadratic("conjugation needs a quadratic field")
        return FieldScalar(self.a + self.b * self.spec.u, -self.b, self.spec)

    def norm_value(self) -> Fraction:
        """self * conjugate(self), as a rational: a^2 + a*b*u - b^2*v."""
        if not self.spec.is_quadratic:
            raise NotQuadratic("norm needs a quadratic field")
        a, b = self.a, self.b
        return a * a + a * b * self.spec.u - b * b * self.spec.v

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, FieldScalar):
            return NotImplemented
        return self.spec == other.spec and self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.spec))

    # -- conversions -----------------------------------------------------

    def embed(self, theta_value: complex | None = None) -> complex:
        """Numeric value of the scalar under an embedding theta -> complex."""
        if self.b == 0:
            return complex(self.a)
        return complex(self.a) + complex(self.b) * theta_value

    def __str__(self):
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        if b == 1:
            bt = "t"
        elif b == -1:
            bt = "-t"
        else:
            bt = "%s*t" % (b,)
        if a == 0:
            return bt
        if b > 0:
            return "%s + %s" % (a, bt if b != 1 else "t")
        return "%s - %s" % (a, bt.lstrip("-"))

    def __repr__(self):
        return "FieldScalar(%s)" % (self,)


def field_sqrt(x: FieldScalar) -> FieldScalar | None:
    """An exact square root of x in its own field, or None.

    Rational case: both numerator and denominator must be perfect squares.
    Quadratic case: solve (a + b*theta)^2 = x by reducing to rational
    square-root tests on the two components.
    """
    spec = x.spec
    if x.is_zero():
        return FieldScalar(0, 0, spec)
    if not spec.is_quadratic:
        q = x.a
        if not is_rational_square(q):
            return None
        return FieldScalar(
            Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator)), 0, spec
        )
    u, v = spec.u, spec.v
    d0, d1 = x.a, x.b
    candidates = []
    if d1 == 0:
        # b = 0: a^2 = d0, or 2a + b*u = 0 with a = -b*u/2
        if is_rational_square(d0):
            r = Fraction(math.isqrt(d0.numerator), math.isqrt(d0.denominator))
            candidates.append(FieldScalar(r, 0, spec))
        denom = u * u + 4 * v
        if denom != 0:
            s = 4 * d0 / denom
            if is_rational_square(s):
                b = Fraction(math.isqrt(s.numerator), math.isqrt(s.denominator))
                candidates.append(FieldScalar(-b * u / 2, b, spec))
    else:
        # b != 0; s = b^2 satisfies s^2 (u^2+4v) - s (2*d1*u + 4*d0) + d1^2 = 0
        aa = u * u + 4 * v
        bb = -(2 * d1 * u + 4 * d0)
        cc = d1 * d1
        if aa == 0:
            if bb != 0:
                candidates_s = [-cc / bb]
            else:
                candidates_s = []
        else:
            disc = bb * bb - 4 * aa * cc
            if not is_rational_square(disc):
                candidates_s = []
            else:
                rd = Fraction(math.isqrt(disc.numerator), math.isqrt(disc.denominator))
                candidates_s = [(-bb + rd) / (2 * aa), (-bb - rd) / (2 * aa)]
        for s in candidates_s:
            if s <= 0 or not is_rational_square(s):
                continue
            b = Fraction(math.isqrt(s.numerator), math.isqrt(s.denominator))
            a = (d1 - s * u) / (2 * b)
            candidates.append(FieldScalar(a, b, spec))
    for cand in candidates:
        if cand * cand == x:
            return cand
    return None
