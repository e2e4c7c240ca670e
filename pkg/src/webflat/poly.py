"""Sparse multivariate polynomials over an exact coefficient field.

Representation
--------------
A polynomial is a map from exponent vectors to nonzero `FieldScalar`
coefficients.  The variable tuple is fixed once and for all:

    (x, y, z, p, q, t)

so an exponent vector is a 6-tuple of nonnegative ints and the zero
polynomial is the empty map.  Identical polynomials always have identical
term maps, which makes equality, hashing and rendering trivial.

The monomial order used everywhere (leading coefficients, gcd
normalization, rendering) is graded lexicographic with x > y > z > p > q > t.

Algorithms
----------
* gcd: recursive subresultant polynomial-remainder-sequence.  The
  recursion variable is the one appearing in the most terms; monomial
  content and content/primitive-part splitting are pulled out first.
* determinant: cofactor expansion along the first row with memoization
  on the active column set (matrices here never exceed 6x6).
* `cubic_resultant` is the fixed 5x5 determinant deciding whether a cubic
  in the slope variable has a repeated root; its exact row layout is part
  of the curvature pipeline's contract and must not be "simplified".

Everything is immutable and pure.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    BadEmbedding,
    DivisionByZero,
    FieldMismatch,
    NotSquare,
    ZeroPolynomial,
)
from .field import RATIONALS, FieldScalar, FieldSpec

VARIABLES = ("x", "y", "z", "p", "q", "t")
NVARS = len(VARIABLES)
VARIABLE_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_ZERO_EXP = (0,) * NVARS


def _grlex_key(exponent):
    return (sum(exponent), exponent)


def _as_coefficient(value, spec: FieldSpec) -> FieldScalar:
    if isinstance(value, FieldScalar):
        if value.spec != spec:
            raise FieldMismatch("coefficient from a different field")
        return value
    return FieldScalar(value, 0, spec)


class MPoly:
    """Immutable sparse polynomial in the fixed six variables."""

    __slots__ = ("spec", "terms")

    def __init__(self, terms=None, spec: FieldSpec = RATIONALS):
        cleaned = {}
        if terms:
            for exponent, coeff in terms.items():
                coeff = _as_coefficient(coeff, spec)
                if not coeff.is_zero():
                    cleaned[tuple(exponent)] = coeff
        self.spec = spec
        self.terms = cleaned

    # -- constructors ----------------------------------------------------

    @classmethod
    def _raw(cls, terms: dict, spec: FieldSpec) -> "MPoly":
        """Internal: adopt an already-canonical term map without copying."""
        poly = object.__new__(cls)
        poly.spec = spec
        poly.terms = terms
        return poly

    @classmethod
    def zero(cls, spec: FieldSpec = RATIONALS) -> "MPoly":
        return cls._raw({}, spec)

    @classmethod
    def one(cls, spec: FieldSpec = RATIONALS) -> "MPoly":
        return cls.constant(1, spec)

    @classmethod
    def constant(cls, value, spec: FieldSpec = RATIONALS) -> "MPoly":
        coeff = _as_coefficient(value, spec)
        if coeff.is_zero():
            return cls.zero(spec)
        return cls._raw({_ZERO_EXP: coeff}, spec)

    @classmethod
    def variable(cls, name: str, spec: FieldSpec = RATIONALS) -> "MPoly":
        exponent = [0] * NVARS
        exponent[VARIABLE_INDEX[name]] = 1
        return cls._raw({tuple(exponent): FieldScalar(1, 0, spec)}, spec)

    @classmethod
    def monomial(cls, exponent, coeff=1, spec: FieldSpec = RATIONALS) -> "MPoly":
        coeff = _as_coefficient(coeff, spec)
        if coeff.is_zero():
            return cls.zero(spec)
        return cls._raw({tuple(exponent): coeff}, spec)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def is_one(self) -> bool:
        coeff = self.terms.get(_ZERO_EXP)
        return len(self.terms) == 1 and coeff is not None and coeff.is_one()

    def constant_value(self) -> FieldScalar:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(_ZERO_EXP, FieldScalar(0, 0, self.spec))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        i = VARIABLE_INDEX[var]
        return max(e[i] for e in self.terms)

    def variables(self) -> frozenset:
        present = set()
        for exponent in self.terms:
            for i, e in enumerate(exponent):
                if e:
                    present.add(VARIABLES[i])
        return frozenset(present)

    def leading_monomial(self):
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading monomial")
        return max(self.terms, key=_grlex_key)

    def leading_coefficient(self) -> FieldScalar:
        return self.terms[self.leading_monomial()]

    def monic(self) -> "MPoly":
        """Divide by the leading coefficient (zero stays zero)."""
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        if lc.is_one():
            return self
        inv = lc.inverse()
        return MPoly._raw({e: c * inv for e, c in self.terms.items()}, self.spec)

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "MPoly"):
        if self.spec != other.spec:
            raise FieldMismatch("polynomials over different fields")

    def __add__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for exponent, coeff in other.terms.items():
            have = out.get(exponent)
            total = coeff if have is None else have + coeff
            if total.is_zero():
                out.pop(exponent, None)
            else:
                out[exponent] = total
        return MPoly._raw(out, self.spec)

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for exponent, coeff in other.terms.items():
            have = out.get(exponent)
            total = -coeff if have is None else have - coeff
            if total.is_zero():
                out.pop(exponent, None)
            else:
                out[exponent] = total
        return MPoly._raw(out, self.spec)

    def __neg__(self):
        return MPoly._raw({e: -c for e, c in self.terms.items()}, self.spec)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldScalar)):
            coeff = _as_coefficient(other, self.spec)
            if coeff.is_zero():
                return MPoly.zero(self.spec)
            return MPoly._raw(
                {e: c * coeff for e, c in self.terms.items()}, self.spec
            )
        if not isinstance(other, MPoly):
            return NotImplemented
        self._check(other)
        if not self.terms or not other.terms:
            return MPoly.zero(self.spec)
        # iterate the shorter operand on the outside
        left, right = self.terms, other.terms
        if len(left) > len(right):
            left, right = right, left
        out = {}
        for e1, c1 in left.items():
            for e2, c2 in right.items():
                exponent = (
                    e1[0] + e2[0],
                    e1[1] + e2[1],
                    e1[2] + e2[2],
                    e1[3] + e2[3],
                    e1[4] + e2[4],
                    e1[5] + e2[5],
                )
                coeff = c1 * c2
                have = out.get(exponent)
                out[exponent] = coeff if have is None else have + coeff
        return MPoly._raw(
            {e: c for e, c in out.items() if not c.is_zero()}, self.spec
        )

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = MPoly.one(self.spec)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base if exponent > 1 else base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus ----------------------------------------------------------

    def derivative(self, var: str) -> "MPoly":
        """Formal partial derivative with respect to one variable."""
        i = VARIABLE_INDEX[var]
        out = {}
        for exponent, coeff in self.terms.items():
            e = exponent[i]
            if e == 0:
                continue
            lowered = exponent[:i] + (e - 1,) + exponent[i + 1 :]
            out[lowered] = coeff * e
        return MPoly._raw(out, self.spec)

    # -- substitution --------------------------------------------------------

    def substitute(self, bindings: dict) -> "MPoly":
        """Replace every bound variable by its image, simultaneously.

        All images are read against the original polynomial, so
        {p: x, x: -p} swaps rather than chains.
        """
        if not bindings:
            return self
        images = {}
        for name, image in bindings.items():
            if not isinstance(image, MPoly):
                image = MPoly.constant(image, self.spec)
            else:
                self._check(image)
            images[VARIABLE_INDEX[name]] = image
        powers = {i: [MPoly.one(self.spec), image] for i, image in images.items()}

        def power(i, e):
            cache = powers[i]
            while len(cache) <= e:
                cache.append(cache[-1] * cache[1])
            return cache[e]

        result = MPoly.zero(self.spec)
        for exponent, coeff in self.terms.items():
            untouched = list(exponent)
            factors = []
            for i in images:
                e = exponent[i]
                untouched[i] = 0
                if e:
                    factors.append(power(i, e))
            term = MPoly.monomial(tuple(untouched), coeff, self.spec)
            for factor in factors:
                term = term * factor
            result = result + term
        return result

    def coefficients_in(self, var: str) -> dict:
        """View as univariate in `var`: maps each degree to an MPoly free
        of `var`."""
        i = VARIABLE_INDEX[var]
        split = {}
        for exponent, coeff in self.terms.items():
            e = exponent[i]
            stripped = exponent[:i] + (0,) + exponent[i + 1 :]
            split.setdefault(e, {})[stripped] = coeff
        return {e: MPoly._raw(terms, self.spec) for e, terms in split.items()}

    def coefficient(self, var: str, power: int) -> "MPoly":
        """Coefficient of var**power, as a polynomial free of `var`."""
        i = VARIABLE_INDEX[var]
        out = {}
        for exponent, coeff in self.terms.items():
            if exponent[i] == power:
                out[exponent[:i] + (0,) + exponent[i + 1 :]] = coeff
        return MPoly._raw(out, self.spec)

    # -- evaluation ------------------------------------------------------------

    def evaluate_scalar(self, point: dict) -> FieldScalar:
        """Exact evaluation at a point given as {variable: FieldScalar}."""
        values = {}
        for name, value in point.items():
            values[VARIABLE_INDEX[name]] = _as_coefficient(value, self.spec)
        total = FieldScalar(0, 0, self.spec)
        for exponent, coeff in self.terms.items():
            term = coeff
            for i, e in enumerate(exponent):
                if e == 0:
                    continue
                if i not in values:
                    raise KeyError("no value supplied for %s" % VARIABLES[i])
                term = term * values[i] ** e
            total = total + term
        return total

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return "MPoly(%s)" % (self,)


# -- rendering ------------------------------------------------------------------


def _render_monomial(exponent) -> str:
    parts = []
    for name, e in zip(VARIABLES, exponent):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append("%s^%d" % (name, e))
    return "*".join(parts)


def render_poly(f: MPoly) -> str:
    """Canonical text form: terms in descending graded-lex order.

    The output re-parses to an equal polynomial under the CLI grammar.
    """
    if not f.terms:
        return "0"
    chunks = []
    for exponent in sorted(f.terms, key=_grlex_key, reverse=True):
        coeff = f.terms[exponent]
        mono = _render_monomial(exponent)
        if coeff.is_rational():
            negative = coeff.a < 0
            mag = -coeff.a if negative else coeff.a
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = "%s*%s" % (mag, mono)
        else:
            negative = False
            body = "(%s)" % (coeff,) if not mono else "(%s)*%s" % (coeff, mono)
        chunks.append((negative, body))
    negative, body = chunks[0]
    text = ("-" if negative else "") + body
    for negative, body in chunks[1:]:
        text += (" - " if negative else " + ") + body
    return text


# -- exact division and gcd ------------------------------------------------------


def _monomial_divides(e1, e2) -> bool:
    return all(a <= b for a, b in zip(e1, e2))


def try_exact_divide(f: MPoly, g: MPoly):
    """f / g when the division is exact, else None."""
    if g.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if f.is_zero():
        return MPoly.zero(f.spec)
    f._check(g)
    lm_g = g.leading_monomial()
    lc_g_inv = g.terms[lm_g].inverse()
    quotient = {}
    rest = dict(f.terms)
    while rest:
        lm_r = max(rest, key=_grlex_key)
        if not _monomial_divides(lm_g, lm_r):
            return None
        exponent = tuple(a - b for a, b in zip(lm_r, lm_g))
        coeff = rest[lm_r] * lc_g_inv
        quotient[exponent] = coeff
        for e2, c2 in g.terms.items():
            e = tuple(a + b for a, b in zip(exponent, e2))
            have = rest.get(e)
            total = -(coeff * c2) if have is None else have - coeff * c2
            if total.is_zero():
                rest.pop(e, None)
            else:
                rest[e] = total
    return MPoly._raw(quotient, f.spec)


def exact_divide(f: MPoly, g: MPoly) -> MPoly:
    quotient = try_exact_divide(f, g)
    if quotient is None:
        raise ValueError("inexact polynomial division")
    return quotient


def divides(g: MPoly, f: MPoly) -> bool:
    """True iff g divides f exactly (g nonzero)."""
    return try_exact_divide(f, g) is not None


def _monomial_content(f: MPoly):
    iters = iter(f.terms)
    lowest = list(next(iters))
    for exponent in iters:
        for i, e in enumerate(exponent):
            if e < lowest[i]:
                lowest[i] = e
    return tuple(lowest)


def _shift_down(f: MPoly, shift) -> MPoly:
    if not any(shift):
        return f
    return MPoly._raw(
        {tuple(a - b for a, b in zip(e, shift)): c for e, c in f.terms.items()},
        f.spec,
    )


def _univariate(f: MPoly, var_index: int) -> dict:
    split = {}
    for exponent, coeff in f.terms.items():
        e = exponent[var_index]
        stripped = exponent[:var_index] + (0,) + exponent[var_index + 1 :]
        split.setdefault(e, {})[stripped] = coeff
    return {e: MPoly._raw(terms, f.spec) for e, terms in split.items()}


def _from_univariate(coeffs: dict, var_index: int, spec: FieldSpec) -> MPoly:
    out = {}
    for e, poly in coeffs.items():
        for exponent, coeff in poly.terms.items():
            lifted = (
                exponent[:var_index] + (exponent[var_index] + e,) + exponent[var_index + 1 :]
            )
            out[lifted] = coeff
    return MPoly._raw(out, spec)


def _uni_scale(coeffs: dict, factor: MPoly) -> dict:
    return {e: c * factor for e, c in coeffs.items()}


def _uni_exact_divide(coeffs: dict, divisor: MPoly) -> dict:
    return {e: exact_divide(c, divisor) for e, c in coeffs.items()}


def _pseudo_remainder(a: dict, b: dict) -> dict:
    """prem(a, b) in the recursion variable: lc(b)^(da-db+1) * a mod b.

    Coefficients are polynomials in the remaining variables; no division
    happens here, which is what keeps the sequence exact.
    """
    da, db = max(a), max(b)
    lc_b = b[db]
    e = da - db + 1
    r = a
    while r:
        dr = max(r)
        if dr < db:
            break
        lc_r = r[dr]
        shifted = {}
        for k, c in r.items():
            shifted[k] = c * lc_b
        for k, c in b.items():
            kk = k + dr - db
            have = shifted.get(kk)
            total = -(lc_r * c) if have is None else have - lc_r * c
            if total.is_zero():
                shifted.pop(kk, None)
            else:
                shifted[kk] = total
        r = shifted
        e -= 1
    if e > 0 and r:
        scale = lc_b ** e
        r = {k: c * scale for k, c in r.items()}
    return r


def _content(coeffs: dict) -> MPoly:
    polys = sorted(coeffs.values(), key=lambda c: len(c.terms))
    acc = polys[0]
    for poly in polys[1:]:
        if acc.is_constant():
            break
        acc = _gcd_raw(acc, poly)
    return acc


# -- integer fast lane -------------------------------------------------------
#
# The recursion bottoms out in (at most) bivariate polynomials over the
# rationals for every hot path in the curvature pipeline.  Running the
# same subresultant remainder sequence on denominator-cleared integer
# coefficient lists avoids Fraction construction entirely, which is
# worth two orders of magnitude on the R^2 reductions.

def _ip_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _ip_neg(a: list) -> list:
    return [-c for c in a]


def _ip_sub(a: list, b: list) -> list:
    if len(b) > len(a):
        out = list(a) + [0] * (len(b) - len(a))
    else:
        out = list(a)
    for i, c in enumerate(b):
        out[i] -= c
    return _ip_trim(out)


def _ip_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _ip_trim(out)


def _ip_pow(a: list, e: int) -> list:
    out = [1]
    for _ in range(e):
        out = _ip_mul(out, a)
    return out


def _ip_content(a: list) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
    return g


def _ip_divexact(a: list, b: list) -> list:
    """Exact division of integer polynomials (exactness guaranteed by the
    subresultant theory; verified anyway to keep bugs loud)."""
    if not a:
        return []
    if len(b) == 1:
        d = b[0]
        out = []
        for c in a:
            q, r = divmod(c, d)
            if r:
                raise ValueError("inexact integer polynomial division")
            out.append(q)
        return out
    out = [0] * (len(a) - len(b) + 1)
    rest = list(a)
    for k in range(len(out) - 1, -1, -1):
        q, r = divmod(rest[k + len(b) - 1], b[-1])
        if r:
            raise ValueError("inexact integer polynomial division")
        out[k] = q
        if q:
            for j, cb in enumerate(b):
                rest[k + j] -= q * cb
    if any(rest):
        raise ValueError("inexact integer polynomial division")
    return _ip_trim(out)


def _ip_prem(a: list, b: list) -> list:
    db = len(b) - 1
    d = b[-1]
    e = len(a) - len(b) + 1
    r = list(a)
    while r and len(r) - 1 >= db:
        lr = r[-1]
        offset = len(r) - 1 - db
        r = [c * d for c in r]
        for j, cb in enumerate(b):
            r[offset + j] -= lr * cb
        r = _ip_trim(r)
        e -= 1
    if e > 0 and r:
        s = d ** e
        r = [c * s for c in r]
    return r


def _ip_gcd(a: list, b: list) -> list:
    """Subresultant gcd of univariate integer polynomials, up to sign."""
    a = _ip_trim(list(a))
    b = _ip_trim(list(b))
    if not a:
        return b
    if not b:
        return a
    ca, cb = _ip_content(a), _ip_content(b)
    c = math.gcd(ca, cb)
    a = [v // ca for v in a]
    b = [v // cb for v in b]
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        return [c]
    g, h = 1, 1
    while True:
        delta = len(a) - len(b)
        r = _ip_prem(a, b)
        if not r:
            part = b
            break
        if len(r) == 1:
            part = None
            break
        divisor = g * h ** delta
        a, b = b, ([v // divisor for v in r] if divisor != 1 else r)
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = g ** delta // h ** (delta - 1)
    if part is None:
        return [c]
    pc = _ip_content(part)
    return [v // pc * c for v in part]


def _to_int_uni(f: MPoly, vi: int, wi: int) -> dict:
    """{degree in v: integer w-coefficient list}, denominators cleared."""
    scale = 1
    for coeff in f.terms.values():
        d = coeff.a.denominator
        scale = scale * d // math.gcd(scale, d)
    rows = {}
    for exponent, coeff in f.terms.items():
        rows.setdefault(exponent[vi], {})[exponent[wi]] = int(coeff.a * scale)
    out = {}
    for k, row in rows.items():
        coeffs = [0] * (max(row) + 1)
        for j, value in row.items():
            coeffs[j] = value
        out[k] = _ip_trim(coeffs)
    return {k: v for k, v in out.items() if v}


def _from_int_uni(uni: dict, vi: int, wi: int, spec: FieldSpec) -> MPoly:
    terms = {}
    base = [0] * NVARS
    for k, coeffs in uni.items():
        for j, value in enumerate(coeffs):
            if value:
                exponent = list(base)
                exponent[vi] = k
                exponent[wi] = j
                terms[tuple(exponent)] = FieldScalar._fast(Fraction(value), _FRACTION_ZERO, spec)
    return MPoly._raw(terms, spec)


_FRACTION_ZERO = Fraction(0)


def _biv_content(uni: dict) -> list:
    acc = []
    for coeffs in sorted(uni.values(), key=len):
        acc = _ip_gcd(acc, coeffs)
        if len(acc) == 1 and acc[0] == 1:
            break
    return acc


def _biv_prem(a: dict, b: dict) -> dict:
    da, db = max(a), max(b)
    d = b[db]
    e = da - db + 1
    r = a
    while r:
        dr = max(r)
        if dr < db:
            break
        lr = r[dr]
        shifted = {k: _ip_mul(v, d) for k, v in r.items()}
        for k, cb in b.items():
            kk = k + dr - db
            value = _ip_mul(lr, cb)
            have = shifted.get(kk)
            diff = _ip_sub(have, value) if have else _ip_neg(value)
            if diff:
                shifted[kk] = diff
            else:
                shifted.pop(kk, None)
        r = shifted
        e -= 1
    if e > 0 and r:
        s = _ip_pow(d, e)
        r = {k: _ip_mul(v, s) for k, v in r.items()}
    return r


def _gcd_bivariate_fast(f: MPoly, g: MPoly, vi: int, wi: int) -> MPoly:
    """Subresultant PRS in variable vi over integer w-coefficient lists."""
    fu = _to_int_uni(f, vi, wi)
    gu = _to_int_uni(g, vi, wi)
    content_f = _biv_content(fu)
    content_g = _biv_content(gu)
    fu = {k: _ip_divexact(v, content_f) for k, v in fu.items()}
    gu = {k: _ip_divexact(v, content_g) for k, v in gu.items()}
    content = _ip_gcd(content_f, content_g)
    a, b = (fu, gu) if max(fu) >= max(gu) else (gu, fu)
    g_scale, h_scale = [1], [1]
    while True:
        delta = max(a) - max(b)
        r = _biv_prem(a, b)
        if not r:
            part = b
            break
        if max(r) == 0:
            part = None
            break
        divisor = _ip_mul(g_scale, _ip_pow(h_scale, delta))
        a = b
        if divisor == [1]:
            b = r
        else:
            b = {k: _ip_divexact(v, divisor) for k, v in r.items()}
        g_scale = a[max(a)]
        if delta == 1:
            h_scale = g_scale
        elif delta > 1:
            h_scale = _ip_divexact(_ip_pow(g_scale, delta), _ip_pow(h_scale, delta - 1))
    if part is None:
        uni = {0: content}
    else:
        part_content = _biv_content(part)
        uni = {k: _ip_mul(_ip_divexact(v, part_content), content) for k, v in part.items()}
    return _from_int_uni(uni, vi, wi, f.spec)


def _gcd_raw(f: MPoly, g: MPoly) -> MPoly:
    """gcd of two nonzero polynomials, up to a scalar unit."""
    spec = f.spec
    shift_f = _monomial_content(f)
    shift_g = _monomial_content(g)
    common = tuple(min(a, b) for a, b in zip(shift_f, shift_g))
    f = _shift_down(f, shift_f)
    g = _shift_down(g, shift_g)
    mono = MPoly.monomial(common, 1, spec)
    if f.is_constant() or g.is_constant():
        return mono
    shared = f.variables() & g.variables()
    if not shared:
        return mono
    # cheap wins first: equal, or one divides the other
    if f.terms == g.terms:
        return mono * f
    if len(f.terms) <= len(g.terms):
        if try_exact_divide(g, f) is not None:
            return mono * f
    elif try_exact_divide(f, g) is not None:
        return mono * g
    # recurse on the variable appearing in the most terms
    def frequency(name):
        i = VARIABLE_INDEX[name]
        return sum(1 for e in f.terms if e[i]) + sum(1 for e in g.terms if e[i])

    var = max(sorted(shared), key=frequency)
    vi = VARIABLE_INDEX[var]
    all_vars = f.variables() | g.variables()
    if not spec.is_quadratic and len(all_vars) <= 2:
        others = all_vars - {var}
        wi = VARIABLE_INDEX[next(iter(others))] if others else (vi + 1) % NVARS
        return mono * _gcd_bivariate_fast(f, g, vi, wi)
    fu = _univariate(f, vi)
    gu = _univariate(g, vi)
    content_f = _content(fu)
    content_g = _content(gu)
    fu = _uni_exact_divide(fu, content_f)
    gu = _uni_exact_divide(gu, content_g)
    content = _gcd_raw(content_f, content_g)

    a, b = (fu, gu) if max(fu) >= max(gu) else (gu, fu)
    one = MPoly.one(spec)
    g_scale, h_scale = one, one
    while True:
        delta = max(a) - max(b)
        r = _pseudo_remainder(a, b)
        if not r:
            part = b
            break
        if max(r) == 0:
            part = None
            break
        divisor = g_scale * h_scale ** delta
        a = b
        b = _uni_exact_divide(r, divisor) if not divisor.is_one() else r
        g_scale = a[max(a)]
        if delta == 1:
            h_scale = g_scale
        elif delta > 1:
            h_scale = exact_divide(g_scale ** delta, h_scale ** (delta - 1))
    if part is None:
        return mono * content
    part = _uni_exact_divide(part, _content(part))
    return mono * content * _from_univariate(part, vi, spec)


def poly_gcd(f: MPoly, g: MPoly) -> MPoly:
    """Greatest common divisor, normalized monic under the monomial order.

    gcd(f, 0) is f made monic; gcd(0, 0) is 0.
    """
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    f._check(g)
    return _gcd_raw(f, g).monic()


def squarefree_part(f: MPoly) -> MPoly:
    """Product of the distinct irreducible factors of f, made monic."""
    if f.is_zero():
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    current = f
    while True:
        repeated = current
        for name in VARIABLES:
            partial = current.derivative(name)
            if not partial.is_zero():
                repeated = poly_gcd(repeated, partial)
            if repeated.is_constant():
                break
        if repeated.is_constant():
            return current.monic()
        current = exact_divide(current, repeated)


# -- polynomial matrices -----------------------------------------------------------


class PolyMatrix:
    """Row-major matrix of polynomials."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = list(entries)
        if rows < 1 or cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(entries) != rows * cols:
            raise ValueError("expected %d entries, got %d" % (rows * cols, len(entries)))
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        width = len(rows[0])
        return cls(len(rows), width, [e for row in rows for e in row])

    def entry(self, i: int, j: int) -> MPoly:
        return self.entries[i * self.cols + j]


def determinant(matrix: PolyMatrix) -> MPoly:
    """Exact determinant by first-row cofactor expansion.

    Minors are memoized on their active column set, so the work is
    O(2^n) polynomial operations; intended for n <= 6.
    """
    if matrix.rows != matrix.cols:
        raise NotSquare("determinant of a %dx%d matrix" % (matrix.rows, matrix.cols))
    n = matrix.rows
    spec = matrix.entries[0].spec
    memo = {}

    def minor(columns):
        row = n - len(columns)
        if not columns:
            return MPoly.one(spec)
        cached = memo.get(columns)
        if cached is not None:
            return cached
        total = MPoly.zero(spec)
        for i, col in enumerate(columns):
            entry = matrix.entry(row, col)
            if entry.is_zero():
                continue
            sub = minor(columns[:i] + columns[i + 1 :])
            if sub.is_zero():
                continue
            product = entry * sub
            total = total + product if i % 2 == 0 else total - product
        memo[columns] = total
        return total

    return minor(tuple(range(n)))


def cubic_resultant(a0: MPoly, a1: MPoly, a2: MPoly, a3: MPoly) -> MPoly:
    """Determinant of the fixed 5x5 eliminating the slope from a cubic
    a0*s^3 + a1*s^2 + a2*s + a3 and its slope derivative.

    It vanishes exactly where the cubic has a repeated root; the row
    layout (and hence the overall sign) is pinned by the curvature
    algorithm downstream.
    """
    spec = a0.spec
    zero_ = MPoly.zero(spec)
    rows = [
        [a0, a1, a2, a3, zero_],
        [zero_, a0, a1, a2, a3],
        [3 * a0, 2 * a1, a2, zero_, zero_],
        [zero_, 3 * a0, 2 * a1, a2, zero_],
        [zero_, zero_, 3 * a0, 2 * a1, a2],
    ]
    return determinant(PolyMatrix.from_rows(rows))


# -- rational functions ------------------------------------------------------------


class RatFn:
    """Reduced quotient of two polynomials.

    gcd(num, den) is constant and den is monic under the monomial order,
    so equal fractions have equal (num, den) pairs; equality still
    compares by cross-multiplication to stay representation-agnostic.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly):
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        num._check(den)
        if num.is_zero():
            num = MPoly.zero(num.spec)
            den = MPoly.one(num.spec)
        else:
            common = poly_gcd(num, den)
            if not common.is_one():
                num = exact_divide(num, common)
                den = exact_divide(den, common)
            lc = den.leading_coefficient()
            if not lc.is_one():
                inv = lc.inverse()
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, f: MPoly) -> "RatFn":
        ratfn = object.__new__(cls)
        ratfn.num = f
        ratfn.den = MPoly.one(f.spec)
        return ratfn

    @classmethod
    def _reduced(cls, num: MPoly, den: MPoly) -> "RatFn":
        """Internal: adopt an already-coprime pair, normalizing only the
        denominator's leading coefficient."""
        lc = den.leading_coefficient()
        if not lc.is_one():
            inv = lc.inverse()
            num = num * inv
            den = den * inv
        ratfn = object.__new__(cls)
        ratfn.num = num
        ratfn.den = den
        return ratfn

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        if not isinstance(other, RatFn):
            return NotImplemented
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        if not isinstance(other, RatFn):
            return NotImplemented
        return RatFn(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        negated = object.__new__(RatFn)
        negated.num = -self.num
        negated.den = self.den
        return negated

    def __mul__(self, other):
        if not isinstance(other, RatFn):
            return NotImplemented
        return RatFn(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if not isinstance(other, RatFn):
            return NotImplemented
        if other.num.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFn(self.num * other.den, self.den * other.num)

    def derivative(self, var: str) -> "RatFn":
        """Quotient rule, assembled over den^2 then reduced."""
        return RatFn(
            self.num.derivative(var) * self.den - self.num * self.den.derivative(var),
            self.den * self.den,
        )

    def substitute(self, bindings: dict) -> "RatFn":
        return RatFn(self.num.substitute(bindings), self.den.substitute(bindings))

    def __eq__(self, other):
        if not isinstance(other, RatFn):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return "(%s) / (%s)" % (self.num, self.den)

    def __repr__(self):
        return "RatFn(%s)" % (self,)


# -- numeric evaluation --------------------------------------------------------------


def evaluate_float(f: MPoly, point: dict, theta_embedding: complex | None = None) -> complex:
    """Floating evaluation of f at {variable: complex}.

    A quadratic field requires `theta_embedding`, an approximate root of
    the minimal polynomial (checked to 1e-12); the rationals forbid it.
    """
    if f.spec.is_quadratic:
        if theta_embedding is None:
            raise BadEmbedding("quadratic field needs a theta embedding")
        residual = (
            theta_embedding * theta_embedding
            - complex(f.spec.u) * theta_embedding
            - complex(f.spec.v)
        )
        if abs(residual) > 1e-12:
            raise BadEmbedding("embedding does not satisfy the minimal polynomial")
    elif theta_embedding is not None:
        raise BadEmbedding("theta embedding supplied for a rational field")
    values = {}
    for name, value in point.items():
        values[VARIABLE_INDEX[name]] = complex(value)
    total = 0j
    for exponent, coeff in f.terms.items():
        term = coeff.embed(theta_embedding)
        for i, e in enumerate(exponent):
            if e == 0:
                continue
            if i not in values:
                raise KeyError("no value supplied for %s" % VARIABLES[i])
            term *= values[i] ** e
        total += term
    return total
