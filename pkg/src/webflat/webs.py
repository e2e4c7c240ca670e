"""Plane 3-webs cut out by slope-cubic equations, and their duals.

The central objects:

* `AffineVectorField` -- a polynomial foliation A d/dx + B d/dy of the
  affine plane, the input of the dual-web pipeline.
* `CubicWebEquation` -- an implicit 3-web F = a0*s^3 + a1*s^2 + a2*s + a3
  where s is the slope variable of some chart.
* `CurvatureForm` -- the web's curvature 2-form, a reduced rational
  coefficient times d(first) ^ d(second) in the recorded chart.

`web_curvature` is the determinant algorithm: eliminate the slope with
the fixed 5x5 resultant R, build two auxiliary 5x5 determinants from the
coefficient derivatives, and read the curvature off as a single fraction
over R^2.  `dual_curvature` routes a vector field through the slope
substitution y -> p*x + q and a simultaneous chart swap before running
the same algorithm, landing in dual coordinates (p, q) where p is the
line slope and q the intercept.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    DegenerateWeb,
    DegreeExceeded,
    DegreeTooLow,
    InvariantViolated,
    NonHomogeneous,
    SingularPoint,
    ZeroField,
    ZeroPolynomial,
)
from .field import FieldScalar
from .poly import (
    MPoly,
    PolyMatrix,
    RatFn,
    cubic_resultant,
    determinant,
    exact_divide,
    poly_gcd,
    try_exact_divide,
)


def _require_vars(f: MPoly, allowed, label):
    extra = f.variables() - set(allowed)
    if extra:
        raise ValueError(
            "%s may only involve %s (found %s)" % (label, ", ".join(allowed), ", ".join(sorted(extra)))
        )


class AffineVectorField:
    """Polynomial vector field A d/dx + B d/dy with A, B in (x, y)."""

    __slots__ = ("a", "b")

    def __init__(self, a: MPoly, b: MPoly):
        a._check(b)
        _require_vars(a, ("x", "y"), "vector field component")
        _require_vars(b, ("x", "y"), "vector field component")
        if a.is_zero() and b.is_zero():
            raise ZeroField("both components vanish identically")
        self.a = a
        self.b = b

    @property
    def spec(self):
        return self.a.spec

    def __eq__(self, other):
        if not isinstance(other, AffineVectorField):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __repr__(self):
        return "AffineVectorField(%s ; %s)" % (self.a, self.b)


class HomogeneousVectorField:
    """Vector field A d/dx + B d/dy + C d/dz with homogeneous components
    of one common degree."""

    __slots__ = ("a", "b", "c", "degree")

    def __init__(self, a: MPoly, b: MPoly, c: MPoly):
        a._check(b)
        a._check(c)
        degrees = set()
        for component in (a, b, c):
            _require_vars(component, ("x", "y", "z"), "homogeneous component")
            if component.is_zero():
                continue
            term_degrees = {sum(e) for e in component.terms}
            if len(term_degrees) != 1:
                raise NonHomogeneous("component %s is not homogeneous" % component)
            degrees |= term_degrees
        if not degrees:
            raise ZeroField("all three components vanish identically")
        if len(degrees) != 1:
            raise NonHomogeneous("components have different degrees %s" % sorted(degrees))
        self.a = a
        self.b = b
        self.c = c
        self.degree = degrees.pop()

    @property
    def spec(self):
        return self.a.spec

    def apply(self, f: MPoly) -> MPoly:
        """The derivation A d/dx + B d/dy + C d/dz applied to f."""
        return (
            self.a * f.derivative("x")
            + self.b * f.derivative("y")
            + self.c * f.derivative("z")
        )

    def __repr__(self):
        return "HomogeneousVectorField(%s ; %s ; %s)" % (self.a, self.b, self.c)


class CubicWebEquation:
    """3-web given implicitly by a cubic in its slope variable.

    `slope_var` is 'p' (web in the (x, y) chart) or 'x' (dual web in the
    (p, q) chart); a0..a3 are the coefficients of slope^3 .. slope^0 and
    involve only the two base variables.  A degenerate equation (slope
    discriminant identically zero) can be represented -- querying its
    discriminant is legitimate -- but refuses curvature.
    """

    __slots__ = ("slope_var", "base_vars", "a0", "a1", "a2", "a3", "_discriminant")

    def __init__(self, slope_var: str, base_vars, a0, a1, a2, a3):
        if slope_var in base_vars:
            raise ValueError("slope variable cannot be a base variable")
        for coeff in (a1, a2, a3):
            a0._check(coeff)
        for coeff in (a0, a1, a2, a3):
            _require_vars(coeff, base_vars, "web coefficient")
        if a0.is_zero() and a1.is_zero() and a2.is_zero() and a3.is_zero():
            raise ZeroField("all web coefficients vanish")
        self.slope_var = slope_var
        self.base_vars = tuple(base_vars)
        self.a0 = a0
        self.a1 = a1
        self.a2 = a2
        self.a3 = a3
        self._discriminant = None

    @classmethod
    def from_polynomial(cls, f: MPoly, slope_var: str, base_vars) -> "CubicWebEquation":
        """Split F into slope coefficients; F must have slope degree 3."""
        degree = f.degree_in(slope_var)
        if degree > 3:
            raise DegreeExceeded("slope degree %d exceeds 3" % degree)
        if degree < 3:
            raise DegreeTooLow("slope degree %d; a 3-web needs degree 3" % degree)
        return cls(
            slope_var,
            tuple(base_vars),
            f.coefficient(slope_var, 3),
            f.coefficient(slope_var, 2),
            f.coefficient(slope_var, 1),
            f.coefficient(slope_var, 0),
        )

    def polynomial(self) -> MPoly:
        s = MPoly.variable(self.slope_var, self.a0.spec)
        return ((self.a0 * s + self.a1) * s + self.a2) * s + self.a3

    def discriminant(self) -> MPoly:
        if self._discriminant is None:
            self._discriminant = cubic_resultant(self.a0, self.a1, self.a2, self.a3)
        return self._discriminant

    @property
    def spec(self):
        return self.a0.spec

    def __repr__(self):
        return "CubicWebEquation(%s in %s)" % (self.polynomial(), self.slope_var)


class CurvatureForm:
    """coeff * d(chart[0]) ^ d(chart[1]), with coeff stored reduced."""

    __slots__ = ("coeff", "chart")

    def __init__(self, coeff: RatFn, chart):
        self.coeff = coeff
        self.chart = tuple(chart)

    def is_zero(self) -> bool:
        return self.coeff.is_zero()

    def __eq__(self, other):
        if not isinstance(other, CurvatureForm):
            return NotImplemented
        return self.chart == other.chart and self.coeff == other.coeff

    def __repr__(self):
        return "CurvatureForm(%s, chart=%s)" % (self.coeff, self.chart)


class EtaWebSpec:
    """Three foliations dy + y^a * h_i(x, y) dx tangent to y = 0.

    The differences h_i - h_j must not be divisible by y, so the three
    slope branches separate at order exactly a along y = 0.
    """

    __slots__ = ("h1", "h2", "h3", "a")

    def __init__(self, h1: MPoly, h2: MPoly, h3: MPoly, a: int):
        h1._check(h2)
        h1._check(h3)
        for h in (h1, h2, h3):
            _require_vars(h, ("x", "y"), "slope function")
        if a < 0:
            raise ValueError("order a must be nonnegative")
        y = MPoly.variable("y", h1.spec)
        for left, right, label in ((h1, h2, "h1 - h2"), (h2, h3, "h2 - h3"), (h3, h1, "h3 - h1")):
            diff = left - right
            if diff.is_zero() or try_exact_divide(diff, y) is not None:
                raise InvariantViolated("y divides %s" % label)
        self.h1 = h1
        self.h2 = h2
        self.h3 = h3
        self.a = a


# -- Legendre transform ------------------------------------------------------


def legendre_transform(vf: AffineVectorField) -> CubicWebEquation:
    """Dual web of the foliation, as a cubic in x over the chart (p, q).

    Substituting y = p*x + q into B - p*A produces the equation of the
    dual web; its x-degree is the number of tangencies with a generic
    line, which must be exactly 3 here.
    """
    spec = vf.spec
    x = MPoly.variable("x", spec)
    p = MPoly.variable("p", spec)
    q = MPoly.variable("q", spec)
    line = p * x + q
    dual = vf.b.substitute({"y": line}) - p * vf.a.substitute({"y": line})
    degree = dual.degree_in("x")
    if degree > 3:
        raise DegreeExceeded("dual equation has x-degree %d > 3" % degree)
    if degree < 3:
        raise DegreeTooLow("dual equation has x-degree %d < 3" % degree)
    web = CubicWebEquation.from_polynomial(dual, "x", ("p", "q"))
    if web.discriminant().is_zero():
        raise DegenerateWeb("dual equation has identically zero discriminant")
    return web


# -- curvature ---------------------------------------------------------------


def web_curvature(web: CubicWebEquation) -> CurvatureForm:
    """Curvature 2-form of a slope-cubic 3-web, in the web's own chart.

    With (u, v) the base variables and a0..a3 the slope coefficients:
    R is the slope discriminant (5x5 resultant); alpha0 the derivative
    vector [dv a0, du a0 + dv a1, du a1 + dv a2, du a2 + dv a3, du a3];
    alpha1 and alpha2 the 5x5 determinants stacking alpha0 over the four
    fixed coefficient rows; the curvature coefficient is

        du(alpha2 / R) + dv(alpha1 / R)

    assembled as one fraction over R^2 and then reduced.
    """
    u, v = web.base_vars
    a0, a1, a2, a3 = web.a0, web.a1, web.a2, web.a3
    spec = web.spec
    big_r = web.discriminant()
    if big_r.is_zero():
        raise DegenerateWeb("slope discriminant vanishes identically")
    zero = MPoly.zero(spec)
    alpha0 = [
        a0.derivative(v),
        a0.derivative(u) + a1.derivative(v),
        a1.derivative(u) + a2.derivative(v),
        a2.derivative(u) + a3.derivative(v),
        a3.derivative(u),
    ]
    tail_rows = [
        [-a0, zero, a2, 2 * a3, zero],
        [zero, -2 * a0, -a1, zero, a3],
        [zero, zero, -3 * a0, -2 * a1, -a2],
    ]
    alpha1 = determinant(
        PolyMatrix.from_rows([alpha0, [a0, a1, a2, a3, zero]] + tail_rows)
    )
    alpha2 = determinant(
        PolyMatrix.from_rows([alpha0, [zero, a0, a1, a2, a3]] + tail_rows)
    )
    numerator = (
        (alpha2.derivative(u) + alpha1.derivative(v)) * big_r
        - alpha2 * big_r.derivative(u)
        - alpha1 * big_r.derivative(v)
    )
    # reduce the single fraction numerator / R^2; every common factor
    # divides R, so gcd against R first and square up only on a hit
    if numerator.is_zero():
        coeff = RatFn(numerator, big_r)
    else:
        stage_one = poly_gcd(numerator, big_r)
        if stage_one.is_one():
            coeff = RatFn._reduced(numerator, big_r * big_r)
        else:
            coeff = RatFn(
                exact_divide(numerator, stage_one),
                exact_divide(big_r, stage_one) * big_r,
            )
    return CurvatureForm(coeff, web.base_vars)


def dual_curvature(vf: AffineVectorField) -> CurvatureForm:
    """Curvature of the dual web, in the dual chart (p, q).

    Pipeline: form B - p*A, substitute y -> p*x + q, then apply the
    simultaneous chart swap {p -> x, q -> y, x -> -p} (the sign encodes
    x = -dq/dp on the dual side), run the curvature algorithm in the
    (x, y) chart, and rename the result back to (p, q).
    """
    spec = vf.spec
    x = MPoly.variable("x", spec)
    y = MPoly.variable("y", spec)
    p = MPoly.variable("p", spec)
    q = MPoly.variable("q", spec)
    implicit = vf.b - p * vf.a
    implicit = implicit.substitute({"y": p * x + q})
    implicit = implicit.substitute({"p": x, "q": y, "x": -p})
    degree = implicit.degree_in("p")
    if degree > 3:
        raise DegreeExceeded("dual equation has slope degree %d > 3" % degree)
    if degree < 3:
        raise DegreeTooLow("dual equation has slope degree %d < 3" % degree)
    web = CubicWebEquation.from_polynomial(implicit, "p", ("x", "y"))
    form = web_curvature(web)
    coeff = form.coeff
    renamed = object.__new__(RatFn)
    renamed.num = coeff.num.substitute({"x": p, "y": q})
    renamed.den = coeff.den.substitute({"x": p, "y": q})
    # renaming preserves reducedness but can move the leading monomial
    lc = renamed.den.leading_coefficient()
    if not lc.is_one():
        inv = lc.inverse()
        renamed.num = renamed.num * inv
        renamed.den = renamed.den * inv
    return CurvatureForm(renamed, ("p", "q"))


def is_flat(vf: AffineVectorField) -> bool:
    """True iff the dual web's curvature vanishes identically."""
    return dual_curvature(vf).is_zero()


# -- projective side ----------------------------------------------------------


def homogenize(vf: AffineVectorField, d: int) -> HomogeneousVectorField:
    """Lift (A, B) to degree-d homogeneous (A_h, B_h, 0) via z-padding."""
    spec = vf.spec

    def lift(component: MPoly) -> MPoly:
        out = {}
        for exponent, coeff in component.terms.items():
            total = sum(exponent)
            if total > d:
                raise DegreeExceeded(
                    "component degree %d exceeds requested degree %d" % (total, d)
                )
            out[(exponent[0], exponent[1], d - total) + exponent[3:]] = coeff
        return MPoly(out, spec)

    return HomogeneousVectorField(lift(vf.a), lift(vf.b), MPoly.zero(spec))


def inflection_divisor(hvf: HomogeneousVectorField) -> MPoly:
    """Determinant of (position row; field applied once; applied twice).

    Zero means the foliation has a degree-1 rational first integral;
    otherwise, for a saturated field of degree d, the result is
    homogeneous of total degree 3d and cuts out the invariant lines
    together with the leaf inflections.
    """
    spec = hvf.spec
    rows = [
        [MPoly.variable("x", spec), MPoly.variable("y", spec), MPoly.variable("z", spec)],
        [hvf.a, hvf.b, hvf.c],
        [hvf.apply(hvf.a), hvf.apply(hvf.b), hvf.apply(hvf.c)],
    ]
    return determinant(PolyMatrix.from_rows(rows))


def web_discriminant(web: CubicWebEquation) -> MPoly:
    """Slope discriminant of the web in its base variables."""
    return web.discriminant()


def tangent_cone(vf: AffineVectorField) -> MPoly:
    """y*A - x*B; its linear factors are the invariant lines through the
    origin of a homogeneous field."""
    x = MPoly.variable("x", vf.spec)
    y = MPoly.variable("y", vf.spec)
    return y * vf.a - x * vf.b


class ProjectivePoint:
    """Exact projective triple; equality is up to a scalar."""

    __slots__ = ("coords",)

    def __init__(self, c0: FieldScalar, c1: FieldScalar, c2: FieldScalar):
        if c0.is_zero() and c1.is_zero() and c2.is_zero():
            raise ValueError("projective point needs a nonzero coordinate")
        self.coords = (c0, c1, c2)

    def same_point(self, other: "ProjectivePoint") -> bool:
        (a0, a1, a2), (b0, b1, b2) = self.coords, other.coords
        return (
            (a0 * b1 - a1 * b0).is_zero()
            and (a0 * b2 - a2 * b0).is_zero()
            and (a1 * b2 - a2 * b1).is_zero()
        )

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.same_point(other)

    def __repr__(self):
        return "(%s : %s : %s)" % self.coords


def _strip_content(coords):
    """Clear denominators and divide out the integer content, keeping signs."""
    denominators = []
    for c in coords:
        denominators.append(c.a.denominator)
        denominators.append(c.b.denominator)
    scale = 1
    for d in denominators:
        scale = scale * d // math.gcd(scale, d)
    scaled = [c * scale for c in coords]
    content = 0
    for c in scaled:
        content = math.gcd(content, abs(c.a.numerator))
        content = math.gcd(content, abs(c.b.numerator))
    if content > 1:
        scaled = [c * Fraction(1, content) for c in scaled]
    return tuple(scaled)


def gauss_map_point(hvf: HomogeneousVectorField, pt: ProjectivePoint) -> ProjectivePoint:
    """Tangent line of the foliation at pt, as a point of the dual plane.

    The line coordinates are (B*z - C*y, C*x - A*z, A*y - B*x) evaluated
    at pt; they satisfy the incidence x*a + y*b + z*c = 0 by construction
    and all vanish exactly at singular points, which are rejected.
    """
    x0, y0, z0 = pt.coords
    point = {"x": x0, "y": y0, "z": z0}
    a_val = hvf.a.evaluate_scalar(point)
    b_val = hvf.b.evaluate_scalar(point)
    c_val = hvf.c.evaluate_scalar(point)
    dual = (
        b_val * z0 - c_val * y0,
        c_val * x0 - a_val * z0,
        a_val * y0 - b_val * x0,
    )
    if all(c.is_zero() for c in dual):
        raise SingularPoint("the field is singular (or radial) at %r" % (pt,))
    return ProjectivePoint(*_strip_content(dual))


def dual_line(x0: FieldScalar, y0: FieldScalar) -> MPoly:
    """Lines through the affine point (x0, y0): the locus q + x0*p - y0."""
    if not isinstance(x0, FieldScalar):
        x0 = FieldScalar(x0)
    if not isinstance(y0, FieldScalar):
        y0 = FieldScalar(y0, 0, x0.spec)
    spec = x0.spec
    p = MPoly.variable("p", spec)
    q = MPoly.variable("q", spec)
    return q + p * x0 - MPoly.constant(y0, spec)


# -- holomorphy tests ----------------------------------------------------------


def holomorphic_along(form: CurvatureForm, g: MPoly) -> bool:
    """True iff no factor of g divides the reduced curvature denominator."""
    if g.is_zero():
        raise ZeroPolynomial("holomorphy along the zero curve")
    return poly_gcd(form.coeff.den, g).is_constant()


def eta_criterion(web_spec: EtaWebSpec) -> bool:
    """Decide holomorphy of the curvature along y = 0 for the three-slope
    family dy + y^a h_i dx.

    Criterion: y^a divides the numerator of d/dx applied to
    (h12 * dx h23 - h23 * dx h12) / (h12 * h23 * h31), reduced.
    """
    if web_spec.a == 0:
        return True
    h12 = web_spec.h1 - web_spec.h2
    h23 = web_spec.h2 - web_spec.h3
    h31 = web_spec.h3 - web_spec.h1
    numerator = h12 * h23.derivative("x") - h23 * h12.derivative("x")
    inner = RatFn(numerator, h12 * h23 * h31)
    outer = inner.derivative("x")
    if outer.num.is_zero():
        return True
    y_power = MPoly.variable("y", web_spec.h1.spec) ** web_spec.a
    return try_exact_divide(outer.num, y_power) is not None
