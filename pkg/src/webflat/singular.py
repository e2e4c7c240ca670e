"""Local invariants of foliation singularities and the homogeneous toolkit.

All analysis happens at user-supplied points with coordinates in the
ambient field; nothing here ever solves for singular loci.  `nu` is the
lowest order of a nonzero jet of the saturated field at the point, `tau`
the first order >= nu whose jet is not a multiple of the radial field
(infinite for fields that are radial to every order, e.g. H * R).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateParameter,
    NonHomogeneous,
    NotSingular,
    ZeroTangentCone,
)
from .field import FieldScalar, field_sqrt
from .poly import MPoly, cubic_resultant, exact_divide, poly_gcd, squarefree_part
from .webs import (
    AffineVectorField,
    homogenize,
    inflection_divisor,
    is_flat,
    tangent_cone,
)

TAU_INFINITE = math.inf


@dataclass(frozen=True)
class SingularityReport:
    point: tuple
    nu: int
    tau: float
    radial: bool
    special: bool


@dataclass(frozen=True)
class HomogeneousAnalysis:
    """Tangent-cone data of a homogeneous affine field.

    `slopes` are the tangent-cone roots found in the ambient field at
    x = 1 (sorted), `vertical_line` flags the x = 0 component handled in
    the swapped chart, `unsplit` carries any factor the field cannot
    split (never approximated).  `pj` pairs each slope m with the
    tangency polynomial B(1,t) - m*A(1,t) -- plus A(t,1) for the
    vertical line -- and `pj_discriminants` holds their slope
    discriminants.
    """

    tangent_cone: MPoly
    slopes: tuple
    vertical_line: bool
    pj: tuple
    pj_discriminants: tuple
    unsplit: MPoly | None


def saturate(vf: AffineVectorField):
    """Divide out the common factor: returns (saturated field, gcd)."""
    common = poly_gcd(vf.a, vf.b)
    if common.is_constant():
        return vf, MPoly.one(vf.spec)
    return (
        AffineVectorField(exact_divide(vf.a, common), exact_divide(vf.b, common)),
        common,
    )


def _translate(f: MPoly, x0, y0) -> MPoly:
    spec = f.spec
    bindings = {}
    x0 = x0 if isinstance(x0, FieldScalar) else FieldScalar(x0, 0, spec)
    y0 = y0 if isinstance(y0, FieldScalar) else FieldScalar(y0, 0, spec)
    if not x0.is_zero():
        bindings["x"] = MPoly.variable("x", spec) + MPoly.constant(x0, spec)
    if not y0.is_zero():
        bindings["y"] = MPoly.variable("y", spec) + MPoly.constant(y0, spec)
    return f.substitute(bindings) if bindings else f


def _order(f: MPoly):
    """Lowest total degree of a term; None for the zero polynomial."""
    if f.is_zero():
        return None
    return min(sum(e) for e in f.terms)


def _jet(f: MPoly, k: int) -> MPoly:
    return MPoly._raw(
        {e: c for e, c in f.terms.items() if sum(e) == k}, f.spec
    )


def _local_parts(vf: AffineVectorField, pt):
    saturated, _ = saturate(vf)
    x0, y0 = pt
    return _translate(saturated.a, x0, y0), _translate(saturated.b, x0, y0)


def multiplicity_nu(vf: AffineVectorField, pt) -> int:
    """Algebraic multiplicity of the saturated field at pt (0 if regular)."""
    a, b = _local_parts(vf, pt)
    orders = [o for o in (_order(a), _order(b)) if o is not None]
    return min(orders)


def tau(vf: AffineVectorField, pt):
    """First jet order >= nu that is not a multiple of the radial field.

    Returns TAU_INFINITE when every jet is radial.  Rejects regular
    points: the invariant is only defined at singularities.
    """
    a, b = _local_parts(vf, pt)
    orders = [o for o in (_order(a), _order(b)) if o is not None]
    nu = min(orders)
    if nu == 0:
        raise NotSingular("tau is undefined at a regular point")
    x = MPoly.variable("x", a.spec)
    y = MPoly.variable("y", a.spec)
    top = max(a.total_degree(), b.total_degree())
    for k in range(nu, top + 1):
        if not (x * _jet(b, k) - y * _jet(a, k)).is_zero():
            return k
    return TAU_INFINITE


def classify_singularity(vf: AffineVectorField, pt) -> SingularityReport:
    """Full local report; `special` marks the singularities whose dual
    lines join the dual web's discriminant."""
    nu = multiplicity_nu(vf, pt)
    if nu == 0:
        raise NotSingular("the saturated field does not vanish at %r" % (pt,))
    t = tau(vf, pt)
    radial = nu == 1 and t >= 2
    return SingularityReport(
        point=tuple(pt),
        nu=nu,
        tau=t,
        radial=radial,
        special=nu >= 2 or radial,
    )


# -- homogeneous toolkit ------------------------------------------------------


def _univariate_coeffs(f: MPoly, var: str):
    """Coefficient list c[0..deg] of a polynomial in one variable."""
    split = f.coefficients_in(var)
    degree = max(split) if split else 0
    out = []
    for k in range(degree + 1):
        coeff = split.get(k)
        if coeff is None:
            out.append(FieldScalar(0, 0, f.spec))
        else:
            out.append(coeff.constant_value())
    return out


def _deflate(coeffs, root):
    """Synthetic division by (t - root); drops the (zero) remainder."""
    out = [coeffs[-1]]
    for c in reversed(coeffs[:-1]):
        out.append(c + root * out[-1])
    out.pop()
    return list(reversed(out))


def _eval_coeffs(coeffs, value):
    total = FieldScalar(0, 0, value.spec)
    for c in reversed(coeffs):
        total = total * value + c
    return total


def _rational_root_candidates(coeffs):
    """Rational roots of a Fraction-coefficient polynomial, by the
    integer root test after clearing denominators."""
    scale = 1
    for c in coeffs:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    ints = [int(c * scale) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    if len(ints) <= 1:
        return []
    lead = abs(ints[-1])
    low = abs(ints[0])
    if low == 0:
        return []

    def divisors(n):
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return out

    candidates = set()
    for num in divisors(low):
        for den in divisors(lead):
            candidates.add(Fraction(num, den))
            candidates.add(Fraction(-num, den))
    return sorted(candidates)


def field_roots(coeffs):
    """Roots in the ambient field of a scalar-coefficient polynomial.

    Uses only exact tools: the rational root test (applied to the gcd of
    the rational and theta components) and the quadratic formula via
    exact field square roots.  Returns (distinct roots, unsplit
    remainder coefficients or None).  Multiple roots are deflated fully.
    """
    spec = coeffs[0].spec
    rem = list(coeffs)
    while rem and rem[-1].is_zero():
        rem.pop()
    roots = []
    zero = FieldScalar(0, 0, spec)
    while rem and rem[0].is_zero():
        if zero not in roots:
            roots.append(zero)
        rem = rem[1:]
    # rational roots: common roots of the two rational components
    rational_part = [c.a for c in rem]
    theta_part = [c.b for c in rem]
    if any(v != 0 for v in theta_part):
        t = MPoly.variable("t")
        fa = sum((MPoly.constant(c) * t ** k for k, c in enumerate(rational_part)), MPoly.zero())
        fb = sum((MPoly.constant(c) * t ** k for k, c in enumerate(theta_part)), MPoly.zero())
        shared = poly_gcd(fa, fb)
        shared_coeffs = _univariate_coeffs(shared, "t")
        candidates = _rational_root_candidates([c.a for c in shared_coeffs])
    else:
        candidates = _rational_root_candidates(rational_part)
    for cand in candidates:
        root = FieldScalar(cand, 0, spec)
        while len(rem) > 1 and _eval_coeffs(rem, root).is_zero():
            if root not in roots:
                roots.append(root)
            rem = _deflate(rem, root)
    # what is left: solve degree 1 and 2 exactly, surface the rest
    while len(rem) - 1 in (1, 2):
        if len(rem) == 2:
            root = -rem[0] / rem[1]
        else:
            c, b, a = rem[0], rem[1], rem[2]
            disc = b * b - 4 * a * c
            sqrt_disc = field_sqrt(disc)
            if sqrt_disc is None:
                break
            root = (-b + sqrt_disc) / (2 * a)
        while len(rem) > 1 and _eval_coeffs(rem, root).is_zero():
            if root not in roots:
                roots.append(root)
            rem = _deflate(rem, root)
    unsplit = rem if len(rem) > 1 else None
    roots.sort(key=lambda r: (r.a, r.b))
    return roots, unsplit


def homogeneous_analysis(vf: AffineVectorField) -> HomogeneousAnalysis:
    """Invariant-line slopes and tangency discriminants of a homogeneous
    field.

    For each tangent-cone root m, P_m(t) = B(1,t) - m*A(1,t) collects the
    slopes of the lines through the origin tangent to the foliation along
    the invariant line of slope m; a vertical invariant line contributes
    A(t,1) from the swapped chart.  Each P gets its degree-3 slope
    discriminant.
    """
    for component in (vf.a, vf.b):
        if component.is_zero():
            continue
        if len({sum(e) for e in component.terms}) != 1:
            raise NonHomogeneous("component %s is not homogeneous" % component)
    degrees = {
        component.total_degree()
        for component in (vf.a, vf.b)
        if not component.is_zero()
    }
    if len(degrees) != 1:
        raise NonHomogeneous("components have degrees %s" % sorted(degrees))
    cone = tangent_cone(vf)
    if cone.is_zero():
        raise ZeroTangentCone("the field is a multiple of the radial field")
    spec = vf.spec
    t = MPoly.variable("t", spec)
    one = MPoly.one(spec)
    a_line = vf.a.substitute({"x": one, "y": t})
    b_line = vf.b.substitute({"x": one, "y": t})
    cone_line = cone.substitute({"x": one, "y": t})
    vertical = all(e[0] > 0 for e in cone.terms)
    slopes, unsplit_coeffs = field_roots(_univariate_coeffs(cone_line, "t"))
    pj = []
    for m in slopes:
        pj.append(b_line - a_line * m)
    if vertical:
        pj.append(vf.a.substitute({"x": t, "y": one}))
    discriminants = []
    for poly in pj:
        discriminants.append(
            cubic_resultant(
                poly.coefficient("t", 3),
                poly.coefficient("t", 2),
                poly.coefficient("t", 1),
                poly.coefficient("t", 0),
            )
        )
    unsplit = None
    if unsplit_coeffs is not None:
        unsplit = sum(
            (MPoly.constant(c, spec) * t ** k for k, c in enumerate(unsplit_coeffs)),
            MPoly.zero(spec),
        )
    return HomogeneousAnalysis(
        tangent_cone=cone,
        slopes=tuple(slopes),
        vertical_line=vertical,
        pj=tuple(pj),
        pj_discriminants=tuple(discriminants),
        unsplit=unsplit,
    )


def classification_field(nu: FieldScalar) -> AffineVectorField:
    """The one-parameter homogeneous family with invariant lines of
    slopes 0, 1, nu and a vertical one."""
    if nu == 0 or nu == 1:
        raise DegenerateParameter("parameter must avoid 0 and 1")
    spec = nu.spec
    x = MPoly.variable("x", spec)
    y = MPoly.variable("y", spec)
    quarter = Fraction(1, 4)
    half = Fraction(1, 2)
    a = (
        x ** 3 * (nu * quarter)
        - x ** 2 * y * ((nu + 1) * half)
        + x * y ** 2 * Fraction(3, 4)
    )
    b = (
        -(x ** 2 * y) * (nu * Fraction(3, 4))
        + x * y ** 2 * ((nu + 1) * half)
        - y ** 3 * quarter
    )
    return AffineVectorField(a, b)


def verify_classification(nu: FieldScalar) -> bool:
    """Whether the slope-(0, 1, nu) family member belongs to the flat
    classification: reduced inflection divisor and flat dual web.

    Flat members with a non-reduced inflection divisor exist (nu = 2,
    1/2, -1: the transversal inflection conic degenerates to a double
    pair of lines) and are excluded here.
    """
    vf = classification_field(nu)
    inflection = inflection_divisor(homogenize(vf, 3))
    reduced = exact_divide(inflection.monic(), squarefree_part(inflection)).is_constant()
    return reduced and is_flat(vf)
