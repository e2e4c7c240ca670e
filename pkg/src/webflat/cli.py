"""Command-line front end.

Grammar for polynomial operands (no implicit multiplication):

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := base ('^' uint)?
    base    := var | rational | '(' expr ')' | '-' factor
    var     := 'x' | 'y' | 'z' | 'p' | 'q' | 't'
    rational:= uint ('/' uint)?

`t` denotes the quadratic generator theta and is only legal when
`--field "t^2=<u>*t+<v>"` is given.  Vector fields are one flag,
components separated by ';'.  Exit codes: 0 ok, 1 parse/usage error,
2 domain error (the error name goes to stderr).
"""

from __future__ import annotations

import json
import shlex
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from .errors import (
    DomainError,
    ParseError,
    ThetaWithoutField,
    UnknownVariable,
    UsageError,
    WebflatError,
)
from .field import RATIONALS, FieldScalar, FieldSpec
from .poly import MPoly, render_poly
from .singular import classify_singularity, verify_classification
from .webs import (
    AffineVectorField,
    CubicWebEquation,
    CurvatureForm,
    EtaWebSpec,
    HomogeneousVectorField,
    ProjectivePoint,
    dual_curvature,
    eta_criterion,
    gauss_map_point,
    holomorphic_along,
    inflection_divisor,
    is_flat,
    legendre_transform,
    tangent_cone,
    web_curvature,
    web_discriminant,
)

VERBS = (
    "legendre",
    "curvature",
    "dual-curvature",
    "flat",
    "inflection",
    "discriminant",
    "tangent-cone",
    "sing",
    "eta",
    "classify",
    "gauss",
)


# -- lexer / parser -----------------------------------------------------------

_VAR_NAMES = set("xyzpqt")


class _Token:
    __slots__ = ("kind", "text", "offset")

    def __init__(self, kind, text, offset):
        self.kind = kind
        self.text = text
        self.offset = offset


def _tokenize(src: str):
    tokens = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            tokens.append(_Token("uint", src[i:j], i))
            i = j
            continue
        if ch.isalpha():
            if ch not in _VAR_NAMES:
                raise UnknownVariable(
                    "unknown variable %r at offset %d" % (ch, i), i, ("variable",)
                )
            tokens.append(_Token("var", ch, i))
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ParseError("unexpected character %r at offset %d" % (ch, i), i, ())
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    """Recursive-descent parser producing an MPoly over the chosen field."""

    def __init__(self, src: str, spec: FieldSpec | None, theta_is_variable=False):
        self.src = src
        self.spec = spec or RATIONALS
        self.have_field = spec is not None and spec.is_quadratic
        self.theta_is_variable = theta_is_variable
        self.tokens = _tokenize(src)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind: str) -> _Token:
        token = self.peek()
        if token.kind != kind:
            raise ParseError(
                "expected %s at offset %d" % (kind, token.offset), token.offset, (kind,)
            )
        return self.take()

    def parse(self) -> MPoly:
        result = self.expr()
        token = self.peek()
        if token.kind != "end":
            raise ParseError(
                "unexpected %r at offset %d" % (token.text, token.offset),
                token.offset,
                ("+", "-", "*", "^", "end"),
            )
        return result

    def expr(self) -> MPoly:
        value = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> MPoly:
        value = self.factor()
        while self.peek().kind == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self) -> MPoly:
        base = self.base()
        if self.peek().kind == "^":
            self.take()
            exponent = self.expect("uint")
            return base ** int(exponent.text)
        return base

    def base(self) -> MPoly:
        token = self.peek()
        if token.kind == "-":
            self.take()
            return -self.factor()
        if token.kind == "(":
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        if token.kind == "var":
            self.take()
            if token.text == "t" and not self.theta_is_variable:
                if not self.have_field:
                    raise ThetaWithoutField(
                        "symbol t at offset %d needs --field" % token.offset,
                        token.offset,
                    )
                return MPoly.constant(FieldScalar.theta(self.spec), self.spec)
            return MPoly.variable(token.text, self.spec)
        if token.kind == "uint":
            self.take()
            numerator = int(token.text)
            if self.peek().kind == "/":
                self.take()
                denominator = self.expect("uint")
                if int(denominator.text) == 0:
                    raise ParseError(
                        "zero denominator at offset %d" % denominator.offset,
                        denominator.offset,
                        ("uint",),
                    )
                return MPoly.constant(
                    FieldScalar(Fraction(numerator, int(denominator.text)), 0, self.spec),
                    self.spec,
                )
            return MPoly.constant(numerator, self.spec)
        raise ParseError(
            "expected a value at offset %d" % token.offset,
            token.offset,
            ("var", "rational", "(", "-"),
        )


def parse_poly(src: str, spec: FieldSpec | None = None) -> MPoly:
    """Parse an expression into a canonical polynomial."""
    return _Parser(src, spec).parse()


def parse_field(text: str) -> FieldSpec:
    """Parse --field "t^2=<rhs>" where rhs is linear in t."""
    head, sep, rhs = text.replace(" ", "").partition("=")
    if head != "t^2" or not sep:
        raise UsageError('--field must look like "t^2=u*t+v"')
    try:
        poly = _Parser(rhs, None, theta_is_variable=True).parse()
    except ParseError as err:
        raise UsageError("bad --field value: %s" % err) from err
    if poly.degree_in("t") > 1 or (poly.variables() - {"t"}):
        raise UsageError("--field right-hand side must be linear in t")
    u = poly.coefficient("t", 1).constant_value().a
    v = poly.coefficient("t", 0).constant_value().a
    try:
        return FieldSpec("quadratic", u, v)
    except ValueError as err:
        raise UsageError(str(err)) from err


def parse_scalar(src: str, spec: FieldSpec | None) -> FieldScalar:
    poly = parse_poly(src, spec)
    if not poly.is_constant():
        raise UsageError("expected a constant, got %r" % src)
    return poly.constant_value()


def parse_point(text: str, spec: FieldSpec | None, arity: int):
    parts = text.split(",")
    if len(parts) != arity:
        raise UsageError("expected %d comma-separated coordinates" % arity)
    return tuple(parse_scalar(part.strip(), spec) for part in parts)


def parse_components(text: str, spec: FieldSpec | None, counts) -> list:
    parts = [part.strip() for part in text.split(";")]
    if len(parts) not in counts:
        raise UsageError(
            "expected %s ';'-separated components" % " or ".join(map(str, counts))
        )
    return [parse_poly(part, spec) for part in parts]


# -- command model ------------------------------------------------------------


@dataclass
class Command:
    verb: str
    payload: dict = dataclass_field(default_factory=dict)
    field: FieldSpec | None = None
    field_text: str | None = None
    format: str = "text"


def _split_flags(argv):
    """Separate `--flag value` pairs from positional operands."""
    flags = {}
    positionals = []
    known = ("--vf", "--web", "--at", "--field", "--format", "--along", "--batch")
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg.startswith("--"):
            if arg not in known:
                raise UsageError("unknown flag %s" % arg)
            if i + 1 >= len(argv):
                raise UsageError("flag %s needs a value" % arg)
            if arg in flags:
                raise UsageError("duplicate flag %s" % arg)
            flags[arg] = argv[i + 1]
            i += 2
        else:
            positionals.append(arg)
            i += 1
    return flags, positionals


def build_command(argv) -> Command:
    argv = list(argv)
    if not argv:
        raise UsageError("usage: webflat <verb> [--vf 'A ; B'] [options]")
    flags, positionals = _split_flags(argv)
    if "--batch" in flags:
        raise UsageError("--batch is a top-level mode, not a verb option")
    verb = positionals[0] if positionals else None
    if verb not in VERBS:
        raise UsageError(
            "unknown verb %r (expected one of %s)" % (verb, ", ".join(VERBS))
        )
    operands = positionals[1:]
    spec = None
    field_text = flags.get("--field")
    if field_text is not None:
        spec = parse_field(field_text)
    fmt = flags.get("--format", "text")
    if fmt not in ("text", "json"):
        raise UsageError("--format must be text or json")
    cmd = Command(verb=verb, field=spec, field_text=field_text, format=fmt)
    payload = cmd.payload

    def need(flag):
        if flag not in flags:
            raise UsageError("verb %s needs %s" % (verb, flag))
        return flags[flag]

    if verb in ("legendre", "dual-curvature", "flat", "tangent-cone"):
        a, b = parse_components(need("--vf"), spec, (2,))
        payload["vf"] = AffineVectorField(a, b)
    elif verb == "curvature":
        payload["web"] = CubicWebEquation.from_polynomial(
            parse_poly(need("--web"), spec), "p", ("x", "y")
        )
        if "--along" in flags:
            payload["along"] = parse_poly(flags["--along"], spec)
    elif verb == "inflection":
        a, b, c = parse_components(need("--vf"), spec, (3,))
        payload["hvf"] = HomogeneousVectorField(a, b, c)
    elif verb == "discriminant":
        if "--web" in flags:
            payload["web"] = CubicWebEquation.from_polynomial(
                parse_poly(flags["--web"], spec), "p", ("x", "y")
            )
        else:
            a, b = parse_components(need("--vf"), spec, (2,))
            payload["vf"] = AffineVectorField(a, b)
    elif verb == "sing":
        a, b = parse_components(need("--vf"), spec, (2,))
        payload["vf"] = AffineVectorField(a, b)
        payload["at"] = parse_point(need("--at"), spec, 2)
    elif verb == "eta":
        if len(operands) != 2:
            raise UsageError('usage: webflat eta "h1 ; h2 ; h3" <a>')
        h1, h2, h3 = parse_components(operands[0], spec, (3,))
        try:
            order = int(operands[1])
        except ValueError:
            raise UsageError("eta order must be an integer") from None
        payload["eta"] = (h1, h2, h3, order)
    elif verb == "classify":
        if len(operands) != 1:
            raise UsageError("usage: webflat classify <nu>")
        payload["nu"] = parse_scalar(operands[0], spec)
    elif verb == "gauss":
        a, b, c = parse_components(need("--vf"), spec, (3,))
        payload["hvf"] = HomogeneousVectorField(a, b, c)
        payload["at"] = parse_point(need("--at"), spec, 3)
    if verb != "eta" and verb != "classify" and operands:
        raise UsageError("verb %s takes no positional operands" % verb)
    return cmd


# -- rendering ----------------------------------------------------------------


def _chart_name(chart) -> str:
    return "".join(chart)


def _bool_text(value: bool) -> str:
    return "true" if value else "false"


def _tau_json(value):
    return "infinity" if value == float("inf") else int(value)


def _scalar_text(value: FieldScalar) -> str:
    return str(value)


def _render_result(cmd: Command, kind: str, payload: dict):
    if cmd.format == "json":
        result = {"kind": kind}
        result.update(payload)
        return json.dumps(
            {"command": cmd.verb, "field": cmd.field_text, "result": result}
        )
    lines = []
    for key, value in payload.items():
        lines.append("%s: %s" % (key, value))
    return "\n".join(lines)


def execute(cmd: Command) -> str:
    verb = cmd.verb
    payload = cmd.payload
    if verb == "legendre":
        web = legendre_transform(payload["vf"])
        return _render_result(
            cmd,
            "report",
            {
                "slope": web.slope_var,
                "chart": _chart_name(web.base_vars),
                "a0": render_poly(web.a0),
                "a1": render_poly(web.a1),
                "a2": render_poly(web.a2),
                "a3": render_poly(web.a3),
            },
        )
    if verb == "curvature":
        form = web_curvature(payload["web"])
        if "along" in payload:
            ok = holomorphic_along(form, payload["along"])
            if cmd.format == "json":
                return _render_result(cmd, "bool", {"value": ok})
            return "holomorphic: %s" % _bool_text(ok)
        return _render_curvature(cmd, form)
    if verb == "dual-curvature":
        return _render_curvature(cmd, dual_curvature(payload["vf"]))
    if verb == "flat":
        flat = is_flat(payload["vf"])
        if cmd.format == "json":
            return _render_result(cmd, "bool", {"value": flat})
        return "flat: %s" % _bool_text(flat)
    if verb == "inflection":
        poly = inflection_divisor(payload["hvf"])
        return _render_poly_result(cmd, poly)
    if verb == "discriminant":
        web = payload.get("web")
        if web is None:
            web = legendre_transform(payload["vf"])
        return _render_poly_result(cmd, web_discriminant(web))
    if verb == "tangent-cone":
        return _render_poly_result(cmd, tangent_cone(payload["vf"]))
    if verb == "sing":
        report = classify_singularity(payload["vf"], payload["at"])
        data = {
            "point": "(%s, %s)" % tuple(map(_scalar_text, report.point)),
            "nu": report.nu,
            "tau": _tau_json(report.tau),
            "radial": report.radial,
            "special": report.special,
        }
        if cmd.format == "json":
            return _render_result(cmd, "report", data)
        data["radial"] = _bool_text(report.radial)
        data["special"] = _bool_text(report.special)
        return _render_result(cmd, "report", data)
    if verb == "eta":
        h1, h2, h3, order = payload["eta"]
        ok = eta_criterion(EtaWebSpec(h1, h2, h3, order))
        if cmd.format == "json":
            return _render_result(cmd, "bool", {"value": ok})
        return "eta: %s" % _bool_text(ok)
    if verb == "classify":
        flat = verify_classification(payload["nu"])
        if cmd.format == "json":
            return _render_result(cmd, "bool", {"value": flat})
        return "flat: %s" % _bool_text(flat)
    if verb == "gauss":
        point = ProjectivePoint(*payload["at"])
        image = gauss_map_point(payload["hvf"], point)
        coords = [_scalar_text(c) for c in image.coords]
        if cmd.format == "json":
            return _render_result(cmd, "report", {"point": coords})
        return "(%s : %s : %s)" % tuple(coords)
    raise UsageError("unknown verb %r" % verb)


def _render_curvature(cmd: Command, form: CurvatureForm) -> str:
    return _render_result(
        cmd,
        "ratfn",
        {
            "numerator": render_poly(form.coeff.num),
            "denominator": render_poly(form.coeff.den),
            "chart": _chart_name(form.chart),
        },
    )


def _render_poly_result(cmd: Command, poly: MPoly) -> str:
    if cmd.format == "json":
        return _render_result(cmd, "poly", {"text": render_poly(poly)})
    return render_poly(poly)


# -- entry points --------------------------------------------------------------


def run_line(argv):
    """One command line -> (stdout text, stderr text, exit code)."""
    try:
        cmd = build_command(argv)
    except (UsageError, ParseError) as err:
        return "", "error: %s: %s" % (type(err).__name__, err), 1
    except DomainError as err:  # mathematically invalid operands
        return "", "error: %s: %s" % (type(err).__name__, err), 2
    try:
        return execute(cmd), "", 0
    except DomainError as err:
        return "", "error: %s: %s" % (type(err).__name__, err), 2
    except WebflatError as err:  # parse errors surfacing from payload use
        return "", "error: %s: %s" % (type(err).__name__, err), 1


def run_batch(path: str):
    """Run each nonblank line of the file in parallel, print in order."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = [line.strip() for line in handle]
    except OSError as err:
        return "", "error: UsageError: cannot read batch file: %s" % err, 1
    jobs = [shlex.split(line) for line in lines if line and not line.startswith("#")]
    if not jobs:
        return "", "", 0
    with ThreadPoolExecutor(max_workers=min(8, len(jobs))) as pool:
        results = list(pool.map(run_line, jobs))
    out = "\n".join(text for text, _, _ in results if text)
    err = "\n".join(text for _, text, _ in results if text)
    code = max(code for _, _, code in results)
    return out, err, code


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if "--batch" in argv:
        i = argv.index("--batch")
        if i + 1 >= len(argv):
            print("error: UsageError: --batch needs a file", file=sys.stderr)
            return 1
        out, err, code = run_batch(argv[i + 1])
    else:
        out, err, code = run_line(argv)
    if out:
        print(out)
    if err:
        print(err, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
