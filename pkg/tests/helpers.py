"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

from fractions import Fraction

from webflat import MPoly, RATIONALS, FieldScalar
from webflat.poly import VARIABLES


def random_scalar(rng, spec=RATIONALS, quadratic=False):
    a = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    if quadratic and spec.is_quadratic:
        b = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        return FieldScalar(a, b, spec)
    return FieldScalar(a, 0, spec)


def random_poly(rng, variables=("x", "y"), max_degree=2, n_terms=3, spec=RATIONALS,
                nonzero=False, quadratic=False):
    while True:
        poly = MPoly.zero(spec)
        for _ in range(n_terms):
            exponent = [0] * len(VARIABLES)
            for name in variables:
                exponent[VARIABLES.index(name)] = rng.randint(0, max_degree)
            coeff = random_scalar(rng, spec, quadratic)
            poly = poly + MPoly.monomial(tuple(exponent), coeff, spec)
        if not nonzero or not poly.is_zero():
            return poly


def random_poly_td(rng, variables=("x", "y"), max_total=2, n_terms=2, spec=RATIONALS,
                   nonzero=False):
    """Random polynomial with bounded TOTAL degree and small integer
    coefficients (the natural population for web coefficients)."""
    names = list(variables)
    while True:
        poly = MPoly.zero(spec)
        for _ in range(n_terms):
            total = rng.randint(0, max_total)
            exponent = [0] * len(VARIABLES)
            for _ in range(total):
                name = rng.choice(names)
                exponent[VARIABLES.index(name)] += 1
            coeff = rng.randint(-3, 3)
            poly = poly + MPoly.monomial(tuple(exponent), coeff, spec)
        if not nonzero or not poly.is_zero():
            return poly


def random_homogeneous(rng, degree, variables=("x", "y"), spec=RATIONALS, nonzero=True):
    """Random homogeneous polynomial of exact total degree."""
    names = list(variables)
    while True:
        poly = MPoly.zero(spec)
        exponents = _compositions(degree, len(names))
        for combo in exponents:
            if rng.random() < 0.4:
                continue
            coeff = Fraction(rng.randint(-4, 4))
            if coeff == 0:
                continue
            exponent = [0] * len(VARIABLES)
            for name, e in zip(names, combo):
                exponent[VARIABLES.index(name)] = e
            poly = poly + MPoly.monomial(tuple(exponent), coeff, spec)
        if not nonzero or not poly.is_zero():
            return poly


def _compositions(total, parts):
    if parts == 1:
        return [(total,)]
    out = []
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            out.append((head,) + tail)
    return out


# -- independent oracles -------------------------------------------------------


def brute_force_power(factors):
    """Expand a product of polynomials one distributed pick at a time.

    Completely avoids MPoly multiplication: every term of the result is
    accumulated by enumerating one term from each factor.
    """
    import itertools

    spec = factors[0].spec
    acc = {}
    term_lists = [list(f.terms.items()) for f in factors]
    for picks in itertools.product(*term_lists):
        exponent = tuple(sum(parts) for parts in zip(*(e for e, _ in picks)))
        coeff = FieldScalar(1, 0, spec)
        for _, c in picks:
            coeff = coeff * c
        have = acc.get(exponent)
        acc[exponent] = coeff if have is None else have + coeff
    return MPoly({e: c for e, c in acc.items() if not c.is_zero()}, spec)


def cofactor_determinant(rows):
    """Plain Laplace expansion along the first row, no memoization."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    spec = rows[0][0].spec
    total = MPoly.zero(spec)
    for j in range(n):
        entry = rows[0][j]
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = entry * cofactor_determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total
