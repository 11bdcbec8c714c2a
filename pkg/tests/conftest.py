import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from kellerkit.endo import PolyMap
from kellerkit.polycore import Polynomial

settings.register_profile(
    "default", deadline=None, derandomize=True, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", deadline=None, max_examples=300)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def P(*texts):
    """Map from coordinate strings."""
    return PolyMap.from_strings(list(texts))


coefficients = st.one_of(
    st.integers(-6, 6),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
)


@st.composite
def polynomials(draw, nvars=2, max_degree=3, max_terms=4, nonzero=False):
    n = nvars
    k = draw(st.integers(1 if nonzero else 0, max_terms))
    terms = {}
    for _ in range(k):
        exps = tuple(draw(st.lists(st.integers(0, max_degree), min_size=n, max_size=n)))
        if sum(exps) > max_degree:
            continue
        c = Fraction(draw(coefficients))
        if c:
            terms[exps] = terms.get(exps, 0) + c
    p = Polynomial(n, terms)
    if nonzero and not p:
        p = Polynomial.constant(n, draw(st.integers(1, 5)))
    return p


@st.composite
def small_maps(draw, nvars=2, max_degree=2):
    return PolyMap(tuple(draw(polynomials(nvars, max_degree, 3, nonzero=True))
                         for _ in range(nvars)))


@pytest.fixture
def tri():
    return P("x1 + x2^2", "x2")


def to_sympy(p, symbols):
    import sympy

    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for s, k in zip(symbols, e):
            term *= s ** k
        expr += term
    return expr


def from_sympy(expr, symbols):
    import sympy

    poly = sympy.Poly(expr, *symbols)
    terms = {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in poly.terms()}
    return Polynomial(len(symbols), terms)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
