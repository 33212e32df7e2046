"""Shared strategies and an independent sympy oracle for the test suite."""

from fractions import Fraction

import sympy as sp
from hypothesis import strategies as st

from kfueter.exact import ExactComplex, Poly4, SymField

SX = sp.symbols("x0:4", real=True)
SR2 = sum(v**2 for v in SX)

small_fraction = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def complexes(draw, real=False):
    re = draw(small_fraction)
    im = Fraction(0) if real else draw(small_fraction)
    return ExactComplex(re, im)


@st.composite
def exponents(draw, max_deg=3):
    deg = draw(st.integers(0, max_deg))
    cuts = sorted(draw(st.integers(0, deg)) for _ in range(3))
    return (cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], deg - cuts[2])


@st.composite
def polys(draw, max_deg=3, max_terms=4, real=False):
    terms = draw(st.dictionaries(exponents(max_deg), complexes(real), max_size=max_terms))
    return Poly4(terms)


@st.composite
def fields(draw, max_deg=3, max_m=2, real=False):
    return SymField(draw(polys(max_deg, real=real)), draw(st.integers(0, max_m)))


def to_sympy(f):
    """Independent expression for a SymField (sympy oracle)."""
    num = 0
    for (a, b, c, d), v in f.num.terms.items():
        coeff = sp.Rational(v.re.numerator, v.re.denominator) + sp.I * sp.Rational(
            v.im.numerator, v.im.denominator
        )
        num += coeff * SX[0] ** a * SX[1] ** b * SX[2] ** c * SX[3] ** d
    return num / SR2**f.m


def sympy_equal(expr, f):
    return sp.simplify(sp.together(expr - to_sympy(f))) == 0


def random_points(rng, n, min_r2=0.25):
    out = []
    while len(out) < n:
        p = tuple(rng.uniform(-2, 2) for _ in range(4))
        if sum(v * v for v in p) >= min_r2:
            out.append(p)
    return out
