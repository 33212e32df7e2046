"""Exact periods of 3-forms over the unit sphere S^3 and obstruction checks.

Values are exact rational (Gaussian) multiples of pi^2, computed from the
moments of monomials over S^3.  Numeric quadrature lives here only as an
independent oracle for tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .certificate import Certificate
from .errors import NotHarmonic
from .exact import ExactComplex, SymField, laplacian
from .forms import DiffForm, flux3form

__all__ = [
    "PiSquaredValue",
    "sphere_moment",
    "period_s3",
    "obstruction_certificate",
    "mixed_to_3form",
    "quadrature_period",
    "monte_carlo_moment",
]


@dataclass(frozen=True)
class PiSquaredValue:
    """coeff * pi^2 with an exact Gaussian rational coefficient."""

    coeff: ExactComplex

    def __bool__(self):
        return bool(self.coeff)

    def __add__(self, other):
        return PiSquaredValue(self.coeff + other.coeff)

    def __float__(self):
        return float(self.coeff.re) * math.pi**2

    def __complex__(self):
        return complex(self.coeff) * math.pi**2

    def to_json(self):
        c = self.coeff
        if c.im == 0:
            return [c.re.numerator, c.re.denominator]
        return {"re": [c.re.numerator, c.re.denominator], "im": [c.im.numerator, c.im.denominator]}

    def __str__(self):
        return f"({self.coeff})*pi^2"


def _double_factorial(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


@lru_cache(maxsize=None)
def _moment_coeff(alpha):
    if any(a % 2 for a in alpha):
        return Fraction(0)
    b = [a // 2 for a in alpha]
    B = sum(b)
    num = 2
    for bi in b:
        num *= _double_factorial(2 * bi - 1)
    return Fraction(num, 2**B * math.factorial(B + 1))


def sphere_moment(alpha):
    """Integral of x^alpha over the unit sphere S^3, as a multiple of pi^2."""
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != 4 or min(alpha) < 0:
        raise ValueError("alpha must be four nonnegative integers")
    return PiSquaredValue(ExactComplex(_moment_coeff(alpha)))


def period_s3(w):
    """Integral of a 3-form over the outward-oriented unit sphere."""
    if w.p != 3:
        raise ValueError("period_s3 needs a 3-form")
    total = ExactComplex(0)
    for key, c in w.comps.items():
        i = next(a for a in range(4) if a not in key)
        sign = -1 if i % 2 else 1
        # r2 = 1 on the unit sphere, so the denominator drops out
        for e, v in c.num.terms.items():
            ee = list(e)
            ee[i] += 1
            mom = _moment_coeff(tuple(ee))
            if mom:
                total = total + v * (mom * sign)
    return PiSquaredValue(total)


def mixed_to_3form(Y):
    """Closed 3-form attached to a field in the target of D^(2).

    For Y = D^(2) X this is exactly d(eta(X)), so a nonzero S^3 period rules
    out every solution of D^(2) X = Y on R^4 minus the origin.
    """
    i = ExactComplex(0, 1)
    (y00, y01), (y10, y11) = Y.comps
    return DiffForm(
        3,
        {
            (1, 2, 3): y00 + y11,
            (0, 2, 3): (y00 - y11).scale(i),
            (0, 1, 3): y10 - y01,
            (0, 1, 2): -(y01 + y10).scale(i),
        },
    )


def obstruction_certificate(h):
    """Period of the flux 3-form of a harmonic h over S^3.

    A nonzero period means h is not the real part of any regular function on
    R^4 minus the origin.
    """
    h = SymField.coerce(h)
    if not laplacian(h).is_zero():
        raise NotHarmonic("Laplacian of h is not zero")
    w = flux3form(h)
    value = period_s3(w)
    status = "obstructed" if value else "clear"
    cert = Certificate(summary={"h": h.to_json(), "period_pi2": value.to_json(), "status": status})
    cert.add("harmonic", "harmonic", {"h": h.to_json()})
    cert.add("flux period", "period", {"w": w.to_json()}, expect="value")
    cert.add("period witness", "period_equals", {"w": w.to_json(), "value_pi2": value.to_json()})
    return cert


def _np_eval(f, x):
    """Vectorized evaluation of a SymField on arrays ``x[0..3]``."""
    out = np.zeros(np.shape(x[0]), dtype=complex)
    for (e0, e1, e2, e3), c in f.num.terms.items():
        out += complex(c) * x[0] ** e0 * x[1] ** e1 * x[2] ** e2 * x[3] ** e3
    if f.m:
        out /= (x[0] ** 2 + x[1] ** 2 + x[2] ** 2 + x[3] ** 2) ** f.m
    return out


def quadrature_period(w, radius=1.0, n=48):
    """Float integral of a 3-form over the sphere of the given radius.

    Gauss-Legendre nodes in the two polar angles, the periodic trapezoid rule
    in the azimuth.
    """
    if w.p != 3:
        raise ValueError("quadrature_period needs a 3-form")
    t, wt = np.polynomial.legendre.leggauss(n)
    psi = (t + 1) * math.pi / 2
    theta = psi.copy()
    wpsi = wt * math.pi / 2
    phi = np.arange(2 * n) * (2 * math.pi / (2 * n))
    wphi = np.full(2 * n, 2 * math.pi / (2 * n))
    P, T, F = np.meshgrid(psi, theta, phi, indexing="ij")
    W = np.einsum("i,j,k->ijk", wpsi, wpsi, wphi)
    nu = [
        np.cos(P),
        np.sin(P) * np.cos(T),
        np.sin(P) * np.sin(T) * np.cos(F),
        np.sin(P) * np.sin(T) * np.sin(F),
    ]
    x = [radius * v for v in nu]
    dS = radius**3 * np.sin(P) ** 2 * np.sin(T)
    integrand = np.zeros(P.shape, dtype=complex)
    for key, c in w.comps.items():
        i = next(a for a in range(4) if a not in key)
        sign = -1 if i % 2 else 1
        integrand += sign * _np_eval(c, x) * nu[i]
    return complex(np.sum(integrand * dS * W))


def monte_carlo_moment(alpha, samples=400_000, seed=0):
    """Float Monte Carlo estimate of the S^3 moment of x^alpha."""
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((samples, 4))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    vals = np.prod(pts ** np.asarray(alpha), axis=1)
    return float(vals.mean() * 2 * math.pi**2)
