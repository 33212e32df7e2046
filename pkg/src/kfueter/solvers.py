"""Constructive pipelines: polynomial Poisson and Cauchy-Fueter solves, ASD
primitives, regular conjugates and the decomposition of harmonic functions
through L0 and L1.

All solvers return *some* exact solution.  Contracts are residual based and
every pipeline attaches a :class:`~kfueter.certificate.Certificate`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .certificate import Certificate
from .errors import NonPolynomialInput, NoSolutionInAnsatz, NotClosed, NotHarmonic
from .exact import ExactComplex, Poly4, SymField, ZERO, homogeneous_parts, laplacian, r2_power
from .forms import DiffForm, asd_project, exterior_d, flux3form, is_asd, poincare_homotopy
from .linalg import solve
from .periods import period_s3
from .nabla import EPS, NABLA_RAISED, Z, ZBAR, nabla_raised
from .quaternion import Quat, cf_Dbar
from .spinor import (
    MixedSpinorField,
    SymSpinorField,
    L_apply,
    L_apply_mixed,
    d1k_apply,
    dk_apply,
    monomials,
)

__all__ = [
    "poisson_solve_poly",
    "cf_solve_poly",
    "asd_primitive_poly",
    "regular_conjugate",
    "build_Y",
    "y_consistency_residuals",
    "graded_cf2_solve",
    "solve_graded_parts",
    "inverse_decompose",
    "DecompositionResult",
]


def _require_polynomial(f, what):
    if f.m:
        raise NonPolynomialInput(f"{what} must be polynomial, got denominator r2^{f.m}")


def _integrate_x0_twice(terms):
    out = {}
    for (a, b, c, d), v in terms.items():
        out[(a + 2, b, c, d)] = v * ExactComplex(Fraction(1, (a + 1) * (a + 2)))
    return out


def _transverse_laplacian(terms):
    out = {}
    for e, v in terms.items():
        for axis in (1, 2, 3):
            k = e[axis]
            if k < 2:
                continue
            ee = list(e)
            ee[axis] -= 2
            ee = tuple(ee)
            s = out.get(ee)
            w = v * (k * (k - 1))
            s = w if s is None else s + w
            if s:
                out[ee] = s
            else:
                out.pop(ee, None)
    return out


def poisson_solve_poly(g):
    """Polynomial u with Laplacian(u) = g.

    Uses u = sum_k (-1)^k J (L' J)^k g where J integrates twice in x0 and L'
    is the Laplacian in x1, x2, x3.  The series stops because L' lowers the
    transverse degree by two at each step.
    """
    g = SymField.coerce(g)
    _require_polynomial(g, "poisson right-hand side")
    total = Poly4()
    t = dict(g.num.terms)
    sign = 1
    while t:
        jt = _integrate_x0_twice(t)
        piece = Poly4._raw(jt)
        total = total + piece if sign > 0 else total - piece
        t = _transverse_laplacian(jt)
        sign = -sign
    return SymField._raw(total, 0)


def cf_solve_poly(g):
    """f with D f = g, built as Dbar applied to a componentwise Poisson solution."""
    comps = [SymField.coerce(c) for c in g.components()]
    for c in comps:
        _require_polynomial(c, "Cauchy-Fueter right-hand side")
    u = Quat(*(poisson_solve_poly(c) for c in comps))
    return cf_Dbar(u)


def asd_primitive_poly(g):
    """Anti-self-dual F with dF = g for a closed polynomial 3-form g."""
    if g.p != 3:
        raise ValueError("asd_primitive_poly needs a 3-form")
    if not g.is_polynomial():
        raise NonPolynomialInput("asd_primitive_poly needs polynomial coefficients")
    if not exterior_d(g).is_zero():
        raise NotClosed("dg is not zero")
    u = poincare_homotopy(g)
    parts = []
    for take in (SymField.re_part, SymField.im_part):
        v = u.map(take)
        rhs = Quat(
            ZERO,
            -(v[(0, 1)] + v[(2, 3)]),
            v[(1, 3)] - v[(0, 2)],
            -(v[(0, 3)] + v[(1, 2)]),
        )
        parts.append(cf_solve_poly(rhs))
    re, im = (p.components() for p in parts)
    i = ExactComplex(0, 1)
    ftilde = DiffForm(
        1,
        {
            (0,): -re[0] - im[0].scale(i),
            (1,): re[1] + im[1].scale(i),
            (2,): re[2] + im[2].scale(i),
            (3,): re[3] + im[3].scale(i),
        },
    )
    F = u + exterior_d(ftilde)
    if not is_asd(F):
        raise ArithmeticError("ASD primitive construction left the anti-self-dual bundle")
    return asd_project(F)


def regular_conjugate(h, certificate=None):
    """Regular f with Re f = h for a real harmonic polynomial h."""
    h = SymField.coerce(h)
    _require_polynomial(h, "h")
    if not h.is_real():
        raise ValueError("regular_conjugate needs a real-valued h")
    if not laplacian(h).is_zero():
        raise NotHarmonic("Laplacian of h is not zero")
    H = flux3form(h)
    F = asd_primitive_poly(H)
    f = Quat(h, F.a1, F.a2, F.a3)
    if certificate is not None:
        certificate.add("harmonic", "harmonic", {"h": h.to_json()})
        certificate.add("asd", "asd", {"w": F.to_json()})
        certificate.add("dF=H", "d_equals", {"F": F.to_json(), "g": H.to_json()})
        certificate.add("bridge", "bridge", {"F": F.to_json()})
        certificate.add("Re f = h", "real_part", {"u": f.to_json(), "h": h.to_json()})
        certificate.add("D f = 0", "quat_D", {"u": f.to_json()})
    return f


def _require_harmonic(h):
    if not laplacian(h).is_zero():
        raise NotHarmonic("Laplacian of h is not zero")


def build_Y(h):
    """Y_{A,j} = sum_k eps_{jk} (nabla_A^{k'} h / r2 + 2 z_A^{k'} h / r2^2)."""
    h = SymField.coerce(h)
    _require_harmonic(h)
    h2 = h.over_r2(2)
    rows = []
    for A in range(2):
        row = []
        for j in range(2):
            acc = ZERO
            for k in range(2):
                e = EPS[j][k]
                if e:
                    term = nabla_raised(A, k, h).over_r2(1) + (Z[A][k] * h2).scale(2)
                    acc = acc + (term if e > 0 else -term)
            row.append(acc)
        rows.append(tuple(row))
    return MixedSpinorField(2, tuple(rows))


def _zbar_pair(A, h):
    h1 = SymField.coerce(h).over_r2(1)
    return SymSpinorField(1, (ZBAR[A][0] * h1, ZBAR[A][1] * h1))


def y_consistency_residuals(h, Y):
    """Residual lists for the three identities a valid Y must satisfy."""
    a = dk_apply(_zbar_pair(0, h))
    b = dk_apply(_zbar_pair(1, h))
    return {
        "L1": (L_apply_mixed(1, Y) + a).flat(),
        "L0": (L_apply_mixed(0, Y) - b).flat(),
        "D1": list(d1k_apply(Y).comps),
    }


def _mixed_by_degree(Y):
    parts = {}
    for A in range(2):
        for j in range(2):
            for deg, piece in homogeneous_parts(Y.comps[A][j]):
                parts.setdefault(deg, {})[(A, j)] = piece
    return parts


def _solve_part(target, r, m):
    """Solve D^(2) X = target with X = P / r2^m, P homogeneous of degree r+1+2m."""
    n = r + 1 + 2 * m
    if n < 0:
        return None
    K = max([m + 1] + [f.m for f in target.values()])
    lift = r2_power(K - m - 1)
    r2p = r2_power(1)
    monos = monomials(n)
    unknowns = [(s, e) for s in range(3) for e in monos]
    grads = {}
    columns = []
    for s, e in unknowns:
        if e not in grads:
            mono = Poly4.monomial(e)
            d = [mono.diff(a) for a in range(4)]
            g = {}
            for A in range(2):
                for Bp in range(2):
                    acc = Poly4()
                    for axis, c in NABLA_RAISED[A][Bp]:
                        acc = acc + d[axis].scale(c)
                    num = acc * r2p - (Z[A][Bp].num * mono).scale(ExactComplex(2 * m))
                    g[(A, Bp)] = num * lift if K > m + 1 else num
            grads[e] = g
        col = {}
        # slot s feeds out[A][s] through nabla^{0'} and out[A][s-1] through nabla^{1'}
        for Bp, j in ((0, s), (1, s - 1)):
            if not 0 <= j < 2:
                continue
            for A in range(2):
                for t, v in grads[e][(A, Bp)].terms.items():
                    key = (A, j, t)
                    w = col.get(key)
                    col[key] = v if w is None else w + v
        columns.append({k: v for k, v in col.items() if v})
    rhs_map = {}
    for (A, j), f in target.items():
        num = f.num * r2_power(K - f.m) if K > f.m else f.num
        for t, v in num.terms.items():
            rhs_map[(A, j, t)] = v
    keys = sorted({k for col in columns for k in col} | set(rhs_map))
    index = {k: n for n, k in enumerate(keys)}
    rows = [dict() for _ in keys]
    for c, col in enumerate(columns):
        for k, v in col.items():
            rows[index[k]][c] = v
    rhs = [rhs_map.get(k, ExactComplex(0)) for k in keys]
    x = solve(rows, rhs, len(unknowns))
    if x is None:
        return None
    slots = [dict() for _ in range(3)]
    for (s, e), v in zip(unknowns, x):
        if v:
            slots[s][e] = v
    return SymSpinorField(2, tuple(SymField(Poly4._raw(t), m) for t in slots))


def _period_witness(target):
    from .periods import mixed_to_3form

    part = MixedSpinorField(2, tuple(tuple(target.get((A, j), ZERO) for j in range(2)) for A in range(2)))
    value = period_s3(mixed_to_3form(part))
    if not value:
        return ""
    return (
        f"the closed 3-form attached to this part has S^3 period {value}, "
        "so no solution exists on R^4 minus the origin"
    )


def solve_graded_parts(Y, M):
    """Per-degree solutions ``[(degree, m_used, X_part)]`` of D^(2) X = Y.

    For each homogeneous part the denominator exponent is escalated from the
    smallest admissible value up to ``M``; the first exponent that admits an
    exact solution is used.  Raises :class:`NoSolutionInAnsatz` otherwise.
    """
    if not d1k_apply(Y).is_zero():
        raise NotClosed("the compatibility operator does not annihilate Y")
    out = []
    for r, target in sorted(_mixed_by_degree(Y).items()):
        found = None
        for m in range(0, M + 1):
            X = _solve_part(target, r, m)
            if X is not None:
                found = (r, m, X)
                break
        if found is None:
            raise NoSolutionInAnsatz(M, degree=r, detail=_period_witness(target))
        out.append(found)
    return out


def graded_cf2_solve(Y, M):
    """X with D^(2) X = Y, searched in the graded rational ansatz up to r2^M."""
    X = SymSpinorField.zero(2)
    for _, _, part in solve_graded_parts(Y, M):
        X = X + part
    if not (dk_apply(X) - Y).is_zero():
        raise ArithmeticError("graded solve produced a nonzero residual")
    return X


@dataclass
class DecompositionResult:
    h: SymField
    f_pair: tuple
    g_pair: tuple
    F0: SymField
    F1: SymField
    G0: SymField
    G1: SymField
    X: SymSpinorField
    residuals: Certificate
    denominator_exponents: dict

    def to_json(self):
        return {
            "h": self.h.to_json(),
            "f_pair": [c.to_json() for c in self.f_pair],
            "g_pair": [c.to_json() for c in self.g_pair],
            "F0": self.F0.to_json(),
            "F1": self.F1.to_json(),
            "G0": self.G0.to_json(),
            "G1": self.G1.to_json(),
            "X": self.X.to_json(),
            "denominator_exponents": {str(k): v for k, v in sorted(self.denominator_exponents.items())},
            "certificate": self.residuals.to_json(),
        }


def inverse_decompose(h, M):
    """Write a harmonic h as L0 f + L1 g with 1-regular pairs f and g."""
    h = SymField.coerce(h)
    _require_harmonic(h)
    cert = Certificate()
    Y = build_Y(h)
    for which in ("L1", "L0", "D1"):
        cert.add(f"Y consistency {which}", "y_consistency", {"h": h.to_json(), "Y": Y.to_json(), "which": which})
    parts = solve_graded_parts(Y, M)
    X = SymSpinorField.zero(2)
    for _, _, part in parts:
        X = X + part
    cert.add("D2 X = Y", "d2_equals", {"X": X.to_json(), "Y": Y.to_json()})

    half = ExactComplex(Fraction(1, 2))
    f = (_zbar_pair(0, h) + L_apply(1, X)).scale(half)
    g = (_zbar_pair(1, h) - L_apply(0, X)).scale(half)
    f0, f1 = f.comps
    g0, g1 = g.comps
    F0, F1, G0, G1 = -f1, f0, -g1, g0

    cert.add("f 1-regular", "k_regular", {"f": f.to_json()})
    cert.add("g 1-regular", "k_regular", {"f": g.to_json()})
    cert.add("h = L0 f + L1 g", "L_decomposition", {"h": h.to_json(), "f": f.to_json(), "g": g.to_json()})
    cert.add(
        "coordinate identity",
        "coordinate_identity",
        {"h": h.to_json(), "F0": F0.to_json(), "F1": F1.to_json(), "G0": G0.to_json(), "G1": G1.to_json()},
    )
    cert.add("D(F0 + j F1) = 0", "pair_regular", {"pair": [F0.to_json(), F1.to_json()]})
    cert.add("D(G0 + j G1) = 0", "pair_regular", {"pair": [G0.to_json(), G1.to_json()]})
    return DecompositionResult(
        h, (f0, f1), (g0, g1), F0, F1, G0, G1, X, cert, {r: m for r, m, _ in parts}
    )
