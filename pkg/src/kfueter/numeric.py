"""Floating-point cross-checks of the symbolic operators.

Each first-order operator is rebuilt from central differences of its input
components and compared with the evaluated symbolic output.  Zeroth-order
operators (L0, L1, the Hodge star) are compared by plain evaluation.

The relative error is ``abs_err / max(1, scale)`` where ``scale`` is the
largest magnitude among the symbolic output values and the input partials
(or input values, for zeroth-order operators) at that point.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass

from .exact import SymField
from .forms import DiffForm, exterior_d, hodge_star
from .nabla import NABLA_RAISED
from .quaternion import Quat, cf_D, cf_Dbar
from .spinor import MixedSpinorField, SymSpinorField, L_apply, d1k_apply, dk_apply

__all__ = ["FDReport", "fd_derivative", "fd_check_operator", "OPERATORS"]

DEFAULT_STEP = 1e-4


@dataclass
class FDReport:
    op: str
    point: tuple
    step: float
    max_abs_error: float
    max_rel_error: float
    points_checked: int = 0

    def to_json(self):
        d = asdict(self)
        d["point"] = list(self.point)
        return d

    def to_json_line(self):
        return json.dumps(self.to_json(), sort_keys=True)


def fd_derivative(f, axis, p, step=DEFAULT_STEP):
    """Central difference (f(p + step e_axis) - f(p - step e_axis)) / (2 step)."""
    f = SymField.coerce(f)
    ev = f.compile()
    return _central(ev, axis, [float(v) for v in p], step)


def _central(ev, axis, p, step):
    hi = list(p)
    lo = list(p)
    hi[axis] += step
    lo[axis] -= step
    return (ev(hi) - ev(lo)) / (2 * step)


# numeric Hamilton product on 4-tuples of complex numbers
def _hamilton(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


_UNITS = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def _num_dirac(sign):
    def rebuild(vals, der, p):
        out = [0j] * 4
        for axis in range(4):
            col = tuple(der[c][axis] for c in range(4))
            term = _hamilton(_UNITS[axis], col)
            s = 1 if axis == 0 else sign
            for n in range(4):
                out[n] += s * term[n]
        return out

    return rebuild


def _num_z(p):
    x0, x1, x2, x3 = p
    return ((-x2 - 1j * x3, -x0 - 1j * x1), (x0 - 1j * x1, -x2 + 1j * x3))


def _num_nabla(der_c, A, Bp):
    return sum(complex(c) * der_c[axis] for axis, c in NABLA_RAISED[A][Bp])


def _form_keys(p):
    return list(itertools.combinations(range(4), p))


def _spec_D(field, sign):
    comps = list(field.components())
    sym = list((cf_D if sign > 0 else cf_Dbar)(field).components())
    return comps, sym, _num_dirac(sign), True


def _spec_dk(f):
    k = f.k
    sym = dk_apply(f).flat()

    def rebuild(vals, der, p):
        return [
            _num_nabla(der[j], A, 0) + _num_nabla(der[j + 1], A, 1) for A in range(2) for j in range(k)
        ]

    return list(f.comps), sym, rebuild, True


def _spec_d1k(g):
    k = g.k
    comps = g.flat()
    sym = list(d1k_apply(g).comps)

    def rebuild(vals, der, p):
        row = lambda A, t: der[A * k + t]  # noqa: E731
        out = []
        for t in range(k - 1):
            acc = 0j
            for ap in range(2):
                acc += _num_nabla(row(1, t + ap), 0, ap) - _num_nabla(row(0, t + ap), 1, ap)
            out.append(acc)
        return out

    return comps, sym, rebuild, True


def _spec_L(j, f):
    k = f.k
    sym = list(L_apply(j, f).comps)

    def rebuild(vals, der, p):
        z0, z1 = _num_z(p)[j]
        return [z0 * vals[t] + z1 * vals[t + 1] for t in range(k)]

    return list(f.comps), sym, rebuild, False


def _spec_d(w):
    keys = _form_keys(w.p)
    out_keys = _form_keys(w.p + 1)
    sym = [exterior_d(w)[k] for k in out_keys]

    def rebuild(vals, der, p):
        idx = {k: n for n, k in enumerate(keys)}
        out = []
        for J in out_keys:
            acc = 0j
            for pos, a in enumerate(J):
                rest = J[:pos] + J[pos + 1:]
                acc += (-1) ** pos * der[idx[rest]][a]
            out.append(acc)
        return out

    return [w[k] for k in keys], sym, rebuild, True


def _spec_star(w):
    keys = _form_keys(w.p)
    out_keys = _form_keys(4 - w.p)
    sym = [hodge_star(w)[k] for k in out_keys]

    def rebuild(vals, der, p):
        out = {}
        for n, I in enumerate(keys):
            comp = tuple(a for a in range(4) if a not in I)
            perm = I + comp
            inv = sum(1 for a in range(4) for b in range(a + 1, 4) if perm[a] > perm[b])
            out[comp] = (-1) ** inv * vals[n]
        return [out.get(k, 0j) for k in out_keys]

    return [w[k] for k in keys], sym, rebuild, False


OPERATORS = {
    "D": lambda u: _spec_D(u, 1),
    "Dbar": lambda u: _spec_D(u, -1),
    "Dk": _spec_dk,
    "D1k": _spec_d1k,
    "L0": lambda f: _spec_L(0, f),
    "L1": lambda f: _spec_L(1, f),
    "d": _spec_d,
    "star": _spec_star,
}


def _check_input(op, field):
    expected = {
        "D": Quat,
        "Dbar": Quat,
        "Dk": SymSpinorField,
        "D1k": MixedSpinorField,
        "L0": SymSpinorField,
        "L1": SymSpinorField,
        "d": DiffForm,
        "star": DiffForm,
    }[op]
    if not isinstance(field, expected):
        raise TypeError(f"operator {op} needs a {expected.__name__}")


def fd_check_operator(op, field, points, step=DEFAULT_STEP):
    """Compare the symbolic operator with its numeric reconstruction at ``points``."""
    if op not in OPERATORS:
        raise ValueError(f"unknown operator {op!r}; choose from {sorted(OPERATORS)}")
    _check_input(op, field)
    comps, sym, rebuild, first_order = OPERATORS[op](field)
    comp_ev = [SymField.coerce(c).compile() for c in comps]
    sym_ev = [SymField.coerce(c).compile() for c in sym]
    worst_abs = 0.0
    worst_rel = 0.0
    worst_point = tuple(points[0]) if points else (0.0, 0.0, 0.0, 0.0)
    for p in points:
        p = [float(v) for v in p]
        vals = [ev(p) for ev in comp_ev]
        if first_order:
            der = [[_central(ev, a, p, step) for a in range(4)] for ev in comp_ev]
            ref = [abs(v) for row in der for v in row]
        else:
            der = None
            ref = [abs(v) for v in vals]
        numeric = rebuild(vals, der, p)
        exact = [ev(p) for ev in sym_ev]
        err = max((abs(a - b) for a, b in zip(numeric, exact)), default=0.0)
        scale = max([1.0] + [abs(v) for v in exact] + ref)
        rel = err / scale
        if rel >= worst_rel:
            worst_rel = rel
            worst_point = tuple(p)
        worst_abs = max(worst_abs, err)
    return FDReport(op, worst_point, step, worst_abs, worst_rel, len(points))
