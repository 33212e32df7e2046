"""Verification certificates.

A :class:`Claim` names an exact property, records its status and carries a
JSON payload with every operand the check needs.  :func:`recheck` recomputes
the status from that payload alone, so a certificate written to disk can be
re-verified without rerunning the pipeline that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact import SymField, laplacian
from .forms import DiffForm, exterior_d, hodge_star
from .quaternion import Quat, cf_D, pair_to_quat
from .spinor import MixedSpinorField, SymSpinorField, L_apply, d1k_apply, dk_apply, is_k_regular

__all__ = ["Claim", "Certificate", "recheck", "CHECKS"]

EXACT_ZERO = "exact-zero"
NONZERO = "nonzero"
VALUE = "value"


@dataclass
class Claim:
    name: str
    check: str
    status: str
    payload: dict
    expect: str = EXACT_ZERO

    @property
    def passed(self):
        return self.expect == VALUE or self.status == self.expect

    def to_json(self):
        return {
            "name": self.name,
            "check": self.check,
            "status": self.status,
            "expect": self.expect,
            "passed": self.passed,
            "payload": self.payload,
        }

    @classmethod
    def from_json(cls, data):
        return cls(data["name"], data["check"], data["status"], data["payload"], data["expect"])


@dataclass
class Certificate:
    claims: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def add(self, name, check, payload, expect=EXACT_ZERO):
        """Compute the status of a new claim via its checker and append it."""
        status = CHECKS[check](payload)
        claim = Claim(name, check, status, payload, expect)
        self.claims.append(claim)
        return claim

    @property
    def ok(self):
        return all(c.passed for c in self.claims)

    def failed(self):
        return [c.name for c in self.claims if not c.passed]

    def to_json(self):
        out = dict(self.summary)
        out["ok"] = self.ok
        out["claims"] = [c.to_json() for c in self.claims]
        return out

    @classmethod
    def from_json(cls, data):
        summary = {k: v for k, v in data.items() if k not in ("ok", "claims")}
        return cls([Claim.from_json(c) for c in data.get("claims", [])], summary)


def _zero(flag):
    return EXACT_ZERO if flag else NONZERO


def _field(data):
    return SymField.from_json(data)


def _check_quat_D(p):
    u = Quat.from_json(p["u"])
    res = cf_D(u)
    if "g" in p:
        res = res - Quat.from_json(p["g"])
    return _zero(res.is_zero())


def _check_pair_regular(p):
    f0, f1 = (_field(v) for v in p["pair"])
    return _zero(cf_D(pair_to_quat(f0, f1)).is_zero())


def _check_k_regular(p):
    return _zero(is_k_regular(SymSpinorField.from_json(p["f"])))


def _check_harmonic(p):
    return _zero(laplacian(_field(p["h"])).is_zero())


def _check_field_equal(p):
    return _zero((_field(p["lhs"]) - _field(p["rhs"])).is_zero())


def _check_real_part(p):
    u = Quat.from_json(p["u"])
    return _zero((u.w - _field(p["h"])).is_zero())


def _check_asd(p):
    w = DiffForm.from_json(p["w"])
    return _zero((hodge_star(w) + w).is_zero())


def _check_d_equals(p):
    F = DiffForm.from_json(p["F"])
    g = DiffForm.from_json(p["g"])
    return _zero((exterior_d(F) - g).is_zero())


def _check_d1_zero(p):
    return _zero(d1k_apply(MixedSpinorField.from_json(p["Y"])).is_zero())


def _check_d2_equals(p):
    X = SymSpinorField.from_json(p["X"])
    Y = MixedSpinorField.from_json(p["Y"])
    return _zero((dk_apply(X) - Y).is_zero())


def _check_L_decomposition(p):
    h = _field(p["h"])
    f = SymSpinorField.from_json(p["f"])
    g = SymSpinorField.from_json(p["g"])
    res = L_apply(0, f).comps[0] + L_apply(1, g).comps[0] - h
    return _zero(res.is_zero())


def _check_coordinate_identity(p):
    from .exact import I, X0, X1, X2, X3

    h = _field(p["h"])
    F0, F1, G0, G1 = (_field(p[k]) for k in ("F0", "F1", "G0", "G1"))
    rhs = (X0 + X1 * I) * F0 - (X2 + X3 * I) * F1 + (X2 - X3 * I) * G0 + (X0 - X1 * I) * G1
    return _zero((rhs - h).is_zero())


def _check_y_consistency(p):
    from .solvers import y_consistency_residuals

    Y = MixedSpinorField.from_json(p["Y"])
    res = y_consistency_residuals(_field(p["h"]), Y)
    return _zero(all(r.is_zero() for r in res[p["which"]]))


def _check_bridge(p):
    from .forms import asd_project, bridge_lemma_sides

    lhs, rhs = bridge_lemma_sides(asd_project(DiffForm.from_json(p["F"])))
    return _zero((lhs - rhs).is_zero())


def _check_period(p):
    from .periods import period_s3

    return _zero(not period_s3(DiffForm.from_json(p["w"])))


def _check_period_equals(p):
    from .periods import period_s3

    return _zero(period_s3(DiffForm.from_json(p["w"])).to_json() == p["value_pi2"])


CHECKS = {
    "quat_D": _check_quat_D,
    "pair_regular": _check_pair_regular,
    "k_regular": _check_k_regular,
    "harmonic": _check_harmonic,
    "field_equal": _check_field_equal,
    "real_part": _check_real_part,
    "asd": _check_asd,
    "d_equals": _check_d_equals,
    "d1_zero": _check_d1_zero,
    "d2_equals": _check_d2_equals,
    "L_decomposition": _check_L_decomposition,
    "coordinate_identity": _check_coordinate_identity,
    "y_consistency": _check_y_consistency,
    "bridge": _check_bridge,
    "period": _check_period,
    "period_equals": _check_period_equals,
}


def recheck(claim):
    """Recompute a claim's status from its payload; returns the fresh status."""
    return CHECKS[claim.check](claim.payload)
