"""Seeded identity suite used by ``kfueter selftest``."""

from __future__ import annotations

import random

from .corpus import (
    check_fixture,
    load_fixtures,
    random_asd,
    random_field,
    random_form,
    random_mixed,
    random_point,
    random_quat,
    random_sym_spinor,
)
from .exact import SymField, X0, laplacian
from .forms import ASDForm, bridge_lemma_sides, eta, eta_inverse, exterior_d, hodge_star
from .numeric import fd_check_operator
from .periods import obstruction_certificate, period_s3
from .quaternion import cf_D
from .solvers import asd_primitive_poly, build_Y, cf_solve_poly, poisson_solve_poly, y_consistency_residuals
from .spinor import L_apply, L_apply_mixed, d1k_apply, dk_apply

__all__ = ["run_selftest"]

FD_TOLERANCE = 1e-6


def _identities(rng):
    checks = {}

    f = random_sym_spinor(rng, 3, degree_max=3, m_max=1)
    checks["L0 L1 = L1 L0"] = (L_apply(0, L_apply(1, f)) - L_apply(1, L_apply(0, f))).is_zero()
    checks["D^(k-1) L_j = L_j D^(k)"] = all(
        (dk_apply(L_apply(j, f)) - L_apply_mixed(j, dk_apply(f))).is_zero() for j in range(2)
    )
    checks["D1 D = 0"] = d1k_apply(dk_apply(random_sym_spinor(rng, 2, 3, 1))).is_zero()

    g = random_sym_spinor(rng, 2, degree_max=3)
    w = eta(g)
    checks["eta is ASD"] = (hodge_star(w.to_form()) + w.to_form()).is_zero()
    checks["eta round trip"] = (eta_inverse(w) - g).is_zero()

    lhs, rhs = bridge_lemma_sides(random_asd(rng, degree_max=3, real=True))
    checks["bridge"] = (lhs - rhs).is_zero()

    rhs_field = random_field(rng, degree_max=4)
    checks["poisson residual"] = (laplacian(poisson_solve_poly(rhs_field)) - rhs_field).is_zero()
    q = random_quat(rng, degree_max=3)
    checks["cauchy-fueter residual"] = (cf_D(cf_solve_poly(q)) - q).is_zero()

    closed = exterior_d(random_form(rng, 2, degree_max=3))
    F = asd_primitive_poly(closed)
    checks["asd primitive"] = (exterior_d(F.to_form()) - closed).is_zero() and isinstance(F, ASDForm)
    checks["stokes"] = not period_s3(closed)

    for label, h in (("1/r2", SymField(1, 1)), ("x0", X0)):
        res = y_consistency_residuals(h, build_Y(h))
        checks[f"Y checks h={label}"] = all(r.is_zero() for rs in res.values() for r in rs)
    cert = obstruction_certificate(SymField(1, 1))
    checks["flux period of 1/r2 is 4 pi^2"] = cert.summary["period_pi2"] == [4, 1]
    return checks


def _fd_reports(rng):
    points = [random_point(rng) for _ in range(5)]
    inputs = {
        "D": random_quat(rng, 3, 2),
        "Dk": random_sym_spinor(rng, 2, 3, 2),
        "D1k": random_mixed(rng, 2, 3, 2),
        "L0": random_sym_spinor(rng, 2, 3, 2),
        "L1": random_sym_spinor(rng, 2, 3, 2),
        "d": random_form(rng, 2, 3, 2),
        "star": random_form(rng, 2, 3, 2),
    }
    return [fd_check_operator(op, field, points).to_json() for op, field in inputs.items()]


def run_selftest(seed):
    rng = random.Random(seed)
    fixtures = {fx["name"]: all(check_fixture(fx).values()) for fx in load_fixtures()}
    checks = _identities(rng)
    fd = _fd_reports(rng)
    fd_ok = all(r["max_rel_error"] <= FD_TOLERANCE for r in fd)
    ok = all(fixtures.values()) and all(checks.values()) and fd_ok
    return {"command": "selftest", "seed": seed, "ok": ok, "fixtures": fixtures, "identities": checks, "fd": fd}
