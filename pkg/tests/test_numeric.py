import json
import random

import pytest

from helpers import random_points
from kfueter.corpus import random_form, random_mixed, random_quat, random_sym_spinor
from kfueter.exact import SymField, X0, X1
from kfueter.numeric import OPERATORS, fd_check_operator, fd_derivative


def test_fd_derivative():
    f = X0 * X0 * X1 + SymField(1, 1)
    p = (0.5, -1.0, 0.25, 2.0)
    exact = complex(f.partial(0).eval(p))
    assert fd_derivative(f, 0, p) == pytest.approx(exact, rel=1e-8)


def _inputs(rng):
    return {
        "D": random_quat(rng, 3, 2),
        "Dbar": random_quat(rng, 3, 2),
        "Dk": random_sym_spinor(rng, 3, 3, 2),
        "D1k": random_mixed(rng, 3, 3, 2),
        "L0": random_sym_spinor(rng, 2, 3, 2),
        "L1": random_sym_spinor(rng, 2, 3, 2),
        "d": random_form(rng, 1, 3, 2),
        "star": random_form(rng, 2, 3, 2),
    }


@pytest.mark.parametrize("op", sorted(OPERATORS))
def test_operators_match_finite_differences(op):
    rng = random.Random(op)
    field = _inputs(rng)[op]
    report = fd_check_operator(op, field, random_points(rng, 10))
    assert report.points_checked == 10
    assert report.max_rel_error <= 1e-6
    assert json.loads(report.to_json_line())["op"] == op


def test_fd_detects_a_wrong_operator(monkeypatch):
    from kfueter import numeric
    from kfueter.quaternion import cf_Dbar

    rng = random.Random(0)
    q = random_quat(rng, 3)
    monkeypatch.setattr(numeric, "cf_D", cf_Dbar)
    report = fd_check_operator("D", q, random_points(rng, 3))
    assert report.max_rel_error > 1e-3


def test_input_validation():
    with pytest.raises(ValueError):
        fd_check_operator("curl", random_quat(0), [(1, 0, 0, 0)])
    with pytest.raises(TypeError):
        fd_check_operator("D", random_form(0, 1), [(1, 0, 0, 0)])
