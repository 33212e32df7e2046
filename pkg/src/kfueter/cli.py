"""Command line front end; every report is one JSON document on stdout.

Exit codes: 0 success or property true, 1 property false, 2 bad input,
3 no solution inside the graded rational ansatz.
"""

from __future__ import annotations

import argparse
import json
import sys

from .certificate import Certificate, Claim, recheck
from .errors import KFueterError, NoSolutionInAnsatz
from .exact import SymField
from .forms import ASDForm, DiffForm, eta, eta_inverse, exterior_d, hodge_star, index_tuples
from .parser import parse_field
from .quaternion import Quat, cf_D, cf_Dbar
from .spinor import MixedSpinorField, SymSpinorField, L_apply, d1k_apply, dk_apply, kernel_basis

__all__ = ["main", "run_command"]

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_NO_SOLUTION = 3

DEFAULT_SEED = 20240601


class InputError(Exception):
    pass


def _dump(report, out):
    out.write(json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n")


def _components(text):
    return [parse_field(part) for part in text.split(",")]


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_value(data):
    """Decode any field JSON written by the toolkit."""
    if isinstance(data, dict) and "kind" in data:
        kind = data["kind"]
        if kind == "sym_spinor":
            return SymSpinorField.from_json(data)
        if kind == "mixed_spinor":
            return MixedSpinorField.from_json(data)
        if kind == "form":
            return DiffForm.from_json(data)
        raise InputError(f"unknown kind {kind!r}")
    if isinstance(data, dict) and set("wxyz") <= set(data):
        return Quat.from_json(data)
    if isinstance(data, dict) and "terms" in data:
        return SymField.from_json(data)
    raise InputError("unrecognized field JSON")


def _input_value(args, op=None):
    if getattr(args, "infile", None):
        return _load_value(_read_json(args.infile))
    comps = None
    if getattr(args, "expr_components", None):
        comps = _components(args.expr_components)
    elif getattr(args, "expr", None):
        comps = [parse_field(args.expr)]
    if comps is None:
        raise InputError("give --in FILE, --expr or --expr-components")
    return _from_components(comps, args, op)


def _from_components(comps, args, op):
    if op in ("D", "Dbar"):
        if len(comps) != 4:
            raise InputError("quaternion input needs 4 components w,x,y,z")
        return Quat(*comps)
    if op in ("d", "star"):
        p = args.p
        keys = index_tuples(p)
        if len(comps) != len(keys):
            raise InputError(f"a {p}-form needs {len(keys)} components in the order {keys}")
        return DiffForm(p, dict(zip(keys, comps)))
    if op == "eta-inv":
        if len(comps) != 3:
            raise InputError("ASD input needs 3 frame coefficients")
        return ASDForm(*comps)
    if op == "D1k":
        if len(comps) % 2:
            raise InputError("mixed input needs 2k components, row A=0 then A=1")
        k = len(comps) // 2
        return MixedSpinorField(k, (tuple(comps[:k]), tuple(comps[k:])))
    if len(comps) == 1:
        return comps[0]
    return SymSpinorField(len(comps) - 1, tuple(comps))


def _cmd_check(args):
    value = _input_value(args)
    if isinstance(value, SymField):
        value = SymSpinorField(0, (value,))
    if isinstance(value, Quat):
        cert = Certificate()
        claim = cert.add("regular", "quat_D", {"u": value.to_json()})
        report = {"command": "check", "kind": "quaternion", "regular": claim.passed, "claim": claim.to_json()}
        return report, EXIT_OK if claim.passed else EXIT_FALSE
    if not isinstance(value, SymSpinorField):
        raise InputError("check needs a scalar, symmetric spinor or quaternion field")
    if args.k is not None and args.k != value.k:
        raise InputError(f"--k {args.k} does not match the input rank {value.k}")
    cert = Certificate()
    if value.k == 0:
        claim = cert.add("harmonic", "harmonic", {"h": value.comps[0].to_json()})
    else:
        claim = cert.add(f"{value.k}-regular", "k_regular", {"f": value.to_json()})
    report = {"command": "check", "k": value.k, "regular": claim.passed, "claim": claim.to_json()}
    return report, EXIT_OK if claim.passed else EXIT_FALSE


def _apply(op, value):
    def need(cls):
        if not isinstance(value, cls):
            raise InputError(f"--op {op} needs a {cls.__name__} input")

    if op in ("D", "Dbar"):
        need(Quat)
        return (cf_D if op == "D" else cf_Dbar)(value)
    if op == "Dk":
        need(SymSpinorField)
        return dk_apply(value)
    if op == "D1k":
        need(MixedSpinorField)
        return d1k_apply(value)
    if op in ("L0", "L1"):
        need(SymSpinorField)
        return L_apply(int(op[1]), value)
    if op == "d":
        need(DiffForm)
        return exterior_d(value)
    if op == "star":
        need(DiffForm)
        return hodge_star(value)
    if op == "eta":
        need(SymSpinorField)
        return eta(value).to_form()
    if op == "eta-inv":
        if isinstance(value, DiffForm):
            return eta_inverse(value)
        need(ASDForm)
        return eta_inverse(value)
    raise InputError(f"unknown operator {op}")


def _cmd_apply(args):
    value = _input_value(args, args.op)
    if isinstance(value, SymField):
        value = SymSpinorField(0, (value,))
    try:
        out = _apply(args.op, value)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {"command": "apply", "op": args.op, "input": value.to_json(), "output": out.to_json()}, EXIT_OK


def _cmd_basis(args):
    if args.k < 1 or args.deg < 0:
        raise InputError("basis needs --k >= 1 and --deg >= 0")
    basis = kernel_basis(args.k, args.deg)
    return {
        "command": "basis",
        "k": args.k,
        "deg": args.deg,
        "dimension": len(basis),
        "basis": [b.to_json() for b in basis],
    }, EXIT_OK


def _cmd_conjugate(args):
    from .solvers import regular_conjugate

    h = parse_field(args.h)
    cert = Certificate()
    f = regular_conjugate(h, cert)
    report = {"command": "conjugate", "h": h.to_json(), "f": f.to_json(), "certificate": cert.to_json()}
    return report, EXIT_OK if cert.ok else EXIT_FALSE


def _cmd_decompose(args):
    from .solvers import inverse_decompose

    h = parse_field(args.h)
    result = inverse_decompose(h, args.max_denom)
    report = {"command": "decompose", "max_denom": args.max_denom}
    report.update(result.to_json())
    return report, EXIT_OK if result.residuals.ok else EXIT_FALSE


def _cmd_obstruction(args):
    from .periods import obstruction_certificate

    cert = obstruction_certificate(parse_field(args.h))
    report = {"command": "obstruction"}
    report.update(cert.to_json())
    return report, EXIT_FALSE if report["status"] == "obstructed" else EXIT_OK


def _cmd_verify(args):
    data = _read_json(args.infile)
    claims = data.get("claims")
    if claims is None:
        claims = data.get("certificate", {}).get("claims")
    if claims is None:
        raise InputError("no claims found in the report")
    results = []
    ok = True
    for c in claims:
        claim = Claim.from_json(c)
        status = recheck(claim)
        agrees = status == claim.status
        ok = ok and agrees and (claim.expect in ("value", status))
        results.append({"name": claim.name, "recorded": claim.status, "recomputed": status, "agrees": agrees})
    return {"command": "verify", "ok": ok, "claims": results}, EXIT_OK if ok else EXIT_FALSE


def _cmd_selftest(args):
    from .selftest import run_selftest

    report = run_selftest(args.seed)
    return report, EXIT_OK if report["ok"] else EXIT_FALSE


def build_parser():
    parser = argparse.ArgumentParser(prog="kfueter", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_inputs(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--in", dest="infile", help="field JSON file")
        g.add_argument("--expr", help="a single scalar expression")
        g.add_argument("--expr-components", help="comma-separated component expressions")

    p = sub.add_parser("check", help="k-regularity (or harmonicity for k=0) verdict")
    p.add_argument("--k", type=int)
    add_inputs(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("apply", help="apply one operator and print the result")
    p.add_argument(
        "--op", required=True, choices=["D", "Dbar", "Dk", "D1k", "L0", "L1", "d", "star", "eta", "eta-inv"]
    )
    p.add_argument("--p", type=int, default=1, help="form degree for d and star")
    add_inputs(p)
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("basis", help="exact basis of homogeneous k-regular fields")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--deg", type=int, required=True)
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("conjugate", help="regular f with Re f = h")
    p.add_argument("--h", required=True)
    p.set_defaults(func=_cmd_conjugate)

    p = sub.add_parser("decompose", help="h = L0 f + L1 g with 1-regular pairs")
    p.add_argument("--h", required=True)
    p.add_argument("--max-denom", type=int, default=4)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("obstruction", help="S^3 period of the flux 3-form of h")
    p.add_argument("--h", required=True)
    p.set_defaults(func=_cmd_obstruction)

    p = sub.add_parser("verify", help="recompute every claim of a saved report")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("selftest", help="identity suite and fixture checks")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=_cmd_selftest)
    return parser


def run_command(argv, out=None):
    """Run one command; returns ``(exit_code, report)`` and writes the report."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_INPUT
        return (EXIT_OK if code == 0 else EXIT_INPUT), None
    try:
        report, code = args.func(args)
    except NoSolutionInAnsatz as exc:
        report = {
            "command": args.command,
            "error": "NoSolutionInAnsatz",
            "max_denom": exc.max_denom,
            "degree": exc.degree,
            "message": str(exc),
        }
        code = EXIT_NO_SOLUTION
    except (InputError, KFueterError, ValueError) as exc:
        report = {"command": args.command, "error": type(exc).__name__, "message": str(exc)}
        pos = getattr(exc, "pos", None)
        if pos is not None:
            report["position"] = pos
        code = EXIT_INPUT
    _dump(report, out)
    return code, report


def main(argv=None):
    code, _ = run_command(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
