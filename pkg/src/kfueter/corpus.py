"""Deterministic test inputs: harmonic bases, random fields, named fixtures.

Random generators take either an integer seed or a ``random.Random``
instance, so a test can thread one generator through many draws.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .certificate import Certificate, Claim, recheck
from .exact import ExactComplex, Poly4, SymField, laplacian
from .forms import ASDForm, DiffForm, flux3form, index_tuples
from .linalg import nullspace
from .quaternion import Quat, cf_D, tau_pair
from .spinor import MixedSpinorField, SymSpinorField, combine, kernel_basis, monomials

__all__ = [
    "harmonic_basis",
    "regular_imaginary_basis",
    "random_symfield",
    "random_poly",
    "random_field",
    "random_sym_spinor",
    "random_mixed",
    "random_quat",
    "random_form",
    "random_asd",
    "random_harmonic",
    "random_point",
    "build_fixtures",
    "write_fixtures",
    "fixture_dir",
    "load_fixtures",
    "check_fixture",
    "FIXTURE_VERSION",
]

FIXTURE_VERSION = "v1"


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def harmonic_basis(d):
    """Exact basis of the homogeneous degree-d harmonic polynomials."""
    monos = monomials(d)
    columns = []
    for e in monos:
        lap = laplacian(SymField._raw(Poly4.monomial(e), 0))
        columns.append(lap.num.terms)
    index = {e: n for n, e in enumerate(monomials(d - 2))}
    rows = [dict() for _ in index]
    for c, col in enumerate(columns):
        for e, v in col.items():
            rows[index[e]][c] = v
    out = []
    for vec in nullspace(rows, len(monos)):
        out.append(SymField._raw(Poly4._raw({e: v for e, v in zip(monos, vec) if v}), 0))
    return out


def regular_imaginary_basis(d):
    """Basis of regular F1 i + F2 j + F3 k with real homogeneous degree-d components."""
    monos = monomials(d)
    unknowns = [(s, e) for s in range(3) for e in monos]
    columns = []
    for s, e in unknowns:
        comps = [0, 0, 0, 0]
        comps[s + 1] = SymField._raw(Poly4.monomial(e), 0)
        out = cf_D(Quat.of(*comps))
        columns.append(
            {(n, t): v for n, c in enumerate(out.components()) for t, v in c.num.terms.items()}
        )
    keys = sorted({k for col in columns for k in col})
    index = {k: n for n, k in enumerate(keys)}
    rows = [dict() for _ in keys]
    for c, col in enumerate(columns):
        for k, v in col.items():
            rows[index[k]][c] = v
    basis = []
    for vec in nullspace(rows, len(unknowns)):
        parts = [dict() for _ in range(3)]
        for (s, e), v in zip(unknowns, vec):
            if v:
                parts[s][e] = v
        basis.append(Quat(SymField.const(0), *(SymField._raw(Poly4._raw(t), 0) for t in parts)))
    return basis


def _coeff(rng, real=False):
    re = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    im = Fraction(0) if real else Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return ExactComplex(re, im)


def _exps(rng, degree):
    cuts = sorted(rng.randint(0, degree) for _ in range(3))
    a = [cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], degree - cuts[2]]
    rng.shuffle(a)
    return tuple(a)


def random_poly(seed, degree_max=3, real=False, homogeneous=None, terms=4):
    rng = _rng(seed)
    out = {}
    for _ in range(rng.randint(1, terms)):
        deg = homogeneous if homogeneous is not None else rng.randint(0, degree_max)
        e = _exps(rng, deg)
        out[e] = out.get(e, ExactComplex(0)) + _coeff(rng, real)
    return Poly4(out)


def random_field(seed, degree_max=3, m_max=0, real=False):
    rng = _rng(seed)
    m = rng.randint(0, m_max)
    return SymField(random_poly(rng, degree_max, real), m)


def random_symfield(seed, degree_max, m_max):
    """Deterministic pseudo-random field num / r2^m with m <= m_max."""
    return random_field(random.Random(seed), degree_max, m_max)


def random_sym_spinor(seed, k, degree_max=3, m_max=0):
    rng = _rng(seed)
    return SymSpinorField(k, tuple(random_field(rng, degree_max, m_max) for _ in range(k + 1)))


def random_mixed(seed, k, degree_max=3, m_max=0):
    rng = _rng(seed)
    return MixedSpinorField(
        k, tuple(tuple(random_field(rng, degree_max, m_max) for _ in range(k)) for _ in range(2))
    )


def random_quat(seed, degree_max=3, m_max=0, real=False):
    rng = _rng(seed)
    return Quat(*(random_field(rng, degree_max, m_max, real) for _ in range(4)))


def random_form(seed, p, degree_max=3, m_max=0):
    rng = _rng(seed)
    return DiffForm(p, {key: random_field(rng, degree_max, m_max) for key in index_tuples(p)})


def random_asd(seed, degree_max=3, m_max=0, real=False):
    rng = _rng(seed)
    return ASDForm(*(random_field(rng, degree_max, m_max, real) for _ in range(3)))


def random_harmonic(seed, degree):
    """Random real combination of harmonic_basis(degree)."""
    rng = _rng(seed)
    total = SymField.const(0)
    for b in harmonic_basis(degree):
        total = total + b.scale(_coeff(rng, real=True))
    return total


def random_point(seed, low=-2.0, high=2.0, min_r2=0.25):
    """Point in the cube [low, high]^4 with r2 >= min_r2."""
    rng = _rng(seed)
    while True:
        p = tuple(rng.uniform(low, high) for _ in range(4))
        if sum(v * v for v in p) >= min_r2:
            return p


def _fixture(name, payload, cert):
    return {
        "name": name,
        "version": FIXTURE_VERSION,
        "payload": payload,
        "claims": [c.to_json() for c in cert.claims],
    }


def build_fixtures():
    """The named example fixtures, computed from scratch."""
    out = []

    f = kernel_basis(1, 1)[0]
    u = tau_pair(f.comps)
    cert = Certificate()
    cert.add("f is 1-regular", "k_regular", {"f": f.to_json()})
    cert.add("tau(f) is regular", "quat_D", {"u": u.to_json()})
    out.append(_fixture("cf1_regular_pair", {"f": f.to_json(), "tau": u.to_json()}, cert))

    x0 = SymField.var(0)
    bad = SymSpinorField.of(x0, 0)
    cert = Certificate()
    cert.add("f is 1-regular", "k_regular", {"f": bad.to_json()}, expect="nonzero")
    cert.add(
        "tau(f) is regular", "quat_D", {"u": tau_pair(bad.comps).to_json()}, expect="nonzero"
    )
    out.append(_fixture("cf1_non_regular_pair", {"f": bad.to_json()}, cert))

    f2 = combine(kernel_basis(2, 2)[:3], [1, 2, -1])
    cert = Certificate()
    cert.add("f is 2-regular", "k_regular", {"f": f2.to_json()})
    out.append(_fixture("cf2_regular_field", {"f": f2.to_json()}, cert))

    for d in (1, 2):
        F = regular_imaginary_basis(d)[0]
        i = ExactComplex(0, 1)
        g = SymSpinorField.of(F.y - F.z.scale(i), -F.x.scale(i), F.y + F.z.scale(i))
        cert = Certificate()
        cert.add("F is regular", "quat_D", {"u": F.to_json()})
        cert.add("f is 2-regular", "k_regular", {"f": g.to_json()})
        out.append(_fixture(f"imaginary_regular_to_cf2_deg{d}", {"F": F.to_json(), "f": g.to_json()}, cert))

    inv_r2 = SymField(1, 1)
    w = flux3form(inv_r2)
    cert = Certificate()
    cert.add("harmonic", "harmonic", {"h": inv_r2.to_json()})
    cert.add("flux period is 4 pi^2", "period_equals", {"w": w.to_json(), "value_pi2": [4, 1]})
    out.append(_fixture("flux_period_inverse_r2", {"h": inv_r2.to_json()}, cert))
    return out


def fixture_dir():
    return Path(str(resources.files("kfueter") / "fixtures" / FIXTURE_VERSION))


def write_fixtures(directory=None):
    directory = Path(directory) if directory else fixture_dir()
    directory.mkdir(parents=True, exist_ok=True)
    for fx in build_fixtures():
        text = json.dumps(fx, sort_keys=True, indent=1) + "\n"
        (directory / f"{fx['name']}.json").write_text(text, encoding="utf-8")


def load_fixtures(directory=None):
    directory = Path(directory) if directory else fixture_dir()
    return [
        json.loads(p.read_text(encoding="utf-8")) for p in sorted(directory.glob("*.json"))
    ]


def check_fixture(fx):
    """Recheck every claim of a fixture; returns ``{claim name: passed}``."""
    out = {}
    for data in fx["claims"]:
        claim = Claim.from_json(data)
        status = recheck(claim)
        out[claim.name] = status == claim.expect and status == claim.status
    return out
