"""Differential forms on R^4 with SymField coefficients.

Orientation dx0^dx1^dx2^dx3 and the Euclidean metric are fixed.  The
anti-self-dual frame is

    e1 = dx01 - dx23,   e2 = dx02 + dx13,   e3 = dx03 - dx12.

Sign table for the codifferential: ``dstar = -(* d *)`` in every degree,
which is what makes ``d dstar + dstar d`` equal to minus the componentwise
Laplacian on forms of degree 0..4.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import NonPolynomialInput
from .exact import ExactComplex, Poly4, SymField, ZERO, laplacian
from .nabla import ZBAR
from .quaternion import Quat, cf_D
from .spinor import SymSpinorField

__all__ = [
    "DiffForm",
    "ASDForm",
    "exterior_d",
    "hodge_star",
    "wedge",
    "asd_project",
    "eta",
    "eta_inverse",
    "bridge_lemma_sides",
    "flux3form",
    "dstar",
    "poincare_homotopy",
    "form_laplacian",
    "one_form",
    "VOLUME_KEY",
]

VOLUME_KEY = (0, 1, 2, 3)


def _perm_sign(seq):
    sign = 1
    seq = list(seq)
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                sign = -sign
            elif seq[a] == seq[b]:
                return 0
    return sign


@dataclass(frozen=True)
class DiffForm:
    p: int
    comps: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, c in self.comps.items():
            key = tuple(key)
            if len(key) != self.p or list(key) != sorted(set(key)) or not set(key) <= {0, 1, 2, 3}:
                raise ValueError(f"index tuple {key} is not strictly increasing of length {self.p}")
            c = SymField.coerce(c)
            if c:
                clean[key] = c
        object.__setattr__(self, "comps", clean)

    @classmethod
    def from_terms(cls, p, terms):
        """Accumulate ``(index tuple, coeff)`` pairs with any index order, sorting signs."""
        acc = {}
        for key, c in terms:
            s = _perm_sign(key)
            if s == 0:
                continue
            skey = tuple(sorted(key))
            c = SymField.coerce(c)
            acc[skey] = acc.get(skey, ZERO) + (c if s > 0 else -c)
        return cls(p, acc)

    def __getitem__(self, key):
        return self.comps.get(tuple(key), ZERO)

    def __add__(self, other):
        if other.p != self.p:
            raise ValueError("adding forms of different degree")
        acc = dict(self.comps)
        for key, c in other.comps.items():
            acc[key] = acc.get(key, ZERO) + c
        return DiffForm(self.p, acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return DiffForm(self.p, {k: -c for k, c in self.comps.items()})

    def scale(self, c):
        return DiffForm(self.p, {k: v.scale(c) for k, v in self.comps.items()})

    def mul_field(self, f):
        f = SymField.coerce(f)
        return DiffForm(self.p, {k: v * f for k, v in self.comps.items()})

    def map(self, fn):
        return DiffForm(self.p, {k: fn(v) for k, v in self.comps.items()})

    def is_zero(self):
        return not self.comps

    def __eq__(self, other):
        return isinstance(other, DiffForm) and self.p == other.p and self.comps == other.comps

    def __hash__(self):
        return hash((self.p, frozenset(self.comps.items())))

    def is_polynomial(self):
        return all(c.m == 0 for c in self.comps.values())

    def to_json(self):
        return {
            "kind": "form",
            "p": self.p,
            "comps": [[list(k), self.comps[k].to_json()] for k in sorted(self.comps)],
        }

    @classmethod
    def from_json(cls, data):
        if data.get("kind", "form") != "form":
            raise ValueError(f"expected form, got {data.get('kind')}")
        return cls(int(data["p"]), {tuple(k): SymField.from_json(c) for k, c in data["comps"]})


def one_form(*coeffs):
    return DiffForm(1, {(a,): c for a, c in enumerate(coeffs)})


def wedge(a, b):
    terms = []
    for ka, ca in a.comps.items():
        for kb, cb in b.comps.items():
            terms.append((ka + kb, ca * cb))
    return DiffForm.from_terms(a.p + b.p, terms)


def exterior_d(w):
    if w.p > 3:
        raise ValueError("exterior derivative of a 4-form is zero by degree; p must be <= 3")
    terms = []
    for key, c in w.comps.items():
        for axis in range(4):
            if axis in key:
                continue
            terms.append(((axis,) + key, c.partial(axis)))
    return DiffForm.from_terms(w.p + 1, terms)


def hodge_star(w):
    out = {}
    for key, c in w.comps.items():
        comp = tuple(a for a in range(4) if a not in key)
        s = _perm_sign(key + comp)
        out[comp] = c if s > 0 else -c
    return DiffForm(4 - w.p, out)


def dstar(w):
    """Codifferential ``-(* d *)``; dd* + d*d = -Laplacian componentwise.

    In dimension four the general sign ``(-1)**(4*(p+1)+1)`` is -1 for every
    degree, so the same formula serves p = 1, 2, 3, 4.
    """
    if w.p < 1:
        raise ValueError("dstar needs p >= 1")
    return -hodge_star(exterior_d(hodge_star(w)))


def form_laplacian(w):
    return w.map(laplacian)


@dataclass(frozen=True)
class ASDForm:
    """a1 e1 + a2 e2 + a3 e3 in the anti-self-dual frame."""

    a1: SymField
    a2: SymField
    a3: SymField

    @classmethod
    def of(cls, a1=0, a2=0, a3=0):
        return cls(SymField.coerce(a1), SymField.coerce(a2), SymField.coerce(a3))

    def coeffs(self):
        return (self.a1, self.a2, self.a3)

    def to_form(self):
        a1, a2, a3 = self.coeffs()
        return DiffForm(
            2, {(0, 1): a1, (2, 3): -a1, (0, 2): a2, (1, 3): a2, (0, 3): a3, (1, 2): -a3}
        )

    def __add__(self, other):
        return ASDForm(*(a + b for a, b in zip(self.coeffs(), other.coeffs())))

    def __sub__(self, other):
        return ASDForm(*(a - b for a, b in zip(self.coeffs(), other.coeffs())))

    def scale(self, c):
        return ASDForm(*(a.scale(c) for a in self.coeffs()))

    def is_zero(self):
        return not any(self.coeffs())

    def to_json(self):
        return self.to_form().to_json()


E1 = ASDForm.of(1, 0, 0).to_form()
E2 = ASDForm.of(0, 1, 0).to_form()
E3 = ASDForm.of(0, 0, 1).to_form()


def asd_project(w):
    """ASD part (w - *w)/2 in the e-frame."""
    if w.p != 2:
        raise ValueError("asd_project needs a 2-form")
    half = (w - hodge_star(w)).scale(ExactComplex(1) / 2)
    return ASDForm(half[(0, 1)], half[(0, 2)], half[(0, 3)])


def is_asd(w):
    return (hodge_star(w) + w).is_zero()


def _dzbar(A, Bp):
    return exterior_d(DiffForm(0, {(): ZBAR[A][Bp]}))


# eta images of the three unit spinors, derived from the dzbar wedge products
_ETA_BASIS_FORMS = (
    wedge(_dzbar(0, 1), _dzbar(1, 1)),
    -wedge(_dzbar(0, 0), _dzbar(1, 1)) + wedge(_dzbar(1, 0), _dzbar(0, 1)),
    -wedge(_dzbar(1, 0), _dzbar(0, 0)),
)
if not all(is_asd(b) for b in _ETA_BASIS_FORMS):
    raise ArithmeticError("eta basis left the anti-self-dual bundle")
_ETA_MATRIX = tuple(
    tuple(b.num.constant_value() for b in asd_project(form).coeffs()) for form in _ETA_BASIS_FORMS
)  # _ETA_MATRIX[s] = e-frame coordinates of the image of slot s


def _invert3(m):
    """Exact inverse of a 3x3 Gaussian rational matrix (rows = images of slots)."""
    from .linalg import solve

    # solve for x with  sum_s x_s * m[s][r] = target_r, for each unit target
    rows = [{s: m[s][r] for s in range(3) if m[s][r]} for r in range(3)]
    inv = []
    for t in range(3):
        rhs = [ExactComplex(1 if r == t else 0) for r in range(3)]
        x = solve(rows, rhs, 3)
        if x is None:
            raise ArithmeticError("eta is not injective")
        inv.append(x)
    return inv  # inv[t][s]: slot s weight for frame vector e_{t+1}


_ETA_INVERSE = _invert3(_ETA_MATRIX)


def eta(f):
    """ASD form attached to a field valued in the second symmetric power."""
    if f.k != 2:
        raise ValueError("eta needs a k=2 symmetric spinor field")
    coeffs = []
    for r in range(3):
        acc = ZERO
        for s in range(3):
            w = _ETA_MATRIX[s][r]
            if w:
                acc = acc + f.comps[s].scale(w)
        coeffs.append(acc)
    return ASDForm(*coeffs)


def eta_inverse(w):
    """The unique field f with eta(f) = w."""
    if isinstance(w, DiffForm):
        if not is_asd(w):
            raise ValueError("eta_inverse needs an anti-self-dual form")
        w = asd_project(w)
    comps = []
    for s in range(3):
        acc = ZERO
        for t, a in enumerate(w.coeffs()):
            c = _ETA_INVERSE[t][s]
            if c:
                acc = acc + a.scale(c)
        comps.append(acc)
    return SymSpinorField(2, tuple(comps))


def bridge_lemma_sides(F):
    """(D(f1 i + f2 j + f3 k), (dF)_123 - (dF)_023 i + (dF)_013 j - (dF)_012 k)."""
    lhs = cf_D(Quat(ZERO, F.a1, F.a2, F.a3))
    dF = exterior_d(F.to_form())
    rhs = Quat(dF[(1, 2, 3)], -dF[(0, 2, 3)], dF[(0, 1, 3)], -dF[(0, 1, 2)])
    return lhs, rhs


def flux3form(h):
    """-d0h dx123 + d1h dx023 - d2h dx013 + d3h dx012 (closed iff h is harmonic)."""
    h = SymField.coerce(h)
    return DiffForm(
        3,
        {
            (1, 2, 3): -h.partial(0),
            (0, 2, 3): h.partial(1),
            (0, 1, 3): -h.partial(2),
            (0, 1, 2): h.partial(3),
        },
    )


def poincare_homotopy(w):
    """Radial homotopy K with dK + Kd = id on polynomial forms of degree >= 1."""
    if w.p < 1:
        raise ValueError("poincare_homotopy needs p >= 1")
    if not w.is_polynomial():
        raise NonPolynomialInput("radial homotopy needs polynomial coefficients")
    terms = []
    for key, c in w.comps.items():
        by_degree = {}
        for e, v in c.num.terms.items():
            factor = ExactComplex(1) / (sum(e) + w.p)
            by_degree.setdefault(sum(e), {})[e] = v * factor
        scaled = SymField._raw(Poly4(
            {e: v for part in by_degree.values() for e, v in part.items()}
        ), 0)
        for j, axis in enumerate(key):
            rest = key[:j] + key[j + 1:]
            contrib = scaled * SymField.var(axis)
            terms.append((rest, contrib if j % 2 == 0 else -contrib))
    return DiffForm.from_terms(w.p - 1, terms)


def index_tuples(p):
    """All strictly increasing index tuples of length p."""
    return list(itertools.combinations(range(4), p))
