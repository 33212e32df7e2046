"""Symmetric spinor fields and the k-Cauchy-Fueter operators.

A field valued in the k-th symmetric power of C^2 is stored with one slot
per index multiset: ``comps[j]`` is the component whose primed indices
contain exactly ``j`` ones.  Mixed fields (values in C^2 tensor the
(k-1)-th symmetric power) store ``comps[A][j]`` the same way for the
primed block, with the unprimed index ``A`` in front.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exact import ExactComplex, Poly4, SymField, ZERO, grlex_key, laplacian, r2_power
from .linalg import nullspace
from .nabla import Z, nabla_raised

__all__ = [
    "SymSpinorField",
    "MixedSpinorField",
    "dk_apply",
    "d1k_apply",
    "L_apply",
    "L_apply_mixed",
    "is_k_regular",
    "kernel_basis",
    "monomials",
]


@dataclass(frozen=True)
class SymSpinorField:
    k: int
    comps: tuple

    def __post_init__(self):
        comps = tuple(SymField.coerce(c) for c in self.comps)
        if len(comps) != self.k + 1:
            raise ValueError(f"k={self.k} needs {self.k + 1} components, got {len(comps)}")
        object.__setattr__(self, "comps", comps)

    @classmethod
    def of(cls, *comps):
        return cls(len(comps) - 1, tuple(comps))

    @classmethod
    def zero(cls, k):
        return cls(k, (ZERO,) * (k + 1))

    def __add__(self, other):
        self._check(other)
        return SymSpinorField(self.k, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other):
        self._check(other)
        return SymSpinorField(self.k, tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self):
        return SymSpinorField(self.k, tuple(-a for a in self.comps))

    def scale(self, c):
        return SymSpinorField(self.k, tuple(a.scale(c) for a in self.comps))

    def mul_field(self, f):
        return SymSpinorField(self.k, tuple(a * f for a in self.comps))

    def _check(self, other):
        if not isinstance(other, SymSpinorField) or other.k != self.k:
            raise ValueError("spinor fields of different rank")

    def is_zero(self):
        return not any(self.comps)

    def to_json(self):
        return {"kind": "sym_spinor", "k": self.k, "comps": [c.to_json() for c in self.comps]}

    @classmethod
    def from_json(cls, data):
        if data.get("kind", "sym_spinor") != "sym_spinor":
            raise ValueError(f"expected sym_spinor, got {data.get('kind')}")
        return cls(int(data["k"]), tuple(SymField.from_json(c) for c in data["comps"]))


@dataclass(frozen=True)
class MixedSpinorField:
    k: int
    comps: tuple  # comps[A][j], A in {0, 1}, j in 0..k-1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("mixed spinor fields need k >= 1")
        comps = tuple(tuple(SymField.coerce(c) for c in row) for row in self.comps)
        if len(comps) != 2 or any(len(row) != self.k for row in comps):
            raise ValueError(f"mixed field with k={self.k} needs a 2 x {self.k} array")
        object.__setattr__(self, "comps", comps)

    @classmethod
    def zero(cls, k):
        return cls(k, ((ZERO,) * k, (ZERO,) * k))

    def _zip(self, other, fn):
        if not isinstance(other, MixedSpinorField) or other.k != self.k:
            raise ValueError("mixed fields of different rank")
        return MixedSpinorField(
            self.k,
            tuple(tuple(fn(a, b) for a, b in zip(r1, r2)) for r1, r2 in zip(self.comps, other.comps)),
        )

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return MixedSpinorField(self.k, tuple(tuple(-a for a in row) for row in self.comps))

    def scale(self, c):
        return MixedSpinorField(self.k, tuple(tuple(a.scale(c) for a in row) for row in self.comps))

    def flat(self):
        return [c for row in self.comps for c in row]

    def is_zero(self):
        return not any(self.flat())

    def to_json(self):
        return {
            "kind": "mixed_spinor",
            "k": self.k,
            "comps": [[c.to_json() for c in row] for row in self.comps],
        }

    @classmethod
    def from_json(cls, data):
        if data.get("kind", "mixed_spinor") != "mixed_spinor":
            raise ValueError(f"expected mixed_spinor, got {data.get('kind')}")
        return cls(
            int(data["k"]), tuple(tuple(SymField.from_json(c) for c in row) for row in data["comps"])
        )


def dk_apply(f):
    """k-Cauchy-Fueter operator: out[A][j] = nabla_A^{0'} f[j] + nabla_A^{1'} f[j+1]."""
    if f.k < 1:
        raise ValueError("the k-Cauchy-Fueter operator needs k >= 1")
    c = f.comps
    return MixedSpinorField(
        f.k,
        tuple(
            tuple(nabla_raised(A, 0, c[j]) + nabla_raised(A, 1, c[j + 1]) for j in range(f.k))
            for A in range(2)
        ),
    )


def d1k_apply(g):
    """Second operator of the complex: sum_A' (nabla_0^{A'} g[1][.] - nabla_1^{A'} g[0][.])."""
    if g.k < 2:
        raise ValueError("the second operator needs k >= 2")
    c = g.comps
    out = []
    for t in range(g.k - 1):
        acc = ZERO
        for ap in range(2):
            acc = acc + nabla_raised(0, ap, c[1][t + ap]) - nabla_raised(1, ap, c[0][t + ap])
        out.append(acc)
    return SymSpinorField(g.k - 2, tuple(out))


def L_apply(j, f):
    """(L_j f)[t] = z_j^{0'} f[t] + z_j^{1'} f[t+1]."""
    if f.k < 1:
        raise ValueError("L_j needs k >= 1")
    z0, z1 = Z[j]
    c = f.comps
    return SymSpinorField(f.k - 1, tuple(z0 * c[t] + z1 * c[t + 1] for t in range(f.k)))


def L_apply_mixed(j, g):
    """Contract the first primed index of a mixed field with z_j."""
    if g.k < 2:
        raise ValueError("L_j on mixed fields needs k >= 2")
    z0, z1 = Z[j]
    return MixedSpinorField(
        g.k - 1,
        tuple(tuple(z0 * row[t] + z1 * row[t + 1] for t in range(g.k - 1)) for row in g.comps),
    )


def is_k_regular(f):
    if f.k == 0:
        return laplacian(f.comps[0]).is_zero()
    return dk_apply(f).is_zero()


def monomials(d):
    """Exponent tuples of total degree d in graded-lex order (x0-heavy last)."""
    if d < 0:
        return []
    out = [e for e in itertools.product(range(d + 1), repeat=4) if sum(e) == d]
    out.sort(key=grlex_key)
    return out


def flatten_fields(fields, denom):
    """Coefficient map ``{(slot, exps): coeff}`` of fields brought over r2**denom."""
    out = {}
    for slot, f in enumerate(fields):
        if f.m > denom:
            raise ValueError("common denominator too small")
        num = f.num if f.m == denom else f.num * r2_power(denom - f.m)
        for e, c in num.terms.items():
            out[(slot, e)] = c
    return out


def operator_matrix(columns):
    """Turn a list of sparse column maps into sparse rows plus the row keys."""
    keys = sorted({key for col in columns for key in col}, key=lambda k: (k[0], grlex_key(k[1])))
    index = {key: n for n, key in enumerate(keys)}
    rows = [dict() for _ in keys]
    for c, col in enumerate(columns):
        for key, v in col.items():
            rows[index[key]][c] = v
    return rows, keys


def kernel_basis(k, d):
    """Exact basis of k-regular fields whose components are homogeneous of degree d."""
    monos = monomials(d)
    unknowns = [(s, e) for s in range(k + 1) for e in monos]
    columns = []
    for s, e in unknowns:
        comps = [ZERO] * (k + 1)
        comps[s] = SymField._raw(Poly4.monomial(e), 0)
        out = dk_apply(SymSpinorField(k, tuple(comps)))
        columns.append(flatten_fields(out.flat(), 0))
    rows, _ = operator_matrix(columns)
    basis = []
    for vec in nullspace(rows, len(unknowns)):
        comps = [dict() for _ in range(k + 1)]
        for (s, e), v in zip(unknowns, vec):
            if v:
                comps[s][e] = v
        basis.append(SymSpinorField(k, tuple(SymField._raw(Poly4._raw(t), 0) for t in comps)))
    return basis


def combine(basis, coeffs):
    """Linear combination of spinor fields with ExactComplex-coercible weights."""
    if not basis:
        raise ValueError("empty basis")
    out = None
    for b, c in zip(basis, coeffs):
        term = b.scale(ExactComplex.coerce(c))
        out = term if out is None else out + term
    return out
