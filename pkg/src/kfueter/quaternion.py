"""Quaternions over constants or fields, the Cauchy-Fueter operator and tau.

Function-valued quaternions store four :class:`SymField` components
``u = w + x i + y j + z k``.  The complex-pair view ``u = u0 + j u1`` with
``u0 = w + i x`` and ``u1 = y - i z`` is available through
:func:`quat_to_pair` / :func:`pair_to_quat`; it only makes sense for real
components, since the complex unit is identified with the quaternion i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .exact import ExactComplex, I, SymField, ZERO, laplacian
from .nabla import nabla_lowered

__all__ = [
    "Quat",
    "CMat2",
    "qmul",
    "tau_embed",
    "cf_D",
    "cf_Dbar",
    "is_regular",
    "tau_pair",
    "quat_to_pair",
    "pair_to_quat",
    "quat_laplacian",
    "cf_system",
]


@dataclass(frozen=True)
class Quat:
    w: Any
    x: Any
    y: Any
    z: Any

    @classmethod
    def of(cls, w=0, x=0, y=0, z=0, fields=True):
        conv = SymField.coerce if fields else ExactComplex.coerce
        return cls(conv(w), conv(x), conv(y), conv(z))

    @classmethod
    def scalar(cls, w, fields=True):
        return cls.of(w, fields=fields)

    def components(self):
        return (self.w, self.x, self.y, self.z)

    def __add__(self, other):
        return Quat(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        return Quat(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self):
        return Quat(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quat):
            return qmul(self, other)
        return Quat(self.w * other, self.x * other, self.y * other, self.z * other)

    def __rmul__(self, other):
        return Quat(other * self.w, other * self.x, other * self.y, other * self.z)

    def conj(self):
        return Quat(self.w, -self.x, -self.y, -self.z)

    def is_zero(self):
        return not any(self.components())

    def map(self, fn):
        return Quat(fn(self.w), fn(self.x), fn(self.y), fn(self.z))

    def to_json(self):
        return {k: SymField.coerce(v).to_json() for k, v in zip("wxyz", self.components())}

    @classmethod
    def from_json(cls, data):
        return cls(*(SymField.from_json(data[k]) for k in "wxyz"))


def qmul(a, b):
    """Hamilton product ``a * b``; i^2 = j^2 = k^2 = ijk = -1."""
    a0, a1, a2, a3 = a.components()
    b0, b1, b2, b3 = b.components()
    return Quat(
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


@dataclass(frozen=True)
class CMat2:
    """2x2 matrix ``[[a, b], [c, d]]`` over ExactComplex or SymField."""

    a: Any
    b: Any
    c: Any
    d: Any

    def __matmul__(self, o):
        return CMat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))


def tau_embed(q):
    """tau(w + x i + y j + z k) = [[w + i x, -y - i z], [y - i z, w - i x]]."""
    w, x, y, z = q.components()
    ix = x * I
    iz = z * I
    return CMat2(w + ix, -y - iz, y - iz, w - ix)


# left multiplication by the units i, j, k on component 4-tuples
def _left_i(c):
    a, b, cc, d = c
    return (-b, a, -d, cc)


def _left_j(c):
    a, b, cc, d = c
    return (-cc, d, a, -b)


def _left_k(c):
    a, b, cc, d = c
    return (-d, -cc, b, a)


def _dirac(u, sign):
    comps = [SymField.coerce(v) for v in u.components()]
    parts = [tuple(v.partial(axis) for v in comps) for axis in range(4)]
    terms = [parts[0], _left_i(parts[1]), _left_j(parts[2]), _left_k(parts[3])]
    out = list(terms[0])
    for t in terms[1:]:
        for n in range(4):
            out[n] = out[n] + t[n] if sign > 0 else out[n] - t[n]
    return Quat(*out)


def cf_D(u):
    """Cauchy-Fueter operator D = d0 + i d1 + j d2 + k d3 (units act on the left)."""
    return _dirac(u, +1)


def cf_Dbar(u):
    """Conjugate operator d0 - i d1 - j d2 - k d3."""
    return _dirac(u, -1)


def is_regular(u):
    return cf_D(u).is_zero()


def quat_laplacian(u):
    return u.map(laplacian)


def quat_to_pair(u):
    """(u0, u1) with u = u0 + j u1."""
    w, x, y, z = (SymField.coerce(v) for v in u.components())
    return (w + x * I, y - z * I)


def pair_to_quat(u0, u1):
    """Inverse of :func:`quat_to_pair`; splits each complex field into re/im parts."""
    u0 = SymField.coerce(u0)
    u1 = SymField.coerce(u1)
    return Quat(u0.re_part(), u0.im_part(), u1.re_part(), -u1.im_part())


_J = Quat.of(0, 0, 1, 0)


def tau_pair(f):
    """Quaternion function j (f0 + j f1) attached to a C^2-valued pair."""
    f0, f1 = f
    return qmul(_J, pair_to_quat(f0, f1))


def cf_system(u0, u1):
    """Left side of the 2x2 form of D: (nabla_{A0'} u0 + nabla_{A1'} u1)_A."""
    return tuple(nabla_lowered(A, 0, u0) + nabla_lowered(A, 1, u1) for A in range(2))


def zero_quat():
    return Quat(ZERO, ZERO, ZERO, ZERO)
