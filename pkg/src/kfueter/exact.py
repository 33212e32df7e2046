"""Exact arithmetic substrate.

Three value types live here:

* :class:`ExactComplex` -- Gaussian rationals ``re + i*im`` with ``Fraction`` parts.
* :class:`Poly4` -- sparse polynomials in the real coordinates x0..x3 with
  ``ExactComplex`` coefficients, keyed by exponent 4-tuples.
* :class:`SymField` -- quotients ``num / r2**m`` with ``r2 = x0^2+x1^2+x2^2+x3^2``.
  This class is closed under sums, products and partial derivatives, and
  is the function class every operator in the package works with.

All values are immutable once built.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import EvalAtSingularity

__all__ = [
    "ExactComplex",
    "Poly4",
    "SymField",
    "I",
    "R2",
    "X0",
    "X1",
    "X2",
    "X3",
    "field_add",
    "field_mul",
    "partial",
    "reduce_canonical",
    "homogeneous_parts",
    "eval_point",
    "laplacian",
    "grlex_key",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ExactComplex:
    """Gaussian rational ``re + i*im``; both parts are :class:`fractions.Fraction`."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def _make(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, value):
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, (int, Rational)):
            return cls._make(Fraction(value), _ZERO)
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, float):
            return cls(Fraction(value), _ZERO)
        raise TypeError(f"cannot coerce {value!r} to ExactComplex")

    def __add__(self, other):
        if not isinstance(other, ExactComplex):
            try:
                other = ExactComplex.coerce(other)
            except TypeError:
                return NotImplemented
        return ExactComplex._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ExactComplex._make(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, ExactComplex):
            try:
                other = ExactComplex.coerce(other)
            except TypeError:
                return NotImplemented
        return ExactComplex._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return ExactComplex.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, ExactComplex):
            try:
                other = ExactComplex.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return ExactComplex._make(a * c, _ZERO)
        return ExactComplex._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = ExactComplex.coerce(other)
        c, d = other.re, other.im
        den = c * c + d * d
        if not den:
            raise ZeroDivisionError("ExactComplex division by zero")
        a, b = self.re, self.im
        return ExactComplex._make((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        return ExactComplex.coerce(other) / self

    def conjugate(self):
        return ExactComplex._make(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if not isinstance(other, ExactComplex):
            try:
                other = ExactComplex.coerce(other)
            except TypeError:
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def is_real(self):
        return not self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return f"ExactComplex({self.re})"
        return f"ExactComplex({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        return f"({self.re}+{self.im}*i)".replace("+-", "-")

    def to_json(self):
        return [self.re.numerator, self.re.denominator, self.im.numerator, self.im.denominator]

    @classmethod
    def from_json(cls, data):
        rn, rd, im_n, im_d = data
        return cls(Fraction(rn, rd), Fraction(im_n, im_d))


def grlex_key(exps):
    """Graded-lexicographic sort key; larger means later (x0 > x1 > x2 > x3)."""
    return (sum(exps), exps)


_ECONE = ExactComplex._make(_ONE, _ZERO)


class Poly4:
    """Sparse polynomial in x0..x3 with Gaussian rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exps, c in terms.items():
                c = ExactComplex.coerce(c)
                if c:
                    exps = tuple(int(e) for e in exps)
                    if len(exps) != 4 or min(exps) < 0:
                        raise ValueError(f"bad exponent tuple {exps}")
                    clean[exps] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, c):
        c = ExactComplex.coerce(c)
        return cls._raw({(0, 0, 0, 0): c} if c else {})

    @classmethod
    def var(cls, axis, coeff=1):
        e = [0, 0, 0, 0]
        e[axis] = 1
        return cls({tuple(e): coeff})

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls({tuple(exps): coeff})

    @classmethod
    def coerce(cls, value):
        if isinstance(value, Poly4):
            return value
        return cls.const(value)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly4):
            try:
                other = Poly4.coerce(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, Poly4):
            try:
                other = Poly4.coerce(other)
            except TypeError:
                return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly4._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly4._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly4):
            try:
                other = Poly4.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Poly4.coerce(other) - self

    def scale(self, c):
        c = ExactComplex.coerce(c)
        if not c:
            return Poly4._raw({})
        return Poly4._raw({e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly4):
            if isinstance(other, (int, Rational, ExactComplex, complex)):
                return self.scale(other)
            return NotImplemented
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        out = {}
        for ea, ca in a.items():
            a0, a1, a2, a3 = ea
            for eb, cb in b.items():
                key = (a0 + eb[0], a1 + eb[1], a2 + eb[2], a3 + eb[3])
                prod = ca * cb
                s = out.get(key)
                out[key] = prod if s is None else s + prod
        return Poly4._raw({e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("Poly4 powers must be nonnegative integers")
        result = Poly4.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def diff(self, axis):
        out = {}
        for e, c in self.terms.items():
            k = e[axis]
            if k:
                ne = list(e)
                ne[axis] = k - 1
                out[tuple(ne)] = c * k
        return Poly4._raw(out)

    def conj(self):
        return Poly4._raw({e: c.conjugate() for e, c in self.terms.items()})

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_components(self):
        parts = defaultdict(dict)
        for e, c in self.terms.items():
            parts[sum(e)][e] = c
        return {d: Poly4._raw(t) for d, t in sorted(parts.items())}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def constant_value(self):
        """The value of a constant polynomial, else ``None``."""
        if not self.terms:
            return ExactComplex._make(_ZERO, _ZERO)
        if len(self.terms) == 1 and (0, 0, 0, 0) in self.terms:
            return self.terms[(0, 0, 0, 0)]
        return None

    def div_r2(self):
        """Exact quotient by r2, or ``None`` when r2 does not divide.

        Writes p = sum_a x0^a c_a(x1,x2,x3) and peels quotient coefficients
        from the top x0-degree down, which is remainder-based division by r2
        under graded-lex order (leading term x0^2).
        """
        if not self.terms:
            return self
        rows = defaultdict(dict)
        for e, c in self.terms.items():
            rows[e[0]][e[1:]] = c
        top = max(rows)
        if top < 2:
            return None
        quot = {}
        for a in range(top, 1, -1):
            row = rows.get(a)
            if not row:
                continue
            low = rows.setdefault(a - 2, {})
            for t, c in row.items():
                quot[(a - 2,) + t] = c
                t1, t2, t3 = t
                for shifted in ((t1 + 2, t2, t3), (t1, t2 + 2, t3), (t1, t2, t3 + 2)):
                    s = low.get(shifted)
                    if s is None:
                        low[shifted] = -c
                    else:
                        s = s - c
                        if s:
                            low[shifted] = s
                        else:
                            del low[shifted]
        if rows.get(0) or rows.get(1):
            return None
        return Poly4._raw(quot)

    def eval(self, point):
        x0, x1, x2, x3 = (complex(v) for v in point)
        total = 0j
        for (e0, e1, e2, e3), c in self.terms.items():
            total += complex(c) * (x0**e0) * (x1**e1) * (x2**e2) * (x3**e3)
        return total

    def __repr__(self):
        return f"Poly4({poly_str(self)})"

    def to_json(self):
        return [[list(e), c.to_json()] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data):
        return cls({tuple(e): ExactComplex.from_json(c) for e, c in data})


def poly_str(p):
    if not p.terms:
        return "0"
    pieces = []
    for e, c in sorted(p.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True):
        mono = "*".join(
            f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k
        )
        if not mono:
            pieces.append(str(c))
        elif c == _ECONE:
            pieces.append(mono)
        else:
            pieces.append(f"{c}*{mono}")
    return " + ".join(pieces)


@lru_cache(maxsize=None)
def r2_power(k):
    """Poly4 for r2**k (cached)."""
    if k == 0:
        return Poly4.const(1)
    r2 = Poly4({(2, 0, 0, 0): 1, (0, 2, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, 2): 1})
    return r2_power(k - 1) * r2


def reduce_canonical(num, m):
    """Cancel common r2 factors so that r2 does not divide ``num`` when m > 0."""
    num = Poly4.coerce(num)
    if m < 0:
        raise ValueError("denominator exponent must be nonnegative")
    if not num.terms:
        return SymField._raw(num, 0)
    while m > 0:
        q = num.div_r2()
        if q is None:
            break
        num, m = q, m - 1
    return SymField._raw(num, m)


class SymField:
    """The field ``num / r2**m``, always held in canonical form."""

    __slots__ = ("num", "m")

    def __init__(self, num=0, m=0):
        f = reduce_canonical(Poly4.coerce(num), int(m))
        self.num = f.num
        self.m = f.m

    @classmethod
    def _raw(cls, num, m):
        obj = object.__new__(cls)
        obj.num = num
        obj.m = m
        return obj

    @classmethod
    def const(cls, c):
        return cls._raw(Poly4.const(c), 0)

    @classmethod
    def var(cls, axis):
        return cls._raw(Poly4.var(axis), 0)

    @classmethod
    def coerce(cls, value):
        if isinstance(value, SymField):
            return value
        if isinstance(value, Poly4):
            return cls._raw(value, 0)
        return cls.const(value)

    def is_zero(self):
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def is_polynomial(self):
        return self.m == 0

    def __eq__(self, other):
        if not isinstance(other, SymField):
            try:
                other = SymField.coerce(other)
            except TypeError:
                return NotImplemented
        return self.m == other.m and self.num.terms == other.num.terms

    def __hash__(self):
        return hash((self.m, self.num))

    def __add__(self, other):
        if not isinstance(other, SymField):
            try:
                other = SymField.coerce(other)
            except TypeError:
                return NotImplemented
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.m == other.m:
            return reduce_canonical(self.num + other.num, self.m)
        m = max(self.m, other.m)
        a = self.num if self.m == m else self.num * r2_power(m - self.m)
        b = other.num if other.m == m else other.num * r2_power(m - other.m)
        return reduce_canonical(a + b, m)

    __radd__ = __add__

    def __neg__(self):
        return SymField._raw(-self.num, self.m)

    def __sub__(self, other):
        if not isinstance(other, SymField):
            try:
                other = SymField.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return SymField.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational, ExactComplex, complex)):
            return self.scale(other)
        if not isinstance(other, SymField):
            try:
                other = SymField.coerce(other)
            except TypeError:
                return NotImplemented
        if not self.num.terms or not other.num.terms:
            return SymField._raw(Poly4._raw({}), 0)
        prod = self.num * other.num
        if self.m + other.m == 0:
            return SymField._raw(prod, 0)
        return reduce_canonical(prod, self.m + other.m)

    __rmul__ = __mul__

    def scale(self, c):
        c = ExactComplex.coerce(c)
        if not c:
            return SymField._raw(Poly4._raw({}), 0)
        return SymField._raw(self.num.scale(c), self.m)

    def __truediv__(self, c):
        if isinstance(c, SymField):
            if c.num.constant_value() is None:
                raise TypeError("SymField division only by constants or via over_r2")
            return SymField._raw(self.num.scale(1 / c.num.constant_value()), self.m) * SymField(
                r2_power(c.m), 0
            )
        return self.scale(1 / ExactComplex.coerce(c))

    def over_r2(self, k=1):
        """self / r2**k."""
        return reduce_canonical(self.num, self.m + k)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("SymField powers must be nonnegative integers")
        return reduce_canonical(self.num**n, self.m * n)

    def partial(self, axis):
        dp = self.num.diff(axis)
        if self.m == 0:
            return SymField._raw(dp, 0)
        xa = Poly4.var(axis, 2 * self.m)
        return reduce_canonical(dp * r2_power(1) - xa * self.num, self.m + 1)

    def conj(self):
        """Complex conjugate (coordinates are real)."""
        return SymField._raw(self.num.conj(), self.m)

    def re_part(self):
        return SymField._raw(
            Poly4._raw(
                {e: ExactComplex._make(c.re, _ZERO) for e, c in self.num.terms.items() if c.re}
            ),
            self.m,
        )

    def im_part(self):
        return reduce_canonical(
            Poly4._raw(
                {e: ExactComplex._make(c.im, _ZERO) for e, c in self.num.terms.items() if c.im}
            ),
            self.m,
        )

    def is_real(self):
        return all(c.is_real() for c in self.num.terms.values())

    def homogeneity(self):
        """Common homogeneity degree, or ``None`` if the field mixes degrees."""
        degs = {sum(e) for e in self.num.terms}
        if len(degs) != 1:
            return None
        return degs.pop() - 2 * self.m

    def eval(self, point):
        return eval_point(self, point)

    def compile(self):
        """Float evaluator ``point -> complex`` for repeated numeric evaluation."""
        terms = [(e, complex(c)) for e, c in self.num.terms.items()]
        m = self.m

        def evaluate(point):
            x0, x1, x2, x3 = point
            total = 0j
            for (e0, e1, e2, e3), c in terms:
                total += c * (x0**e0) * (x1**e1) * (x2**e2) * (x3**e3)
            if m:
                r = x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3
                if r == 0:
                    raise EvalAtSingularity(f"r2 = 0 at {point}")
                total /= r**m
            return total

        return evaluate

    def __repr__(self):
        if self.m == 0:
            return f"SymField({poly_str(self.num)})"
        return f"SymField(({poly_str(self.num)}) / r2^{self.m})"

    def to_json(self):
        return {"m": self.m, "terms": self.num.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(Poly4.from_json(data["terms"]), data.get("m", 0))


X0 = SymField.var(0)
X1 = SymField.var(1)
X2 = SymField.var(2)
X3 = SymField.var(3)
COORDS = (X0, X1, X2, X3)
R2 = SymField._raw(r2_power(1), 0)
I = ExactComplex(0, 1)
ZERO = SymField.const(0)
ONE = SymField.const(1)


def field_add(a, b):
    return SymField.coerce(a) + SymField.coerce(b)


def field_mul(a, b):
    return SymField.coerce(a) * SymField.coerce(b)


def partial(a, axis):
    return SymField.coerce(a).partial(axis)


def laplacian(a):
    a = SymField.coerce(a)
    out = ZERO
    for axis in range(4):
        out = out + a.partial(axis).partial(axis)
    return out


def homogeneous_parts(a):
    """List of ``(homogeneity degree, part)`` in increasing degree; parts sum to ``a``."""
    a = SymField.coerce(a)
    out = []
    for deg, p in a.num.homogeneous_components().items():
        out.append((deg - 2 * a.m, reduce_canonical(p, a.m)))
    return out


def eval_point(a, point):
    a = SymField.coerce(a)
    x = [float(v) for v in point]
    if a.m:
        r = sum(v * v for v in x)
        if r == 0:
            raise EvalAtSingularity(f"r2 = 0 at {tuple(point)}")
        return a.num.eval(x) / r**a.m
    return a.num.eval(x)
