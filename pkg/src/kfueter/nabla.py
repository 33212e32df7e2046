"""First-order complex operators and coordinate matrices on R^4 = H.

Lowered operators (the entries of the matrix built from tau(q))::

    nabla_{00'} =  d0 + i d1     nabla_{01'} = -d2 - i d3
    nabla_{10'} =  d2 - i d3     nabla_{11'} =  d0 - i d1

Raised operators ``nabla_A^{A'} = sum_B' nabla_{AB'} eps^{B'A'}`` with
``eps = tau(j) = [[0, -1], [1, 0]]``::

    nabla_0^{0'} = -d2 - i d3    nabla_0^{1'} = -d0 - i d1
    nabla_1^{0'} =  d0 - i d1    nabla_1^{1'} = -d2 + i d3

and the coordinate matrix ``z_A^{A'} = tau(q j)``::

    z_0^{0'} = -x2 - i x3        z_0^{1'} = -x0 - i x1
    z_1^{0'} =  x0 - i x1        z_1^{1'} = -x2 + i x3
"""

from __future__ import annotations

from .exact import COORDS, I, SymField, ZERO

__all__ = ["NABLA_RAISED", "NABLA_LOWERED", "Z", "ZBAR", "EPS", "nabla_raised", "nabla_lowered"]

# each entry: tuple of (axis, coefficient) pairs
NABLA_LOWERED = (
    (((0, 1), (1, I)), ((2, -1), (3, -I))),
    (((2, 1), (3, -I)), ((0, 1), (1, -I))),
)
NABLA_RAISED = (
    (((2, -1), (3, -I)), ((0, -1), (1, -I))),
    (((0, 1), (1, -I)), ((2, -1), (3, I))),
)

x0, x1, x2, x3 = COORDS
Z = (
    (-x2 - x3 * I, -x0 - x1 * I),
    (x0 - x1 * I, -x2 + x3 * I),
)
ZBAR = tuple(tuple(z.conj() for z in row) for row in Z)

# eps[a][b]: eps_{01} = +1, eps_{10} = -1
EPS = ((0, 1), (-1, 0))


def _apply(table, f):
    f = SymField.coerce(f)
    out = ZERO
    for axis, c in table:
        out = out + f.partial(axis).scale(c)
    return out


def nabla_raised(A, Bp, f):
    """Apply nabla_A^{Bp} to a scalar field."""
    return _apply(NABLA_RAISED[A][Bp], f)


def nabla_lowered(A, Bp, f):
    """Apply nabla_{A Bp} to a scalar field."""
    return _apply(NABLA_LOWERED[A][Bp], f)
