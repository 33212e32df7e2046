from fractions import Fraction

import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from kfueter.exact import ExactComplex
from kfueter.linalg import nullspace, rank, solve


def _to_sympy(rows, ncols):
    return sp.Matrix(
        [[sp.Rational(r.get(c, ExactComplex(0)).re) + sp.I * sp.Rational(r.get(c, ExactComplex(0)).im) for c in range(ncols)] for r in rows]
    )


@st.composite
def matrices(draw):
    nrows = draw(st.integers(1, 5))
    ncols = draw(st.integers(1, 5))
    entry = st.builds(lambda a, b: ExactComplex(Fraction(a), Fraction(b)), st.integers(-2, 2), st.integers(-1, 1))
    rows = []
    for _ in range(nrows):
        row = {}
        for c in range(ncols):
            v = draw(entry)
            if v and draw(st.booleans()):
                row[c] = v
        rows.append(row)
    return rows, ncols


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_and_nullspace_against_sympy(data):
    rows, ncols = data
    M = _to_sympy(rows, ncols)
    assert rank(rows, ncols) == M.rank()
    basis = nullspace(rows, ncols)
    assert len(basis) == ncols - M.rank()
    for vec in basis:
        for row in rows:
            assert not sum((row.get(c, ExactComplex(0)) * vec[c] for c in range(ncols)), ExactComplex(0))


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_solve_consistent_system(data, xs):
    rows, ncols = data
    x = [ExactComplex(v) for v in xs[:ncols]]
    rhs = [sum((r.get(c, ExactComplex(0)) * x[c] for c in range(ncols)), ExactComplex(0)) for r in rows]
    got = solve(rows, rhs, ncols)
    assert got is not None
    for r, b in zip(rows, rhs):
        assert sum((r.get(c, ExactComplex(0)) * got[c] for c in range(ncols)), ExactComplex(0)) == b


def test_solve_inconsistent():
    rows = [{0: ExactComplex(1)}, {0: ExactComplex(2)}]
    assert solve(rows, [ExactComplex(1), ExactComplex(1)], 1) is None
