import json
from math import comb

import pytest

from kfueter.corpus import (
    FIXTURE_VERSION,
    build_fixtures,
    check_fixture,
    fixture_dir,
    harmonic_basis,
    load_fixtures,
    random_field,
    random_harmonic,
    random_point,
    random_symfield,
    regular_imaginary_basis,
    write_fixtures,
)
from kfueter.exact import laplacian
from kfueter.linalg import rank
from kfueter.quaternion import cf_D


@pytest.mark.parametrize("d", range(7))
def test_harmonic_basis_dimension(d):
    basis = harmonic_basis(d)
    # monomials of degree d minus monomials of degree d-2
    expected = comb(d + 3, 3) - (comb(d + 1, 3) if d >= 2 else 0)
    assert len(basis) == expected == (d + 1) ** 2
    for h in basis:
        assert laplacian(h).is_zero()
        assert h.is_real()
    keys = sorted({e for h in basis for e in h.num.terms})
    rows = [{c: h.num.terms[e] for c, h in enumerate(basis) if e in h.num.terms} for e in keys]
    assert rank(rows, len(basis)) == len(basis)


@pytest.mark.parametrize("d,dim", [(1, 8), (2, 15)])
def test_regular_imaginary_basis(d, dim):
    basis = regular_imaginary_basis(d)
    assert len(basis) == dim
    for F in basis:
        assert F.w.is_zero() and cf_D(F).is_zero()


def test_random_generators_are_deterministic():
    assert random_field(5, 3, 2) == random_field(5, 3, 2)
    assert random_symfield(9, 3, 2).m <= 2
    assert random_harmonic(4, 3) == random_harmonic(4, 3)
    p = random_point(3)
    assert sum(v * v for v in p) >= 0.25


def test_committed_fixtures_match_rebuild():
    built = {fx["name"]: fx for fx in build_fixtures()}
    stored = {fx["name"]: fx for fx in load_fixtures()}
    assert set(built) == set(stored)
    for name, fx in built.items():
        assert json.loads(json.dumps(fx)) == stored[name]
        assert fx["version"] == FIXTURE_VERSION


def test_every_fixture_claim_rechecks():
    for fx in load_fixtures():
        results = check_fixture(fx)
        assert results and all(results.values()), (fx["name"], results)


def test_write_fixtures_round_trip(tmp_path):
    write_fixtures(tmp_path)
    assert load_fixtures(tmp_path) == load_fixtures(fixture_dir())
