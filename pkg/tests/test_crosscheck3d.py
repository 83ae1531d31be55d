import math

import numpy as np
import pytest

from hardy_rellich.crosscheck3d import (
    SphericalHarmonic3, direct_integrals_3d, sphere_eigencheck, sphere_inner, sphere_laplacian,
)
from hardy_rellich.functionals import mode_denominator, mode_integrals, mode_numerator
from hardy_rellich.profiles import Bump, PowerCutoff
from hardy_rellich.suite import crosscheck_suite


def test_sphere_eigencheck():
    assert sphere_eigencheck(SphericalHarmonic3(0)) == 0.0
    h1 = SphericalHarmonic3(1)
    assert h1.eigenvalue == 2
    assert sphere_eigencheck(h1) <= 1e-10


def test_laplacian_degree_one_closed_form():
    th = np.linspace(0.1, 3.0, 7)
    h = SphericalHarmonic3(1)
    assert np.allclose(sphere_laplacian(h, th), -2 * h.normalization * np.cos(th), rtol=1e-14, atol=1e-15)


def test_harmonics_orthonormal():
    h0, h1 = SphericalHarmonic3(0), SphericalHarmonic3(1)
    assert sphere_inner(h0, h0) == pytest.approx(1.0, rel=1e-14)
    assert sphere_inner(h1, h1) == pytest.approx(1.0, rel=1e-14)
    assert abs(sphere_inner(h0, h1)) <= 1e-15


def test_degree_validation():
    with pytest.raises(ValueError):
        SphericalHarmonic3(2)


@pytest.mark.parametrize("degree", [0, 1])
@pytest.mark.parametrize("p", [Bump(1.0, 2.0), Bump(0.2, 3.0, (0.5, 1.0, -2.0, 0.3))], ids=["unit", "wide"])
def test_direct_matches_mode_formulas(degree, p):
    num, den = direct_integrals_3d(p, SphericalHarmonic3(degree))
    mi = mode_integrals(p, 3)
    assert num == pytest.approx(mode_numerator(3, degree, mi), rel=1e-6)
    assert den == pytest.approx(mode_denominator(3, degree, mi), rel=1e-6)


def test_direct_power_cutoff():
    p = PowerCutoff(3, 0.25)
    num, den = direct_integrals_3d(p, SphericalHarmonic3(1))
    mi = mode_integrals(p, 3)
    assert num == pytest.approx(mode_numerator(3, 1, mi), rel=1e-6)
    assert den == pytest.approx(mode_denominator(3, 1, mi), rel=1e-6)


def test_crosscheck_suite():
    for degree in (0, 1):
        rows, resid = crosscheck_suite(degree, trials=4, seed=2)
        assert len(rows) == 5 and resid <= 1e-10
        assert max(max(r.num_rel, r.den_rel) for r in rows) <= 1e-6


def test_normalization():
    assert SphericalHarmonic3(0).normalization == pytest.approx(1 / math.sqrt(4 * math.pi))
    assert SphericalHarmonic3(1).normalization == pytest.approx(math.sqrt(3 / (4 * math.pi)))
