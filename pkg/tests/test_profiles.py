import numpy as np
import pytest

from hardy_rellich.profiles import (
    Bump, GridSampled, PowerCutoff, eval_cutoff, eval_profile, random_bump, support,
)

H = 1e-5


def central(f, r, h=H):
    return (f(r + h) - f(r - h)) / (2 * h), (f(r + h) - 2 * f(r) + f(r - h)) / h**2


def test_cutoff_values():
    assert eval_cutoff(0.5) == (1.0, 0.0, 0.0)
    assert eval_cutoff(3.0) == (0.0, 0.0, 0.0)
    g, _, _ = eval_cutoff(1.5)
    assert g == pytest.approx(0.5, abs=1e-15)


def test_cutoff_range_and_monotone():
    r = np.linspace(0.0, 3.0, 3001)
    g, g1, _ = eval_cutoff(r)
    assert np.all((g >= 0) & (g <= 1))
    assert np.all(g1 <= 0)


def test_cutoff_rejects_negative():
    with pytest.raises(ValueError):
        eval_cutoff(-0.1)


@pytest.mark.parametrize("seam", [1.0, 2.0])
def test_cutoff_seams_continuous(seam):
    at = np.array(eval_cutoff(seam))
    for d in (1e-2, 1e-3, 1e-4):
        left = np.array(eval_cutoff(seam - d))
        right = np.array(eval_cutoff(seam + d))
        assert np.all(np.abs(left - right) <= 1e-10)
        assert np.all(np.abs(left - at) <= 1e-10)


def test_cutoff_derivatives_match_finite_differences():
    rng = np.random.default_rng(1)
    for r in rng.uniform(1.02, 1.98, 100):
        g1, g2 = central(lambda x: eval_cutoff(x)[0], r)
        _, d1, d2 = eval_cutoff(r)
        assert abs(d1 - g1) <= 1e-6 * (1 + abs(d1))
        assert abs(d2 - g2) <= 1e-4 * (1 + abs(d2))


def test_power_cutoff_pure_power_on_unit_interval():
    p = PowerCutoff(5, 0.1)
    r = np.linspace(0.01, 1.0, 50)
    j = p.jet(r)
    al = p.alpha
    assert np.array_equal(j.u, r**al)
    assert np.array_equal(j.du, al * r ** (al - 1))
    assert np.array_equal(j.ddu, al * (al - 1) * r ** (al - 2))


def test_power_cutoff_example_jet():
    j = eval_profile(PowerCutoff(5, 0.1), 0.5)
    assert j.u == pytest.approx(0.5**-0.4, rel=1e-15)
    assert j.du == pytest.approx(-0.4 * 0.5**-1.4, rel=1e-15)
    assert j.ddu == pytest.approx(-0.4 * -1.4 * 0.5**-2.4, rel=1e-15)


def test_power_cutoff_jet_matches_fd_in_transition():
    p = PowerCutoff(3, 0.01)
    j = eval_profile(p, 1.5)
    d1, _ = central(lambda x: p.jet(x).u, 1.5, 1e-5)
    _, d2 = central(lambda x: p.jet(x).u, 1.5, 1e-4)
    assert j.du == pytest.approx(d1, rel=1e-6)
    assert j.ddu == pytest.approx(d2, rel=1e-6)


def _profiles():
    rng = np.random.default_rng(7)
    return [PowerCutoff(3, 0.05), PowerCutoff(6, 0.3), Bump(1.0, 2.0), Bump(0.25, 4.0, (0.3, -1.0, 2.0, 0.5))] + [
        random_bump(rng) for _ in range(3)]


@pytest.mark.parametrize("p", _profiles(), ids=lambda p: type(p).__name__)
def test_derivative_consistency(p):
    lo, hi = support(p)
    lo = max(lo, 0.05)
    rng = np.random.default_rng(3)
    r = rng.uniform(lo + 0.02 * (hi - lo), hi - 0.02 * (hi - lo), 100)
    j = p.jet(r)
    # fourth-order Richardson combination of central differences
    def rich(f, h=1e-4):
        c = lambda s: (f(r + s) - f(r - s)) / (2 * s)
        return (4 * c(h / 2) - c(h)) / 3
    d1 = rich(lambda x: p.jet(x).u)
    d2 = rich(lambda x: p.jet(x).du)
    assert np.all(np.abs(j.du - d1) <= 1e-6 * (1 + np.abs(j.du)))
    assert np.all(np.abs(j.ddu - d2) <= 1e-6 * (1 + np.abs(j.ddu)))


def test_bump_vanishes_outside_support():
    j = eval_profile(Bump(1.0, 2.0), 3.0)
    assert (j.u, j.du, j.ddu) == (0.0, 0.0, 0.0)
    r = np.array([0.1, 0.99, 1.0, 2.0, 2.5])
    j = Bump(1.0, 2.0).jet(r)
    assert np.all(j.u[[0, 1, 2, 3, 4]] == 0.0)


@pytest.mark.parametrize("p,expected", [
    (PowerCutoff(4, 0.2), (0.0, 2.0)),
    (Bump(1, 2), (1.0, 2.0)),
    (Bump(0.25, 4), (0.25, 4.0)),
])
def test_support(p, expected):
    assert support(p) == expected


def test_bump_validation():
    with pytest.raises(ValueError):
        Bump(0.0, 1.0)
    with pytest.raises(ValueError):
        Bump(2.0, 1.0)
    with pytest.raises(ValueError):
        PowerCutoff(5, 0.0)


def test_eval_profile_rejects_nonpositive_radius():
    with pytest.raises(ValueError):
        eval_profile(Bump(1, 2), 0.0)


def test_bump_scaling_and_dilation():
    b = Bump(1.0, 2.0, (1.0, 0.5))
    r = np.linspace(1.1, 1.9, 7)
    assert np.allclose(b.scaled(2.0).jet(r).u, 2.0 * b.jet(r).u, rtol=1e-15)
    d = b.dilated(2.0)
    assert support(d) == (0.5, 1.0)
    assert np.allclose(d.jet(r / 2).u, b.jet(r).u, rtol=1e-14)
    assert np.allclose(d.jet(r / 2).du, 2.0 * b.jet(r).du, rtol=1e-13)


def test_random_bump_reproducible():
    a = random_bump(np.random.default_rng(5))
    b = random_bump(np.random.default_rng(5))
    assert a == b
    assert 0.1 <= a.a < a.b <= 10.0 and a.b / a.a >= 1.2
    assert len(a.coeffs) == 4


def test_grid_sampled_reproduces_smooth_profile():
    t = np.linspace(np.log(0.5), np.log(4.0), 4001)
    b = Bump(0.8, 3.0, (1.0, 0.2))
    gs = GridSampled(t[0], t[-1], b.jet(np.exp(t)).u)
    r = np.linspace(1.0, 2.5, 9)
    exact, approx = b.jet(r), gs.jet(r)
    assert np.allclose(approx.u, exact.u, atol=1e-6)
    assert np.allclose(approx.du, exact.du, atol=1e-4)
    assert np.allclose(approx.ddu, exact.ddu, atol=2e-3)
    assert gs.jet(np.array([0.1, 10.0])).u.tolist() == [0.0, 0.0]
    assert support(gs) == pytest.approx((0.5, 4.0))


def test_grid_sampled_one_sided_edges_exact_for_quadratics_in_t():
    t = np.linspace(0.0, 1.0, 11)
    v = 1.0 + 2.0 * t + 3.0 * t**2
    gs = GridSampled(0.0, 1.0, v)
    assert np.allclose(gs._vt, 2.0 + 6.0 * t)
    assert np.allclose(gs._vtt, 6.0)
