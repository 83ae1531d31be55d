"""Radial profiles u(r) with first and second derivatives.

Three kinds are supported:

* :class:`PowerCutoff` -- ``r^alpha g(r)`` with ``alpha = -(n-4)/2 + eps``, the
  radial factor of the minimizing family.
* :class:`Bump` -- a polynomial times the standard bump, supported in ``[a, b]``.
* :class:`GridSampled` -- values on a uniform grid in ``t = log r``.

All ``jet`` methods are vectorized over ``r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "ProfileJet",
    "RadialProfile",
    "PowerCutoff",
    "Bump",
    "GridSampled",
    "eval_cutoff",
    "eval_profile",
    "support",
    "random_bump",
    "BUMP_GENERATOR_VERSION",
]

BUMP_GENERATOR_VERSION = "bump-v1"

# exp(-1/s) is below the smallest subnormal once s < 1/745.
_H_FLOOR = 1.0 / 740.0


@dataclass(frozen=True)
class ProfileJet:
    u: np.ndarray | float
    du: np.ndarray | float
    ddu: np.ndarray | float


def _h_and_derivs(s):
    """h(s) = exp(-1/s) for s > 0 (else 0) with h' and h''."""
    s = np.asarray(s, dtype=float)
    live = s > _H_FLOOR
    safe = np.where(live, s, 1.0)
    h = np.where(live, np.exp(-1.0 / safe), 0.0)
    h1 = h / safe**2
    h2 = h * (1.0 / safe**4 - 2.0 / safe**3)
    return h, np.where(live, h1, 0.0), np.where(live, h2, 0.0)


def eval_cutoff(r):
    """Smooth cutoff g and its first two derivatives.

    ``g = 1`` on ``[0, 1]``, ``g = 0`` on ``[2, inf)`` and
    ``g = h(2-r) / (h(2-r) + h(r-1))`` in between, with ``h(s) = exp(-1/s)``.
    Scalars in give scalars out.
    """
    scalar = np.ndim(r) == 0
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("cutoff is defined for r >= 0")
    a, a1, a2 = _h_and_derivs(2.0 - r)
    b, b1, b2 = _h_and_derivs(r - 1.0)
    # d/dr h(2-r) flips the sign of the first derivative only
    a1 = -a1
    s = a + b
    mid = (r > 1.0) & (r < 2.0)
    s_safe = np.where(mid, s, 1.0)
    num1 = a1 * b - a * b1
    num1_d = a2 * b - a * b2
    s1 = a1 + b1
    g = np.where(mid, a / s_safe, np.where(r <= 1.0, 1.0, 0.0))
    g1 = np.where(mid, num1 / s_safe**2, 0.0)
    g2 = np.where(mid, (num1_d * s_safe - 2.0 * num1 * s1) / s_safe**3, 0.0)
    if scalar:
        return float(g), float(g1), float(g2)
    return g, g1, g2


class RadialProfile:
    """Common interface: ``jet(r)`` and ``support()``."""

    def jet(self, r) -> ProfileJet:  # pragma: no cover - abstract
        raise NotImplementedError

    def support(self) -> tuple[float, float]:  # pragma: no cover - abstract
        raise NotImplementedError

    def __call__(self, r):
        return self.jet(r).u


@dataclass(frozen=True)
class PowerCutoff(RadialProfile):
    n: int
    eps: float

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("dimension must be >= 3")
        if not self.eps > 0:
            raise ValueError("PowerCutoff needs eps > 0")

    @property
    def alpha(self) -> float:
        return -(self.n - 4) / 2.0 + self.eps

    def support(self):
        return (0.0, 2.0)

    def jet(self, r):
        r = np.asarray(r, dtype=float)
        al = self.alpha
        g, g1, g2 = eval_cutoff(r)
        p0 = r**al
        p1 = al * r ** (al - 1.0)
        p2 = al * (al - 1.0) * r ** (al - 2.0)
        return ProfileJet(p0 * g, p1 * g + p0 * g1, p2 * g + 2.0 * p1 * g1 + p0 * g2)


@dataclass(frozen=True)
class Bump(RadialProfile):
    """``P(x) exp(-1/(1-x^2))`` with ``x = (2r - a - b)/(b - a)`` on ``(a, b)``.

    ``coeffs`` are the coefficients of the polynomial P in increasing degree.
    """

    a: float
    b: float
    coeffs: tuple[float, ...] = field(default=(1.0,))

    def __post_init__(self):
        if not (0.0 < self.a < self.b < np.inf):
            raise ValueError(f"Bump needs 0 < a < b < inf, got ({self.a}, {self.b})")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    def support(self):
        return (self.a, self.b)

    def scaled(self, factor: float) -> "Bump":
        return Bump(self.a, self.b, tuple(factor * c for c in self.coeffs))

    def dilated(self, lam: float) -> "Bump":
        """Profile ``r -> u(lam * r)``; its support is ``[a/lam, b/lam]``."""
        return Bump(self.a / lam, self.b / lam, self.coeffs)

    def jet(self, r):
        r = np.asarray(r, dtype=float)
        half = 0.5 * (self.b - self.a)
        x = (r - 0.5 * (self.a + self.b)) / half
        q = 1.0 - x * x
        live = q > _H_FLOOR
        qs = np.where(live, q, 1.0)
        phi = np.where(live, np.exp(-1.0 / qs), 0.0)
        d1 = -2.0 * x / qs**2
        phi1 = phi * d1
        phi2 = phi * (d1 * d1 - 2.0 / qs**2 - 8.0 * x * x / qs**3)
        poly = np.polynomial.Polynomial(self.coeffs)
        P, P1, P2 = poly(x), poly.deriv(1)(x), poly.deriv(2)(x)
        u = P * phi
        ux = P1 * phi + P * phi1
        uxx = P2 * phi + 2.0 * P1 * phi1 + P * phi2
        s = 1.0 / half
        return ProfileJet(u, ux * s, uxx * s * s)


class GridSampled(RadialProfile):
    """Samples ``v_i = u(exp(t_i))`` on a uniform grid ``t_min .. t_max``.

    Derivatives in t use second-order central differences (one-sided at the
    ends); jets between nodes are interpolated linearly in t and mapped back
    with ``u' = e^{-t} v_t`` and ``u'' = e^{-2t} (v_tt - v_t)``. The profile is
    zero outside the grid.
    """

    def __init__(self, t_min: float, t_max: float, values: Sequence[float]):
        values = np.asarray(values, dtype=float)
        if values.ndim != 1 or values.size < 4:
            raise ValueError("GridSampled needs at least 4 samples")
        if not t_min < t_max:
            raise ValueError("t_min must be < t_max")
        self.t_min = float(t_min)
        self.t_max = float(t_max)
        self.values = values
        self.t = np.linspace(self.t_min, self.t_max, values.size)
        dt = self.t[1] - self.t[0]
        v = values
        vt = np.gradient(v, dt, edge_order=2)
        vtt = np.empty_like(v)
        vtt[1:-1] = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / dt**2
        vtt[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / dt**2
        vtt[-1] = (2.0 * v[-1] - 5.0 * v[-2] + 4.0 * v[-3] - v[-4]) / dt**2
        self._vt = vt
        self._vtt = vtt

    def support(self):
        return (float(np.exp(self.t_min)), float(np.exp(self.t_max)))

    def jet(self, r):
        r = np.asarray(r, dtype=float)
        t = np.log(r)
        inside = (t >= self.t_min) & (t <= self.t_max)
        v = np.interp(t, self.t, self.values)
        vt = np.interp(t, self.t, self._vt)
        vtt = np.interp(t, self.t, self._vtt)
        u = np.where(inside, v, 0.0)
        du = np.where(inside, vt / r, 0.0)
        ddu = np.where(inside, (vtt - vt) / r**2, 0.0)
        return ProfileJet(u, du, ddu)


def eval_profile(p: RadialProfile, r) -> ProfileJet:
    """Value and first two derivatives of ``p`` at ``r > 0``."""
    if np.any(np.asarray(r) <= 0):
        raise ValueError("profiles are evaluated at r > 0 only")
    jet = p.jet(r)
    if np.ndim(r) == 0:
        return ProfileJet(float(jet.u), float(jet.du), float(jet.ddu))
    return jet


def support(p: RadialProfile) -> tuple[float, float]:
    return p.support()


def random_bump(rng: np.random.Generator, lo: float = 0.1, hi: float = 10.0,
                min_ratio: float = 1.2) -> Bump:
    """Draw a random :class:`Bump` (generator ``bump-v1``).

    The support endpoints are log-uniform in ``[lo, hi]`` with ``b/a >=
    min_ratio`` (redrawn otherwise); the four cubic coefficients are standard
    normal.
    """
    while True:
        ends = np.sort(np.exp(rng.uniform(np.log(lo), np.log(hi), size=2)))
        if ends[1] / ends[0] >= min_ratio:
            break
    coeffs = rng.standard_normal(4)
    return Bump(float(ends[0]), float(ends[1]), tuple(coeffs))
