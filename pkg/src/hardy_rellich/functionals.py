"""Per-mode integrals and Rayleigh quotients.

For a radial coefficient u of mode k in dimension n the two sides of the
inequality reduce to combinations of

    A = ∫ r^{n-1} u''^2 dr,   B = ∫ r^{n-3} u'^2 dr,   D = ∫ r^{n-5} u^2 dr,

namely ``A + (n-1+2c_k) B + (c_k^2 + 2c_k(n-4)) D`` for ∫|Δu|^2 and
``B + c_k D`` for ∫|∇u|^2/|x|^2 (both per unit sphere measure).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import constants as C
from .errors import DegenerateProfile
from .profiles import Bump, PowerCutoff, RadialProfile
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, analytic_core_integrals, integrate_weighted_many

__all__ = [
    "ModeIntegrals",
    "QuotientReport",
    "InequalityCheck",
    "SequenceLimit",
    "mode_integrals",
    "mode_numerator",
    "mode_denominator",
    "mode_quotient",
    "check_inequalities",
    "minimizing_mode",
    "quotient_ueps",
    "sequence_limit",
]


@dataclass(frozen=True)
class ModeIntegrals:
    A: float
    B: float
    D: float
    err: float


@dataclass(frozen=True)
class QuotientReport:
    n: int
    k: int
    numerator: float
    denominator: float
    quotient: float
    margins: tuple[float, float, float, float]
    integrals: ModeIntegrals

    @property
    def scale(self) -> float:
        """Magnitude used to make margin tolerances relative."""
        return max(abs(self.numerator), abs(self.denominator) * float(C.sharp_constant(self.n)))

    def as_dict(self) -> dict:
        m1, m2, m3, m4 = self.margins
        return {
            "n": self.n, "k": self.k,
            "numerator": self.numerator, "denominator": self.denominator,
            "quotient": self.quotient,
            "m1": m1, "m2": m2, "m3": m3, "m4": m4,
        }


@dataclass(frozen=True)
class InequalityCheck:
    m1: float
    m2: float
    identity_residual: float
    integrals: ModeIntegrals

    @property
    def relative_residual(self) -> float:
        return self.identity_residual / self.integrals.A if self.integrals.A > 0 else self.identity_residual


@dataclass(frozen=True)
class SequenceLimit:
    n: int
    k: int
    eps: tuple[float, ...]
    quotients: tuple[float, ...]
    extrapolate: float
    last: float

    @property
    def strictly_decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.quotients, self.quotients[1:]))


def _abd(jet_fn, n, lo, hi, cfg):
    def f(r):
        j = jet_fn(r)
        return j.ddu**2, j.du**2, j.u**2

    return integrate_weighted_many(f, (n - 1, n - 3, n - 5), lo, hi, cfg)


def mode_integrals(p: RadialProfile, n: int, cfg: QuadratureConfig = DEFAULT_CONFIG) -> ModeIntegrals:
    C.check_dimension(n)
    if isinstance(p, PowerCutoff):
        if p.n != n:
            raise ValueError(f"PowerCutoff built for n={p.n} used with n={n}")
        a0, b0, d0 = analytic_core_integrals(n, p.eps)
        ia, ib, id_ = _abd(p.jet, n, 1.0, 2.0, cfg)
        return ModeIntegrals(a0 + ia.value, b0 + ib.value, d0 + id_.value,
                             ia.abs_error_estimate + ib.abs_error_estimate + id_.abs_error_estimate)
    if isinstance(p, Bump):
        ia, ib, id_ = _abd(p.jet, n, p.a, p.b, cfg)
        return ModeIntegrals(ia.value, ib.value, id_.value,
                             ia.abs_error_estimate + ib.abs_error_estimate + id_.abs_error_estimate)
    raise TypeError(f"mode_integrals supports PowerCutoff and Bump, not {type(p).__name__}")


def mode_numerator(n: int, k: int, mi: ModeIntegrals) -> float:
    c = C.eigenvalue_ck(n, k)
    return mi.A + float(n - 1 + 2 * c) * mi.B + float(c * c + 2 * c * (n - 4)) * mi.D


def mode_denominator(n: int, k: int, mi: ModeIntegrals) -> float:
    return mi.B + float(C.eigenvalue_ck(n, k)) * mi.D


def _report(n: int, k: int, mi: ModeIntegrals) -> QuotientReport:
    num = mode_numerator(n, k, mi)
    den = mode_denominator(n, k, mi)
    if not den > 0:
        raise DegenerateProfile(f"denominator is {den} for (n={n}, k={k})")
    m1 = mi.A - float(C.weighted_rellich_constant(n)) * mi.B
    m2 = mi.B - float(C.weighted_hardy_constant(n)) * mi.D
    m3 = num - float(C.sharp_constant(n)) * den
    m4 = num - float(C.min_split(n)) * den
    return QuotientReport(n, k, num, den, num / den, (m1, m2, m3, m4), mi)


def mode_quotient(n: int, k: int, p: RadialProfile,
                  cfg: QuadratureConfig = DEFAULT_CONFIG) -> QuotientReport:
    """Single-mode Rayleigh quotient of ``p`` with proof-chain margins.

    m1 and m2 are the two weighted 1-d inequalities, m3 the sharp inequality
    and m4 the inequality with the unbalanced-split constant.
    """
    C.check_mode(k)
    return _report(n, k, mode_integrals(p, n, cfg))


def check_inequalities(p: RadialProfile, n: int,
                       cfg: QuadratureConfig = DEFAULT_CONFIG) -> InequalityCheck:
    """Margins of the two weighted 1-d inequalities and the residual of the identity

        A - ((n-2)^2/4) B = ∫ |(r^{(n-2)/2} u')'|^2 r dr,

    whose right side is integrated independently of A and B.
    """
    if not isinstance(p, Bump):
        raise ValueError("check_inequalities needs a profile supported away from 0 (Bump)")
    mi = mode_integrals(p, n, cfg)
    tau = (n - 2) / 2.0

    def f(r):
        j = p.jet(r)
        w = r**tau * j.ddu + tau * r ** (tau - 1.0) * j.du
        return (w * w,)

    rhs = integrate_weighted_many(f, (1.0,), p.a, p.b, cfg)[0].value
    m1 = mi.A - float(C.weighted_rellich_constant(n)) * mi.B
    m2 = mi.B - float(C.weighted_hardy_constant(n)) * mi.D
    return InequalityCheck(m1, m2, abs(m1 - rhs), mi)


def minimizing_mode(n: int) -> int:
    """Mode carried by the minimizing family: radial for n >= 5, degree 1 below."""
    C.check_dimension(n)
    return 0 if n >= 5 else 1


def quotient_ueps(n: int, eps: float, k: int | None = None,
                  cfg: QuadratureConfig = DEFAULT_CONFIG) -> QuotientReport:
    """Quotient of ``|x|^{-(n-4)/2+eps} g(|x|) phi_k`` (k defaults to the minimizing mode)."""
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    if k is None:
        k = minimizing_mode(n)
    return mode_quotient(n, k, PowerCutoff(n, float(eps)), cfg)


def sequence_limit(n: int, eps_list: Sequence[float], k: int | None = None,
                   cfg: QuadratureConfig = DEFAULT_CONFIG) -> SequenceLimit:
    """Linear-in-eps extrapolation of the quotients along a decreasing eps sweep.

    The extrapolate uses the two smallest eps values.
    """
    eps = tuple(float(e) for e in eps_list)
    if len(eps) < 2:
        raise ValueError("need at least two eps values")
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("eps values must be strictly decreasing")
    if k is None:
        k = minimizing_mode(n)
    qs = tuple(quotient_ueps(n, e, k, cfg).quotient for e in eps)
    e1, e2 = eps[-2], eps[-1]
    q1, q2 = qs[-2], qs[-1]
    extrap = (e1 * q2 - e2 * q1) / (e1 - e2)
    return SequenceLimit(n, k, eps, qs, float(extrap), qs[-1])


def relative_gap(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), np.finfo(float).tiny)
