"""Randomized property suite and 3-d cross-check batch.

Both are deterministic functions of their seed; the CLI and the acceptance
tests share them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import constants as C
from .crosscheck3d import SphericalHarmonic3, direct_integrals_3d, sphere_eigencheck
from .functionals import _report, check_inequalities, mode_denominator, mode_integrals, mode_numerator
from .profiles import Bump, random_bump
from .quadrature import DEFAULT_CONFIG, QuadratureConfig

__all__ = ["DimensionSummary", "property_suite", "CrosscheckRow", "crosscheck_suite", "DILATIONS"]

DILATIONS = (0.5, 2.0, 5.0)
AMPLITUDE = 7.0


@dataclass
class DimensionSummary:
    n: int
    trials: int = 0
    cases: int = 0
    min_m1: float = np.inf
    min_m2: float = np.inf
    min_m3: float = np.inf
    min_m4: float = np.inf
    max_identity: float = 0.0
    max_dilation: float = 0.0
    max_amplitude: float = 0.0
    failures: list[str] = field(default_factory=list)

    def as_row(self) -> dict:
        return {
            "n": self.n, "trials": self.trials, "cases": self.cases,
            "min_m1_rel": self.min_m1, "min_m2_rel": self.min_m2,
            "min_m3_rel": self.min_m3, "min_m4_rel": self.min_m4,
            "max_identity_rel": self.max_identity,
            "max_dilation_rel": self.max_dilation, "max_amplitude_rel": self.max_amplitude,
            "failures": len(self.failures),
        }


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b))


def property_suite(dims=(3, 4, 5, 6), trials: int = 100, seed: int = 0, kmax: int = 5,
                   tol: float = 1e-9, identity_tol: float = 1e-8, invariance_tol: float = 1e-10,
                   cfg: QuadratureConfig = DEFAULT_CONFIG) -> list[DimensionSummary]:
    """Check margins, identity residual and invariances on random bumps.

    Margins are normalized by the report scale ``max(|num|, |den| C(n))``;
    m2 is skipped for n = 4 where its constant vanishes. Trial i uses the
    i-th profile drawn from ``numpy.random.default_rng(seed)``.
    """
    rng = np.random.default_rng(seed)
    bumps = [random_bump(rng) for _ in range(trials)]
    out = []
    for n in dims:
        C.check_dimension(n)
        summ = DimensionSummary(n)
        for i, p in enumerate(bumps):
            summ.trials += 1
            chk = check_inequalities(p, n, cfg)
            summ.max_identity = max(summ.max_identity, chk.relative_residual)
            if chk.relative_residual > identity_tol:
                summ.failures.append(f"trial {i}: identity residual {chk.relative_residual:.3e}")
            mi = chk.integrals
            dil = [mode_integrals(p.dilated(lam), n, cfg) for lam in DILATIONS]
            amp = mode_integrals(p.scaled(AMPLITUDE), n, cfg)
            for k in range(kmax + 1):
                rep = _report(n, k, mi)
                summ.cases += 1
                s = rep.scale
                m1, m2, m3, m4 = (m / s for m in rep.margins)
                summ.min_m1 = min(summ.min_m1, m1)
                summ.min_m3 = min(summ.min_m3, m3)
                summ.min_m4 = min(summ.min_m4, m4)
                if n != 4:
                    summ.min_m2 = min(summ.min_m2, m2)
                checks = [("m1", m1), ("m3", m3), ("m4", m4)] + ([("m2", m2)] if n != 4 else [])
                for name, val in checks:
                    if val < -tol:
                        summ.failures.append(f"trial {i} k={k}: {name} = {val:.3e}")
                if not rep.margins[2] > 0:
                    summ.failures.append(f"trial {i} k={k}: m3 not strictly positive")
                for lam, d in zip(DILATIONS, dil):
                    q = mode_numerator(n, k, d) / mode_denominator(n, k, d)
                    e = _rel(q, rep.quotient)
                    summ.max_dilation = max(summ.max_dilation, e)
                    if e > invariance_tol:
                        summ.failures.append(f"trial {i} k={k}: dilation {lam} changes quotient by {e:.3e}")
                qa = mode_numerator(n, k, amp) / mode_denominator(n, k, amp)
                e = _rel(qa, rep.quotient)
                summ.max_amplitude = max(summ.max_amplitude, e)
                if e > invariance_tol:
                    summ.failures.append(f"trial {i} k={k}: amplitude changes quotient by {e:.3e}")
        if n == 4:
            summ.min_m2 = float("nan")
        out.append(summ)
    return out


@dataclass(frozen=True)
class CrosscheckRow:
    label: str
    degree: int
    num_direct: float
    num_modes: float
    den_direct: float
    den_modes: float

    @property
    def num_rel(self) -> float:
        return _rel(self.num_direct, self.num_modes)

    @property
    def den_rel(self) -> float:
        return _rel(self.den_direct, self.den_modes)


def crosscheck_suite(degree: int, trials: int = 10, seed: int = 0) -> tuple[list[CrosscheckRow], float]:
    """Compare direct 3-d integrals with the mode formulas (n = 3, k = degree).

    Uses Bump(1, 2) followed by ``trials`` random bumps. Returns the rows and
    the sphere eigen-residual of the harmonic.
    """
    h = SphericalHarmonic3(degree)
    rng = np.random.default_rng(seed)
    profiles = [("bump(1,2)", Bump(1.0, 2.0))]
    for i in range(trials):
        p = random_bump(rng)
        profiles.append((f"random[{i}] ({p.a:.4g},{p.b:.4g})", p))
    rows = []
    for label, p in profiles:
        num, den = direct_integrals_3d(p, h)
        mi = mode_integrals(p, 3)
        rows.append(CrosscheckRow(label, degree, num, mode_numerator(3, degree, mi),
                                  den, mode_denominator(3, degree, mi)))
    return rows, sphere_eigencheck(h)
