"""Discrete per-mode Rayleigh quotients on a logarithmic radial grid.

With ``t = log r`` and ``v(t) = u(e^t)`` the three radial integrals become

    A = ∫ e^{(n-4)t} (v_tt - v_t)^2 dt,  B = ∫ e^{(n-4)t} v_t^2 dt,  D = ∫ e^{(n-4)t} v^2 dt.

Grid functions vanish at both boundary nodes and are extended by zero, so
every discrete competitor is a compactly supported grid function and the
smallest generalized eigenvalue bounds the discrete infimum from above.

The Mellin symbol ``S_k(xi)`` (the quotient evaluated on ``r^{sigma + i xi}``,
``sigma = -(n-4)/2``) gives an independent per-mode oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.linalg import LinAlgError, cho_solve_banded, cholesky_banded

from . import constants as C
from .errors import SolverFailure
from .profiles import GridSampled

__all__ = [
    "LogGrid",
    "QuadraticForm",
    "EigenResult",
    "ModeScanResult",
    "SymbolMin",
    "assemble_forms",
    "smallest_generalized_eigenvalue",
    "per_mode_constant",
    "per_mode_minimizer",
    "scan_modes",
    "symbol_value",
    "symbol_min",
    "symbol_scan",
    "global_constant_estimate",
]

LN10 = math.log(10.0)


@dataclass(frozen=True)
class LogGrid:
    t_min: float
    t_max: float
    m: int

    def __post_init__(self):
        if not self.t_min < self.t_max:
            raise ValueError("t_min must be < t_max")
        if self.m < 16:
            raise ValueError("a LogGrid needs m >= 16 nodes")

    @classmethod
    def default(cls) -> "LogGrid":
        return cls.from_decades(14.0, 4000)

    @classmethod
    def from_decades(cls, decades: float, points: int) -> "LogGrid":
        """Grid symmetric about r = 1 spanning ``decades`` powers of ten."""
        half = 0.5 * decades * LN10
        return cls(-half, half, int(points))

    @property
    def decades(self) -> float:
        return (self.t_max - self.t_min) / LN10

    @property
    def t(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.m)

    @property
    def dt(self) -> float:
        return (self.t_max - self.t_min) / (self.m - 1)

    @property
    def r(self) -> np.ndarray:
        return np.exp(self.t)


@dataclass(frozen=True)
class QuadraticForm:
    """Symmetric banded matrix; ``bands[d, i]`` holds entry ``(i, i + d)``."""

    bands: np.ndarray

    @property
    def order(self) -> int:
        return self.bands.shape[1]

    @property
    def bandwidth(self) -> int:
        return self.bands.shape[0] - 1

    def diagonal(self) -> np.ndarray:
        return self.bands[0].copy()

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.bands[0] * v
        for d in range(1, self.bandwidth + 1):
            b = self.bands[d, : self.order - d]
            out[:-d] += b * v[d:]
            out[d:] += b * v[:-d]
        return out

    def __call__(self, v: np.ndarray) -> float:
        return float(v @ self.matvec(v))

    def to_dense(self) -> np.ndarray:
        a = np.diag(self.bands[0])
        for d in range(1, self.bandwidth + 1):
            off = np.diag(self.bands[d, : self.order - d], d)
            a += off + off.T
        return a

    def congruence(self, s: np.ndarray) -> "QuadraticForm":
        """Form of ``diag(s) M diag(s)``."""
        out = self.bands.copy()
        for d in range(self.bandwidth + 1):
            out[d, : self.order - d] *= s[: self.order - d] * s[d:]
        return QuadraticForm(out)

    def upper_lapack(self) -> np.ndarray:
        """Upper banded storage as used by :func:`scipy.linalg.cholesky_banded`."""
        u = self.bandwidth
        ab = np.zeros_like(self.bands)
        for d in range(u + 1):
            ab[u - d, d:] = self.bands[d, : self.order - d]
        return ab


def _local_stencils(n: int, c: int, dt: float):
    lt = np.array([-1.0, 0.0, 1.0]) / (2.0 * dt)
    ltt = np.array([1.0, -2.0, 1.0]) / dt**2
    l0 = np.array([0.0, 1.0, 0.0])
    la = ltt - lt
    p_loc = np.outer(la, la) + (n - 1 + 2 * c) * np.outer(lt, lt) + (c * c + 2 * c * (n - 4)) * np.outer(l0, l0)
    q_loc = np.outer(lt, lt) + c * np.outer(l0, l0)
    return p_loc, q_loc


def _scatter(local: np.ndarray, weights: np.ndarray, order: int) -> QuadraticForm:
    bands = np.zeros((3, order))
    nodes = np.arange(weights.size)
    for a in range(3):
        for b in range(a, 3):
            row = nodes + a - 2
            col = nodes + b - 2
            ok = (row >= 0) & (col <= order - 1)
            np.add.at(bands[b - a], row[ok], weights[ok] * local[a, b])
    return QuadraticForm(bands)


def assemble_forms(n: int, k: int, grid: LogGrid) -> tuple[QuadraticForm, QuadraticForm]:
    """Banded forms P (for ∫|Δu|^2) and Q (for ∫|∇u|^2/|x|^2) of mode k.

    Unknowns are ``v_i = u(r_i)`` at the ``m - 2`` interior nodes. Derivatives
    use second-order central differences in t; the quadrature weight of node i
    is ``r_i^{n-4} dt`` after the change of variables. Stencils centred on the
    two boundary nodes are included, so the forms are exactly those of the
    zero extension of the grid function.
    """
    C.check_dimension(n)
    c = int(C.eigenvalue_ck(n, k))
    p_loc, q_loc = _local_stencils(n, c, grid.dt)
    w = np.exp((n - 4) * grid.t) * grid.dt
    order = grid.m - 2
    return _scatter(p_loc, w, order), _scatter(q_loc, w, order)


@dataclass(frozen=True)
class EigenResult:
    value: float
    residual: float
    iterations: int
    shift: float  # last certified shift; below lambda_min up to rounding (~1e-8 relative)
    vector: np.ndarray = field(repr=False)


def _try_cholesky(ab: np.ndarray):
    try:
        return cholesky_banded(ab, lower=False, check_finite=False)
    except LinAlgError:
        return None


def smallest_generalized_eigenvalue(P: QuadraticForm, Q: QuadraticForm, tol: float = 1e-9,
                                    max_iter: int = 500) -> EigenResult:
    """Smallest eigenvalue of ``P v = lambda Q v`` by shifted inverse iteration.

    Both forms are first equilibrated by the congruence ``diag(Q)^{-1/2}``,
    which leaves the eigenvalues unchanged. Every shift is certified to lie
    below the smallest eigenvalue by a successful banded Cholesky
    factorization of ``P - shift Q`` (positive definite iff shift < lambda_min
    because Q is positive definite); a failed factorization halves the step
    toward the current Rayleigh quotient. Convergence is declared when the
    relative residual ``|P v - rho Q v| / |Q v|`` (equilibrated coordinates)
    is at most ``tol``, or when the certified bracket ``shift < lambda_min <=
    rho`` (exact up to rounding) has relative width at most ``tol``. The bracket test is needed on
    fine grids, where rounding in the second differences puts a floor of
    roughly ``1e-7`` under the residual while rho is already exact to ``1e-12``.
    """
    if P.order != Q.order:
        raise ValueError("forms have different orders")
    qd = Q.diagonal()
    if np.any(qd <= 0):
        raise SolverFailure("denominator form has a non-positive diagonal entry")
    s = 1.0 / np.sqrt(qd)
    Pt, Qt = P.congruence(s), Q.congruence(s)
    p_ab, q_ab = Pt.upper_lapack(), Qt.upper_lapack()

    shift = 0.0
    factor = _try_cholesky(p_ab)
    if factor is None:
        # P is only semidefinite; step slightly below zero
        shift = -1e-12 * float(np.abs(Pt.bands).max())
        factor = _try_cholesky(p_ab - shift * q_ab)
        if factor is None:
            raise SolverFailure("numerator form is not positive semidefinite")

    v = np.ones(P.order)
    v /= math.sqrt(Qt(v))
    rho = Pt(v)
    residual = math.inf
    for it in range(1, max_iter + 1):
        x = cho_solve_banded((factor, False), Qt.matvec(v), check_finite=False)
        v = x / math.sqrt(Qt(x))
        qv = Qt.matvec(v)
        pv = Pt.matvec(v)
        rho = float(v @ pv)
        residual = float(np.linalg.norm(pv - rho * qv) / np.linalg.norm(qv))
        if not np.isfinite(residual):
            raise SolverFailure("inverse iteration produced non-finite values")
        if residual <= tol or rho - shift <= tol * max(abs(rho), 1.0):
            return EigenResult(rho, residual, it, shift, v * s)
        # move the shift toward rho while staying certified below lambda_min
        step = 0.9 * (rho - shift)
        for _ in range(60):
            trial = shift + step
            f = _try_cholesky(p_ab - trial * q_ab)
            if f is not None:
                shift, factor = trial, f
                break
            step *= 0.5
    raise SolverFailure(f"inverse iteration did not reach tol={tol} in {max_iter} steps "
                        f"(residual {residual:.3e}, rho {rho:.12g}, shift {shift:.12g})")


def per_mode_constant(n: int, k: int, grid: LogGrid | None = None, tol: float = 1e-9) -> float:
    """Discrete minimum of the mode-k quotient on ``grid`` (default grid if None)."""
    grid = grid or LogGrid.default()
    P, Q = assemble_forms(n, k, grid)
    return smallest_generalized_eigenvalue(P, Q, tol).value


def per_mode_minimizer(n: int, k: int, grid: LogGrid | None = None,
                       tol: float = 1e-9) -> tuple[float, GridSampled]:
    """Discrete minimum together with its minimizer as a grid-sampled profile."""
    grid = grid or LogGrid.default()
    P, Q = assemble_forms(n, k, grid)
    res = smallest_generalized_eigenvalue(P, Q, tol)
    v = np.concatenate([[0.0], res.vector, [0.0]])
    if v[np.argmax(np.abs(v))] < 0:
        v = -v
    return res.value, GridSampled(grid.t_min, grid.t_max, v)


@dataclass(frozen=True)
class ModeScanResult:
    constants: tuple[float, ...]
    argmin_mode: int
    grid: LogGrid

    @property
    def minimum(self) -> float:
        return self.constants[self.argmin_mode]


def _argmin_first(values) -> int:
    best = 0
    for i, v in enumerate(values):
        if v < values[best]:
            best = i
    return best


def scan_modes(n: int, kmax: int, grid: LogGrid | None = None, tol: float = 1e-9) -> ModeScanResult:
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    grid = grid or LogGrid.default()
    lams = tuple(per_mode_constant(n, k, grid, tol) for k in range(kmax + 1))
    return ModeScanResult(lams, _argmin_first(lams), grid)


def _symbol_parts(n: int, k: int):
    c = C.eigenvalue_ck(n, k)
    sigma = Fraction(-(n - 4), 2)
    return sigma, c


def symbol_value(n: int, k: int, xi):
    """Mellin symbol ``S_k(xi)`` of the mode-k quotient.

    Exact (a Fraction) for int or Fraction ``xi``, a float otherwise.

    >>> symbol_value(3, 1, 0)
    Fraction(25, 36)
    """
    sigma, c = _symbol_parts(n, k)
    if isinstance(xi, (int, Fraction)) and not isinstance(xi, bool):
        x2 = Fraction(xi) ** 2
        s2, sm2 = sigma**2, (sigma - 1) ** 2
        cc = c
    else:
        x2 = float(xi) ** 2
        s2, sm2, cc = float(sigma**2), float((sigma - 1) ** 2), float(c)
    a = s2 + x2
    den = a + cc
    if den == 0:
        raise ValueError(f"symbol is 0/0 at (n={n}, k={k}, xi=0)")
    return (a * (sm2 + x2) + (n - 1 + 2 * cc) * a + cc * cc + 2 * cc * (n - 4)) / den


@dataclass(frozen=True)
class SymbolMin:
    value: float
    s: float

    @property
    def xi(self) -> float:
        return math.sqrt(self.s)


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def symbol_min(n: int, k: int, s_tol: float = 1e-12, max_growth: int = 200) -> SymbolMin:
    """Minimum over real xi of ``S_k(xi)`` by golden-section search in ``s = xi^2``.

    The upper end of the bracket doubles until S increases; S is unimodal in
    s on ``[0, inf)`` (a quadratic over a positive linear function).
    """
    sigma, c = _symbol_parts(n, k)
    s2, sm2, cc = float(sigma**2), float((sigma - 1) ** 2), float(c)
    degenerate = s2 == 0.0 and cc == 0.0

    def f(s):
        a = s2 + s
        return (a * (sm2 + s) + (n - 1 + 2 * cc) * a + cc * cc + 2 * cc * (n - 4)) / (a + cc)

    hi = 1.0
    for _ in range(max_growth):
        if f(hi) > f(0.5 * hi):
            break
        hi *= 2.0
    else:
        raise SolverFailure(f"could not bracket the symbol minimum for (n={n}, k={k})")

    lo = 0.0
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > s_tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
    cands = [(f1, x1), (f2, x2)]
    if not degenerate:
        cands.append((f(0.0), 0.0))
    elif lo > 0:
        cands.append((f(lo), lo))
    value, s = min(cands)
    return SymbolMin(float(value), float(s))


def symbol_scan(n: int, kmax: int) -> ModeScanResult:
    """Per-mode symbol minima for k = 0..kmax (grid field left as the default)."""
    vals = tuple(symbol_min(n, k).value for k in range(kmax + 1))
    return ModeScanResult(vals, _argmin_first(vals), LogGrid.default())


def global_constant_estimate(n: int, kmax: int = 20) -> float:
    """Smallest per-mode symbol minimum over k <= kmax."""
    if kmax < 10:
        raise ValueError("kmax must be >= 10")
    return min(symbol_min(n, k).value for k in range(kmax + 1))
