"""Numerical laboratory for the sharp Hardy-Rellich inequality

    ∫|Δu|^2 dx >= C(n) ∫|∇u|^2/|x|^2 dx,   C(3) = 25/36, C(4) = 3, C(n) = n^2/4 (n >= 5).
"""

from .constants import (
    asymptotic_quotient, eigenvalue_ck, eps_star, g_lower, h_lower, min_split, mode_limit_quotient,
    sharp_constant,
)
from .errors import DegenerateProfile, NumericalFailure, SolverFailure
from .functionals import mode_integrals, mode_quotient, quotient_ueps, sequence_limit
from .profiles import Bump, GridSampled, PowerCutoff
from .spectral import LogGrid, global_constant_estimate, per_mode_constant, scan_modes, symbol_min, symbol_value

__version__ = "0.1.0"
