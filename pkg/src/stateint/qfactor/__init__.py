"""q-series side of the factorization: F_{A,B}, E-series, Taylor data, residues."""
from .eseries import (
    ESeriesCache,
    e_bracket_series,
    e_lr_series,
    e_lr_tilde,
    e_lr_via_lambert,
    e_series,
    e_tilde,
)
from .eulerian import eulerian, eulerian_recursive, eulerian_row, eulerian_sum
from .residue import (
    ConvergenceError,
    ResidueEngine,
    bracket,
    factorized_sum,
    factorized_value,
    residue_rmn,
    theorem_prefactor,
    theorem_value,
)
from .series import TruncatedXSeries, delta_action, delta_k_action, f_ab_coefficients, f_ab_series
from .taylor import (
    decoupling_residual,
    phi_m_taylor,
    phi_m_value,
    phitilde_n_taylor,
    phitilde_n_value,
    pole_expansion,
    pole_expansion_residual,
)
