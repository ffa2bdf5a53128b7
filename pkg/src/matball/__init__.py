"""Harmonic analysis on the matrix ball at desk scale: Poisson kernels,
generalized spherical functions as hypergeometric determinants, the matrix
Hua operator, boundary asymptotics and the determinant identities behind
them.

Everything is expressed in the spectral variable s = i*lambda.
"""

__version__ = "0.1.0"

from .boundary import (TorusGrid, fourier_mode_check, hardy_norm,
                       poisson_kernel, poisson_kernel_torus, schur_character,
                       spherical_oracle, weyl_integrate)
from .errors import (CoincidentAnglesError, CoincidentError,
                     DegenerateConnection, DomainError, GuardError,
                     MarginError, MatballError, PoleError, SingularError)
from .experiments import (KTypeFunction, SweepResult, eigen_expansion_check,
                          forelli_rudin_growth, inversion_experiment,
                          key_lemma_sweep, norm_sandwich)
from .hua import (HuaResult, hua_apply, hua_residual, kernel_grad_analytic,
                  wirtinger_grad)
from .identities import (AppendixParams, dp_factor, e9_identity_check,
                         induction_identity_check, lemma_a_sides,
                         lemma_b_ratio, pochhammer_product_check)
from .report import CheckReport
from .special import (SpectralParams, c_function, euler_transform_check,
                      gamma, gauss_2f1, gindikin_gamma, pochhammer)
from .spherical import (gamma_constant, key_lemma_ratio, phi_big, phi_scalar,
                        weyl_dimension)

__all__ = [
    "AppendixParams", "CheckReport", "CoincidentAnglesError",
    "CoincidentError", "DegenerateConnection", "DomainError", "GuardError",
    "HuaResult", "KTypeFunction", "MarginError", "MatballError", "PoleError",
    "SingularError", "SpectralParams", "SweepResult", "TorusGrid",
    "c_function", "dp_factor", "e9_identity_check", "eigen_expansion_check",
    "euler_transform_check", "forelli_rudin_growth", "fourier_mode_check",
    "gamma", "gamma_constant", "gauss_2f1", "gindikin_gamma", "hardy_norm",
    "hua_apply", "hua_residual", "induction_identity_check",
    "inversion_experiment", "kernel_grad_analytic", "key_lemma_ratio",
    "key_lemma_sweep", "lemma_a_sides", "lemma_b_ratio", "norm_sandwich",
    "phi_big", "phi_scalar", "pochhammer", "pochhammer_product_check",
    "poisson_kernel", "poisson_kernel_torus", "schur_character",
    "spherical_oracle", "weyl_dimension", "weyl_integrate", "wirtinger_grad",
]
