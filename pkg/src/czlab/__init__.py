"""Numerical laboratory for C^k versus Sobolev estimates of the
inhomogeneous Cauchy-Riemann operator on a disc."""

from .fields import (DomainError, FieldSpec, ParameterError, SlopeBoundError,
                     WirtingerJet2, WirtingerValue, cutoff_psi, evaluate,
                     evaluate_jet2, mollifier_rho, mollify, phi_nu,
                     verify_interpolant_slope)
from .grids import (DiscGrid, QuadratureResult, QuadratureScheme, fd_wirtinger,
                    integrate_disc, integrate_radial, pairwise_sum, sup_on_grid)
from .norms import NormReport, UnsupportedNormError, ck_norm, lp_norm, wkp_norm
from .experiments import (ConfigurationError, SequenceReport,
                          run_counterexample, run_cz_estimator,
                          run_interpolation, run_mollification,
                          run_weak_derivative_check, witness_lower_bound)

__version__ = "0.1.0"
