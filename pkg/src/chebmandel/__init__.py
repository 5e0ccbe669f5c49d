"""Generalized Chebyshev polynomials, their oscillator coherent states and the Mandel parameter."""
from .errors import ConvergenceError, DomainError
from .mandel import MandelResult, SignRegionReport, boundary_k1, mandel, p_poly, scan_regions
from .normalization import NormalizationFactor, n_closed_general, n_closed_k1, n_series
from .oscillator import PhotonMoments, coherent_moments, mandel_from_moments
from .polyfam import FamilySpec, coeff_list_explicit, coeff_list_recurrence, eval_poly, jacobi_matrix

__version__ = "0.1.0"
