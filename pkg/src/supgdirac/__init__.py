"""Stabilized finite elements for the radial Dirac eigenvalue problem.

Linear hat functions on an exponentially graded mesh, with a streamline
upwind Petrov-Galerkin test space that removes the spurious eigenvalues the
standard Galerkin discretization produces.
"""
from .analysis import Label, SpectrumReport, classify, convergence_study, relative_errors
from .assembly import Pencil, assemble_galerkin, assemble_supg
from .errors import ConfigError, DomainError, InsufficientStatesError, MatchingError, NumericalError
from .femcore import IntegralSpec, TriDiag, assemble_integral, hat_derivative, hat_value
from .mesh import Mesh, MeshConfig, generate_exponential, generate_two_segment, generate_uniform, tau
from .physics import (
    SPEED_OF_LIGHT,
    PhysicalParams,
    PotentialModel,
    exact_eigenvalue,
    exact_spectrum,
    nucleus_radius,
    potential,
)
from .solver import BoundSpectrum, RawSpectrum, select_bound_states, solve_pencil

__version__ = "0.1.0"
