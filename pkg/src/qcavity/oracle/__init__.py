"""Independent numerical machinery used to validate the closed forms.

Nothing in this subpackage knows the analytic normalization constants,
spectra or eigenvector formulas it is used to check; it only sees
black-box evaluators.
"""

from .quadrature import QuadratureNonConvergence, quadrature
from .fdm import Grid1D, ResidualReport, convergence_study, dirichlet_eigs, \
    pde_residual, richardson_dirichlet_eigs
from .evolution import SingularStepError, evolve_family, evolve_grid

__all__ = [
    "QuadratureNonConvergence",
    "quadrature",
    "Grid1D",
    "ResidualReport",
    "convergence_study",
    "dirichlet_eigs",
    "pde_residual",
    "richardson_dirichlet_eigs",
    "SingularStepError",
    "evolve_family",
    "evolve_grid",
]
