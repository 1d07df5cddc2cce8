"""Deep-cavity bound states over the real Hilbert space.

Closed-form complex and quaternionic wave functions of the infinitely
deep 1D box with a constant (possibly complex or quaternionic) scalar
potential, the algebraic dispersion relations and coupling ratios
behind them, quantized spectra, real-Hilbert-space expectation values,
and an independent numerical oracle layer (quadrature, finite
differences, grid eigenvalues, implicit time stepping) that verifies
every closed form.

Working units default to hbar = m = 1 and ell = pi, which makes the
complex levels N^2 / 2.
"""

from .algebra import Quaternion, left_i, quat_conj, quat_mul, quat_norm, right_i
from .model import (BranchChoice, CavityModel, DegenerateNormError,
                    DomainError, IncompatibleFamiliesError, Regime,
                    ZeroCouplingError)
from .dispersion import (classify_regime, complex_dispersion, eigen_residual,
                         quat_dispersion_left, quat_dispersion_right)
from .wavefunctions import (QuatLift, SolutionFamily, boundary_residual,
                            eval_psi, eval_quat_psi, kind_i, kind_ii,
                            kind_iii_combined, kind_iii_evanescent,
                            kind_iii_propagating, lift, lift_combined,
                            lift_quantized, lift_stationary_left, normalize,
                            orthogonality, phase_generalized)
from .observables import (DensityPair, OperatorTag, densities,
                          energy_conservation_residual,
                          expect_energy_trajectory, observable_records,
                          real_inner, solution_ii_position)
from .spectra import (Level, complex_level, level_gap, levels, quat_level,
                      quat_level_brute_force, spectrum_report)

__version__ = "0.1.0"
