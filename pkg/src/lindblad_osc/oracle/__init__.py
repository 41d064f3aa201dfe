"""Independent numerical ground truths for the closed-form results."""
from .fock import (
    FockDensityMatrix,
    LindbladGenerator,
    density_matrix_from_coefficients,
    fock_entropy,
    fock_moments,
    gibbs_matrix,
    integrate_lindblad_fock,
    lindblad_fock_trajectory,
)
from .fokker_planck import FPConvergence, FPResidual, fp_convergence, fp_residual, stationary_residual
from .moments import MomentTrajectory, integrate_moments
from .quadrature import PhaseSpaceMoments, wigner_moments
