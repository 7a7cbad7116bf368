"""Phase-space toolkit: lattice Weyl transforms on odd-prime grids,
truncated Fock spaces, Grassmann calculus, operator transformations,
transfer-matrix path integrals, and relativistic applications."""

__version__ = "0.1.0"

from .errors import (AlgebraMismatch, ChainTooLong, CompositeModulus,
                     ConvergenceFailure, CutoffTooSmall, DimMismatch,
                     IncommensurateFlux, LatticeWeylError, LengthMismatch,
                     NonHalfIntegerSpin, NonHermitianHamiltonian,
                     NotCanonical, NotDensityMatrix, QuadratureFailure,
                     QubitModeUnsupported, UnstablePairing)
from .lattice import PrimePhaseSpace, dft_matrix, make_space, momentum_ket
from .weyl import (PhaseSpaceFunction, characteristic, clock_z,
                   delta_projector, delta_projector_momentum, delta_stack,
                   displacement, from_symbol, qubit_paulis, shift_x,
                   smoothed_distribution, weyl_symbol, wigner_function)
from .fock import (FockSpace, boson_characteristic, coherent_overlap,
                   coherent_state, counting_measure_check,
                   glauber_displacement, husimi_q, quadratures)
from .grassmann import (GrassmannAlgebra, GrassmannElement,
                        berezin_integrate, exp_nilpotent,
                        fermion_cs_resolution_check,
                        fermion_transition_check, gaussian_berezin, multiply)
from .transforms import (SpinChain, bogoliubov_boson, bogoliubov_fermion,
                         dyson_maleev, holstein_primakoff,
                         jordan_schwinger, jordan_wigner_ops,
                         solve_xx_chain)
from .pathint import (PropagatorJob, action_sum, exact_propagator,
                      propagate, step_transfer)
from .dirac import (ALPHA, BETA, SusceptibilityInput, charge_spread,
                    chi_components, chi_components_analytic,
                    dirac_hamiltonian, energy_with_field, flux_cross,
                    fw_unitary, hole_total, magnetic_translation,
                    plaquette_loop)
