"""Exception types shared across the toolkit."""


class LatticeWeylError(Exception):
    """Base class for all toolkit errors."""


class CompositeModulus(LatticeWeylError):
    """Lattice size is not a prime number."""


class QubitModeUnsupported(LatticeWeylError):
    """Operation needs an odd modulus (inverse of 2 does not exist for N=2)."""


class DimMismatch(LatticeWeylError):
    """Operator dimensions or basis tags are incompatible."""


class ConvergenceFailure(LatticeWeylError):
    """Iterative numerical routine failed to reach its tolerance."""


class NotDensityMatrix(LatticeWeylError):
    """Input operator is not positive semidefinite with unit trace."""


class CutoffTooSmall(LatticeWeylError):
    """Fock-space cutoff cannot hold the requested coherent amplitude."""


class AlgebraMismatch(LatticeWeylError):
    """Grassmann elements belong to different algebras."""


class ChainTooLong(LatticeWeylError):
    """Spin chain exceeds the dense-matrix length cap."""


class NonHalfIntegerSpin(LatticeWeylError):
    """Spin quantum number is not a non-negative half integer."""


class UnstablePairing(LatticeWeylError):
    """Bosonic pairing strength |g| >= E; Bogoliubov rotation undefined."""


class NotCanonical(LatticeWeylError):
    """Fermionic (u, v) do not satisfy u^2 + v^2 = 1."""


class NonHermitianHamiltonian(LatticeWeylError):
    """Propagator job requires a Hermitian Hamiltonian."""


class LengthMismatch(LatticeWeylError):
    """Path arrays have inconsistent lengths."""


class QuadratureFailure(LatticeWeylError):
    """Numerical integration did not reach the requested tolerance."""


class IncommensurateFlux(LatticeWeylError):
    """Magnetic flux denominator does not divide the grid size."""
