"""Prime-lattice phase space: symmetric residues and the dual q/p bases.

The lattice holds N points with N an odd prime (N=2 is allowed as a special
qubit mode).  Position and momentum bases are connected by the bijective
discrete Fourier kernel omega^{pq}, omega = exp(2*pi*i/N).
"""

from dataclasses import dataclass, field

import numpy as np
from sympy import isprime

from .errors import CompositeModulus, QubitModeUnsupported


@dataclass(frozen=True)
class PrimePhaseSpace:
    """Arena for all finite phase-space arithmetic.

    modulus    -- prime N
    qubit_mode -- True only for N=2, where half-integer arithmetic (inv2)
                  is unavailable and only Pauli/Hadamard operations apply
    omega      -- precomputed table omega[k] = exp(2*pi*i*k/N), k = 0..N-1
    """

    modulus: int
    qubit_mode: bool = field(init=False)
    omega: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        N = self.modulus
        if N < 2 or not isprime(N):
            raise CompositeModulus(f"modulus {N} is not prime")
        object.__setattr__(self, "qubit_mode", N == 2)
        table = np.exp(2j * np.pi * np.arange(N) / N)
        table.setflags(write=False)
        object.__setattr__(self, "omega", table)

    @property
    def inv2(self) -> int:
        """Multiplicative inverse of 2 mod N, i.e. (N+1)/2.  Odd N only."""
        if self.qubit_mode:
            raise QubitModeUnsupported("inv2 does not exist for N=2")
        return (self.modulus + 1) // 2

    def residues(self) -> np.ndarray:
        """All residues in the symmetric range -(N-1)/2 .. (N-1)/2."""
        N = self.modulus
        if self.qubit_mode:
            return np.array([0, 1])
        h = (N - 1) // 2
        return np.arange(-h, h + 1)

    def sym(self, r) -> int:
        """Map an integer to its symmetric-range representative."""
        N = self.modulus
        if self.qubit_mode:
            return int(r) % 2
        h = (N - 1) // 2
        return (int(r) + h) % N - h

    def idx(self, r) -> int:
        """Array index (0..N-1) of a residue."""
        return int(r) % self.modulus

    def phase(self, k) -> complex:
        """omega^k by table lookup."""
        return self.omega[int(k) % self.modulus]


def make_space(N: int) -> PrimePhaseSpace:
    """Validated phase space on N lattice points; N must be prime."""
    return PrimePhaseSpace(N)


def momentum_ket(space: PrimePhaseSpace, p: int) -> np.ndarray:
    """|p> in the position basis: component at q is omega^{pq}/sqrt(N)."""
    N = space.modulus
    q = np.arange(N)
    return space.omega[(int(p) * q) % N] / np.sqrt(N)


def dft_matrix(space: PrimePhaseSpace) -> np.ndarray:
    """Unitary change of basis F with column p = momentum_ket(p).

    For N=2 this is the Hadamard matrix.
    """
    N = space.modulus
    cols = [momentum_ket(space, p) for p in range(N)]
    return np.stack(cols, axis=1)
