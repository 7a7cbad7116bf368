"""Operator transformation zoo: Jordan-Wigner with an XX-chain solver,
Holstein-Primakoff / Dyson-Maleev spin realizations, Bogoliubov rotations
and the Jordan-Schwinger map.

Conventions: the JW string is a product of sigma_z factors to the left of
the site, with the site-local sign fixed so that a_j^dag a_j = (I - sigma_z_j)/2.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import (ChainTooLong, NonHalfIntegerSpin, NotCanonical,
                     UnstablePairing)
from .operators import SIGMA_MINUS, SIGMA_PLUS, SIGMA_Z, commutator, tensor

_MAX_CHAIN = 10


@dataclass(frozen=True)
class SpinChain:
    """Open chain of L spin-1/2 sites; operators are dense 2^L matrices."""

    length: int

    def __post_init__(self):
        if not 1 <= self.length <= _MAX_CHAIN:
            raise ChainTooLong(f"need 1 <= L <= {_MAX_CHAIN}")

    def site_op(self, op: np.ndarray, j: int) -> np.ndarray:
        facs = [np.eye(2, dtype=complex)] * self.length
        facs[j] = op
        return tensor(*facs)


def jordan_wigner_ops(chain: SpinChain):
    """Fermion annihilation operators a_j = (prod_{k<j} sigma_z_k) sigma^-_j.

    The site factor is chosen so the number operator is (I - sigma_z_j)/2;
    the resulting set satisfies the canonical anticommutation relations
    exactly.
    """
    L = chain.length
    site = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)  # |0><1|
    ops = []
    for j in range(L):
        facs = [SIGMA_Z] * j + [site] + [np.eye(2, dtype=complex)] * (L - j - 1)
        ops.append(tensor(*facs))
    return ops


def solve_xx_chain(L: int, J: float):
    """Open-boundary XX chain H = (J/4) sum_i (s+_i s-_{i+1} + s-_i s+_{i+1}).

    Returns the 2^L many-body spectrum, the L single-particle levels of the
    J/4 hopping matrix, and whether the free-fermion subset-sum identity
    holds to 1e-9.
    """
    if not 2 <= L <= _MAX_CHAIN:
        raise ChainTooLong(f"need 2 <= L <= {_MAX_CHAIN}")
    chain = SpinChain(L)
    dim = 2 ** L
    H = np.zeros((dim, dim), dtype=complex)
    for i in range(L - 1):
        sp_i = chain.site_op(SIGMA_PLUS, i)
        sm_i = chain.site_op(SIGMA_MINUS, i)
        sp_j = chain.site_op(SIGMA_PLUS, i + 1)
        sm_j = chain.site_op(SIGMA_MINUS, i + 1)
        H += (J / 4.0) * (sp_i @ sm_j + sm_i @ sp_j)
    many_body = np.sort(np.linalg.eigvalsh(H))

    h = np.zeros((L, L))
    for i in range(L - 1):
        h[i, i + 1] = h[i + 1, i] = J / 4.0
    single = np.sort(np.linalg.eigvalsh(h))

    subset_sums = sorted(
        sum(single[list(S)]) if S else 0.0
        for r in range(L + 1) for S in combinations(range(L), r))
    verified = bool(np.abs(many_body - np.array(subset_sums)).max() < 1e-9)
    return {"many_body_spectrum": many_body,
            "single_particle_levels": single,
            "verified": verified}


def _boson_ladder(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)


def _check_spin(j) -> int:
    two_j = int(round(2 * j))
    if abs(2 * j - two_j) > 1e-12 or two_j < 1 or two_j + 1 > 64:
        raise NonHalfIntegerSpin(f"invalid spin {j}")
    return two_j


def holstein_primakoff(j):
    """(S+, S-, Sz) on the 2j+1 space from the square-root boson map.

    S+ = sqrt(2j - n) b, with the root evaluated on number eigenvalues;
    identical to the angular-momentum ladder matrices.
    """
    two_j = _check_spin(j)
    dim = two_j + 1
    b = _boson_ladder(dim)
    n = np.arange(dim, dtype=float)
    root = np.diag(np.sqrt(np.maximum(2 * j - n, 0.0))).astype(complex)
    Sp = root @ b
    Sm = Sp.conj().T
    Sz = np.diag(j - n).astype(complex)
    return Sp, Sm, Sz


def ladder_spin_matrices(j):
    """Independent oracle: <m+1|S+|m> = sqrt((j-m)(j+m+1)), m = j..-j."""
    two_j = _check_spin(j)
    dim = two_j + 1
    m = j - np.arange(dim, dtype=float)  # row n holds m = j - n
    Sp = np.zeros((dim, dim), dtype=complex)
    for nrow in range(1, dim):
        mm = m[nrow]
        Sp[nrow - 1, nrow] = np.sqrt((j - mm) * (j + mm + 1))
    Sz = np.diag(m).astype(complex)
    return Sp, Sp.conj().T, Sz


def dyson_maleev(j):
    """Non-Hermitian (J+, J-, Jz): J- = a^dag, J+ = (2j - n) a, Jz = j - n.

    Closes the spin commutator algebra and the Casimir on the 2j+1 block
    while J+ != J-^dag.
    """
    two_j = _check_spin(j)
    dim = two_j + 1
    a = _boson_ladder(dim)
    n = np.diag(np.arange(dim, dtype=float)).astype(complex)
    Jm = a.conj().T
    Jp = (2 * j * np.eye(dim) - n) @ a
    Jz = j * np.eye(dim, dtype=complex) - n
    return Jp, Jm, Jz


def bogoliubov_boson(E: float, g: float, fock_cutoff: int = 30):
    """Squeezing parameters and the two-mode pairing-Hamiltonian check.

    tanh(2r) = g/E; u = cosh r, v = sinh r, gap = sqrt(E^2 - g^2).  The
    Hamiltonian H = E(n+ + n-) + g(a+ a- + h.c.) is diagonalized on a
    truncated two-mode space and the low-lying spacing compared to the gap.
    """
    if E <= 0:
        raise UnstablePairing("need E > 0")
    if abs(g) >= E:
        raise UnstablePairing(f"|g| = {abs(g)} >= E = {E}")
    r = 0.5 * np.arctanh(g / E)
    u, v = np.cosh(r), np.sinh(r)
    gap = np.sqrt(E * E - g * g)

    a = _boson_ladder(fock_cutoff)
    I = np.eye(fock_cutoff, dtype=complex)
    a1, a2 = tensor(a, I), tensor(I, a)
    n1, n2 = a1.conj().T @ a1, a2.conj().T @ a2
    H = E * (n1 + n2) + g * (a1 @ a2 + a2.conj().T @ a1.conj().T)
    evals = np.sort(np.linalg.eigvalsh(H))
    e0 = gap - E  # exact two-mode ground energy
    # lowest 5 levels of the exact quasiparticle spectrum e0 + gap*(n+ + n-)
    predicted = sorted(e0 + gap * (np1 + np2)
                       for np1 in range(3) for np2 in range(3))[:5]
    spacing_error = float(np.abs(evals[:5] - np.array(predicted)).max())
    return {"r": r, "u": u, "v": v, "quasiparticle_gap": gap,
            "ground_energy": float(evals[0]), "spacing_error": spacing_error}


def bogoliubov_fermion(u: float, v: float):
    """Quasiparticles gamma1 = u a1 - v a2^dag, gamma2 = u a2^dag + v a1
    on the 4-dim two-mode fermion space; requires u^2 + v^2 = 1.
    """
    if abs(u * u + v * v - 1.0) > 1e-12:
        raise NotCanonical(f"u^2 + v^2 = {u*u + v*v}")
    a1, a2 = jordan_wigner_ops(SpinChain(2))
    g1 = u * a1 - v * a2.conj().T
    g2 = u * a2.conj().T + v * a1
    return [g1, g2]


def jordan_schwinger(M: np.ndarray, fock_cutoff: int = 8):
    """JS(M) = sum_ij a_i^dag M_ij a_j on a truncated two-boson-mode space."""
    M = np.asarray(M, dtype=complex)
    if M.shape != (2, 2):
        raise ValueError("Jordan-Schwinger map implemented for 2x2 matrices")
    a = _boson_ladder(fock_cutoff)
    I = np.eye(fock_cutoff, dtype=complex)
    modes = [tensor(a, I), tensor(I, a)]
    out = np.zeros((fock_cutoff ** 2,) * 2, dtype=complex)
    for i in range(2):
        for j in range(2):
            out += M[i, j] * modes[i].conj().T @ modes[j]
    return out


def number_block_projector(fock_cutoff: int) -> np.ndarray:
    """Projector onto two-mode states with n1 + n2 < cutoff."""
    n = np.arange(fock_cutoff)
    total = n[:, None] + n[None, :]
    diag = (total.ravel() < fock_cutoff).astype(float)
    return np.diag(diag).astype(complex)


def js_homomorphism_defect(A: np.ndarray, B: np.ndarray,
                           fock_cutoff: int = 8) -> float:
    """max |P([JS(A), JS(B)] - JS([A, B]))P| on the conserved block."""
    P = number_block_projector(fock_cutoff)
    lhs = commutator(jordan_schwinger(A, fock_cutoff),
                     jordan_schwinger(B, fock_cutoff))
    rhs = jordan_schwinger(commutator(np.asarray(A, dtype=complex),
                                      np.asarray(B, dtype=complex)),
                           fock_cutoff)
    return float(np.abs(P @ (lhs - rhs) @ P).max())
