"""Transfer-matrix path integral on the odd-prime lattice.

One time step is the Weyl quantization of the pointwise exponential of the
Hamiltonian's phase-space symbol:

    T[q', q] = (1/N) sum_p omega^{p(q'-q)} exp(-i eps H(p, (q'+q) inv2))

(real time, eps = t/n) or with exp(-eps H(...)) for the Matsubara variant
(eps = beta/n).  The midpoint (q'+q) inv2 is exact residue arithmetic.
The propagator is T^n and converges to the operator exponential at first
order in 1/n when the kinetic and potential parts do not commute.
"""

from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, NonHermitianHamiltonian
from .lattice import PrimePhaseSpace
from .weyl import weyl_symbol


@dataclass
class PropagatorJob:
    space: PrimePhaseSpace
    hamiltonian: np.ndarray  # N x N, position basis
    t_total: float           # time, or beta for Matsubara
    n_steps: int
    mode: str = "RealTime"   # RealTime | Matsubara

    def __post_init__(self):
        H = np.asarray(self.hamiltonian, dtype=complex)
        N = self.space.modulus
        if H.shape != (N, N):
            raise NonHermitianHamiltonian(
                f"hamiltonian shape {H.shape} does not match N={N}")
        if np.abs(H - H.conj().T).max() > 1e-10:
            raise NonHermitianHamiltonian("hamiltonian is not Hermitian")
        if self.mode not in ("RealTime", "Matsubara"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.n_steps < 1:
            raise ValueError("need n_steps >= 1")
        self.hamiltonian = H


def _symbol_grid(job: PropagatorJob) -> np.ndarray:
    return weyl_symbol(job.hamiltonian, job.space).grid


def step_transfer(job: PropagatorJob) -> np.ndarray:
    """One time step T as an N x N matrix in the position basis."""
    space = job.space
    N = space.modulus
    eps = job.t_total / job.n_steps
    hsym = _symbol_grid(job)
    factor = -1j * eps if job.mode == "RealTime" else -eps
    weight = np.exp(factor * hsym)  # weight[p, q_mid]
    T = np.zeros((N, N), dtype=complex)
    for qp in range(N):
        for q in range(N):
            mid = ((qp + q) * space.inv2) % N
            p = np.arange(N)
            T[qp, q] = (space.omega[(p * (qp - q)) % N]
                        * weight[:, mid]).sum() / N
    return T


def propagate(job: PropagatorJob) -> np.ndarray:
    """K = T^n, the n-step propagator."""
    T = step_transfer(job)
    return np.linalg.matrix_power(T, job.n_steps)


def action_sum(p_path, q_path, job: PropagatorJob) -> complex:
    """Discrete Hamiltonian action of one phase-space path.

    q_path has n+1 points, p_path has n; per step the exponent is
    p_j (q_j - q_{j-1}) - eps H(p_j, midpoint_j), so that

        T[q', q] = (1/N) sum_p exp(i * one-step action).
    """
    p_path = [int(p) for p in p_path]
    q_path = [int(q) for q in q_path]
    if len(q_path) != len(p_path) + 1:
        raise LengthMismatch(
            f"need len(q) = len(p) + 1, got {len(q_path)} and {len(p_path)}")
    space = job.space
    N = space.modulus
    eps = job.t_total / job.n_steps
    two_pi_over_n = 2.0 * np.pi / N
    S = 0.0 + 0.0j
    hsym = _symbol_grid(job)
    for j, p in enumerate(p_path):
        q0, q1 = q_path[j], q_path[j + 1]
        mid = ((q0 + q1) * space.inv2) % N
        # the kinetic phase lives on the discrete circle: p dq as an angle
        S += two_pi_over_n * ((p % N) * ((q1 - q0) % N))
        S += -eps * hsym[p % N, mid]
    return complex(S)


def step_from_action(job: PropagatorJob) -> np.ndarray:
    """Rebuild T from single-step action sums (consistency oracle)."""
    space = job.space
    N = space.modulus
    T = np.zeros((N, N), dtype=complex)
    for qp in range(N):
        for q in range(N):
            acc = 0.0 + 0.0j
            for p in range(N):
                S = action_sum([p], [q, qp], job)
                acc += np.exp(1j * S)
            T[qp, q] = acc / N
    return T


def exact_propagator(job: PropagatorJob) -> np.ndarray:
    """Reference exp(-iHt) or exp(-beta H) by eigendecomposition."""
    w, V = np.linalg.eigh(job.hamiltonian)
    factor = -1j if job.mode == "RealTime" else -1.0
    return (V * np.exp(factor * job.t_total * w)) @ V.conj().T
