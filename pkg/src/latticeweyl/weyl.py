"""Lattice Weyl transform machinery on an odd-prime phase space.

Conventions (one self-consistent normalization is used everywhere):

    Tr Delta(p,q) = 1,   Tr(Delta Delta') = N delta delta',
    A_hat = (1/N) sum_{p,q} A(p,q) Delta(p,q),
    W(p,q) = (1/N) Tr(rho Delta(p,q))  so that  sum W = 1.

The displacement operator Y(u,v) = omega^{u v / 2} X^v Z^u with X the
cyclic shift and Z the clock; "half" exponents are literal residue
arithmetic through inv2 = (N+1)/2.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, NotDensityMatrix, QubitModeUnsupported
from .lattice import PrimePhaseSpace, dft_matrix

_DELTA_CACHE: dict = {}


@dataclass
class PhaseSpaceFunction:
    """Complex N x N grid over (p,q) or (u,v); grid[idx(p), idx(q)]."""

    space: PrimePhaseSpace
    grid: np.ndarray
    kind: str  # Symbol | Wigner | CharWeyl | CharNormal | CharAntinormal | Smoothed(...)


def _require_odd(space: PrimePhaseSpace):
    if space.qubit_mode:
        raise QubitModeUnsupported(
            "operation needs inv2; N=2 exposes only qubit_paulis()")


def shift_x(space: PrimePhaseSpace, a: int = 1) -> np.ndarray:
    """Cyclic shift X^a: |q> -> |q+a mod N>."""
    N = space.modulus
    X = np.zeros((N, N), dtype=complex)
    q = np.arange(N)
    X[(q + int(a)) % N, q] = 1.0
    return X


def clock_z(space: PrimePhaseSpace, b: int = 1) -> np.ndarray:
    """Clock Z^b: |q> -> omega^{bq} |q>."""
    N = space.modulus
    return np.diag(space.omega[(int(b) * np.arange(N)) % N])


def displacement(space: PrimePhaseSpace, u: int, v: int) -> np.ndarray:
    """Generalized Pauli Y(u,v) = omega^{u v inv2} X^v Z^u (unitary)."""
    _require_odd(space)
    phase = space.phase(int(u) * int(v) * space.inv2)
    return phase * (shift_x(space, v) @ clock_z(space, u))


def delta_projector(space: PrimePhaseSpace, p: int, q: int) -> np.ndarray:
    """Phase-space point projector Delta(p,q) = sum_v omega^{2pv} |q+v><q-v|."""
    _require_odd(space)
    N = space.modulus
    D = np.zeros((N, N), dtype=complex)
    for v in range(N):
        D[(int(q) + v) % N, (int(q) - v) % N] += space.phase(2 * int(p) * v)
    return D


def delta_projector_momentum(space: PrimePhaseSpace, p: int, q: int) -> np.ndarray:
    """Same operator built from the momentum side: sum_u omega^{2uq} |p-u><p+u|."""
    _require_odd(space)
    N = space.modulus
    F = dft_matrix(space)
    D = np.zeros((N, N), dtype=complex)
    for u in range(N):
        ket = F[:, (int(p) - u) % N]
        bra = F[:, (int(p) + u) % N].conj()
        D += space.phase(2 * u * int(q)) * np.outer(ket, bra)
    return D


def delta_stack(space: PrimePhaseSpace) -> np.ndarray:
    """All Delta(p,q) as an array of shape (N, N, N, N), cached per modulus."""
    _require_odd(space)
    N = space.modulus
    if N not in _DELTA_CACHE:
        stack = np.empty((N, N, N, N), dtype=complex)
        for p in range(N):
            for q in range(N):
                stack[p, q] = delta_projector(space, p, q)
        stack.setflags(write=False)
        _DELTA_CACHE[N] = stack
    return _DELTA_CACHE[N]


def weyl_symbol(A: np.ndarray, space: PrimePhaseSpace) -> PhaseSpaceFunction:
    """Lattice Weyl transform A(p,q) = Tr(A Delta(p,q))."""
    N = space.modulus
    if A.shape != (N, N):
        raise DimMismatch(f"operator shape {A.shape} does not match N={N}")
    grid = np.einsum("ij,pqji->pq", A, delta_stack(space))
    return PhaseSpaceFunction(space, grid, "Symbol")


def from_symbol(F: PhaseSpaceFunction) -> np.ndarray:
    """Inverse transform A = (1/N) sum_{p,q} A(p,q) Delta(p,q)."""
    space = F.space
    return np.einsum("pq,pqij->ij", F.grid, delta_stack(space)) / space.modulus


def wigner_function(rho: np.ndarray, space: PrimePhaseSpace) -> PhaseSpaceFunction:
    """W(p,q) = (1/N) Tr(rho Delta(p,q)); sums to 1, marginals are populations."""
    _check_density(rho)
    sym = weyl_symbol(rho, space)
    return PhaseSpaceFunction(space, sym.grid / space.modulus, "Wigner")


def _check_density(rho: np.ndarray, tol: float = 1e-10):
    if np.abs(rho - rho.conj().T).max() > tol:
        raise NotDensityMatrix("rho is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise NotDensityMatrix("Tr rho != 1")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise NotDensityMatrix("rho has negative eigenvalues")


def characteristic(A: np.ndarray, space: PrimePhaseSpace,
                   ordering: str = "weyl") -> PhaseSpaceFunction:
    """Characteristic function on the (u,v) grid.

    weyl:       C(u,v) = Tr(A Y(2u,2v))
    normal:     C(u,v) = Tr(A X^{2v} Z^{2u}) = omega^{-2uv} C_weyl(u,v)
    antinormal: C(u,v) = Tr(A Z^{2u} X^{2v}) = omega^{+2uv} C_weyl(u,v)
    """
    _require_odd(space)
    N = space.modulus
    if A.shape != (N, N):
        raise DimMismatch(f"operator shape {A.shape} does not match N={N}")
    grid = np.empty((N, N), dtype=complex)
    kinds = {"weyl": "CharWeyl", "normal": "CharNormal",
             "antinormal": "CharAntinormal"}
    if ordering not in kinds:
        raise ValueError(f"unknown ordering {ordering!r}")
    for u in range(N):
        for v in range(N):
            if ordering == "weyl":
                op = displacement(space, 2 * u, 2 * v)
            elif ordering == "normal":
                op = shift_x(space, 2 * v) @ clock_z(space, 2 * u)
            else:
                op = clock_z(space, 2 * u) @ shift_x(space, 2 * v)
            grid[u, v] = np.trace(A @ op)
    return PhaseSpaceFunction(space, grid, kinds[ordering])


def smoothed_distribution(A: np.ndarray, space: PrimePhaseSpace,
                          g) -> PhaseSpaceFunction:
    """g-smoothed distribution from the Weyl characteristic:

        f(p,q) = (1/N) sum_{u,v} C_weyl(u,v) g(u,v) omega^{2(pv - qu)}

    For g == 1 this inverts the characteristic back to the Weyl symbol.
    g is called with symmetric residues (u, v).
    """
    N = space.modulus
    cw = characteristic(A, space, "weyl").grid
    gvals = np.empty((N, N), dtype=complex)
    for u in range(N):
        for v in range(N):
            gvals[u, v] = g(space.sym(u), space.sym(v))
    grid = np.empty((N, N), dtype=complex)
    for p in range(N):
        for q in range(N):
            u = np.arange(N)[:, None]
            v = np.arange(N)[None, :]
            kernel = space.omega[(2 * (p * v - q * u)) % N]
            grid[p, q] = (cw * gvals * kernel).sum() / N
    return PhaseSpaceFunction(space, grid, "Smoothed(g)")


def qubit_paulis():
    """(X, Z, H) for N=2: bare Paulis plus the Hadamard = dft_matrix(2)."""
    X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    H = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
    return X, Z, H
