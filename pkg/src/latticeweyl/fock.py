"""Truncated bosonic Fock space: quadratures, coherent states, Husimi Q.

Truncation policy: any operation that prepares a coherent amplitude alpha
rejects inputs placing more than ~1e-12 probability above the cutoff
(enforced through the |alpha|^2 <= M/4 and M/8 margins), so eigenvalue
residual tests are not silently corrupted.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import CutoffTooSmall, NotDensityMatrix
from .operators import dagger, mat_exp


@dataclass(frozen=True)
class FockSpace:
    """States |0> .. |M-1> with the truncated ladder pair (a, adag)."""

    cutoff: int
    a: np.ndarray = field(init=False, repr=False)
    adag: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        M = self.cutoff
        if M < 2:
            raise CutoffTooSmall("need cutoff >= 2")
        a = np.diag(np.sqrt(np.arange(1, M, dtype=float)), k=1).astype(complex)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "adag", a.conj().T)

    @property
    def number(self) -> np.ndarray:
        return self.adag @ self.a


def quadratures(fock: FockSpace):
    """Q = (a + a†)/sqrt2, P = (a - a†)/(i sqrt2); (Q + iP)/sqrt2 == a."""
    Q = (fock.a + fock.adag) / np.sqrt(2.0)
    P = (fock.a - fock.adag) / (1j * np.sqrt(2.0))
    return Q, P


def coherent_state(fock: FockSpace, alpha: complex) -> np.ndarray:
    """Amplitudes e^{-|a|^2/2} alpha^n / sqrt(n!), n < cutoff."""
    M = fock.cutoff
    if abs(alpha) ** 2 > M / 4.0:
        raise CutoffTooSmall(
            f"|alpha|^2 = {abs(alpha)**2:.3f} exceeds cutoff/4 = {M/4:.3f}")
    return _coherent_amps(M, alpha)


def _coherent_amps(M: int, alpha: complex) -> np.ndarray:
    # evaluation-point variant without the preparation-amplitude gate;
    # used where alpha only labels a grid point (Husimi, counting measure)
    n = np.arange(M)
    log_mag = -abs(alpha) ** 2 / 2.0 + n * np.log(abs(alpha) + 1e-300) \
        - 0.5 * gammaln(n + 1.0)
    phase = np.exp(1j * n * np.angle(alpha)) if alpha != 0 else np.ones(M)
    amps = np.exp(log_mag) * phase
    if alpha == 0:
        amps = np.zeros(M, dtype=complex)
        amps[0] = 1.0
    return amps.astype(complex)


def coherent_overlap(alpha: complex, beta: complex) -> complex:
    """Closed form <alpha|beta> = exp(-(|a|^2+|b|^2)/2 + conj(a) b)."""
    return np.exp(-(abs(alpha) ** 2 + abs(beta) ** 2) / 2.0
                  + np.conj(alpha) * beta)


def glauber_displacement(fock: FockSpace, alpha: complex) -> np.ndarray:
    """D(alpha) = exp(alpha a† - conj(alpha) a) on the truncated space."""
    if abs(alpha) ** 2 > fock.cutoff / 8.0:
        raise CutoffTooSmall(
            f"|alpha|^2 = {abs(alpha)**2:.3f} exceeds cutoff/8")
    return mat_exp(alpha * fock.adag - np.conj(alpha) * fock.a)


def _check_density(rho: np.ndarray, tol: float = 1e-10):
    if np.abs(rho - dagger(rho)).max() > tol:
        raise NotDensityMatrix("rho is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise NotDensityMatrix("Tr rho != 1")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise NotDensityMatrix("rho has negative eigenvalues")


def boson_characteristic(rho: np.ndarray, fock: FockSpace, xi_grid,
                         ordering: str = "weyl") -> np.ndarray:
    """chi(xi) on a grid of complex arguments.

    weyl:       chi_W(xi) = Tr(rho D(xi))
    normal:     chi_N = exp(+|xi|^2/2) chi_W
    antinormal: chi_A = exp(-|xi|^2/2) chi_W
    """
    _check_density(rho)
    xi_grid = np.asarray(xi_grid, dtype=complex)
    out = np.empty(xi_grid.shape, dtype=complex)
    for idx in np.ndindex(xi_grid.shape):
        xi = xi_grid[idx]
        # grid points are evaluation labels, not state preparations, so the
        # public M/8 preparation gate is not applied here
        gen = xi * fock.adag - np.conj(xi) * fock.a
        chi = np.trace(rho @ mat_exp(gen))
        if ordering == "normal":
            chi *= np.exp(+abs(xi) ** 2 / 2.0)
        elif ordering == "antinormal":
            chi *= np.exp(-abs(xi) ** 2 / 2.0)
        elif ordering != "weyl":
            raise ValueError(f"unknown ordering {ordering!r}")
        out[idx] = chi
    return out


def husimi_q(rho: np.ndarray, fock: FockSpace, alpha_grid) -> np.ndarray:
    """Q(alpha) = <alpha| rho |alpha> / pi  (real, nonnegative)."""
    _check_density(rho)
    alpha_grid = np.asarray(alpha_grid, dtype=complex)
    out = np.empty(alpha_grid.shape, dtype=float)
    for idx in np.ndindex(alpha_grid.shape):
        ket = _coherent_amps(fock.cutoff, alpha_grid[idx])
        out[idx] = np.real(ket.conj() @ rho @ ket) / np.pi
    return out


def counting_measure_check(fock: FockSpace, radius: float, points: int = 81,
                           n_max: int = 6) -> float:
    """Riemann sum of (1/pi) int |alpha><alpha| d^2alpha over |alpha|<=radius.

    Returns the max deviation from the identity on the block n <= n_max.
    """
    xs = np.linspace(-radius, radius, points)
    if points > 1:
        h = xs[1] - xs[0]
    else:
        h = 1.0
    M = fock.cutoff
    acc = np.zeros((M, M), dtype=complex)
    for x in xs:
        for y in xs:
            if x * x + y * y > radius * radius:
                continue
            ket = _coherent_amps(M, complex(x, y))
            acc += np.outer(ket, ket.conj())
    acc *= h * h / np.pi
    block = slice(0, n_max + 1)
    return float(np.abs(acc[block, block] - np.eye(n_max + 1)).max())
