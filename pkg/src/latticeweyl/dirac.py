"""Relativistic applications: 4x4 Dirac algebra, the even-form
(Foldy-Wouthuysen) rotation, field-dependent energy series with an
anomalous moment, charge spread, magnetic susceptibility integrals with
T = 0 closed forms, and magnetic translation operators on a flux lattice.

Reduced units throughout: hbar = c = 1 and the gap m c^2 = 1, so momenta,
energies and temperatures are dimensionless and every susceptibility is
reported in units of e^2/(hbar c).  x = eta_F is the dimensionless Fermi
momentum, mu = sqrt(1 + x^2) the chemical potential, eps(eta) =
sqrt(1 + eta^2) the transverse-motion energy at axial momentum eta.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import quad

from .errors import IncommensurateFlux, QuadratureFailure
from .operators import SIGMA_X, SIGMA_Y, SIGMA_Z, tensor

_ZERO2 = np.zeros((2, 2), dtype=complex)
_EYE2 = np.eye(2, dtype=complex)

BETA = tensor(SIGMA_Z, _EYE2)  # diag(1,1,-1,-1)
ALPHA = tuple(tensor(SIGMA_X, s) for s in (SIGMA_X, SIGMA_Y, SIGMA_Z))


def dirac_hamiltonian(k, m: float = 1.0) -> np.ndarray:
    """H = beta m + alpha . k (Dirac representation)."""
    k = np.asarray(k, dtype=float)
    H = m * BETA
    for mu in range(3):
        H = H + k[mu] * ALPHA[mu]
    return H


def fw_unitary(k, m: float = 1.0) -> np.ndarray:
    """S = (E + beta H)/sqrt(2E(E+m)); S H S^dag = beta E (even form)."""
    k = np.asarray(k, dtype=float)
    E = np.sqrt(m * m + k @ k)
    H = dirac_hamiltonian(k, m)
    return (E * np.eye(4) + BETA @ H) / np.sqrt(2.0 * E * (E + m))


def energy_with_field(k, B: float, lambda_prime: float,
                      spin_sign: int = 1, band_sign: int = 1) -> float:
    """Energy of a Dirac particle in a uniform field B along z, through
    O(B^2): the free energy, the hidden-momentum (center-of-mass angular
    momentum) term, the anomalous Zeeman term, the diamagnetic term, and
    the finite-charge-spread term.
    """
    k = np.asarray(k, dtype=float)
    lp = lambda_prime
    s = float(spin_sign)
    E = np.sqrt(1.0 + k @ k)
    eps2 = 1.0 + k[2] ** 2          # transverse-motion energy squared
    kperp = np.hypot(k[0], k[1])
    val = (E
           - (B / (2.0 * E)) * lp * s * kperp          # L_cm . B
           - ((1.0 + lp) / (2.0 * E)) * s * B          # Zeeman, g = 2(1+lp)
           - ((1.0 + lp) ** 2 / (8.0 * E ** 3)) * B * B
           + (eps2 / (8.0 * E ** 5)) * B * B * (1.0 + (lp * E) ** 2))
    return float(band_sign) * val


def charge_spread(k, lambda_prime: float) -> float:
    """<r^2> = eps^2/E^5 [1 + (lambda' E)^2]; k=0, lambda'=0 gives one
    squared Compton wavelength."""
    k = np.asarray(k, dtype=float)
    E2 = 1.0 + k @ k
    eps2 = 1.0 + k[2] ** 2
    return float(eps2 / E2 ** 2.5 * (1.0 + lambda_prime ** 2 * E2))


# ---------------------------------------------------------------------------
# magnetic susceptibility
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SusceptibilityInput:
    x: float                  # dimensionless Fermi momentum eta_F
    lambda_prime: float = 0.0
    t_red: float = 0.0        # k_B T in gap units

    def __post_init__(self):
        if self.x <= 0:
            raise ValueError("need x > 0")
        if self.t_red < 0:
            raise ValueError("need t_red >= 0")

    @property
    def mu(self) -> float:
        return float(np.sqrt(1.0 + self.x * self.x))


_PI2 = np.pi ** 2
_COMPONENTS = ("chi_LP", "chi_P", "chi_sp", "chi_g", "chi_MD")


def _quad(f, a, b, tol=1e-11, **kw):
    val, err = quad(f, a, b, epsabs=tol, epsrel=tol, limit=200, **kw)
    if err > max(tol * 100, abs(val) * 1e-7):
        raise QuadratureFailure(
            f"quadrature error estimate {err:.3e} for value {val:.6e}")
    return val


def chi_components_analytic(inp: SusceptibilityInput) -> dict:
    """T = 0 antiderivatives of the five susceptibility integrals."""
    if inp.t_red != 0.0:
        raise ValueError("closed forms are the T = 0 limit")
    x, lp, mu = inp.x, inp.lambda_prime, inp.mu
    ash = np.arcsinh(x)
    cubic = x ** 3 / 3.0 + x              # int_0^x eps^2 d eta
    out = {
        "chi_LP": -(1.0 / (12 * _PI2)) * cubic / mu ** 3,
        "chi_P": ((1 + lp) ** 2 / (4 * _PI2)) * x / mu,
        "chi_sp": (-(1.0 / (12 * _PI2)) * ash
                   + (1.0 / (12 * _PI2)) * cubic / mu ** 3
                   - (lp ** 2 / (8 * _PI2)) * (x * mu + ash)
                   + (lp ** 2 / (4 * _PI2)) * cubic / mu),
        "chi_g": ((1 + lp) ** 2 / (4 * _PI2)) * (ash - x / mu),
        "chi_MD": (lp ** 2 / (6 * _PI2)) * x ** 3 / mu,
    }
    # total from the two-integral form: the (1+lp)^2 - 1/3 weight on the
    # density-of-states integral plus the anomalous-moment G-integral
    out["chi_total"] = (((1 + lp) ** 2 - 1.0 / 3.0) / (4 * _PI2) * ash
                        + (lp ** 2 / (8 * _PI2)) * (x * mu - ash))
    return out


def _chi_t0_quadrature(inp: SusceptibilityInput) -> dict:
    """T = 0: inner E-integrals in closed form, outer eta numerically."""
    x, lp, mu = inp.x, inp.lambda_prime, inp.mu

    def eps(eta):
        return np.sqrt(1.0 + eta * eta)

    # inner integrals at T = 0: df/dE -> -delta(E - mu); f -> step(mu - E)
    chi = {}
    chi["chi_LP"] = (1.0 / (12 * _PI2)) * _quad(
        lambda e: -eps(e) ** 2 / mu ** 3, 0.0, x)
    chi["chi_P"] = -((1 + lp) ** 2 / (4 * _PI2)) * _quad(
        lambda e: -1.0 / mu, 0.0, x)
    chi["chi_sp"] = -(1.0 / (4 * _PI2)) * _quad(
        lambda e: (eps(e) ** 2 * (eps(e) ** -3 - mu ** -3) / 3.0
                   + lp ** 2 * eps(e) ** 2 * (1.0 / eps(e) - 1.0 / mu)),
        0.0, x)
    chi["chi_g"] = ((1 + lp) ** 2 / (4 * _PI2)) * _quad(
        lambda e: 1.0 / eps(e) - 1.0 / mu, 0.0, x)
    chi["chi_MD"] = -(lp ** 2 / (4 * _PI2)) * _quad(
        lambda e: -(mu * mu - eps(e) ** 2) / mu, 0.0, x)
    chi["chi_total"] = (((1 + lp) ** 2 - 1.0 / 3.0) / (4 * _PI2)
                        * _quad(lambda e: 1.0 / eps(e), 0.0, x)
                        + (lp ** 2 / (4 * _PI2))
                        * _quad(lambda e: mu - eps(e), 0.0, x))
    return chi


def _chi_finite_t_quadrature(inp: SusceptibilityInput) -> dict:
    """Finite temperature: nested quadrature with the Fermi function at
    fixed chemical potential mu = sqrt(1 + x^2)."""
    lp, mu, t = inp.lambda_prime, inp.mu, inp.t_red

    def fermi(E):
        return 1.0 / (np.exp(np.clip((E - mu) / t, -700, 700)) + 1.0)

    def dfermi(E):
        z = np.clip((E - mu) / (2.0 * t), -350, 350)
        return -1.0 / (4.0 * t * np.cosh(z) ** 2)

    e_hi = mu + 45.0 * t
    eta_hi = np.sqrt(max(e_hi * e_hi - 1.0, 0.0)) + 45.0 * t

    def inner(eta, kernel, weight):
        e0 = np.sqrt(1.0 + eta * eta)
        hi = max(e_hi, e0 + 45.0 * t)
        pts = [mu] if e0 < mu < hi else None
        val, _ = quad(lambda E: kernel(eta, E) * weight(E), e0, hi,
                      epsabs=1e-12, epsrel=1e-10, limit=200, points=pts)
        return val

    def outer(kernel, weight):
        return _quad(lambda eta: inner(eta, kernel, weight), 0.0, eta_hi,
                     tol=1e-10)

    e2 = lambda eta: 1.0 + eta * eta
    chi = {}
    chi["chi_LP"] = (1.0 / (12 * _PI2)) * outer(
        lambda eta, E: e2(eta) / E ** 3, dfermi)
    chi["chi_P"] = -((1 + lp) ** 2 / (4 * _PI2)) * outer(
        lambda eta, E: 1.0 / E, dfermi)
    chi["chi_sp"] = -(1.0 / (4 * _PI2)) * outer(
        lambda eta, E: e2(eta) / E ** 4 * (1.0 + (lp * E) ** 2), fermi)
    chi["chi_g"] = ((1 + lp) ** 2 / (4 * _PI2)) * outer(
        lambda eta, E: 1.0 / E ** 2, fermi)
    chi["chi_MD"] = -(lp ** 2 / (4 * _PI2)) * outer(
        lambda eta, E: (E * E - e2(eta)) / E, dfermi)

    def g_fn(eta):
        eps0 = np.sqrt(1.0 + eta * eta)
        return t * np.logaddexp(0.0, -(eps0 - mu) / t)

    chi["chi_total"] = (((1 + lp) ** 2 - 1.0 / 3.0) / (4 * _PI2)
                        * _quad(lambda eta: fermi(np.sqrt(1 + eta ** 2))
                                / np.sqrt(1 + eta ** 2),
                                0.0, eta_hi, tol=1e-10)
                        + (lp ** 2 / (4 * _PI2))
                        * _quad(g_fn, 0.0, eta_hi, tol=1e-10))
    return chi


def hole_total(inp: SusceptibilityInput) -> float:
    """Negative-branch contribution to the total: f(eps) -> 1 - f(-eps)
    and G(eps - mu) -> G(eps + mu).  Vanishes at T = 0 for mu > 0."""
    lp, mu, t = inp.lambda_prime, inp.mu, inp.t_red
    if t == 0.0:
        return 0.0
    eta_hi = np.sqrt(max((mu + 45 * t) ** 2 - 1.0, 0.0)) + 45 * t

    def f_hole(eta):
        eps0 = np.sqrt(1.0 + eta * eta)
        return 1.0 - 1.0 / (np.exp(np.clip((-eps0 - mu) / t, -700, 700)) + 1)

    def g_hole(eta):
        eps0 = np.sqrt(1.0 + eta * eta)
        return t * np.logaddexp(0.0, -(eps0 + mu) / t)

    return (((1 + lp) ** 2 - 1.0 / 3.0) / (4 * _PI2)
            * _quad(f_hole, 0.0, eta_hi, tol=1e-10)
            + (lp ** 2 / (4 * _PI2)) * _quad(g_hole, 0.0, eta_hi, tol=1e-10))


def chi_components(inp: SusceptibilityInput, method: str = "quadrature",
                   include_holes: bool = False) -> dict:
    """All five susceptibility components plus the total, in e^2/(hbar c).

    method "quadrature" integrates the (eta, E) kernels numerically (at
    T = 0 the elementary inner E-integral is taken in closed form and the
    eta-integral is numerical); method "analytic" returns the T = 0
    antiderivatives.
    """
    if method == "analytic":
        out = dict(chi_components_analytic(inp))
    elif method == "quadrature":
        if inp.t_red == 0.0:
            out = _chi_t0_quadrature(inp)
        else:
            out = _chi_finite_t_quadrature(inp)
    else:
        raise ValueError(f"unknown method {method!r}")
    if include_holes:
        out["chi_total"] += hole_total(inp)
    return out


# ---------------------------------------------------------------------------
# magnetic translations
# ---------------------------------------------------------------------------

def _site_index(x: int, y: int, L: int) -> int:
    return (x % L) * L + (y % L)


def magnetic_translation(L: int, flux, a) -> np.ndarray:
    """Magnetic translation T_M(a) on an L x L torus with flux p/q per
    plaquette (B = 2 pi p/q).

    The symmetric-gauge phase exp(-i A(r).a), A(r) = (B/2)(-y, x), is not
    single-valued on the torus when p L/q is odd; the operators here carry
    the gauge-equivalent periodic phase (conjugation by exp(i(B/2)xy)),
    which preserves the composition law

        T_M(a) T_M(b) = exp(i A(a).b) T_M(a+b)

    exactly, and hence the commutator and plaquette-loop identities.
    """
    flux = Fraction(flux)
    p, q = flux.numerator, flux.denominator
    if L % q != 0:
        raise IncommensurateFlux(f"grid side {L} not a multiple of {q}")
    B = 2.0 * np.pi * p / q
    ax, ay = int(a[0]), int(a[1])
    T = np.zeros((L * L, L * L), dtype=complex)
    for x in range(L):
        for y in range(L):
            phase = B * ax * y + 0.5 * B * ax * ay
            T[_site_index(x + ax, y + ay, L), _site_index(x, y, L)] = \
                np.exp(1j * phase)
    return T


def flux_cross(flux, a, b) -> float:
    """A(a).b = (B/2)(a_x b_y - a_y b_x) with B = 2 pi flux."""
    B = 2.0 * np.pi * Fraction(flux)
    return float(B) / 2.0 * (int(a[0]) * int(b[1]) - int(a[1]) * int(b[0]))


def plaquette_loop(L: int, flux) -> np.ndarray:
    """T(x) T(y) T(-x) T(-y); equals exp(i 2 pi flux) times the identity."""
    tx = magnetic_translation(L, flux, (1, 0))
    ty = magnetic_translation(L, flux, (0, 1))
    tmx = magnetic_translation(L, flux, (-1, 0))
    tmy = magnetic_translation(L, flux, (0, -1))
    return tx @ ty @ tmx @ tmy
