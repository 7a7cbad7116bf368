"""Exact symbolic Grassmann algebra with Berezin integration.

Elements are stored as {generator-bitmask: coefficient} with generators in
canonical ascending order inside each monomial.  Coefficients are complex
scalars, or square complex matrices for operator-valued elements (used by
the fermionic coherent-state identities).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import AlgebraMismatch
from .operators import SIGMA_MINUS, SIGMA_Z, tensor


@dataclass(frozen=True)
class GrassmannAlgebra:
    """n anticommuting generators theta_0 .. theta_{n-1}, n <= 12."""

    n_generators: int
    names: tuple = field(default=())

    def __post_init__(self):
        if not 1 <= self.n_generators <= 12:
            raise ValueError("need 1 <= n_generators <= 12")
        if not self.names:
            object.__setattr__(
                self, "names",
                tuple(f"t{i}" for i in range(self.n_generators)))


def _merge_sign(mask_a: int, mask_b: int) -> int:
    """Sign of merging two ascending monomials; 0 if they overlap."""
    if mask_a & mask_b:
        return 0
    sign = 1
    # each generator in b passes over the generators of a above it
    b = mask_b
    while b:
        low = b & -b
        passed = bin(mask_a >> (low.bit_length())).count("1")
        if passed % 2:
            sign = -sign
        b ^= low
    return sign


class GrassmannElement:
    """Multivector sum_S c_S * prod_{i in S} theta_i (ascending i)."""

    def __init__(self, algebra: GrassmannAlgebra, terms=None):
        self.algebra = algebra
        self.terms = {}
        if terms:
            for mask, coeff in terms.items():
                self._add_term(mask, coeff)

    def _add_term(self, mask, coeff):
        cur = self.terms.get(mask)
        new = coeff if cur is None else cur + coeff
        if np.max(np.abs(new)) == 0.0:
            self.terms.pop(mask, None)
        else:
            self.terms[mask] = new

    # -- constructors -------------------------------------------------
    @classmethod
    def scalar(cls, algebra, value):
        return cls(algebra, {0: complex(value) if np.isscalar(value) else value})

    @classmethod
    def generator(cls, algebra, i):
        if not 0 <= i < algebra.n_generators:
            raise ValueError(f"no generator {i}")
        return cls(algebra, {1 << i: 1.0 + 0.0j})

    # -- ring operations ----------------------------------------------
    def _check(self, other):
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise AlgebraMismatch("elements from different algebras")

    def __add__(self, other):
        if not isinstance(other, GrassmannElement):
            other = GrassmannElement.scalar(self.algebra, other)
        self._check(other)
        out = GrassmannElement(self.algebra, dict(self.terms))
        for mask, coeff in other.terms.items():
            out._add_term(mask, coeff)
        return out

    def __sub__(self, other):
        return self + (other * (-1.0))

    def __mul__(self, other):
        if not isinstance(other, GrassmannElement):
            out = GrassmannElement(self.algebra)
            for mask, coeff in self.terms.items():
                out._add_term(mask, coeff * other)
            return out
        self._check(other)
        out = GrassmannElement(self.algebra)
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                sign = _merge_sign(ma, mb)
                if sign:
                    if isinstance(ca, np.ndarray) and isinstance(cb, np.ndarray):
                        prod = ca @ cb
                    else:
                        prod = ca * cb
                    out._add_term(ma | mb, sign * prod)
        return out

    __rmul__ = __mul__

    def coefficient(self, mask: int):
        return self.terms.get(mask, 0.0)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mask in sorted(self.terms):
            gens = " ".join(self.algebra.names[i]
                            for i in range(self.algebra.n_generators)
                            if mask & (1 << i))
            c = self.terms[mask]
            parts.append(f"{c} * {gens}" if gens else f"{c}")
        return " + ".join(parts)


def multiply(x: GrassmannElement, y: GrassmannElement) -> GrassmannElement:
    return x * y


def exp_nilpotent(x: GrassmannElement) -> GrassmannElement:
    """exp of an element with no scalar part; the Taylor sum terminates."""
    if 0 in x.terms and np.max(np.abs(x.terms[0])) != 0.0:
        raise ValueError("exp_nilpotent needs a vanishing scalar part")
    one = GrassmannElement.scalar(x.algebra, 1.0)
    out = one
    power = one
    fact = 1.0
    for k in range(1, x.algebra.n_generators + 1):
        power = power * x
        fact *= k
        if not power.terms:
            break
        out = out + power * (1.0 / fact)
    return out


def berezin_integrate(x: GrassmannElement, i: int) -> GrassmannElement:
    """Left Berezin integral d theta_i: int d t = 0, int t d t = 1.

    The coefficient of theta_i is extracted with the sign from moving
    theta_i to the front of its monomial.
    """
    bit = 1 << i
    out = GrassmannElement(x.algebra)
    for mask, coeff in x.terms.items():
        if not mask & bit:
            continue
        below = bin(mask & (bit - 1)).count("1")
        sign = -1.0 if below % 2 else 1.0
        out._add_term(mask ^ bit, sign * coeff)
    return out


def gaussian_berezin(A: np.ndarray) -> complex:
    """int prod_i dtbar_i dt_i exp(-sum tbar_i A_ij t_j) = det A.

    Generators 0..n-1 are tbar_1..tbar_n; n..2n-1 are t_1..t_n.
    """
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    alg = GrassmannAlgebra(2 * n)
    tbar = [GrassmannElement.generator(alg, i) for i in range(n)]
    t = [GrassmannElement.generator(alg, n + i) for i in range(n)]
    quad = GrassmannElement(alg)
    for i in range(n):
        for j in range(n):
            if A[i, j] != 0:
                quad = quad + (tbar[i] * t[j]) * (-A[i, j])
    integrand = exp_nilpotent(quad)
    # measure dtbar_n dt_n ... dtbar_1 dt_1: innermost integral first
    out = integrand
    for i in range(n):
        out = berezin_integrate(out, n + i)   # d t_{i+1}
        out = berezin_integrate(out, i)       # d tbar_{i+1}
    return complex(out.coefficient(0))


def _jw_fermions(n_modes: int):
    """Fermion annihilation matrices on the 2^n Fock space (Jordan-Wigner)."""
    ops = []
    for j in range(n_modes):
        facs = [SIGMA_Z] * j + [SIGMA_MINUS.conj().T] + \
            [np.eye(2, dtype=complex)] * (n_modes - j - 1)
        ops.append(tensor(*facs))
    return ops


def fermion_cs_resolution_check(n_modes: int) -> float:
    """Deviation of int prod dtbar dt e^{-tbar.t} |t><t| from the identity.

    Fermionic coherent states |t> = prod_i (1 - t_i a_i^dag)|0>, with duals
    <t| = <0| prod_i (1 - a_i tbar_i); the Grassmann-even part of the
    integral must be exactly the 2^n identity matrix.
    """
    if n_modes not in (1, 2):
        raise ValueError("symbolic check implemented for 1 or 2 modes")
    dim = 2 ** n_modes
    a_ops = _jw_fermions(n_modes)
    alg = GrassmannAlgebra(2 * n_modes)
    tbar = [GrassmannElement.generator(alg, i) for i in range(n_modes)]
    t = [GrassmannElement.generator(alg, n_modes + i) for i in range(n_modes)]

    vac = np.zeros((dim, dim), dtype=complex)
    vac[0, 0] = 1.0
    one_mat = GrassmannElement.scalar(alg, np.eye(dim, dtype=complex))

    ket_bra = GrassmannElement.scalar(alg, vac)
    for i in range(n_modes):
        left = one_mat - t[i] * GrassmannElement.scalar(alg, a_ops[i].conj().T)
        ket_bra = left * ket_bra
    for i in range(n_modes):
        right = one_mat - GrassmannElement.scalar(alg, a_ops[i]) * tbar[i]
        ket_bra = ket_bra * right

    weight = GrassmannElement(alg)
    for i in range(n_modes):
        weight = weight + tbar[i] * t[i] * (-1.0)
    integrand = exp_nilpotent(weight) * ket_bra

    out = integrand
    for i in range(n_modes):
        out = berezin_integrate(out, n_modes + i)
        out = berezin_integrate(out, i)
    result = out.coefficient(0)
    if np.isscalar(result):
        result = np.zeros((dim, dim), dtype=complex)
    return float(np.abs(result - np.eye(dim)).max())


def fermion_transition_check(n_modes: int = 1) -> float:
    """Coefficient deviation of <p|q> from exp(i p.q) = prod (1 + i p_i q_i).

    <p| = <0| prod (1 - i a_i p_i),  |q> = prod (1 - q_i a_i^dag) |0>.
    """
    if n_modes not in (1, 2):
        raise ValueError("symbolic check implemented for 1 or 2 modes")
    dim = 2 ** n_modes
    a_ops = _jw_fermions(n_modes)
    alg = GrassmannAlgebra(2 * n_modes)
    p = [GrassmannElement.generator(alg, i) for i in range(n_modes)]
    q = [GrassmannElement.generator(alg, n_modes + i) for i in range(n_modes)]

    vac_ket = np.zeros((dim, 1), dtype=complex)
    vac_ket[0, 0] = 1.0
    one_mat = GrassmannElement.scalar(alg, np.eye(dim, dtype=complex))

    ket = GrassmannElement.scalar(alg, vac_ket)
    for i in range(n_modes):
        ket = (one_mat - q[i] * GrassmannElement.scalar(alg, a_ops[i].conj().T)) * ket
    bra = GrassmannElement.scalar(alg, vac_ket.conj().T)
    for i in range(n_modes):
        bra = bra * (one_mat - GrassmannElement.scalar(alg, a_ops[i]) * p[i] * 1j)

    overlap = bra * ket  # 1x1 matrix coefficients

    expected = GrassmannElement.scalar(alg, 1.0)
    for i in range(n_modes):
        expected = expected * (GrassmannElement.scalar(alg, 1.0)
                               + p[i] * q[i] * 1j)
    dev = 0.0
    masks = set(overlap.terms) | set(expected.terms)
    for mask in masks:
        got = overlap.coefficient(mask)
        if isinstance(got, np.ndarray):
            got = got[0, 0]
        want = expected.coefficient(mask)
        if isinstance(want, np.ndarray):
            want = want[0, 0]
        dev = max(dev, abs(complex(got) - complex(want)))
    return dev
