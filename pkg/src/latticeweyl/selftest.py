"""Desk-scale invariant suite behind the `selftest` CLI command.

Each check is a named function returning None on success or a short
failure message.  All randomness is seeded, so the pass/fail table is
byte-identical across runs.
"""

import numpy as np

from . import dirac, fock, grassmann, pathint, transforms, weyl
from .lattice import dft_matrix, make_space


def _rand_herm(rng, n):
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (A + A.conj().T) / 2


def _rand_density(rng, n):
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = A @ A.conj().T
    return rho / np.trace(rho).real


def check_weyl_roots_of_unity(corrupt_omega=False):
    for N in (3, 5, 7):
        space = make_space(N)
        omega = space.omega.copy()
        if corrupt_omega:
            omega[1] *= 1.001
        if np.abs(omega ** N - 1.0).max() > 1e-12:
            return f"omega table at N={N} does not satisfy omega^N = 1"
        if np.abs(omega[1] - np.exp(2j * np.pi / N)) > 1e-14:
            return f"omega[1] wrong at N={N}"
    return None


def check_weyl_round_trip():
    rng = np.random.default_rng(11)
    for N in (3, 5, 7, 11):
        space = make_space(N)
        for _ in range(20):
            A = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
            back = weyl.from_symbol(weyl.weyl_symbol(A, space))
            if np.abs(back - A).max() >= 1e-12:
                return f"round trip fails at N={N}"
    return None


def check_weyl_projector_algebra():
    for N in (3, 5, 7):
        space = make_space(N)
        for p in range(N):
            for q in range(N):
                D = weyl.delta_projector(space, p, q)
                if abs(np.trace(D) - 1.0) > 1e-12:
                    return f"Tr Delta != 1 at N={N}"
                if np.abs(D - D.conj().T).max() > 1e-12:
                    return f"Delta not Hermitian at N={N}"
                Dm = weyl.delta_projector_momentum(space, p, q)
                if np.abs(D - Dm).max() > 1e-12:
                    return f"Delta form mismatch at N={N} ({p},{q})"
        stack = weyl.delta_stack(space)
        gram = np.einsum("pqij,rsji->pqrs", stack, stack)
        want = np.zeros_like(gram)
        for p in range(N):
            for q in range(N):
                want[p, q, p, q] = N
        if np.abs(gram - want).max() > 1e-12:
            return f"Tr(Delta Delta') != N delta at N={N}"
    return None


def check_weyl_wigner_marginals():
    rng = np.random.default_rng(12)
    space = make_space(7)
    F = dft_matrix(space)
    for _ in range(20):
        rho = _rand_density(rng, 7)
        W = weyl.wigner_function(rho, space).grid
        if abs(W.sum() - 1.0) > 1e-10:
            return "Wigner does not sum to 1"
        pos = W.sum(axis=0)
        if np.abs(pos - np.diag(rho).real).max() > 1e-10:
            return "position marginal mismatch"
        mom = W.sum(axis=1)
        rho_p = F.conj().T @ rho @ F
        if np.abs(mom - np.diag(rho_p).real).max() > 1e-10:
            return "momentum marginal mismatch"
    return None


def check_weyl_ordering_phases():
    rng = np.random.default_rng(13)
    for N in (3, 5):
        space = make_space(N)
        A = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
        cw = weyl.characteristic(A, space, "weyl").grid
        cn = weyl.characteristic(A, space, "normal").grid
        ca = weyl.characteristic(A, space, "antinormal").grid
        for u in range(N):
            for v in range(N):
                if abs(cn[u, v] - space.phase(-2 * u * v) * cw[u, v]) > 1e-10:
                    return f"normal ordering phase wrong at N={N}"
                if abs(ca[u, v] - space.phase(2 * u * v) * cw[u, v]) > 1e-10:
                    return f"antinormal ordering phase wrong at N={N}"
    return None


def check_weyl_trace_product():
    rng = np.random.default_rng(14)
    space = make_space(7)
    for _ in range(50):
        A = rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))
        B = rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))
        lhs = np.trace(A @ B)
        rhs = (weyl.weyl_symbol(A, space).grid
               * weyl.weyl_symbol(B, space).grid).sum() / 7
        if abs(lhs - rhs) > 1e-10:
            return "trace-product rule violated"
    return None


def check_transform_xx_chain():
    for L in range(2, 7):
        if not transforms.solve_xx_chain(L, 1.0)["verified"]:
            return f"XX subset-sum identity fails at L={L}"
    return None


def check_transform_car_ccr():
    from .operators import anticommutator
    ops = transforms.jordan_wigner_ops(transforms.SpinChain(5))
    dim = 2 ** 5
    for i, ai in enumerate(ops):
        for j, aj in enumerate(ops):
            if np.abs(anticommutator(ai, aj)).max() != 0.0:
                return "JW {a,a} != 0"
            tgt = np.eye(dim) if i == j else np.zeros((dim, dim))
            if np.abs(anticommutator(ai, aj.conj().T) - tgt).max() != 0.0:
                return "JW {a,adag} != delta"
    g = transforms.bogoliubov_fermion(0.6, 0.8)
    for i, gi in enumerate(g):
        for j, gj in enumerate(g):
            tgt = np.eye(4) if i == j else np.zeros((4, 4))
            if np.abs(anticommutator(gi, gj.conj().T) - tgt).max() > 1e-12:
                return "fermion Bogoliubov CAR broken"
    res = transforms.bogoliubov_boson(1.0, 0.3, fock_cutoff=30)
    if res["spacing_error"] >= 1e-6:
        return f"boson Bogoliubov spacing error {res['spacing_error']:.2e}"
    return None


def check_transform_hp_dm():
    from .operators import commutator
    for two_j in range(1, 11):
        j = two_j / 2
        Sp, Sm, Sz = transforms.holstein_primakoff(j)
        Op, Om, Oz = transforms.ladder_spin_matrices(j)
        if np.abs(Sp - Op).max() > 1e-12 or np.abs(Sz - Oz).max() > 1e-12:
            return f"HP != ladder at j={j}"
        if np.abs(commutator(Sp, Sm) - 2 * Sz).max() > 1e-12:
            return f"[S+,S-] != 2Sz at j={j}"
        Jp, Jm, Jz = transforms.dyson_maleev(j)
        if np.abs(commutator(Jp, Jm) - 2 * Jz).max() > 1e-12:
            return f"DM algebra fails at j={j}"
        if two_j > 1 and np.abs(Jp - Jm.conj().T).max() == 0.0:
            return "DM unexpectedly Hermitian"
    return None


def check_pathint():
    rng = np.random.default_rng(15)
    space = make_space(7)
    F = dft_matrix(space)
    K = F @ np.diag(rng.normal(size=7)).astype(complex) @ F.conj().T
    H = K + np.diag(rng.normal(size=7))
    H = (H + H.conj().T) / 2
    errs = {}
    for n in (32, 64):
        job = pathint.PropagatorJob(space, H, 1.0, n)
        errs[n] = np.abs(pathint.propagate(job)
                         - pathint.exact_propagator(job)).max()
    if not errs[64] < errs[32]:
        return "real-time error does not decrease with n"
    if not 1.7 <= errs[32] / errs[64] <= 2.3:
        return f"Trotter order ratio {errs[32]/errs[64]:.3f}"
    sp5 = make_space(5)
    hop = np.zeros((5, 5), dtype=complex)
    for q in range(5):
        hop[(q + 1) % 5, q] = hop[q, (q + 1) % 5] = 1.0
    V5 = np.diag(np.cos(2 * np.pi * np.arange(5) / 5))
    job = pathint.PropagatorJob(sp5, 0.03 * (hop + V5), 2.0, 256,
                                mode="Matsubara")
    err = abs(np.trace(pathint.propagate(job))
              - np.trace(pathint.exact_propagator(job)))
    if err >= 1e-6:
        return f"Matsubara trace error {err:.2e}"
    return None


def check_boson_layer():
    fk = fock.FockSpace(40)
    Q, P = fock.quadratures(fk)
    comm = Q @ P - P @ Q
    want = 1j * np.eye(40, dtype=complex)
    want[-1, -1] = 1j * (1 - 40)
    if np.abs(comm - want).max() > 1e-12:
        return "[Q,P] truncation identity broken"
    beta = 1.0
    ket = fock.coherent_state(fk, beta)
    rho = np.outer(ket, ket.conj())
    alphas = np.array([0.3 + 0.4j, -1.0, 1.5j, 1.0 + 1.0j])
    qv = fock.husimi_q(rho, fk, alphas)
    ref = np.exp(-np.abs(alphas - beta) ** 2) / np.pi
    if np.abs(qv - ref).max() > 1e-8:
        return "Husimi of coherent state mismatch"
    vac = np.zeros((40, 40), dtype=complex)
    vac[0, 0] = 1.0
    xis = np.array([0.5, 1j, 1 + 1j, -0.3 + 0.2j])
    chi = fock.boson_characteristic(vac, fk, xis)
    if np.abs(chi - np.exp(-np.abs(xis) ** 2 / 2)).max() > 1e-8:
        return "vacuum characteristic mismatch"
    return None


def check_grassmann():
    alg = grassmann.GrassmannAlgebra(2)
    t0 = grassmann.GrassmannElement.generator(alg, 0)
    one = grassmann.GrassmannElement.scalar(alg, 1.0)
    if grassmann.berezin_integrate(one, 0).terms != {}:
        return "int dtheta 1 != 0"
    if grassmann.berezin_integrate(t0, 0).coefficient(0) != 1.0:
        return "int dtheta theta != 1"
    rng = np.random.default_rng(16)
    for n in (1, 2, 3):
        A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        if abs(grassmann.gaussian_berezin(A) - np.linalg.det(A)) > 1e-12:
            return f"gaussian Berezin != det at n={n}"
    for n in (1, 2):
        if grassmann.fermion_cs_resolution_check(n) != 0.0:
            return f"coherent-state resolution fails at n={n}"
        if grassmann.fermion_transition_check(n) != 0.0:
            return f"transition function fails at n={n}"
    return None


def check_dirac_fw():
    rng = np.random.default_rng(17)
    for _ in range(200):
        k = rng.normal(size=3) * 3
        S = dirac.fw_unitary(k)
        E = np.sqrt(1 + k @ k)
        H = dirac.dirac_hamiltonian(k)
        if np.abs(S @ H @ S.conj().T - E * dirac.BETA).max() > 1e-12:
            return "FW even form fails"
    if dirac.charge_spread((0, 0, 0), 0.0) != 1.0:
        return "charge spread at rest != 1"
    return None


def check_dirac_susceptibility():
    import math
    inp = dirac.SusceptibilityInput(1e3, 0.0)
    an = dirac.chi_components(inp, "analytic")
    qd = dirac.chi_components(inp, "quadrature")
    for key, val in an.items():
        if val != 0 and abs(qd[key] - val) / abs(val) > 1e-8:
            return f"quadrature vs analytic mismatch in {key}"
    if abs(an["chi_P"] - 1 / (4 * math.pi ** 2)) / (1 / (4 * math.pi ** 2)) > 0.02:
        return "ultrarelativistic chi_P limit fails"
    if abs(an["chi_LP"] + 1 / (36 * math.pi ** 2)) / (1 / (36 * math.pi ** 2)) > 0.02:
        return "ultrarelativistic chi_LP limit fails"
    low = dirac.chi_components(dirac.SusceptibilityInput(1e-2, 0.0),
                               "analytic")
    if abs(low["chi_P"] / low["chi_LP"] + 3.0) / 3.0 > 0.01:
        return "nonrelativistic chi_P/chi_LP ratio fails"
    return None


def check_dirac_mag_translate():
    f = "1/4"
    for a, b in [((1, 0), (0, 1)), ((1, 2), (2, 1)), ((2, 3), (1, 0))]:
        Ta = dirac.magnetic_translation(4, f, a)
        Tb = dirac.magnetic_translation(4, f, b)
        Tab = dirac.magnetic_translation(4, f, (a[0] + b[0], a[1] + b[1]))
        ph = dirac.flux_cross(f, a, b)
        if np.abs(Ta @ Tb - np.exp(1j * ph) * Tab).max() > 1e-12:
            return f"composition law fails for {a},{b}"
        if np.abs(Ta @ Tb - Tb @ Ta - 2j * np.sin(ph) * Tab).max() > 1e-12:
            return f"commutator law fails for {a},{b}"
    loop = dirac.plaquette_loop(4, f)
    if np.abs(loop - np.exp(1j * np.pi / 2) * np.eye(16)).max() > 1e-12:
        return "plaquette loop phase wrong"
    return None


CHECKS = [
    ("weyl.roots_of_unity", check_weyl_roots_of_unity),
    ("weyl.round_trip", check_weyl_round_trip),
    ("weyl.projector_algebra", check_weyl_projector_algebra),
    ("weyl.wigner_marginals", check_weyl_wigner_marginals),
    ("weyl.ordering_phases", check_weyl_ordering_phases),
    ("weyl.trace_product", check_weyl_trace_product),
    ("transform.xx_chain", check_transform_xx_chain),
    ("transform.car_ccr", check_transform_car_ccr),
    ("transform.hp_dyson_maleev", check_transform_hp_dm),
    ("pathint.trotter_matsubara", check_pathint),
    ("boson.husimi_characteristic", check_boson_layer),
    ("grassmann.berezin_identities", check_grassmann),
    ("dirac.foldy_wouthuysen", check_dirac_fw),
    ("dirac.susceptibility_limits", check_dirac_susceptibility),
    ("dirac.magnetic_translation", check_dirac_mag_translate),
]


def run_selftest(only: str = "", corrupt_omega: bool = False, out=None):
    """Run the invariant suite; returns (n_failed, report_text)."""
    lines = []
    n_failed = 0
    for name, fn in CHECKS:
        if only and not name.startswith(only):
            continue
        if name == "weyl.roots_of_unity":
            msg = fn(corrupt_omega=corrupt_omega)
        else:
            msg = fn()
        if msg is None:
            lines.append(f"PASS {name}")
        else:
            n_failed += 1
            lines.append(f"FAIL {name}: {msg}")
    report = "\n".join(lines) + "\n"
    if out is not None:
        out.write(report)
    return n_failed, report
