"""End-to-end acceptance checks: one test per numbered criterion."""

import time

import numpy as np
import pytest

import latticeweyl as lw
from latticeweyl import (FockSpace, PropagatorJob, SusceptibilityInput,
                         bogoliubov_boson, bogoliubov_fermion,
                         boson_characteristic, chi_components,
                         chi_components_analytic, coherent_state,
                         delta_projector, delta_projector_momentum,
                         dft_matrix, dirac_hamiltonian, dyson_maleev,
                         exact_propagator, flux_cross, from_symbol,
                         fw_unitary, holstein_primakoff, husimi_q,
                         jordan_wigner_ops, magnetic_translation, make_space,
                         plaquette_loop, propagate, quadratures,
                         solve_xx_chain, weyl_symbol, wigner_function)
from latticeweyl.grassmann import (GrassmannAlgebra, GrassmannElement,
                                   berezin_integrate,
                                   fermion_cs_resolution_check,
                                   gaussian_berezin)
from latticeweyl.operators import anticommutator, commutator
from latticeweyl.selftest import run_selftest
from latticeweyl.transforms import SpinChain, ladder_spin_matrices


def rand_op(rng, n):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def rand_density(rng, n):
    A = rand_op(rng, n)
    rho = A @ A.conj().T
    return rho / np.trace(rho).real


def test_criterion_01_weyl_round_trip():
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    for N in (3, 5, 7, 11):
        space = make_space(N)
        for _ in range(20):
            A = rand_op(rng, N)
            back = from_symbol(weyl_symbol(A, space))
            assert np.abs(back - A).max() < 1e-12
    assert time.perf_counter() - t0 < 5.0


def test_criterion_02_projector_algebra():
    for N in (3, 5, 7):
        space = make_space(N)
        deltas = [[delta_projector(space, p, q) for q in range(N)]
                  for p in range(N)]
        for p in range(N):
            for q in range(N):
                D = deltas[p][q]
                assert abs(np.trace(D) - 1.0) < 1e-12
                assert np.abs(D - D.conj().T).max() < 1e-12
                alt = delta_projector_momentum(space, p, q)
                assert np.abs(D - alt).max() < 1e-12
                for pp in range(N):
                    for qq in range(N):
                        tr = np.trace(D @ deltas[pp][qq]).real
                        want = N if (p == pp and q == qq) else 0.0
                        assert abs(tr - want) < 1e-12


def test_criterion_03_wigner_marginals():
    rng = np.random.default_rng(103)
    space = make_space(7)
    F = dft_matrix(space)
    for _ in range(20):
        rho = rand_density(rng, 7)
        W = wigner_function(rho, space).grid
        assert abs(W.sum() - 1.0) < 1e-10
        pos = W.sum(axis=0)          # sum over p -> P(q)
        mom = W.sum(axis=1)          # sum over q -> P(p)
        assert np.abs(pos - np.diag(rho).real).max() < 1e-10
        rho_p = F.conj().T @ rho @ F
        assert np.abs(mom - np.diag(rho_p).real).max() < 1e-10


def test_criterion_04_ordering_phases():
    rng = np.random.default_rng(104)
    for N in (3, 5):
        space = make_space(N)
        A = rand_op(rng, N)
        cw = lw.characteristic(A, space, "weyl").grid
        cn = lw.characteristic(A, space, "normal").grid
        ca = lw.characteristic(A, space, "antinormal").grid
        for u in range(N):
            for v in range(N):
                assert abs(cn[u, v] - space.phase(-2 * u * v) * cw[u, v]) \
                    < 1e-12
                assert abs(ca[u, v] - space.phase(2 * u * v) * cw[u, v]) \
                    < 1e-12


def test_criterion_05_trace_product_rule():
    rng = np.random.default_rng(105)
    space = make_space(7)
    for _ in range(50):
        A, B = rand_op(rng, 7), rand_op(rng, 7)
        lhs = np.trace(A @ B)
        rhs = (weyl_symbol(A, space).grid
               * weyl_symbol(B, space).grid).sum() / 7.0
        assert abs(lhs - rhs) < 1e-10


def test_criterion_06_xx_chain():
    t0 = time.perf_counter()
    for L in range(2, 9):
        res = solve_xx_chain(L, 1.0)
        assert res["verified"], L
    assert time.perf_counter() - t0 < 30.0


def test_criterion_07_car_ccr():
    # Jordan-Wigner CAR exact up to L = 6
    for L in (2, 6):
        ops = jordan_wigner_ops(SpinChain(L))
        dim = 2 ** L
        for i, ai in enumerate(ops):
            for j, aj in enumerate(ops):
                assert np.abs(anticommutator(ai, aj)).max() == 0.0
                tgt = np.eye(dim) if i == j else np.zeros((dim, dim))
                assert np.abs(anticommutator(ai, aj.conj().T)
                              - tgt).max() == 0.0
    # fermionic Bogoliubov: canonical passes, perturbed is a violation
    u, v = np.cos(0.3), np.sin(0.3)
    g = bogoliubov_fermion(u, v)
    for i, gi in enumerate(g):
        for j, gj in enumerate(g):
            tgt = np.eye(4) if i == j else np.zeros((4, 4))
            assert np.abs(anticommutator(gi, gj.conj().T) - tgt).max() < 1e-12
    with pytest.raises(lw.NotCanonical):
        bogoliubov_fermion(u, v + 0.01)
    # bosonic Bogoliubov spacing
    res = bogoliubov_boson(1.0, 0.3, fock_cutoff=30)
    assert abs(res["quasiparticle_gap"] - np.sqrt(1 - 0.09)) < 1e-12
    assert res["spacing_error"] < 1e-6


def test_criterion_08_hp_and_dyson_maleev():
    for two_j in range(1, 11):
        j = two_j / 2
        Sp, Sm, Sz = holstein_primakoff(j)
        Op, Om, Oz = ladder_spin_matrices(j)
        assert np.abs(Sp - Op).max() < 1e-12
        assert np.abs(Sm - Om).max() < 1e-12
        assert np.abs(Sz - Oz).max() < 1e-12
        assert np.abs(commutator(Sp, Sm) - 2 * Sz).max() < 1e-12
        Jp, Jm, Jz = dyson_maleev(j)
        assert np.abs(commutator(Jp, Jm) - 2 * Jz).max() < 1e-12
        assert np.abs(commutator(Jz, Jp) - Jp).max() < 1e-12
        if j >= 1.0:
            assert np.abs(Jp - Jm.conj().T).max() > 0.0


def test_criterion_09_path_integral():
    # real time: first-order Trotter signature on a mixed H at N = 7
    rng = np.random.default_rng(109)
    space = make_space(7)
    F = dft_matrix(space)
    K = F @ np.diag(rng.normal(size=7)).astype(complex) @ F.conj().T
    H = (K + K.conj().T) / 2 + np.diag(rng.normal(size=7))
    errs = {}
    for n in (32, 64, 128, 256):
        job = PropagatorJob(space, H, 1.0, n)
        errs[n] = np.abs(propagate(job) - exact_propagator(job)).max()
    assert errs[64] < errs[32] and errs[128] < errs[64] \
        and errs[256] < errs[128]
    assert 1.7 <= errs[128] / errs[256] <= 2.3
    # Matsubara: weakly coupled structured H, beta = 2, n = 256
    sp5 = make_space(5)
    hop = np.zeros((5, 5), dtype=complex)
    for q in range(5):
        hop[(q + 1) % 5, q] = hop[q, (q + 1) % 5] = 1.0
    Hm = 0.03 * (hop + np.diag(np.cos(2 * np.pi * np.arange(5) / 5)))
    job = PropagatorJob(sp5, Hm, 2.0, 256, mode="Matsubara")
    err = abs(np.trace(propagate(job)) - np.trace(exact_propagator(job)))
    assert err < 1e-6


def test_criterion_10_boson_layer():
    fk = FockSpace(40)
    beta = 1.0 + 0.5j
    ket = coherent_state(fk, beta)
    rho = np.outer(ket, ket.conj())
    xs = np.linspace(-2, 2, 9)
    grid = xs[None, :] + 1j * xs[:, None]
    Q = husimi_q(rho, fk, grid)
    assert np.abs(Q - np.exp(-np.abs(grid - beta) ** 2) / np.pi).max() < 1e-8
    vac = np.zeros((40, 40), dtype=complex)
    vac[0, 0] = 1.0
    chi = boson_characteristic(vac, fk, grid, "weyl")
    assert np.abs(chi - np.exp(-np.abs(grid) ** 2 / 2)).max() < 1e-8
    Qd, Pd = quadratures(fk)
    comm = Qd @ Pd - Pd @ Qd
    want = 1j * np.eye(40, dtype=complex)
    want[-1, -1] = 1j * (1 - 40)
    # sqrt(n)^2 rounds to n only to 1 ulp, so "exact" means machine epsilon
    assert np.abs(comm - want).max() < 1e-13


def test_criterion_11_grassmann():
    alg = GrassmannAlgebra(1)
    one = GrassmannElement.scalar(alg, 1.0)
    theta = GrassmannElement.generator(alg, 0)
    assert berezin_integrate(one, 0).terms == {}
    assert berezin_integrate(theta, 0).coefficient(0) == 1.0
    rng = np.random.default_rng(111)
    for n in (1, 2, 3):
        A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        assert gaussian_berezin(A) == pytest.approx(np.linalg.det(A),
                                                    abs=1e-12)
    assert fermion_cs_resolution_check(1) == 0.0
    assert fermion_cs_resolution_check(2) == 0.0


def test_criterion_12_dirac_fw():
    rng = np.random.default_rng(112)
    for _ in range(1000):
        k = rng.normal(size=3) * rng.choice([0.03, 0.3, 3.0, 30.0])
        E = np.sqrt(1.0 + k @ k)
        S = fw_unitary(k)
        resid = np.abs(S @ dirac_hamiltonian(k) @ S.conj().T
                       - E * lw.BETA).max()
        assert resid < 1e-12
    assert lw.charge_spread([0.0, 0.0, 0.0], 0.0) == 1.0


def test_criterion_13_susceptibility():
    pi2 = np.pi ** 2
    hi = chi_components(SusceptibilityInput(1e3, 0.0), "quadrature")
    assert abs(hi["chi_P"] - 1 / (4 * pi2)) / (1 / (4 * pi2)) < 0.02
    assert abs(hi["chi_LP"] + 1 / (36 * pi2)) / (1 / (36 * pi2)) < 0.02
    for lp in (0.0, 0.3):
        lo = chi_components(SusceptibilityInput(1e-2, lp), "quadrature")
        ratio = lo["chi_P"] / lo["chi_LP"]
        want = -3 * (1 + lp) ** 2
        assert abs(ratio - want) / abs(want) < 0.01
    t0 = time.perf_counter()
    xs = np.logspace(-1, 1, 60)
    for x in xs:
        inp = SusceptibilityInput(float(x), 0.2)
        qd = chi_components(inp, "quadrature")
        an = chi_components_analytic(inp)
        for key in qd:
            scale = max(abs(an[key]), 1e-300)
            assert abs(qd[key] - an[key]) / scale < 1e-8, key
    assert time.perf_counter() - t0 < 60.0


def test_criterion_14_magnetic_translation():
    L, flux = 4, "1/4"
    vecs = [(1, 0), (0, 1), (1, 1), (-1, 2), (2, -1)]
    for a in vecs:
        for b in vecs:
            Ta = magnetic_translation(L, flux, a)
            Tb = magnetic_translation(L, flux, b)
            Tab = magnetic_translation(L, flux, (a[0] + b[0], a[1] + b[1]))
            w = flux_cross(flux, a, b)
            assert np.abs(Ta @ Tb - np.exp(1j * w) * Tab).max() < 1e-12
            assert np.abs(Ta @ Tb - Tb @ Ta
                          - 2j * np.sin(w) * Tab).max() < 1e-12
    loop = plaquette_loop(L, flux)
    assert np.abs(loop - np.exp(1j * np.pi / 2) * np.eye(16)).max() < 1e-12


def test_criterion_15_selftest_deterministic_and_fast():
    t0 = time.perf_counter()
    n1, rep1 = run_selftest()
    n2, rep2 = run_selftest()
    elapsed = time.perf_counter() - t0
    assert n1 == 0 and n2 == 0
    assert rep1 == rep2
    assert elapsed < 120.0
