"""Batch command-line front end.

Subcommands map onto the library modules and emit CSV or JSON.  Output is
deterministic (identical invocation gives byte-identical files), floats
carry 17 significant digits, and files are written atomically (temp file
plus rename).  Exit codes: 0 success, 1 selftest failure, 2 validation
error, 3 numeric failure; errors are reported as one JSON line on stderr.

Configuration comes from flags, optionally seeded by a JSON file via
--config (flags win).  The only environment variable honored is
WEYL_LATTICE_THREADS, which bounds the thread pool used for grid fills.
"""

import argparse
import hashlib
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__, dirac, fock, pathint, serialize, transforms, weyl
from .errors import (ConvergenceFailure, LatticeWeylError, QuadratureFailure)
from .lattice import dft_matrix, make_space
from .selftest import run_selftest

# Normalization and sign conventions, hashed into --version so downstream
# fixtures can detect drift.
_CONVENTIONS = "\n".join([
    "TrDelta=1",
    "TrDeltaDelta=N*delta",
    "A=(1/N)*sum symbol*Delta",
    "W=(1/N)*Tr(rho*Delta)",
    "X|q>=|q+1>", "Z|q>=omega^q|q>", "ZX=omega*XZ",
    "Y(u,v)=omega^{uv*inv2}X^vZ^u",
    "CharWeyl(u,v)=Tr(A*Y(2u,2v))",
    "CharNormal=omega^{-2uv}*CharWeyl",
    "inverse-kernel=omega^{+2(pv-qu)}",
    "transfer=(1/N)sum_p omega^{p dq} exp(-i eps H(p,mid))",
    "berezin-measure=dtbar_n dt_n ... dtbar_1 dt_1",
    "jw-site=sigma_minus-type with n=(I-sigma_z)/2",
    "magnetic-cocycle=exp(+i A(a).b)",
    "reduced-units hbar=c=gap=1, chi in e^2/hbar c",
])
CONVENTION_HASH = hashlib.sha256(_CONVENTIONS.encode()).hexdigest()[:12]


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("WEYL_LATTICE_THREADS", "1")))
    except ValueError:
        return 1


def _atomic_write(path: str, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-latticeweyl-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json_dump(obj) -> str:
    return json.dumps(obj) + "\n"


def _cnum(z) -> list:
    return [float(np.real(z)), float(np.imag(z))]


def _matrix_out(M) -> list:
    return [[_cnum(z) for z in row] for row in np.asarray(M)]


def _parse_state(space, spec: str) -> np.ndarray:
    """States: qK / pK (basis kets, symmetric residues allowed), mixed."""
    N = space.modulus
    if spec == "mixed":
        return np.eye(N, dtype=complex) / N
    if len(spec) >= 2 and spec[0] in "qp":
        try:
            label = int(spec[1:])
        except ValueError:
            raise ValueError(f"bad state spec {spec!r}")
        idx = label % N
        if spec[0] == "q":
            ket = np.zeros(N, dtype=complex)
            ket[idx] = 1.0
        else:
            ket = dft_matrix(space)[:, idx]
        return np.outer(ket, ket.conj())
    raise ValueError(f"bad state spec {spec!r}")


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------

def _cmd_wigner(args) -> str:
    space = make_space(args.n)
    rho = _parse_state(space, args.state)
    W = weyl.wigner_function(rho, space)
    return (serialize.grid_to_csv(W) if args.format == "csv"
            else serialize.grid_to_json(W))


def _cmd_char(args) -> str:
    space = make_space(args.n)
    rho = _parse_state(space, args.state)
    C = weyl.characteristic(rho, space, args.ordering)
    return (serialize.grid_to_csv(C) if args.format == "csv"
            else serialize.grid_to_json(C))


def _cmd_smoothed(args) -> str:
    space = make_space(args.n)
    rho = _parse_state(space, args.state)
    sigma = args.sigma

    def g(u, v):
        return np.exp(-sigma * (u * u + v * v))

    F = weyl.smoothed_distribution(rho, space, g)
    return (serialize.grid_to_csv(F) if args.format == "csv"
            else serialize.grid_to_json(F))


def _cmd_qudit(args) -> str:
    N = args.n
    if N == 2:
        X, Z, H = weyl.qubit_paulis()
        out = {
            "N": 2,
            "kind": "qudit",
            "hadamard_squares_to_identity":
                float(np.abs(H @ H - np.eye(2)).max()),
            "hzh_equals_x": float(np.abs(H @ Z @ H - X).max()),
            "xz_anticommute": float(np.abs(X @ Z + Z @ X).max()),
        }
        return _json_dump(out)
    space = make_space(N)
    X = weyl.shift_x(space)
    Z = weyl.clock_z(space)
    F = dft_matrix(space)
    out = {
        "N": N,
        "kind": "qudit",
        "zx_weyl_relation":
            float(np.abs(Z @ X - space.omega[1] * X @ Z).max()),
        "x_order": float(np.abs(np.linalg.matrix_power(X, N)
                                - np.eye(N)).max()),
        "z_order": float(np.abs(np.linalg.matrix_power(Z, N)
                                - np.eye(N)).max()),
        "dft_unitarity": float(np.abs(F @ F.conj().T - np.eye(N)).max()),
        "dft_conjugation":
            float(np.abs(F.conj().T @ X @ F - Z.conj().T).max()),
    }
    return _json_dump(out)


def _cmd_xx_chain(args) -> str:
    res = transforms.solve_xx_chain(args.l, args.j)
    out = {
        "L": args.l,
        "J": args.j,
        "single_particle": [float(e) for e in res["single_particle_levels"]],
        "ground_energy": float(res["many_body_spectrum"][0]),
        "verified": res["verified"],
    }
    return _json_dump(out)


def _cmd_bogoliubov(args) -> str:
    res = transforms.bogoliubov_boson(args.e, args.g, args.cutoff)
    out = {key: float(res[key])
           for key in ("r", "u", "v", "quasiparticle_gap",
                       "ground_energy", "spacing_error")}
    out["E"] = args.e
    out["g"] = args.g
    return _json_dump(out)


def _load_job(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _job_hamiltonian(spec: dict) -> np.ndarray:
    N = int(spec["N"])
    flat = spec["H"]
    if len(flat) != N * N:
        raise ValueError(f"H needs {N*N} row-major entries, got {len(flat)}")
    return np.array([complex(re, im) for re, im in flat],
                    dtype=complex).reshape(N, N)


def _cmd_propagator(args) -> str:
    spec = _load_job(args.job)
    space = make_space(int(spec["N"]))
    H = _job_hamiltonian(spec)
    job = pathint.PropagatorJob(space, H, float(spec["t"]), int(spec["n"]),
                                mode=spec.get("mode", "RealTime"))
    K = pathint.propagate(job)
    out = {"n": job.n_steps, "K": _matrix_out(K)}
    if space.modulus <= 11:
        out["error_vs_exact"] = float(
            np.abs(K - pathint.exact_propagator(job)).max())
    return _json_dump(out)


def _cmd_partition(args) -> str:
    spec = _load_job(args.job)
    space = make_space(int(spec["N"]))
    H = _job_hamiltonian(spec)
    job = pathint.PropagatorJob(space, H, args.beta, args.steps,
                                mode="Matsubara")
    tr = np.trace(pathint.propagate(job))
    exact = np.trace(pathint.exact_propagator(job))
    out = {
        "beta": args.beta,
        "n": args.steps,
        "trace": _cnum(tr),
        "exact": _cnum(exact),
        "error": float(abs(tr - exact)),
    }
    return _json_dump(out)


def _parse_boson_state(fk: fock.FockSpace, spec: str) -> np.ndarray:
    if spec.startswith("coherent:"):
        re, im = (float(s) for s in spec[len("coherent:"):].split(","))
        ket = fock.coherent_state(fk, complex(re, im))
    elif spec.startswith("fock:"):
        n = int(spec[len("fock:"):])
        if not 0 <= n < fk.cutoff:
            raise ValueError(f"fock level {n} outside cutoff")
        ket = np.zeros(fk.cutoff, dtype=complex)
        ket[n] = 1.0
    else:
        raise ValueError(f"bad boson state spec {spec!r}")
    return np.outer(ket, ket.conj())


def _cmd_husimi(args) -> str:
    fk = fock.FockSpace(args.cutoff)
    rho = _parse_boson_state(fk, args.state)
    xs = np.linspace(-args.radius, args.radius, args.points)
    alphas = (xs[None, :] + 1j * xs[:, None]).ravel()
    rows = np.array_split(alphas, _threads())
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        parts = list(pool.map(lambda chunk:
                              fock.husimi_q(rho, fk, chunk), rows))
    values = np.concatenate(parts).astype(complex)
    if args.format == "csv":
        return serialize.alpha_grid_to_csv(alphas, values)
    return serialize.alpha_grid_to_json(alphas, values, "Husimi")


def _cmd_dirac_fw(args) -> str:
    k = np.array([float(s) for s in args.k.split(",")])
    if k.shape != (3,):
        raise ValueError("--k needs three comma-separated components")
    S = dirac.fw_unitary(k, args.m)
    H = dirac.dirac_hamiltonian(k, args.m)
    E = float(np.sqrt(args.m ** 2 + k @ k))
    out = {
        "k": [float(x) for x in k],
        "m": args.m,
        "energy": E,
        "S": _matrix_out(S),
        "even_form_residual":
            float(np.abs(S @ H @ S.conj().T - E * dirac.BETA).max()),
        "unitarity_residual":
            float(np.abs(S @ S.conj().T - np.eye(4)).max()),
    }
    return _json_dump(out)


def _cmd_susceptibility(args) -> tuple:
    xs = np.logspace(np.log10(args.x_min), np.log10(args.x_max), args.points)

    def one(x):
        inp = dirac.SusceptibilityInput(float(x), args.lambda_prime,
                                        args.t_red)
        return dirac.chi_components(inp, "quadrature")

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(one, xs))
    cols = ("chi_LP", "chi_P", "chi_sp", "chi_g", "chi_MD", "chi_total")
    lines = ["x," + ",".join(cols)]
    for x, res in zip(xs, results):
        lines.append(",".join([_fmt(x)] + [_fmt(res[c]) for c in cols]))
    csv_text = "\n".join(lines) + "\n"

    # asymptotic-limit sidecar (T = 0 table limits)
    pi2 = float(np.pi ** 2)
    hi = dirac.chi_components(
        dirac.SusceptibilityInput(1e3, args.lambda_prime), "analytic")
    lo = dirac.chi_components(
        dirac.SusceptibilityInput(1e-2, args.lambda_prime), "analytic")
    lp = args.lambda_prime
    chi_p_limit = (1 + lp) ** 2 / (4 * pi2)
    ratio_limit = -3.0 * (1 + lp) ** 2
    sidecar = _json_dump({
        "ultrarelativistic_chi_P": {
            "value": hi["chi_P"], "limit": chi_p_limit,
            "rel_error": abs(hi["chi_P"] - chi_p_limit) / abs(chi_p_limit),
        },
        "nonrelativistic_ratio_chi_P_over_chi_LP": {
            "value": lo["chi_P"] / lo["chi_LP"], "limit": ratio_limit,
            "rel_error": abs(lo["chi_P"] / lo["chi_LP"] - ratio_limit)
            / abs(ratio_limit),
        },
    })
    return csv_text, sidecar


def _cmd_grassmann_check(args) -> str:
    import numpy.linalg as la
    rng = np.random.default_rng(0)
    from .grassmann import (fermion_cs_resolution_check,
                            fermion_transition_check, gaussian_berezin)
    dets = []
    for n in (1, 2, 3):
        A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        dets.append(float(abs(gaussian_berezin(A) - la.det(A))))
    out = {
        "gaussian_vs_det_deviation": dets,
        "cs_resolution_deviation":
            [fermion_cs_resolution_check(n) for n in (1, 2)],
        "transition_deviation":
            [fermion_transition_check(n) for n in (1, 2)],
    }
    return _json_dump(out)


def _cmd_mag_translate(args) -> str:
    a = tuple(int(s) for s in args.a.split(","))
    if len(a) != 2:
        raise ValueError("--a needs two comma-separated integers")
    T = dirac.magnetic_translation(args.l, args.flux, a)
    loop = dirac.plaquette_loop(args.l, args.flux)
    from fractions import Fraction
    fl = Fraction(args.flux)
    phase = np.exp(2j * np.pi * fl.numerator / fl.denominator)
    out = {
        "L": args.l,
        "flux": str(fl),
        "a": list(a),
        "matrix": _matrix_out(T),
        "unitarity_residual":
            float(np.abs(T @ T.conj().T - np.eye(args.l ** 2)).max()),
        "plaquette_phase_residual":
            float(np.abs(loop - phase * np.eye(args.l ** 2)).max()),
    }
    return _json_dump(out)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="latticeweyl",
        description="phase-space toolkit batch front end")
    p.add_argument("--version", action="version",
                   version=f"latticeweyl {__version__} "
                           f"conventions {CONVENTION_HASH}")
    p.add_argument("--config", default=None,
                   help="JSON file whose keys mirror flags; flags win")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        sp = sub.add_parser(name, **kw)
        sp.add_argument("--out", default="-",
                        help="output path (default stdout)")
        return sp

    for name, helptext in (("wigner", "Wigner function of a lattice state"),
                           ("char", "characteristic function"),
                           ("smoothed", "Gaussian-smoothed distribution")):
        sp = add(name, help=helptext)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--state", default="q0")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        if name == "char":
            sp.add_argument("--ordering", default="weyl",
                            choices=("weyl", "normal", "antinormal"))
        if name == "smoothed":
            sp.add_argument("--sigma", type=float, default=0.5)

    sp = add("qudit", help="shift/clock algebra report")
    sp.add_argument("--n", type=int, required=True)

    sp = add("xx-chain", help="XX chain free-fermion solution")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--j", type=float, required=True)

    sp = add("bogoliubov", help="bosonic Bogoliubov diagonalization")
    sp.add_argument("--e", type=float, required=True)
    sp.add_argument("--g", type=float, required=True)
    sp.add_argument("--cutoff", type=int, default=30)

    sp = add("propagator", help="lattice path-integral propagator")
    sp.add_argument("--job", required=True,
                    help="JSON job {N, H, t, n, mode}")

    sp = add("partition", help="Matsubara partition-function trace")
    sp.add_argument("--job", required=True, help="JSON job {N, H}")
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--steps", type=int, default=256)

    sp = add("husimi", help="Husimi Q on a square grid")
    sp.add_argument("--cutoff", type=int, default=40)
    sp.add_argument("--state", default="coherent:1,0")
    sp.add_argument("--radius", type=float, default=2.0)
    sp.add_argument("--points", type=int, default=21)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = add("dirac-fw", help="Foldy-Wouthuysen rotation report")
    sp.add_argument("--k", required=True, help="kx,ky,kz")
    sp.add_argument("--m", type=float, default=1.0)

    sp = add("susceptibility", help="Dirac susceptibility sweep")
    sp.add_argument("--x-min", type=float, required=True)
    sp.add_argument("--x-max", type=float, required=True)
    sp.add_argument("--points", type=int, default=60)
    sp.add_argument("--lambda-prime", type=float, default=0.0)
    sp.add_argument("--t-red", type=float, default=0.0)

    add("grassmann-check", help="Berezin/fermion coherent-state identities")

    sp = add("mag-translate", help="magnetic translation operator")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--flux", required=True, help="rational p/q")
    sp.add_argument("--a", required=True, help="ax,ay")

    sp = sub.add_parser("selftest", help="run the invariant suite")
    sp.add_argument("--only", default="", help="name-prefix filter")
    sp.add_argument("--corrupt-omega", action="store_true",
                    help="fault injection: tamper the root-of-unity table")
    return p


_RUNNERS = {
    "wigner": _cmd_wigner,
    "char": _cmd_char,
    "smoothed": _cmd_smoothed,
    "qudit": _cmd_qudit,
    "xx-chain": _cmd_xx_chain,
    "bogoliubov": _cmd_bogoliubov,
    "propagator": _cmd_propagator,
    "partition": _cmd_partition,
    "husimi": _cmd_husimi,
    "dirac-fw": _cmd_dirac_fw,
    "grassmann-check": _cmd_grassmann_check,
    "mag-translate": _cmd_mag_translate,
}


def _apply_config(parser, argv):
    """Two-pass parse so --config seeds defaults and explicit flags win."""
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config", default=None)
    known, _ = probe.parse_known_args(argv)
    if known.config:
        with open(known.config) as fh:
            cfg = json.load(fh)
        clean = {key.replace("-", "_"): val for key, val in cfg.items()}
        for action in parser._subparsers._group_actions[0].choices.values():
            hits = {k: v for k, v in clean.items()
                    if any(a.dest == k for a in action._actions)}
            action.set_defaults(**hits)
            for a in action._actions:
                if a.dest in hits:
                    a.required = False
    return parser.parse_args(argv)


def _error_json(exc) -> str:
    return json.dumps({"error": type(exc).__name__, "message": str(exc)})


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = _apply_config(parser, argv)
    except (OSError, json.JSONDecodeError) as exc:
        print(_error_json(exc), file=sys.stderr)
        return 2

    try:
        if args.command == "selftest":
            n_failed, report = run_selftest(only=args.only,
                                            corrupt_omega=args.corrupt_omega)
            sys.stdout.write(report)
            return 0 if n_failed == 0 else 1
        if args.command == "susceptibility":
            csv_text, sidecar = _cmd_susceptibility(args)
            _atomic_write(args.out, csv_text)
            if args.out not in (None, "-"):
                _atomic_write(args.out + ".limits.json", sidecar)
            else:
                sys.stdout.write(sidecar)
            return 0
        text = _RUNNERS[args.command](args)
        _atomic_write(args.out, text)
        return 0
    except (QuadratureFailure, ConvergenceFailure) as exc:
        print(_error_json(exc), file=sys.stderr)
        return 3
    except (LatticeWeylError, ValueError, OSError,
            json.JSONDecodeError, KeyError) as exc:
        print(_error_json(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
