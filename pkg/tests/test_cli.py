import json

import numpy as np
import pytest

from latticeweyl.cli import CONVENTION_HASH, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_version_format(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    out = capsys.readouterr().out.strip()
    assert out == f"latticeweyl 0.1.0 conventions {CONVENTION_HASH}"
    assert len(CONVENTION_HASH) == 12


def test_wigner_position_state_csv(capsys, tmp_path):
    path = tmp_path / "w.csv"
    code, _, _ = run(capsys, "wigner", "--n", "7", "--state", "q0",
                     "--out", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "p,q,re,im"
    for line in lines[1:]:
        p, q, re, im = line.split(",")
        want = 1.0 / 7.0 if int(q) == 0 else 0.0
        assert abs(float(re) - want) < 1e-12 and abs(float(im)) < 1e-12


def test_deterministic_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "smoothed", "--n", "5", "--state", "p1", "--sigma", "0.3",
        "--out", str(a))
    run(capsys, "smoothed", "--n", "5", "--state", "p1", "--sigma", "0.3",
        "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_composite_modulus_exit_2(capsys):
    code, out, err = run(capsys, "wigner", "--n", "6")
    assert code == 2 and out == ""
    payload = json.loads(err.strip())
    assert payload["error"] == "CompositeModulus"


def test_validation_error_bad_state(capsys):
    code, _, err = run(capsys, "char", "--n", "5", "--state", "zz")
    assert code == 2
    assert json.loads(err.strip())["error"] == "ValueError"


def test_qudit_report(capsys):
    code, out, _ = run(capsys, "qudit", "--n", "5")
    assert code == 0
    rep = json.loads(out)
    for key in ("zx_weyl_relation", "x_order", "z_order",
                "dft_unitarity", "dft_conjugation"):
        assert rep[key] < 1e-12, key


def test_xx_chain_verified(capsys):
    code, out, _ = run(capsys, "xx-chain", "--l", "4", "--j", "1.0")
    assert code == 0
    rep = json.loads(out)
    assert rep["verified"] is True
    assert len(rep["single_particle"]) == 4


def test_bogoliubov_json(capsys):
    code, out, _ = run(capsys, "bogoliubov", "--e", "1.0", "--g", "0.3")
    assert code == 0
    rep = json.loads(out)
    assert rep["quasiparticle_gap"] == pytest.approx(np.sqrt(0.91))
    assert rep["spacing_error"] < 1e-6
    code, _, err = run(capsys, "bogoliubov", "--e", "1.0", "--g", "2.0")
    assert code == 2
    assert json.loads(err.strip())["error"] == "UnstablePairing"


def write_job(tmp_path, N=5, scale=0.3):
    rng = np.random.default_rng(91)
    A = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    H = scale * (A + A.conj().T) / 2
    spec = {"N": N, "t": 1.0, "n": 64,
            "H": [[z.real, z.imag] for z in H.ravel()]}
    path = tmp_path / "job.json"
    path.write_text(json.dumps(spec))
    return path


def test_propagator_job(capsys, tmp_path):
    job = write_job(tmp_path)
    code, out, _ = run(capsys, "propagator", "--job", str(job))
    assert code == 0
    rep = json.loads(out)
    assert rep["n"] == 64 and rep["error_vs_exact"] < 1e-2
    K = np.array([[complex(re, im) for re, im in row] for row in rep["K"]])
    assert K.shape == (5, 5)


def test_partition_job(capsys, tmp_path):
    job = write_job(tmp_path, scale=0.05)
    code, out, _ = run(capsys, "partition", "--job", str(job),
                       "--beta", "2.0", "--steps", "128")
    assert code == 0
    rep = json.loads(out)
    assert abs(rep["trace"][1]) < 1e-10
    assert rep["error"] < 1e-4


def test_husimi_csv(capsys, tmp_path):
    path = tmp_path / "h.csv"
    code, _, _ = run(capsys, "husimi", "--cutoff", "40",
                     "--state", "coherent:1,0", "--radius", "2",
                     "--points", "5", "--out", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "re_alpha,im_alpha,re,im"
    assert len(lines) == 1 + 25
    for line in lines[1:]:
        ra, ia, re, im = (float(s) for s in line.split(","))
        alpha = complex(ra, ia)
        want = np.exp(-abs(alpha - 1.0) ** 2) / np.pi
        assert abs(re - want) < 1e-8 and im == 0.0


def test_dirac_fw_report(capsys):
    code, out, _ = run(capsys, "dirac-fw", "--k", "0.3,0.1,-0.2")
    assert code == 0
    rep = json.loads(out)
    assert rep["even_form_residual"] < 1e-12
    assert rep["unitarity_residual"] < 1e-12
    assert rep["energy"] == pytest.approx(np.sqrt(1 + 0.09 + 0.01 + 0.04))


def test_susceptibility_sweep_and_sidecar(capsys, tmp_path):
    path = tmp_path / "chi.csv"
    code, _, _ = run(capsys, "susceptibility", "--x-min", "0.1",
                     "--x-max", "10", "--points", "5", "--out", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "x,chi_LP,chi_P,chi_sp,chi_g,chi_MD,chi_total"
    assert len(lines) == 6
    for line in lines[1:]:
        vals = [float(s) for s in line.split(",")]
        assert vals[1] < 0 < vals[2]  # LP diamagnetic, Pauli paramagnetic
        assert sum(vals[1:6]) == pytest.approx(vals[6], rel=1e-6)
    sidecar = json.loads((tmp_path / "chi.csv.limits.json").read_text())
    assert sidecar["ultrarelativistic_chi_P"]["rel_error"] < 1e-4
    assert sidecar["nonrelativistic_ratio_chi_P_over_chi_LP"][
        "rel_error"] < 1e-2


def test_grassmann_check(capsys):
    code, out, _ = run(capsys, "grassmann-check")
    assert code == 0
    rep = json.loads(out)
    assert max(rep["gaussian_vs_det_deviation"]) < 1e-12
    assert rep["cs_resolution_deviation"] == [0.0, 0.0]
    assert rep["transition_deviation"] == [0.0, 0.0]


def test_mag_translate(capsys):
    code, out, _ = run(capsys, "mag-translate", "--l", "4",
                       "--flux", "1/4", "--a", "1,0")
    assert code == 0
    rep = json.loads(out)
    assert rep["unitarity_residual"] < 1e-12
    assert rep["plaquette_phase_residual"] < 1e-12
    code, _, err = run(capsys, "mag-translate", "--l", "4",
                       "--flux", "1/3", "--a", "1,0")
    assert code == 2
    assert json.loads(err.strip())["error"] == "IncommensurateFlux"


def test_config_seeds_defaults_flags_win(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 5, "state": "q1"}))
    code, out5, _ = run(capsys, "--config", str(cfg), "qudit")
    assert code == 0 and json.loads(out5)["N"] == 5
    code, out3, _ = run(capsys, "--config", str(cfg), "qudit", "--n", "3")
    assert code == 0 and json.loads(out3)["N"] == 3
    code, _, err = run(capsys, "--config", str(tmp_path / "absent.json"),
                       "qudit", "--n", "3")
    assert code == 2


def test_selftest_filter_and_fault_injection(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "weyl.roots_of_unity")
    assert code == 0
    assert out.strip() == "PASS weyl.roots_of_unity"
    code, out, _ = run(capsys, "selftest", "--only", "weyl.roots_of_unity",
                       "--corrupt-omega")
    assert code == 1
    assert out.startswith("FAIL weyl.roots_of_unity")
