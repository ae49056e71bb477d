import subprocess
import sys

import pytest

from nongauss import cli, lemmas


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def kv(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines())


def test_delta_single_photon(capsys):
    code, out, _ = run(["delta", "--kind", "fock", "--n", "1"], capsys)
    assert code == 0
    fields = kv(out)
    assert fields["delta"] == "1.386294"
    assert set(fields) == {"delta", "s_tau", "s_rho", "dim_used", "tail_mass", "nus"}


def test_delta_in_bits(capsys):
    _, out, _ = run(["delta", "--kind", "fock", "--n", "1", "--bits"], capsys)
    assert kv(out)["delta"] == "2.000000"


def test_delta_coherent_is_zero(capsys):
    _, out, _ = run(["delta", "--kind", "coherent", "--alpha", "1+0.5j"], capsys)
    assert kv(out)["delta"] == "0.000000"


def test_validation_error_exit_code(capsys):
    code, _, err = run(["delta", "--kind", "maxnong", "--levels", "0,1", "--amps", "1,1"], capsys)
    assert code == cli.EXIT_VALIDATION and "spacing" in err


def test_truncation_exit_code(capsys):
    code, _, err = run(["delta", "--kind", "coherent", "--alpha", "100"], capsys)
    assert code == cli.EXIT_NUMERICAL and "analytic" in err


def test_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--suite", "nope"])
    assert exc.value.code == cli.EXIT_VALIDATION


def test_verify_prints_lines(capsys):
    code, out, _ = run(["verify", "--suite", "L4", "--samples", "5"], capsys)
    assert code == 0
    assert all(line.startswith(("PASS", "1/1", "2/2")) for line in out.strip().splitlines())


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(lemmas, "run_suite", lambda *a: [lemmas.PropertyResult("x", 0, 1, 1.0)])
    code, out, _ = run(["verify", "--suite", "L1"], capsys)
    assert code == cli.EXIT_SUITE and out.startswith("FAIL x")


def test_witness(capsys):
    _, out, _ = run(["witness", "--kind", "twin-beam", "--lam", "0.5"], capsys)
    fields = kv(out)
    assert fields["verdict"] == "Entangled"
    assert float(fields["s_a_given_b"]) == pytest.approx(-0.749780, abs=1e-6)


def test_witness_needs_two_modes(capsys):
    code, _, _ = run(["witness", "--kind", "fock", "--n", "1"], capsys)
    assert code == cli.EXIT_VALIDATION


def test_holevo_thermal_encoding(capsys):
    _, out, _ = run(["holevo", "--thermal-encoding", "1"], capsys)
    assert kv(out)["chi"] == "1.386294361"


def test_holevo_members(capsys):
    code, out, _ = run(["holevo", "--member", "0.5:fock:0", "--member", "0.5:fock:3"], capsys)
    assert code == 0 and kv(out)["chi"] == "0.693147181"
    code, _, _ = run(["holevo", "--member", "1:banana:1"], capsys)
    assert code == cli.EXIT_VALIDATION


def test_gaussify_csv(capsys):
    _, out, _ = run(["gaussify", "--lambdas", "0,0.5", "--steps", "0,1"], capsys)
    lines = out.strip().splitlines()
    assert lines[0] == "lambda,step,delta"
    assert lines[1] == "0.000000000e+00,0,0.000000000e+00"
    assert len(lines) == 5


def test_gaussify_failed_cells_are_empty(capsys):
    code, out, err = run(["gaussify", "--lambdas", "1", "--steps", "0,20"], capsys)
    assert code == 0
    # step 0 certifies, step 20 at lambda=1 exceeds the dimension cap
    assert out.strip().splitlines()[1:] == ["1.000000000e+00,0,1.587890808e+00", "1.000000000e+00,20,"]
    assert "warning: 1 rows" in err


def test_kerr_csv(capsys):
    _, out, _ = run(["kerr", "--gammas", "0.1", "--nbar", "1,1e6"], capsys)
    lines = out.strip().splitlines()
    assert lines[0] == "nbar,gamma,delta,delta_max"
    assert len(lines) == 3 and all(cell for cell in lines[2].split(","))


def test_kerr_default_grid():
    grid = cli.log_grid(0.1, 1e9, 10)
    assert len(grid) == 101 and grid[0] == pytest.approx(0.1) and grid[-1] == pytest.approx(1e9)


def test_parallel_sweep_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(["gaussify", "--lambdas", "0:1:11", "--out", str(a)]) == 0
    assert cli.main(["gaussify", "--lambdas", "0:1:11", "--out", str(b), "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_channel_nong(capsys):
    code, out, _ = run(["channel-nong", "--channel", "identity", "--nmax", "1", "--energies", "1"], capsys)
    assert code == 0 and abs(float(kv(out)["lower_bound"])) < 1e-8


def test_channel_nong_requires_nmax(capsys):
    with pytest.raises(SystemExit):
        cli.main(["channel-nong", "--channel", "kerr"])


@pytest.mark.parametrize("cmd", ["gaussify", "kerr", "verify", "holevo", "channel-nong"])
def test_help_states_defaults(cmd, capsys):
    with pytest.raises(SystemExit):
        cli.main([cmd, "--help"])
    assert "default" in capsys.readouterr().out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nongauss.cli", "delta", "--kind", "thermal", "--nth", "1"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert "delta=0.000000" in proc.stdout
