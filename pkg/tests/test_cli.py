"""End-to-end tests of the command line interface via subprocess."""

import json
import math
import os
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

CLI = [sys.executable, "-m", "parafock.cli"]


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, env=env, timeout=300
    )


def load_schema():
    path = resources.files("parafock") / "schemas" / "output.schema.json"
    return json.loads(path.read_text())


def test_basis_csv_exact():
    proc = run_cli("basis", "--p", "3", "--cutoff", "1")
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert lines[0] == "m12,m22,m11,w1,w2,index"
    data = [ln for ln in lines[1:] if not ln.startswith("#")]
    assert data == [
        "0,0,0,1.5,1.5,0",
        "1,0,0,1.5,2.5,1",
        "1,0,1,2.5,1.5,2",
        "1,1,1,2.5,2.5,3",
    ]
    assert "# patterns=4" in lines


def test_json_output_validates_against_the_shipped_schema():
    schema = load_schema()
    for args in (
        ("basis", "--p", "3", "--cutoff", "1"),
        ("zeromodes", "--p", "2.5", "--j", "1", "--k", "2"),
        ("bessel", "--kind", "k", "--nu", "0.5", "--x", "2"),
        ("coherent", "--p", "2.5", "--j", "0", "--k", "1", "--alpha", "0.9,0.3"),
    ):
        proc = run_cli(*args, "--format", "json")
        assert proc.returncode == 0, args
        payload = json.loads(proc.stdout)
        jsonschema.validate(payload, schema)
        assert payload["meta"]["subcommand"] == args[0]


def test_op_matrix_lists_the_vacuum_column():
    proc = run_cli("op-matrix", "--gen", "b1+", "--p", "3", "--cutoff", "1")
    assert proc.returncode == 0
    assert "2,0,1.7320508075688772,0" in proc.stdout.splitlines()
    assert "# clipped_columns=3" in proc.stdout.splitlines()


def test_verify_triple_passes_and_rejects_small_cutoffs():
    ok = run_cli("verify-triple", "--p", "2.5", "--cutoff", "4")
    assert ok.returncode == 0
    assert "# passed=true" in ok.stdout.splitlines()
    bad = run_cli("verify-triple", "--p", "2.5", "--cutoff", "2")
    assert bad.returncode == 2
    assert bad.stderr.startswith("parafock: error:")


def test_zeromodes_values_and_rejection():
    proc = run_cli("zeromodes", "--p", "3", "--j", "1", "--k", "1")
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert lines[1] == "0,0.57735026918962573"
    assert lines[2] == "1,0.81649658092772592"
    assert "# kernel_dim=1" in lines
    bad = run_cli("zeromodes", "--p", "3", "--j", "2", "--k", "1")
    assert bad.returncode == 2


def test_coherent_cat_projection_zeroes_odd_rungs():
    proc = run_cli(
        "coherent", "--p", "2.5", "--j", "0", "--k", "1",
        "--alpha", "1.2,0.4", "--nmax", "6", "--cat", "+",
    )
    assert proc.returncode == 0
    rows = [ln.split(",") for ln in proc.stdout.splitlines()[1:] if not ln.startswith("#")]
    assert len(rows) == 7
    for n, re, im in rows:
        if int(n) % 2 == 1:
            assert re == "0" and im == "0"
    assert "# norm_squared=1" in proc.stdout.splitlines()


def test_bessel_value_and_validation():
    proc = run_cli("bessel", "--kind", "k", "--nu", "0.5", "--x", "2")
    assert proc.returncode == 0
    value = float(proc.stdout.splitlines()[1].split(",")[0])
    assert value == pytest.approx(
        math.sqrt(math.pi / 4.0) * math.exp(-2.0), rel=1e-15
    )
    bad = run_cli("bessel", "--kind", "i", "--nu", "-1.2", "--x", "2")
    assert bad.returncode == 2
    zero_x = run_cli("bessel", "--kind", "k", "--nu", "0.5", "--x", "0")
    assert zero_x.returncode == 2


def test_b2_elements_deviations_are_tiny():
    proc = run_cli(
        "b2-elements", "--p", "2.5", "--j", "1", "--k", "2",
        "--alpha", "0.7,0.2", "--alpha-prime", "0.3,-0.5",
    )
    assert proc.returncode == 0
    for line in proc.stdout.splitlines()[1:]:
        if line.startswith("#"):
            continue
        abs_dev = float(line.split(",")[-1])
        assert abs_dev <= 1e-10


def test_bicoherent_reports_the_residual_quantities():
    proc = run_cli(
        "bicoherent", "--p", "2.5", "--j", "0", "--l", "1",
        "--alpha", "0.5,0", "--beta", "0.5,0",
    )
    assert proc.returncode == 0
    names = [
        ln.split(",")[0] for ln in proc.stdout.splitlines()[1:] if not ln.startswith("#")
    ]
    assert names == [
        "eigen_residual_b1",
        "eigen_residual_b2sq",
        "ladder_tail_bound",
        "ladder_rungs",
        "component_count",
    ]


def test_moments_row_count_and_errors():
    proc = run_cli("moments", "--p", "2.5", "--j", "1", "--kind", "I", "--nmax", "2")
    assert proc.returncode == 0
    rows = [ln for ln in proc.stdout.splitlines()[1:] if not ln.startswith("#")]
    assert len(rows) == 3
    for line in rows:
        assert float(line.split(",")[-1]) <= 1e-8


def test_resolution_exit_codes():
    ok = run_cli(
        "resolution", "--p", "2.5", "--j", "0", "--ncheck", "10", "--tol", "1e-6"
    )
    assert ok.returncode == 0
    rows = [ln for ln in ok.stdout.splitlines()[1:] if not ln.startswith("#")]
    assert len(rows) == 121
    strict = run_cli(
        "resolution", "--p", "2.5", "--j", "0", "--ncheck", "10", "--tol", "1e-30"
    )
    assert strict.returncode == 1


def test_verify_all_with_restricted_grid():
    proc = run_cli("verify-all", "--p", "2.5", "--cutoff", "8")
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert "# all_passed=true" in lines
    data = [ln for ln in lines[1:] if not ln.startswith("#")]
    assert len(data) == 10


def test_usage_failures_exit_2():
    for args in (
        ("basis", "--p", "3", "--cutoff", "1", "--bogus"),
        ("no-such-command",),
        ("zeromodes", "--p", "3", "--j", "1"),
        ("coherent", "--p", "2.5", "--j", "0", "--k", "1", "--alpha", "zzz"),
        ("basis", "--p", "0.5", "--cutoff", "2"),
    ):
        proc = run_cli(*args)
        assert proc.returncode == 2, args
        assert proc.stdout == ""
        assert "usage" in proc.stderr or proc.stderr.startswith("parafock: error:")


def test_threads_env_is_validated():
    fine = run_cli("basis", "--p", "3", "--cutoff", "1", env_extra={"PARAFOCK_THREADS": "4"})
    assert fine.returncode == 0
    for bad_value in ("abc", "0", "-2"):
        bad = run_cli(
            "basis", "--p", "3", "--cutoff", "1",
            env_extra={"PARAFOCK_THREADS": bad_value},
        )
        assert bad.returncode == 2, bad_value


def test_repeat_runs_are_byte_identical():
    args = ("resolution", "--p", "2.5", "--j", "1", "--ncheck", "6", "--format", "json")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout


def test_output_flag_writes_the_file(tmp_path):
    target = tmp_path / "basis.csv"
    proc = run_cli("basis", "--p", "3", "--cutoff", "1", "--output", str(target))
    assert proc.returncode == 0
    assert proc.stdout == ""
    content = target.read_text()
    assert content.splitlines()[0] == "m12,m22,m11,w1,w2,index"


def test_version_flag():
    proc = run_cli("--version")
    assert proc.returncode == 0
    assert "parafock" in proc.stdout
