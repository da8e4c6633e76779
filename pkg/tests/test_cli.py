"""CLI: context loading, commands, JSON output, determinism, exit codes."""

import io
import json
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

from pinsep.cli import load_config, main

GOLDEN = Path(__file__).parent / "golden"

SAMPLE = """\
p: 2
variables: [X, Y, Z]
ambient_cap: 6
bindings:
  a1: "rt(X,2)"
  a2: "rt(X,2)*rt(Y,1)+rt(Z,1)"
fields:
  K: [a1, a2]
  L: ["rt(X,1)", "rt(Y,1)"]
families:
  diag:
    max_stage: 3
    template: ["rt(X,$n)", "rt(Y,$n)"]
"""


def run_cli(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    old_stdin = sys.stdin
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        with redirect_stdout(out), redirect_stderr(err):
            rc = main(list(argv))
    finally:
        sys.stdin = old_stdin
    return rc, out.getvalue(), err.getvalue()


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "ctx.yaml"
    path.write_text(SAMPLE)
    return str(path)


def test_load_config_sample():
    cfg = load_config(SAMPLE)
    assert cfg.ctx.p == 2
    assert set(cfg.fields) == {"K", "L"}
    assert cfg.families["diag"].stage(2).degree_log == 4


def test_config_family_with_explicit_schedule():
    text = SAMPLE + """\
  steps:
    max_stage: 2
    schedule:
      0: []
      1: ["rt(X,1)"]
      2: ["rt(X,2)", "a2"]
"""
    cfg = load_config(text)
    fam = cfg.families["steps"]
    assert fam.stage(1).degree_log == 1
    assert fam.stage(2).degree_log == 3   # k(X^(1/4), a2)
    with pytest.raises(Exception):
        fam.stage(3)                      # no stage 3 in the schedule


def test_config_errors():
    with pytest.raises(Exception):
        load_config("p: 2\n")           # missing variables
    bad = "p: 2\nvariables: [X]\nbindings:\n  X: 'rt(X,1)'\n"
    with pytest.raises(Exception):
        load_config(bad)                # name collision
    with pytest.raises(Exception):
        load_config("p: 9\nvariables: [X]\n")


def test_invariants_from_config(config_path):
    rc, out, err = run_cli("--context", config_path, "--json",
                           "invariants", "K")
    assert rc == 0, err
    rep = json.loads(out)
    assert rep["di"] == 2
    assert rep["exponents"] == [2, 1]
    assert rep["modular"]["verdict"] is False


def test_context_from_stdin():
    rc, out, _ = run_cli("--context", "-", "--json", "invariants", "L",
                         stdin=SAMPLE)
    assert rc == 0
    rep = json.loads(out)
    assert rep["degree_log"] == 2
    assert rep["equiexponential"]["verdict"] is True


def test_member_command(config_path):
    rc, out, _ = run_cli("--context", config_path, "member", "rt(X,1)", "K")
    assert rc == 0 and "True" in out
    rc, out, _ = run_cli("--context", config_path, "member", "rt(Y,1)", "K")
    assert rc == 0 and "False" in out


def test_truncate_command(config_path):
    rc, out, _ = run_cli("--context", config_path, "--json",
                         "truncate", "K", "--n", "1")
    rep = json.loads(out)
    assert rep["degree_log"] == 1


def test_intersect_and_compositum(config_path):
    rc, out, _ = run_cli("--context", config_path, "--json",
                         "intersect", "K", "L")
    assert json.loads(out)["degree_log"] == 1   # K ∩ L = k(X^(1/2))
    rc, out, _ = run_cli("--context", config_path, "--json",
                         "compositum", "K", "L")
    assert json.loads(out)["degree_log"] == 4


def test_family_stage_reference(config_path):
    rc, out, _ = run_cli("--context", config_path, "--json",
                         "invariants", "diag:2")
    assert json.loads(out)["degree_log"] == 4


def test_builtin_field_without_context():
    rc, out, _ = run_cli("--json", "modular", "nonmodular_basic")
    rep = json.loads(out)
    assert rep["verdict"] is False
    assert "not in K^(p^" in rep["witness"]["reason"]


def test_builtin_stage_reference():
    rc, out, _ = run_cli("--json", "invariants", "exe1:2")
    assert json.loads(out)["degree_log"] == 3


def test_family_claims_command():
    rc, out, _ = run_cli("family", "exe4", "claims", "--n", "3")
    assert rc == 0
    assert "PASS" in out and "FAIL" not in out


def test_family_invariants_command():
    rc, out, _ = run_cli("--json", "family", "modular_diag", "invariants",
                         "--params", "t=2,m=2")
    rep = json.loads(out)
    assert rep["modular"]["verdict"] is True


def test_family_invariants_with_embedded_utable():
    rc, out, _ = run_cli("--json", "family", "exe1", "invariants",
                         "--n", "3", "--horizon", "3")
    rep = json.loads(out)
    assert rep["utable"]["rows"][1] == [1, 1, 1]
    assert rep["utable"]["s_max"] == rep["di"]


def test_utable_command():
    rc, out, _ = run_cli("--json", "utable", "exe1", "--horizon", "3",
                         "--smax", "3", "--params", "n=3")
    rep = json.loads(out)
    assert rep["rows"][0] == [0, 0, 0]
    assert rep["rows"][1] == [1, 1, 1]


def test_parity_command():
    rc, out, _ = run_cli("--json", "parity", "5")
    rep = json.loads(out)
    assert (rep["lpi"], rep["lps"]) == (3, 4)


def test_oracle_flag(config_path):
    rc, out, _ = run_cli("--context", config_path, "--json", "--oracle",
                         "invariants", "K")
    rep = json.loads(out)
    assert rep["oracle"]["exponents_by_di"] == [2, 1, 0]


def test_determinism_byte_for_byte(config_path):
    runs = [run_cli("--context", config_path, "--json", "invariants", "K")
            for _ in range(2)]
    assert runs[0] == runs[1]
    runs = [run_cli("--json", "utable", "exe1", "--horizon", "3",
                    "--smax", "2") for _ in range(2)]
    assert runs[0] == runs[1]


def test_exit_codes(config_path, tmp_path):
    rc, _, err = run_cli("--context", config_path, "invariants", "NOPE")
    assert rc == 2 and "error[parse]" in err
    rc, _, err = run_cli("--context", config_path, "member", "rt(X,99)", "K")
    assert rc == 3 and "error[cap]" in err
    bad = tmp_path / "bad.yaml"
    bad.write_text("p: 2\nvariables: [X]\nfields:\n  F: ['rt(W,1)']\n")
    rc, _, err = run_cli("--context", str(bad), "invariants", "F")
    assert rc == 2
    rc, _, err = run_cli("--context", str(tmp_path / "missing.yaml"),
                         "parity", "3")
    assert rc == 2


def test_exe3_reference_is_explicit_error():
    rc, _, err = run_cli("family", "exe3", "claims")
    assert rc == 2
    assert "catalogued" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pinsep.cli", "parity", "7"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "lpi = 3" in proc.stdout


def test_family_survey_script():
    script = Path(__file__).parent.parent / "scripts" / "run_families.py"
    proc = subprocess.run([sys.executable, str(script)],
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr
    assert "FAIL" not in proc.stdout
    assert "all documented claims hold" in proc.stdout


@pytest.mark.parametrize("name,args", [
    ("invariants_nonmodular_basic.json",
     ["--json", "invariants", "nonmodular_basic"]),
    ("invariants_modular_diag.json",
     ["--json", "family", "modular_diag", "invariants"]),
    ("invariants_exe1_3.json", ["--json", "invariants", "exe1:3"]),
    ("invariants_exe2_3.json", ["--json", "invariants", "exe2:3"]),
    ("invariants_exe4_3.json", ["--json", "invariants", "exe4:3"]),
    ("invariants_exe6_2.json", ["--json", "invariants", "exe6:2"]),
    ("utable_exe1_h3.json",
     ["--json", "utable", "exe1", "--horizon", "3", "--smax", "3"]),
    ("utable_modular_diag_h3.json",
     ["--json", "utable", "modular_diag", "--horizon", "3", "--smax", "2"]),
    ("parity_5.json", ["--json", "parity", "5"]),
])
def test_golden_reports(name, args):
    """Built-in reports are byte-stable against the checked-in files."""
    rc, out, err = run_cli(*args)
    assert rc == 0, err
    expected = (GOLDEN / name).read_text()
    assert out == expected
