import io
import subprocess
import sys

import pytest

from quivercount.cli import (
    InstanceParseError,
    InstanceSpec,
    main,
    parse_instance,
    render_instance,
)
from quivercount.quiver import Quiver

THETA4_TEXT = (
    "vertices 2\n"
    "arrow 0 1\narrow 0 1\narrow 0 1\narrow 0 1\n"
    "alpha 3 3\n"
    "beta 1 2\n"
)
A2_MU_TEXT = "vertices 2\narrow 0 1\nalpha 2 2\nbeta 1 1\nmu 0:(1)\n"


def run_cli(argv, stdin_text=None):
    """Drive main() with captured stdout/stderr; returns (code, out, err)."""
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdout, sys.stderr, sys.stdin
    sys.stdout, sys.stderr = out, err
    if stdin_text is not None:
        sys.stdin = io.StringIO(stdin_text)
    try:
        code = main(argv)
    finally:
        sys.stdout, sys.stderr, sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def machine_block(text):
    """key=value pairs after the --- separator, elapsed_ms dropped since it
    varies run to run."""
    lines = text.splitlines()
    sep = lines.index("---")
    pairs = []
    for line in lines[sep + 1 :]:
        key, _, value = line.partition(" = ")
        if key != "elapsed_ms":
            pairs.append((key, value))
    return pairs


@pytest.fixture()
def theta4_file(tmp_path):
    path = tmp_path / "theta4.qc"
    path.write_text(THETA4_TEXT)
    return str(path)


@pytest.fixture()
def a2_mu_file(tmp_path):
    path = tmp_path / "a2mu.qc"
    path.write_text(A2_MU_TEXT)
    return str(path)


# -- instance grammar ----------------------------------------------------------


def test_parse_instance_basic():
    spec = parse_instance(THETA4_TEXT)
    assert spec.quiver == Quiver(2, ((0, 1),) * 4)
    assert spec.alpha == (3, 3)
    assert spec.beta == (1, 2)
    assert spec.mu is None


def test_parse_instance_comments_and_blanks():
    spec = parse_instance(
        "# two-vertex quiver\nvertices 2\n\narrow 0 1  # the only arrow\n"
        "alpha 2 2\nbeta 1 1\n"
    )
    assert spec.quiver.arrows == ((0, 1),)


def test_parse_instance_mu_defaults_missing_vertices_to_empty():
    spec = parse_instance(A2_MU_TEXT)
    assert spec.mu == ((1,), ())


def test_render_parse_round_trip():
    specs = [
        parse_instance(THETA4_TEXT),
        parse_instance(A2_MU_TEXT),
        InstanceSpec(Quiver(3, ((0, 1), (0, 2))), (2, 1, 3), (1, 0, 2), None),
        InstanceSpec(Quiver(1, ()), (4,), (2,), ((3, 1),)),
    ]
    for spec in specs:
        text = render_instance(spec)
        assert parse_instance(text) == spec
        assert render_instance(parse_instance(text)) == text


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("arrow 0 1\nalpha 1 1\nbeta 0 0\n", "vertices"),
        ("vertices 2\narrow 0 1\nbeta 0 0\n", "alpha"),
        ("vertices 2\nfrobnicate 1\nalpha 1 1\nbeta 0 0\n", "line 2"),
        ("vertices 2\narrow 0 5\nalpha 1 1\nbeta 0 0\n", ""),
        ("vertices 2\narrow 0 1\nalpha 1 1 1\nbeta 0 0\n", "2 entries"),
        ("vertices 2\narrow 0 1\nalpha 1 1\nbeta 0 0\nmu 7:(1)\n", "out of range"),
        (
            "vertices 2\narrow 0 1\nalpha 1 1\nbeta 0 0\nmu 0:(1)\nmu 0:(2)\n",
            "duplicate",
        ),
        ("vertices 2\narrow 0 1\nalpha 1 1\nbeta 0 0\nmu 0:1,2\n", ""),
    ],
)
def test_parse_instance_errors(text, fragment):
    with pytest.raises(InstanceParseError) as ei:
        parse_instance(text)
    assert fragment in str(ei.value)


# -- count / sidim / fiber-class -----------------------------------------------


def test_count_golden(theta4_file):
    code, out, err = run_cli(["count", theta4_file])
    assert code == 0 and err == ""
    assert out.splitlines()[0] == "N = 6"
    assert machine_block(out) == [
        ("command", "count"),
        ("n", "6"),
        ("euler", "0"),
        ("labelings", "6"),
        ("seed", "0"),
        ("version", "quivercount 0.1.0"),
    ]


def test_count_breakdown_lists_unit_contributions(theta4_file):
    code, out, _ = run_cli(["count", theta4_file, "--breakdown"])
    assert code == 0
    rows = [l for l in out.splitlines() if l.startswith("  ") and ":" in l]
    assert len(rows) == 6
    assert all(r.endswith(": 1") for r in rows)
    assert "  (1) (1) () (): 1" in rows


def test_count_from_stdin():
    code, out, _ = run_cli(["count", "-"], stdin_text=THETA4_TEXT)
    assert code == 0
    assert out.splitlines()[0] == "N = 6"


def test_sidim_golden(theta4_file):
    code, out, _ = run_cli(["sidim", theta4_file])
    assert code == 0
    assert out.splitlines()[0] == "M = 6, sigma = (1,-2)"
    assert ("m", "6") in machine_block(out)
    assert ("labelings", "6") in machine_block(out)


def test_fiber_class_golden(theta4_file):
    code, out, _ = run_cli(["fiber-class", theta4_file])
    assert code == 0
    assert out.splitlines()[0] == "0:();1:() -> 6"
    assert ("terms", "1") in machine_block(out)


def test_fiber_class_positive_pairing(tmp_path):
    path = tmp_path / "a2.qc"
    path.write_text("vertices 2\narrow 0 1\nalpha 2 2\nbeta 1 1\n")
    code, out, _ = run_cli(["fiber-class", str(path)])
    assert code == 0
    body = [l for l in out.splitlines() if "->" in l and "=" not in l]
    assert sorted(body) == ["0:();1:(1) -> 1", "0:(1);1:() -> 1"]


# -- mu consumption ------------------------------------------------------------


def test_count_with_mu_reports_original_pairing(a2_mu_file):
    code, out, _ = run_cli(["count", a2_mu_file])
    assert code == 0
    assert out.splitlines()[0] == "N = 1"
    block = dict(machine_block(out))
    assert block["n"] == "1"
    assert block["euler"] == "1"


def test_sidim_with_mu_drops_labelings(a2_mu_file):
    code, out, _ = run_cli(["sidim", a2_mu_file])
    assert code == 0
    assert out.splitlines()[0] == "M = 1, sigma = (1,0)"
    assert "labelings" not in dict(machine_block(out))


def test_verify_single_instance_with_mu(a2_mu_file):
    code, out, _ = run_cli(["verify", a2_mu_file])
    assert code == 0
    assert "suite instance-covariant:" in out
    assert "fiber=1" in out
    assert ("failures", "0") in machine_block(out)


# -- verify --------------------------------------------------------------------


def test_verify_single_instance(theta4_file):
    code, out, _ = run_cli(["verify", theta4_file])
    assert code == 0
    assert "suite instance:" in out
    assert "N=6 M=6" in out


def test_verify_kronecker_suite():
    code, out, _ = run_cli(["verify", "--kronecker"])
    assert code == 0
    for n, binom in (("2", "2"), ("4", "6"), ("6", "20"), ("8", "70")):
        assert f"theta({n})" in out and f"binom={binom}" in out
    assert "FAIL" not in out


def test_verify_random_suite_seeded():
    code, out, _ = run_cli(["verify", "--random", "6", "--seed", "5"])
    assert code == 0
    assert ("instances", "6") in machine_block(out)
    assert "FAIL" not in out


def test_verify_tripleflag_suite_small():
    code, out, _ = run_cli(["verify", "--tripleflag", "--n", "3", "--r", "1"])
    assert code == 0
    assert "FAIL" not in out


def test_verify_covariants_and_multiplicativity():
    code, out, _ = run_cli(
        ["verify", "--covariants", "--multiplicativity", "--count", "6"]
    )
    assert code == 0
    block = dict(machine_block(out))
    assert block["suites"] == "covariants,multiplicativity"
    assert block["failures"] == "0"


def test_verify_jobs_do_not_change_output():
    argv = ["verify", "--kronecker", "--covariants", "--count", "8"]
    _, out1, _ = run_cli(argv + ["--jobs", "1"])
    _, out3, _ = run_cli(argv + ["--jobs", "3"])
    strip = lambda text: [
        l for l in text.splitlines() if not l.startswith("elapsed_ms")
    ]
    assert strip(out1) == strip(out3)


def test_verify_failure_exits_one_and_prints_instance(theta4_file):
    # sampling theta(4) capped at quadratic extensions genuinely undercounts,
    # so this is a real failing verification, not a synthetic one
    code, out, _ = run_cli(
        ["verify", theta4_file, "--oracles", "--q", "101", "--ext", "2",
         "--trials", "10"]
    )
    assert code == 1
    assert "FAIL" in out
    assert "offending instance:" in out
    assert "beta 1 2" in out
    assert ("failures", "1") in machine_block(out)


# -- exit codes ----------------------------------------------------------------


def test_exit_usage_on_nonzero_pairing(tmp_path):
    path = tmp_path / "a2.qc"
    path.write_text("vertices 2\narrow 0 1\nalpha 2 2\nbeta 1 1\n")
    code, _, err = run_cli(["count", str(path)])
    assert code == 2
    assert "nonzero Euler pairing" in err


def test_exit_usage_on_negative_pairing(tmp_path):
    path = tmp_path / "t3.qc"
    path.write_text(
        "vertices 2\narrow 0 1\narrow 0 1\narrow 0 1\nalpha 2 2\nbeta 1 1\n"
    )
    code, _, err = run_cli(["count", str(path)])
    assert code == 2
    assert "negative Euler pairing" in err


def test_exit_usage_on_parse_error(tmp_path):
    path = tmp_path / "bad.qc"
    path.write_text("vertices 2\nfrobnicate 1\nalpha 1 1\nbeta 0 0\n")
    code, _, err = run_cli(["count", str(path)])
    assert code == 2
    assert "parse error" in err


def test_exit_usage_on_missing_file():
    code, _, err = run_cli(["count", "/nonexistent/instance.qc"])
    assert code == 2


def test_exit_usage_when_no_suite_selected():
    code, _, err = run_cli(["verify"])
    assert code == 2
    assert "no suite selected" in err


def test_exit_budget_when_enumeration_starved(tmp_path):
    path = tmp_path / "big.qc"
    path.write_text("vertices 2\narrow 0 1\narrow 0 1\nalpha 4 4\nbeta 2 2\n")
    code, _, err = run_cli(
        ["verify", str(path), "--oracles", "--q", "5", "--ext", "1",
         "--trials", "2", "--oracle-budget", "100"]
    )
    assert code == 3
    assert "budget" in err


def test_version_and_help_exit_zero():
    assert run_cli(["--help"])[0] == 0
    code, out, err = run_cli(["--version"])
    assert code == 0
    assert "quivercount" in out + err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quivercount.cli", "count", "-"],
        input=THETA4_TEXT,
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "N = 6"
