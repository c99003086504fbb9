"""Command-line behavior: reports, transforms, enumeration, exit codes,
golden record output."""

import subprocess
import sys

import pytest

from gemkit import format_gem, parse_gem
from gemkit.cli import main
from gemkit.library import q4, torus6


def run_cli(*argv, env=None):
    cmd = [sys.executable, "-m", "gemkit.cli", *argv]
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


@pytest.fixture
def q4_file(tmp_path):
    path = tmp_path / "q4.gem"
    path.write_text(format_gem(q4()), encoding="utf-8")
    return str(path)


@pytest.fixture
def t6_file(tmp_path):
    path = tmp_path / "t6.gem"
    path.write_text(format_gem(torus6()), encoding="utf-8")
    return str(path)


def test_validate(q4_file):
    result = run_cli("validate", q4_file)
    assert result.returncode == 0
    assert "ok n=4 order=4" in result.stdout


def test_validate_bad_file(tmp_path):
    bad = tmp_path / "bad.gem"
    bad.write_text("gem 1 4\n0: 1 0 3 2\n1: 0 1 3 2\n", encoding="utf-8")
    result = run_cli("validate", str(bad))
    assert result.returncode == 2
    assert "gemkit:" in result.stderr


def test_missing_file_is_input_error():
    result = run_cli("validate", "/nonexistent/x.gem")
    assert result.returncode == 2


def test_usage_error_exit_code():
    result = run_cli("analyze")  # missing positional
    assert result.returncode == 1


def test_analyze_q4_report(q4_file):
    result = run_cli("analyze", q4_file)
    assert result.returncode == 0
    for token in (
        "bipartite=true",
        "supercontracted=true",
        "chi_hatM=2",
        "omega_G_reduced=2",
    ):
        assert token in result.stdout


def test_analyze_records_sorted_and_stable(q4_file):
    r1 = run_cli("analyze", q4_file, "--format", "records")
    r2 = run_cli("analyze", q4_file, "--format", "records")
    assert r1.stdout == r2.stdout
    keys = [line.split("=", 1)[0] for line in r1.stdout.strip().splitlines()]
    assert keys == sorted(keys)


GOLDEN_Q4_RECORDS = """\
bipartite=true
boundary_components=0
chi_M=2
chi_hatM=2
chi_singular=0
closed=true
h1=0
n=4
omega_G=6
omega_G_reduced=2
order=4
rho_G=1
singular_dimension=empty
singular_manifold=true
supercontracted=true
"""


def test_analyze_golden_records(q4_file):
    result = run_cli("analyze", q4_file, "--format", "records")
    assert result.returncode == 0
    assert result.stdout == GOLDEN_Q4_RECORDS


def test_transform_double_suspension_analysis(t6_file, tmp_path):
    out = tmp_path / "ftb.gem"
    result = run_cli("transform", "--suspend", "1", "--suspend", "2", t6_file, "-o", str(out))
    assert result.returncode == 0
    g = parse_gem(out.read_text(encoding="utf-8"))
    assert g.n == 4 and g.order == 6

    analysis = run_cli("analyze", str(out), "--format", "records")
    assert "boundary_components=1" in analysis.stdout
    assert "h1=Z+Z" in analysis.stdout


def test_transform_inflate_seed_reproducible(q4_file):
    a = run_cli("transform", "--inflate", "3", "--seed", "7", q4_file)
    b = run_cli("transform", "--inflate", "3", "--seed", "7", q4_file)
    c = run_cli("transform", "--inflate", "3", "--seed", "8", q4_file)
    assert a.stdout == b.stdout
    assert a.stdout != c.stdout


def test_transform_simplify(q4_file):
    result = run_cli("transform", "--simplify", q4_file)
    assert result.returncode == 0
    g = parse_gem(result.stdout)
    assert g.order == 2


def test_gdegree_records(q4_file):
    result = run_cli("gdegree", q4_file, "--format", "records")
    assert result.returncode == 0
    assert "omega_G=6" in result.stdout
    assert "check_subdegree=true" in result.stdout


def test_group_output(q4_file):
    result = run_cli("group", q4_file, "--color", "0", "--target", "m")
    assert result.returncode == 0
    assert result.stdout.startswith("gen g0")
    assert "h1=0" in result.stdout


def test_group_hypothesis_violation_exit_code(t6_file, tmp_path):
    out = tmp_path / "ftb.gem"
    run_cli("transform", "--suspend", "1", "--suspend", "2", t6_file, "-o", str(out))
    result = run_cli("group", str(out), "--color", "1", "--target", "m")
    assert result.returncode == 3
    assert "unresolved" in result.stderr


def test_classify(q4_file):
    result = run_cli("classify", q4_file)
    assert result.stdout.strip() == "S4"


def test_enumerate_footer_counts():
    result = run_cli(
        "enumerate", "--n", "4", "--order", "4", "--supercontracted",
        "--eq", "color-permuting",
    )
    assert result.returncode == 0
    assert "# count=3 bipartite=1 nonbipartite=2" in result.stdout


def test_enumerate_order6_supercontracted_footer():
    result = run_cli(
        "enumerate", "--n", "4", "--order", "6", "--supercontracted",
        "--eq", "color-permuting",
    )
    assert result.returncode == 0
    assert "count=39" in result.stdout
    assert "bipartite=8" in result.stdout
    assert "nonbipartite=31" in result.stdout


def test_enumerate_budget_exit_code():
    result = run_cli("enumerate", "--n", "4", "--order", "12")
    assert result.returncode == 4


def test_enumerate_report_round_trip(tmp_path):
    cat_file = tmp_path / "o4.cat"
    run_cli("enumerate", "--n", "4", "--order", "4", "--supercontracted",
            "-o", str(cat_file))
    result = run_cli("report", str(cat_file))
    assert result.returncode == 0
    assert "identities: all hold" in result.stdout
    assert "name=S4" in result.stdout


def test_export_dot(q4_file):
    result = run_cli("export-dot", q4_file)
    assert result.returncode == 0
    assert result.stdout.startswith("graph gem {")
    assert result.stdout.rstrip().endswith("}")


def test_threads_env_rejected_when_invalid(q4_file):
    import os

    env = dict(os.environ, GEMKIT_THREADS="banana")
    result = run_cli("validate", q4_file, env=env)
    assert result.returncode == 2


def test_main_callable_in_process(q4_file, capsys):
    assert main(["classify", q4_file]) == 0
    assert capsys.readouterr().out.strip() == "S4"
