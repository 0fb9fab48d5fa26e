"""Golden-file tests for the command line.  Set MOTIVICA_REGEN=1 to rewrite the goldens."""
import io
import os
import subprocess
import sys
from pathlib import Path

import pytest

from motivica.cli import run
from motivica.serialize import from_json

DATA = Path(__file__).parent / "data"
INPUTS = DATA / "inputs"
GOLDEN = DATA / "golden"

CASES = {
    "topzeta_cuspA_local": ["topzeta", "--fixture", "cuspA", "--mode", "local"],
    "topzeta_cuspB_global": ["topzeta", "--fixture", "cuspB"],
    "zeta_xy_plane": ["zeta", "--fixture", "xy_plane"],
    "zeta_cusp_file": ["zeta", "--input", "{in}/cusp.json", "--mode", "local"],
    "nearby_cuspA": ["nearby", "--fixture", "cuspA"],
    "nearby_x3_motivic": ["nearby", "--fixture", "xN(3)", "--motivic", "--format", "json"],
    "vanishing_node": ["vanishing", "--fixture", "node"],
    "vanishing_cuspA_latex": ["vanishing", "--fixture", "cuspA", "--format", "latex"],
    "spectrum_cuspA": ["spectrum", "--fixture", "cuspA"],
    "igusa_x": ["igusa", "--fixture", "xN(1)"],
    "igusa_x2": ["igusa", "--fixture", "xN(2)"],
    "igusa_cusp_q5": ["igusa", "--fixture", "cuspA", "--q", "5"],
    "dlzeta_x": ["dlzeta", "--fixture", "xN(1)"],
    "monodromy_cuspB": ["monodromy", "--fixture", "cuspB"],
    "acampo_cuspA": ["acampo", "--fixture", "cuspA"],
    "acampo_cuspA_n6": ["acampo", "--fixture", "cuspA", "--n", "6"],
    "pushforward_cuspA_closed": ["pushforward", "--fixture", "cuspA", "--closed"],
    "pushforward_cuspA_local": ["pushforward", "--fixture", "cuspA", "--mode", "local", "--format", "json"],
    "convolve_x2_y2": ["convolve", "--fixture", "xN(2)", "--with", "xN(2)", "--order", "4"],
    "convolve_reduced_infinity": ["convolve", "--fixture", "xN(2)", "--with", "xN(3)", "--reduced", "--at-infinity"],
    "convolve_series": ["convolve", "--series", "{1/2: 1}*F(1,2)", "--with-series", "{1/3: 1, 2/3: 1}*F(1,3)",
                        "--at-infinity"],
    "mckay_a1": ["mckay", "--group", "{in}/a1.json", "--input", "{in}/an1.json"],
    "mckay_third": ["mckay", "--group", '{"m": 3, "dim": 2, "generators": [[1, 1]]}', "--fixture", "third_11",
                    "--format", "json"],
    "kapranov_genus2": ["kapranov", "--genus", "2", "--order", "6"],
    "kapranov_p1": ["kapranov", "--epoly", "1+uv", "--order", "4"],
    "validate_node": ["validate", "--fixture", "node"],
    "fixtures_list": ["fixtures"],
    "fixtures_x2": ["fixtures", "--fixture", "xN(2)"],
    "batch_topzeta": ["topzeta", "--input", "{in}/batch", "--mode", "local"],
}

EXIT = {"batch_topzeta": 1}


def _argv(args):
    return [a.replace("{in}", str(INPUTS)) for a in args]


def _run(args):
    out, err = io.StringIO(), io.StringIO()
    code = run(_argv(args), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, out, err = _run(CASES[name])
    assert code == EXIT.get(name, 0), err
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("MOTIVICA_REGEN"):
        path.write_text(out)
    assert out == path.read_text()


@pytest.mark.parametrize("name", sorted(CASES))
def test_deterministic(name):
    assert _run(CASES[name]) == _run(CASES[name])


@pytest.mark.parametrize("name", [n for n in sorted(CASES) if "--format" not in CASES[n] and "batch" not in n])
def test_json_round_trip(name):
    args = CASES[name] + ["--format", "json"]
    code, out, _ = _run(args)
    assert code == 0
    value = from_json(out)
    code, again, _ = _run(args)
    assert from_json(again) == value


def test_validate_broken_aggregates():
    code, out, err = _run(["validate", "--input", "{in}/broken.json"])
    assert code == 1
    assert out == ""
    assert err.startswith("ValidationError: 4 problems")
    assert err.count("\n  - ") == 4


def test_batch_reports_per_file():
    code, out, err = _run(CASES["batch_topzeta"])
    assert out.index("== 01_x3.json ==") < out.index("== 02_cusp.json ==") < out.index("== 03_bad.json ==")
    assert err == "03_bad.json: SchemaError: document: missing field 'components'\n"


@pytest.mark.parametrize("args,code,err", [
    (["topzeta"], 1, "InputError"),
    (["topzeta", "--fixture", "E8"], 1, "UnknownFixture"),
    (["igusa", "--fixture", "node"], 2, "MissingCounts"),
    (["monodromy", "--fixture", "xy_plane"], 2, "Unsupported"),
    (["convolve", "--fixture", "xN(2)", "--with", "xN(2)", "--at-infinity"], 2, "NotMassless"),
    (["kapranov", "--genus", "2", "--order", "4"], 2, "ReconstructionFailed"),
    (["nearby", "--input", "{in}/missing.json"], 1, "InputError"),
])
def test_errors(args, code, err):
    got, out, stderr = _run(args)
    assert got == code
    assert out == ""
    assert stderr.startswith(err + ":")


def test_bad_flag_exits_1():
    assert _run(["zeta", "--format", "yaml"])[0] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "motivica", "spectrum", "--fixture", "cuspA"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "t^(5/6)+t^(7/6)\n"
