"""Command-line surface: manifest headers, row schemas, exit codes, and
byte-for-byte reproduction through the rerun subcommand."""

import json
import math

import pytest

from matern_interference import __version__
from matern_interference.cli import main
from matern_interference.errors import ToleranceError
from matern_interference.interference import (
    NU_TYPE2_UNIVERSAL,
    eir_type2_bound,
    mean_interference_quadrature,
)
from matern_interference.models import HardCoreParams, PowerLawPathLoss, ProcessKind


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_rows(stdout):
    lines = stdout.splitlines()
    assert lines[0].startswith("# ")
    fields = lines[1].split(",")
    return [dict(zip(fields, line.split(","))) for line in lines[2:]], fields


def test_vunion_full_output_golden(capsys):
    code, out, err = run_cli(capsys, "vunion", "--delta", "1", "--u", "0")
    assert code == 0
    want_header = ('# {"command":"vunion","params":{"delta":1.0,'
                   '"format":"csv","u":0.0},"seed":null,'
                   f'"version":"{__version__}"}}')
    assert out == want_header + "\ndelta,u,v_union\n1,0,3.14159265359\n"
    assert "1 row(s)" in err


def test_intensity_row(capsys):
    code, out, _ = run_cli(capsys, "intensity", "--process", "matern1",
                           "--lambda-p", "2", "--delta", "1")
    assert code == 0
    rows, fields = csv_rows(out)
    assert fields == ["process", "lambda_p", "delta", "intensity"]
    assert rows[0]["process"] == "matern1"
    assert float(rows[0]["intensity"]) == pytest.approx(
        2.0 * math.exp(-2.0 * math.pi), rel=1e-12)


def test_manifest_header_is_canonical_json(capsys):
    _, out, _ = run_cli(capsys, "intensity", "--process", "matern2",
                        "--lambda-p", "1.5", "--delta", "0.5")
    header = out.splitlines()[0]
    payload = json.loads(header[2:])
    assert payload["command"] == "intensity"
    assert payload["seed"] is None
    assert payload["version"] == __version__
    assert payload["params"] == {"process": "matern2", "lambda_p": 1.5,
                                 "delta": 0.5, "format": "csv"}
    assert "duration" not in header


def test_eir_approximation_row(capsys):
    code, out, _ = run_cli(capsys, "eir", "--process", "matern1",
                           "--lambda-p", "2", "--delta", "2", "--alpha", "3",
                           "--method", "approximation")
    assert code == 0
    rows, _ = csv_rows(out)
    assert float(rows[0]["eir_db"]) == pytest.approx(31.494577207710647,
                                                     rel=1e-10)
    assert float(rows[0]["eir_linear"]) == pytest.approx(1410.7748886896755,
                                                         rel=1e-10)


def test_eir_poisson_reference_is_unity(capsys):
    code, out, _ = run_cli(capsys, "eir", "--process", "poisson",
                           "--lambda-p", "2", "--delta", "1", "--alpha", "3")
    assert code == 0
    rows, _ = csv_rows(out)
    assert float(rows[0]["eir_linear"]) == 1.0
    assert float(rows[0]["eir_db"]) == 0.0


def test_bounds_type2_rows(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--type2", "--alpha", "3")
    assert code == 0
    rows, fields = csv_rows(out)
    assert fields == ["quantity", "value"]
    by_name = {r["quantity"]: float(r["value"]) for r in rows}
    assert len(by_name) == 4
    # CSV cells carry 12 significant digits, hence the 1e-11 tolerance
    assert by_name["type2_universal_bound_linear"] == pytest.approx(
        NU_TYPE2_UNIVERSAL, rel=1e-11)
    assert by_name["type2_universal_bound_db"] == pytest.approx(
        10.0 * math.log10(NU_TYPE2_UNIVERSAL), rel=1e-11)
    assert by_name["type2_powerlaw_bound_linear"] == pytest.approx(
        eir_type2_bound(3.0), rel=1e-11)
    assert by_name["type2_powerlaw_bound_db"] == pytest.approx(
        10.0 * math.log10(eir_type2_bound(3.0)), rel=1e-11)


def test_bounds_type1_rows_are_ordered_and_bracket_quadrature(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--lambda-p", "2", "--delta", "2",
                           "--alpha", "3")
    assert code == 0
    rows, _ = csv_rows(out)
    by_name = {r["quantity"]: float(r["value"]) for r in rows}
    assert len(by_name) == 9
    assert by_name["transition_interference_lower"] < \
        by_name["transition_interference_upper"]
    assert by_name["interference_beyond_2delta"] > 0.0
    assert by_name["eir_lower_db"] < by_name["eir_upper_db"]
    # the quadrature EIR lands inside the affine band
    code, out, _ = run_cli(capsys, "eir", "--process", "matern1",
                           "--lambda-p", "2", "--delta", "2", "--alpha", "3")
    quad_db = float(csv_rows(out)[0][0]["eir_db"])
    assert by_name["eir_lower_db"] <= quad_db <= by_name["eir_upper_db"]
    assert by_name["eir_approximation_db"] == pytest.approx(
        31.494577207710647, rel=1e-10)


def test_interference_quadrature_matches_library(capsys):
    code, out, _ = run_cli(capsys, "interference", "--process", "matern2",
                           "--lambda-p", "2", "--delta", "1", "--alpha", "3")
    assert code == 0
    rows, fields = csv_rows(out)
    assert fields[-1] == "mean"
    params = HardCoreParams(2.0, 1.0, ProcessKind.MATERN_II)
    want = mean_interference_quadrature(params, PowerLawPathLoss(3.0))
    assert float(rows[0]["mean"]) == pytest.approx(want, rel=1e-11)


def test_interference_mc_row_schema(capsys):
    code, out, _ = run_cli(capsys, "interference", "--process", "matern2",
                           "--lambda-p", "1", "--delta", "1", "--alpha", "3",
                           "--method", "mc", "--replicates", "30",
                           "--seed", "1", "--window-radius", "8")
    assert code == 0
    rows, fields = csv_rows(out)
    row = rows[0]
    assert fields[-6:] == ["mean", "std_error", "ci_low", "ci_high",
                           "replicates", "tail_correction"]
    assert int(row["replicates"]) == 30
    assert float(row["tail_correction"]) > 0.0
    assert float(row["ci_low"]) <= float(row["mean"]) <= float(row["ci_high"])


def test_kfun_grid_defaults(capsys):
    code, out, _ = run_cli(capsys, "kfun", "--process", "matern1",
                           "--lambda-p", "2", "--delta", "1")
    assert code == 0
    rows, fields = csv_rows(out)
    assert fields == ["r", "k_function", "k_derivative"]
    assert len(rows) == 25
    assert float(rows[0]["r"]) == 0.0
    assert float(rows[-1]["r"]) == 4.0   # 4*delta
    assert float(rows[0]["k_function"]) == 0.0


def test_kfun_single_radius(capsys):
    code, out, _ = run_cli(capsys, "kfun", "--process", "poisson",
                           "--lambda-p", "1", "--delta", "1", "--r", "2")
    assert code == 0
    rows, _ = csv_rows(out)
    assert len(rows) == 1
    assert float(rows[0]["k_function"]) == pytest.approx(3.0 * math.pi,
                                                         rel=1e-12)


def test_kfun_delta_zero_needs_explicit_scale(capsys):
    code, _, err = run_cli(capsys, "kfun", "--process", "matern1",
                           "--lambda-p", "2", "--delta", "0")
    assert code == 2
    assert "error:" in err
    code, out, _ = run_cli(capsys, "kfun", "--process", "matern1",
                           "--lambda-p", "2", "--delta", "0", "--r-max", "2",
                           "--steps", "3")
    assert code == 0
    rows, _ = csv_rows(out)
    assert [float(r["r"]) for r in rows] == [0.0, 1.0, 2.0]


def test_sample_palm_csv_schema(capsys):
    code, out, _ = run_cli(capsys, "sample", "--process", "matern2",
                           "--lambda-p", "1.5", "--delta", "0.8",
                           "--window-radius", "6", "--seed", "3")
    assert code == 0
    rows, fields = csv_rows(out)
    assert fields == ["x", "y", "mark"]
    assert len(rows) > 0
    for row in rows:
        assert math.hypot(float(row["x"]), float(row["y"])) <= 6.0
        assert 0.0 <= float(row["mark"]) < 1.0


def test_sample_type1_marks_column_is_empty(capsys):
    code, out, _ = run_cli(capsys, "sample", "--process", "matern1",
                           "--lambda-p", "1.5", "--delta", "0.8",
                           "--window-radius", "6", "--seed", "3")
    assert code == 0
    rows, _ = csv_rows(out)
    assert len(rows) > 0
    assert all(row["mark"] == "" for row in rows)


def test_sample_window_mode_respects_hard_core(capsys):
    code, out, _ = run_cli(capsys, "sample", "--process", "matern1",
                           "--lambda-p", "2", "--delta", "0.5",
                           "--window-radius", "5", "--mode", "window",
                           "--seed", "4")
    assert code == 0
    rows, _ = csv_rows(out)
    pts = [(float(r["x"]), float(r["y"])) for r in rows]
    assert len(pts) > 1
    closest = min(math.dist(a, b) for i, a in enumerate(pts)
                  for b in pts[i + 1:])
    assert closest >= 0.5


def test_figure1_rows(capsys):
    code, out, _ = run_cli(capsys, "figure1", "--steps", "5")
    assert code == 0
    rows, fields = csv_rows(out)
    assert fields == ["delta", "poisson_hole", "matern2_upper_bound",
                      "matern1_lower", "matern1_upper"]
    assert len(rows) == 5
    for row in rows:
        lo = float(row["matern1_lower"])
        hi = float(row["matern1_upper"])
        ref = float(row["poisson_hole"])
        assert 0.0 < lo <= hi
        assert float(row["matern2_upper_bound"]) > ref


def test_json_format_mirrors_csv(capsys):
    _, out_csv, _ = run_cli(capsys, "bounds", "--type2", "--alpha", "4")
    _, out_json, _ = run_cli(capsys, "bounds", "--type2", "--alpha", "4",
                             "--format", "json")
    lines = out_json.splitlines()
    assert lines[0].startswith("# ")
    data = json.loads("\n".join(lines[1:]))
    rows_csv, _ = csv_rows(out_csv)
    assert [d["quantity"] for d in data] == [r["quantity"] for r in rows_csv]
    for d, r in zip(data, rows_csv):
        # JSON keeps full precision; the CSV cell is truncated to 12 digits
        assert d["value"] == pytest.approx(float(r["value"]), rel=1e-11)


def test_out_file_matches_stdout(tmp_path, capsys):
    _, stdout_text, _ = run_cli(capsys, "figure1", "--steps", "3")
    path = tmp_path / "fig.csv"
    code, out, _ = run_cli(capsys, "figure1", "--steps", "3",
                           "--out", str(path))
    assert code == 0
    assert out == ""  # everything went to the file
    assert path.read_text(encoding="utf-8") == stdout_text


def test_rerun_reproduces_byte_identical_output(tmp_path, capsys):
    first = tmp_path / "mc.csv"
    code, _, _ = run_cli(capsys, "interference", "--process", "matern1",
                         "--lambda-p", "1", "--delta", "1", "--alpha", "3",
                         "--method", "mc", "--replicates", "25", "--seed", "7",
                         "--window-radius", "8", "--out", str(first))
    assert code == 0
    second = tmp_path / "mc2.csv"
    code, _, _ = run_cli(capsys, "rerun", "--manifest", str(first),
                         "--out", str(second))
    assert code == 0
    assert first.read_bytes() == second.read_bytes()


def test_rerun_reproduces_json_output(tmp_path, capsys):
    first = tmp_path / "k.json"
    run_cli(capsys, "kfun", "--process", "matern2", "--lambda-p", "2",
            "--delta", "1", "--steps", "7", "--format", "json",
            "--out", str(first))
    second = tmp_path / "k2.json"
    code, _, _ = run_cli(capsys, "rerun", "--manifest", str(first),
                         "--out", str(second))
    assert code == 0
    assert first.read_bytes() == second.read_bytes()


def test_rerun_rejects_file_without_manifest(tmp_path, capsys):
    bad = tmp_path / "plain.csv"
    bad.write_text("r,k\n1,2\n", encoding="utf-8")
    code, _, err = run_cli(capsys, "rerun", "--manifest", str(bad))
    assert code == 2
    assert "error:" in err


def test_rerun_rejects_unknown_command(tmp_path, capsys):
    bad = tmp_path / "odd.csv"
    bad.write_text('# {"command":"nope","params":{}}\n', encoding="utf-8")
    code, _, err = run_cli(capsys, "rerun", "--manifest", str(bad))
    assert code == 2
    assert "unknown command" in err


def test_validation_error_exits_2(capsys):
    code, _, err = run_cli(capsys, "intensity", "--process", "matern1",
                           "--lambda-p", "-2", "--delta", "1")
    assert code == 2
    assert "error:" in err
    # cutoff beyond the hard-core distance
    code, _, err = run_cli(capsys, "eir", "--process", "matern1",
                           "--lambda-p", "2", "--delta", "1", "--alpha", "3",
                           "--r0", "1.5")
    assert code == 2


def test_method_kind_mismatch_exits_2(capsys):
    code, _, err = run_cli(capsys, "eir", "--process", "matern2",
                           "--lambda-p", "2", "--delta", "1", "--alpha", "3",
                           "--method", "approximation")
    assert code == 2
    assert "error:" in err


def test_tolerance_error_exits_3(monkeypatch, capsys):
    from matern_interference import cli as cli_module

    def explode(_):
        raise ToleranceError("integral did not converge")

    monkeypatch.setitem(cli_module._RUNNERS, "vunion", explode)
    code, _, err = run_cli(capsys, "vunion", "--delta", "1", "--u", "1")
    assert code == 3
    assert "tolerance" in err
