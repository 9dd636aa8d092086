"""Job-file parsing, subcommand reports, output formats, exit codes."""

import json

import numpy as np
import pytest

from conftest import OVERRIDE_SCALED, PARALLELOGRAM, UNIT_SQUARE, WORKED_VERTICES
from quadmap import ParseError
from quadmap.cli import GEOMETRY_COLUMNS, JobConfig, read_job, run_command


def write_job(tmp_path, name="job.json", **kwargs):
    kwargs.setdefault("vertices", [list(v) for v in WORKED_VERTICES])
    path = tmp_path / name
    path.write_text(json.dumps(kwargs))
    return str(path)


def run(capsys, *argv):
    status = run_command(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestReadJob:
    def test_worked_fixture(self, tmp_path):
        path = write_job(tmp_path)
        job = read_job(path)
        assert job.vertices == WORKED_VERTICES
        assert job.scheme == "pascal6"
        assert job.pairing == "text-order"
        assert job.output_format == "table"
        assert job.quadrature_points == 2

    def test_missing_vertices(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"scheme": "pascal6"}')
        with pytest.raises(ParseError, match="vertices"):
            read_job(str(path))

    def test_unknown_key(self, tmp_path):
        path = write_job(tmp_path, mystery=3)
        with pytest.raises(ParseError, match="mystery"):
            read_job(path)

    def test_override_installed(self, tmp_path):
        path = write_job(tmp_path, scaled_pole_override=list(OVERRIDE_SCALED))
        job = read_job(path)
        assert job.scaled_pole_override == OVERRIDE_SCALED

    def test_bad_json_names_location(self, tmp_path):
        path = tmp_path / "syntax.json"
        path.write_text('{"vertices": [[1,1],')
        with pytest.raises(ParseError, match="line"):
            read_job(str(path))

    def test_bad_grid(self, tmp_path):
        path = write_job(tmp_path, grid=1)
        with pytest.raises(ParseError, match="grid"):
            read_job(path)

    def test_bad_scheme(self, tmp_path):
        path = write_job(tmp_path, scheme="pascal15")
        with pytest.raises(ParseError, match="scheme"):
            read_job(path)


class TestFitCommand:
    def test_lagrange_table_matches_reference(self, tmp_path, capsys):
        path = write_job(tmp_path, scheme="lagrange4")
        status, out, _ = run(capsys, "fit", "--input", path)
        assert status == 0
        assert "term (0,0):       2.50000000       3.00000000" in out
        assert "term (1,0):       1.00000000       0.00000000" in out
        assert "term (0,1):       0.00000000       1.50000000" in out
        assert "term (1,1):      -0.50000000      -0.50000000" in out

    def test_pascal_reference_json(self, tmp_path, capsys):
        path = write_job(
            tmp_path,
            scheme="pascal6",
            pairing="swapped",
            scaled_pole_override=list(OVERRIDE_SCALED),
        )
        status, out, _ = run(capsys, "fit", "--input", path, "--format", "json")
        assert status == 0
        rep = json.loads(out)
        expected = np.array(
            [
                [1.78769652, 4.48213067],
                [1.0, 0.0],
                [0.0, 1.5],
                [-0.23647699, 0.08169214],
                [-0.5, -0.5],
                [0.94878047, -1.56382281],
            ]
        )
        assert np.abs(np.array(rep["params"]) - expected).max() < 1e-6
        assert rep["scaled"]["source"] == "override"

    def test_json_round_trips_bit_for_bit(self, tmp_path, capsys):
        from quadmap import fit_map

        path = write_job(tmp_path)
        status, out, _ = run(capsys, "fit", "--input", path, "--format", "json")
        assert status == 0
        rep = json.loads(out)
        m = fit_map(WORKED_VERTICES, "pascal6")
        assert np.array(rep["params"]).tolist() == m.params.tolist()

    def test_csv_round_trips(self, tmp_path, capsys):
        path = write_job(tmp_path)
        status, out, _ = run(capsys, "fit", "--input", path, "--format", "csv")
        assert status == 0
        lines = out.strip().splitlines()
        assert lines[0] == "exp1,exp2,a_x1,a_x2,dropped,cond_estimate"
        from quadmap import fit_map

        m = fit_map(WORKED_VERTICES, "pascal6")
        for line, row in zip(lines[1:], m.params):
            cells = line.split(",")
            assert float(cells[2]) == row[0]
            assert float(cells[3]) == row[1]

    def test_cli_flags_override_file(self, tmp_path, capsys):
        path = write_job(tmp_path, scheme="pascal6")
        status, out, _ = run(capsys, "fit", "--input", path, "--scheme", "lagrange4", "--format", "json")
        assert status == 0
        assert json.loads(out)["scheme"] == "lagrange4"


class TestPolesCommand:
    def test_unit_square_at_infinity(self, tmp_path, capsys):
        path = write_job(tmp_path, vertices=[list(v) for v in UNIT_SQUARE])
        status, out, _ = run(capsys, "poles", "--input", path)
        assert status == 0
        assert out.count("at-infinity") == 2

    def test_worked_quad_json(self, tmp_path, capsys):
        path = write_job(tmp_path)
        status, out, _ = run(capsys, "poles", "--input", path, "--format", "json")
        rep = json.loads(out)
        assert abs(rep["pole5"]["x1"] - 4.75) < 1e-9
        assert abs(rep["pole6"]["x2"] - 17.0 / 3.0) < 1e-9
        assert rep["scaled"]["override"] is None

    def test_override_discrepancy_documented(self, tmp_path, capsys):
        # With an override present the report carries the computed values,
        # the override values, and their difference.
        path = write_job(tmp_path)
        status, out, _ = run(
            capsys, "poles", "--input", path, "--format", "json",
            "--override", f"{OVERRIDE_SCALED[0]},{OVERRIDE_SCALED[1]}",
        )
        rep = json.loads(out)
        scaled = rep["scaled"]
        assert scaled["source"] == "override"
        assert abs(scaled["computed"]["t5"] - 2.371708) < 1e-6
        assert abs(scaled["override"]["t5"] - OVERRIDE_SCALED[0]) < 1e-12
        assert abs(
            scaled["difference"]["t5"] - (OVERRIDE_SCALED[0] - scaled["computed"]["t5"])
        ) < 1e-12
        assert scaled["difference"]["t6"] != 0.0


class TestEvalCommand:
    def test_grid_csv(self, tmp_path, capsys):
        path = write_job(tmp_path, scheme="lagrange4")
        status, out, _ = run(capsys, "eval", "--input", path, "--grid", "3", "--format", "csv")
        assert status == 0
        lines = out.strip().splitlines()
        assert lines[0] == "t1,t2,x1,x2"
        assert len(lines) == 1 + 9
        first = [float(v) for v in lines[1].split(",")]
        assert first == [-1.0, -1.0, 1.0, 1.0]  # vertex 1

    def test_explicit_points(self, tmp_path, capsys):
        path = write_job(tmp_path, scheme="lagrange4", eval_points=[[0, 0]])
        status, out, _ = run(capsys, "eval", "--input", path, "--format", "json")
        rep = json.loads(out)
        assert rep["rows"][0][2:] == [2.5, 3.0]

    def test_requires_points_or_grid(self, tmp_path, capsys):
        path = write_job(tmp_path)
        status, out, err = run(capsys, "eval", "--input", path)
        assert status == 1
        assert json.loads(err)["error"] == "ParseError"


class TestInvertCommand:
    def test_center_and_vertex(self, tmp_path, capsys):
        path = write_job(tmp_path, scheme="lagrange4")
        status, out, _ = run(
            capsys, "invert", "--input", path, "--at", "2.5,3.0", "--at", "4.0,2.0",
            "--format", "csv",
        )
        assert status == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x1,x2,t1,t2,iterations,residual"
        center = [float(v) for v in lines[1].split(",")[:4]]
        vertex = [float(v) for v in lines[2].split(",")[:4]]
        assert abs(center[2]) < 1e-12 and abs(center[3]) < 1e-12
        assert abs(vertex[2] - 1.0) < 1e-9 and abs(vertex[3] + 1.0) < 1e-9

    def test_requires_targets(self, tmp_path, capsys):
        path = write_job(tmp_path)
        status, _, err = run(capsys, "invert", "--input", path)
        assert status == 1
        assert json.loads(err)["error"] == "ParseError"


class TestGeometryCommand:
    def test_column_layout(self, tmp_path, capsys):
        path = write_job(tmp_path, scheme="lagrange4", eval_points=[[0, 0]])
        status, out, _ = run(capsys, "geometry", "--input", path, "--format", "csv")
        assert status == 0
        lines = out.strip().splitlines()
        header = lines[0].split(",")
        assert header == list(GEOMETRY_COLUMNS)
        assert len(header) == 44
        row = dict(zip(header, (float(v) for v in lines[1].split(","))))
        assert row["pos_x1"] == 2.5 and row["pos_x2"] == 3.0
        assert row["metric_11"] == 1.0 and abs(row["metric_22"] - 2.25) < 1e-12
        assert abs(row["gamma2_121"] + 0.5) < 1e-12
        assert abs(row["gamma2_122"] + 1.0 / 3.0) < 1e-12
        assert row["jac_det"] == 1.5
        assert row["gauss_residual"] < 1e-10


class TestAreaCommand:
    def test_lagrange_area_report(self, tmp_path, capsys):
        path = write_job(tmp_path, scheme="lagrange4")
        status, out, _ = run(capsys, "area", "--input", path, "--format", "json")
        rep = json.loads(out)
        assert abs(rep["shoelace_area"] - 6.0) < 1e-12
        assert abs(rep["center_jac_det"] - 1.5) < 1e-12
        assert abs(rep["four_center_jac_det"] - 6.0) < 1e-12
        assert abs(rep["integrated_jac_det"] - 6.0) < 1e-12
        assert rep["quadrature_points"] == 2


class TestCompareCommand:
    def test_parallelogram_maps_agree(self, tmp_path, capsys):
        path = write_job(tmp_path, vertices=[list(v) for v in PARALLELOGRAM])
        status, out, _ = run(capsys, "compare", "--input", path, "--format", "json")
        rep = json.loads(out)
        assert rep["pascal_scheme"] == "pascal6"
        assert rep["max_cartesian_discrepancy"] < 1e-12

    def test_worked_quad_differs(self, tmp_path, capsys):
        path = write_job(tmp_path)
        status, out, _ = run(capsys, "compare", "--input", path, "--format", "json")
        rep = json.loads(out)
        assert rep["max_cartesian_discrepancy"] > 0.1
        # bilinear rows align with their monomials, cubic rows are absent
        assert rep["params_lagrange"][0] is not None
        assert rep["params_lagrange"][3] is None  # the (2,0) slot


class TestExitCodesAndDeterminism:
    def test_degenerate_quad_error_record(self, tmp_path, capsys):
        path = write_job(tmp_path, vertices=[[0, 0], [1, 1], [1, 0], [0, 1]])
        status, out, err = run(capsys, "poles", "--input", path)
        assert status == 1
        assert out == ""
        record = json.loads(err)
        assert record["error"] == "DegenerateQuad"
        assert record["reason"] == "self-intersecting"

    def test_missing_pole_error_record(self, tmp_path, capsys):
        path = write_job(
            tmp_path,
            vertices=[list(v) for v in PARALLELOGRAM],
            scaled_pole_override=list(OVERRIDE_SCALED),
        )
        status, _, err = run(capsys, "fit", "--input", path)
        assert status == 1
        assert json.loads(err)["error"] == "MissingPole"

    def test_usage_error_exit_2(self, tmp_path, capsys):
        assert run(capsys, "fit")[0] == 2  # missing --input
        assert run(capsys, "frobnicate", "--input", "x.json")[0] == 2

    def test_malformed_json_exit_1(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{nope")
        status, _, err = run(capsys, "fit", "--input", str(path))
        assert status == 1
        assert json.loads(err)["error"] == "ParseError"

    @pytest.mark.parametrize("command", ["poles", "fit", "eval", "geometry", "area", "compare"])
    @pytest.mark.parametrize("fmt", ["json", "csv", "table"])
    def test_byte_identical_reruns(self, tmp_path, capsys, command, fmt):
        path = write_job(tmp_path, grid=3, eval_points=[[0.2, -0.4], [0.0, 0.0]])
        argv = [command, "--input", path, "--format", fmt]
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first == second
        assert first[0] == 0


def test_jobconfig_defaults():
    job = JobConfig(vertices=WORKED_VERTICES)
    assert job.scheme == "pascal6"
    assert job.pairing == "text-order"
    assert job.quadrature_points == 2
    assert job.output_format == "table"
