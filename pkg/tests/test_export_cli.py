import json

import pytest

from cellform import (
    ClusterConfig,
    builtin_instances,
    run_pipeline,
    score,
    serialize_instance,
)
from cellform.cli import main
from cellform.export import (
    AssignmentError,
    assignment_from_export,
    build_solution_export,
    export_json,
    format_assignment,
    parse_assignment,
    score_assignment,
    solution_from_assignment,
)

from helpers import BOCTOR_MACHINE_CELL, BOCTOR_PART_FAMILY, random_corpus


@pytest.fixture(scope="module")
def boctor_export():
    inst = builtin_instances()["boctor-7x11"]
    result = run_pipeline(inst, ClusterConfig(n_cells=3))
    return inst, result, build_solution_export(result, score(inst, result.solution))


class TestExportDocument:
    def test_schema_and_shape(self, boctor_export):
        _, _, doc = boctor_export
        assert doc["schema"] == "cellform/1"
        assert doc["n_cells"] == 3
        assert len(doc["machine_loadings"]) == 7
        assert len(doc["part_scores"]) == 11
        assert len(doc["similarity"]) == 7
        assert len(doc["eigenvalues"]) == 7
        assert doc["config"]["n_cells"] == 3
        assert doc["instance"]["incidence"][0] == [1, 1, 0, 0, 0, 0, 0]

    def test_json_serializable(self, boctor_export):
        _, result, doc = boctor_export
        text = export_json(result, score(result.instance, result.solution))
        assert json.loads(text) == doc

    def test_rescore_reproduces_embedded_metrics_exactly(self, boctor_export):
        inst, _, doc = boctor_export
        machine_cell, part_family = assignment_from_export(doc)
        report = score_assignment(inst, machine_cell, part_family)
        assert report.ue == doc["metrics"]["ue"]
        assert report.ee == doc["metrics"]["ee"]
        assert report.ve == doc["metrics"]["ve"]
        assert report.pe == doc["metrics"]["pe"]
        assert report.mu == doc["metrics"]["mu"]
        assert report.ge == doc["metrics"]["ge"]

    def test_rescore_roundtrip_on_random_corpus(self):
        for inst in random_corpus(seed=12345, size=15):
            result = run_pipeline(inst)
            doc = build_solution_export(result, score(inst, result.solution))
            machine_cell, part_family = assignment_from_export(doc)
            report = score_assignment(inst, machine_cell, part_family)
            for key in ("ue", "ee", "ve", "denominator_mu", "pe", "mu", "ge"):
                assert getattr(report, key) == doc["metrics"][key], key


class TestAssignmentFormat:
    def test_roundtrip(self):
        text = format_assignment(BOCTOR_MACHINE_CELL, BOCTOR_PART_FAMILY)
        machines, parts = parse_assignment(text)
        assert machines == BOCTOR_MACHINE_CELL
        assert parts == BOCTOR_PART_FAMILY

    def test_comments_and_blank_lines(self):
        machines, parts = parse_assignment(
            "# header\n\nmachine M1 1\n  part P1 2  \n"
        )
        assert machines == {"M1": 1}
        assert parts == {"P1": 2}

    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("machine M1", "expected"),
            ("widget M1 1", "expected"),
            ("machine M1 x", "not an integer"),
            ("machine M1 0", ">= 1"),
            ("machine M1 1\nmachine M1 2", "assigned twice"),
        ],
    )
    def test_parse_errors(self, text, fragment):
        with pytest.raises(AssignmentError) as excinfo:
            parse_assignment(text)
        assert fragment in str(excinfo.value)

    def test_unknown_label_listed(self, boctor_export):
        inst, _, _ = boctor_export
        machines = dict(BOCTOR_MACHINE_CELL, M99=1)
        with pytest.raises(AssignmentError, match="M99"):
            solution_from_assignment(inst, machines, BOCTOR_PART_FAMILY)

    def test_unassigned_elements_listed(self, boctor_export):
        inst, _, _ = boctor_export
        partial = dict(BOCTOR_MACHINE_CELL)
        del partial["M3"]
        with pytest.raises(AssignmentError, match="unassigned elements: M3"):
            solution_from_assignment(inst, partial, BOCTOR_PART_FAMILY)


class TestCli:
    def run(self, capsys, *argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    def test_solve_builtin_prints_reference_solution(self, capsys, tmp_path):
        out_path = tmp_path / "export.json"
        code, out, _ = self.run(
            capsys, "solve", "--builtin", "boctor-7x11", "--cells", "3",
            "--out", str(out_path),
        )
        assert code == 0
        assert "PE = 9.52%  MU = 76.00%  GE = 70.37%" in out
        assert "cell 1: machines {M1, M5, M6}" in out
        assert "cell 2: machines {M2, M3}" in out
        assert "cell 3: machines {M4, M7}" in out
        assert "P4" in out
        doc = json.loads(out_path.read_text())
        assert doc["schema"] == "cellform/1"

    def test_solve_threshold_mode_finds_three_cells(self, capsys):
        code, out, _ = self.run(capsys, "solve", "--builtin", "boctor-7x11")
        assert code == 0
        assert "cells = 3" in out

    def test_solve_writes_similarity_csv(self, capsys, tmp_path):
        csv_path = tmp_path / "sim.csv"
        code, _, _ = self.run(
            capsys, "solve", "--builtin", "boctor-7x11",
            "--similarity-csv", str(csv_path),
        )
        assert code == 0
        lines = csv_path.read_text().strip().splitlines()
        assert lines[0] == ",M1,M2,M3,M4,M5,M6,M7"
        assert len(lines) == 8
        assert lines[1].split(",")[1] == "1.000000"

    def test_log_env_var_accepted(self, capsys, monkeypatch):
        monkeypatch.setenv("CELLFORM_LOG", "debug")
        code, out, _ = self.run(capsys, "solve", "--builtin", "boctor-7x11")
        assert code == 0
        assert "cells = 3" in out

    def test_solve_missing_file(self, capsys):
        code, _, err = self.run(capsys, "solve", "missing.cfm")
        assert code != 0
        assert "cannot read" in err

    def test_solve_rejects_both_sources(self, capsys, tmp_path):
        path = tmp_path / "x.cfm"
        path.write_text(serialize_instance(builtin_instances()["boctor-7x11"]))
        code, _, err = self.run(capsys, "solve", str(path), "--builtin", "boctor-7x11")
        assert code != 0
        assert "exactly one" in err

    def test_unknown_builtin(self, capsys):
        code, _, err = self.run(capsys, "solve", "--builtin", "nope")
        assert code != 0
        assert "unknown builtin" in err

    def test_score_reference_assignment(self, capsys, tmp_path):
        assignment = tmp_path / "t1.assign"
        assignment.write_text(format_assignment(BOCTOR_MACHINE_CELL, BOCTOR_PART_FAMILY))
        code, out, _ = self.run(
            capsys, "score", "--builtin", "boctor-7x11", "--assignment", str(assignment)
        )
        assert code == 0
        assert "PE = 9.52%  MU = 76.00%  GE = 70.37%" in out
        assert "UE = 21  EE = 2  VE = 6" in out

    def test_score_unknown_machine(self, capsys, tmp_path):
        assignment = tmp_path / "bad.assign"
        assignment.write_text(
            format_assignment(dict(BOCTOR_MACHINE_CELL, M99=1), BOCTOR_PART_FAMILY)
        )
        code, _, err = self.run(
            capsys, "score", "--builtin", "boctor-7x11", "--assignment", str(assignment)
        )
        assert code != 0
        assert "M99" in err

    def test_score_single_cell_gives_zero_pe(self, capsys, tmp_path):
        assignment = tmp_path / "one.assign"
        assignment.write_text(format_assignment(
            {m: 1 for m in BOCTOR_MACHINE_CELL}, {p: 1 for p in BOCTOR_PART_FAMILY}
        ))
        code, out, _ = self.run(
            capsys, "score", "--builtin", "boctor-7x11", "--assignment", str(assignment)
        )
        assert code == 0
        assert "PE = 0.00%" in out

    def test_export_rescore_identity_via_cli(self, capsys, tmp_path):
        out_path = tmp_path / "export.json"
        code, _, _ = self.run(
            capsys, "solve", "--builtin", "boctor-7x11", "--cells", "3",
            "--out", str(out_path),
        )
        assert code == 0
        doc = json.loads(out_path.read_text())
        machine_cell, part_family = assignment_from_export(doc)
        assignment = tmp_path / "extracted.assign"
        assignment.write_text(format_assignment(machine_cell, part_family))
        code, out, _ = self.run(
            capsys, "score", "--builtin", "boctor-7x11", "--assignment", str(assignment)
        )
        assert code == 0
        assert f"UE = {doc['metrics']['ue']}  EE = {doc['metrics']['ee']}" in out

    def test_bench_empty_directory(self, capsys, tmp_path):
        code, out, _ = self.run(capsys, "bench", str(tmp_path))
        assert code == 0
        assert out.splitlines()[0].startswith("name")
        assert len(out.strip().splitlines()) == 1

    def test_bench_boctor_with_expectations(self, capsys, tmp_path):
        inst = builtin_instances()["boctor-7x11"]
        (tmp_path / "boctor.cfm").write_text(serialize_instance(inst))
        (tmp_path / "boctor.expect").write_text(
            "cells = 3\npe = 9.52\nmu = 76.00\nge = 70.37\ntolerance = 0.01\n"
        )
        code, out, _ = self.run(capsys, "bench", str(tmp_path))
        assert code == 0
        row = out.strip().splitlines()[1]
        assert row.startswith("boctor")
        assert "7 machines x 11 parts" in row
        assert "PASS" in row

    def test_bench_failure_exits_nonzero(self, capsys, tmp_path):
        inst = builtin_instances()["boctor-7x11"]
        (tmp_path / "boctor.cfm").write_text(serialize_instance(inst))
        (tmp_path / "boctor.expect").write_text("ge = 99.0\ntolerance = 0.5\n")
        code, out, _ = self.run(capsys, "bench", str(tmp_path))
        assert code == 1
        assert "FAIL" in out

    def test_bench_skips_unreadable_instance(self, capsys, tmp_path):
        (tmp_path / "broken.cfm").write_text("not a header\n")
        inst = builtin_instances()["boctor-7x11"]
        (tmp_path / "ok.cfm").write_text(serialize_instance(inst))
        code, out, err = self.run(capsys, "bench", str(tmp_path))
        assert code == 0
        assert "skipping broken.cfm" in err
        assert "ok" in out
