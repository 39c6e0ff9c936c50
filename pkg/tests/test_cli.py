import json

import pytest

from satmat import Matrix01, Shape, format_01m, identity_pattern, parse_01m
from satmat.cli import main

I2 = identity_pattern(2, 2)


@pytest.fixture
def files(tmp_path):
    def write(name, matrix):
        path = tmp_path / name
        path.write_text(format_01m(matrix))
        return str(path)

    return write


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestContains:
    def test_found(self, files, capsys):
        host = files("m.01m", Matrix01.from_ones(Shape((3, 3)), [(1, 1), (2, 3), (3, 2)]))
        pat = files("p.01m", I2)
        code, out, _ = run(capsys, ["contains", host, pat])
        assert code == 0
        payload = json.loads(out)
        assert payload["format_version"] == 1
        assert payload["found"] is True
        assert payload["selections"] == [[1, 2], [1, 3]]

    def test_not_found(self, files, capsys):
        host = files("m.01m", Matrix01.zeros(Shape((3, 3))))
        pat = files("p.01m", I2)
        code, out, _ = run(capsys, ["contains", host, pat])
        assert code == 1
        assert json.loads(out)["found"] is False

    def test_malformed_input(self, tmp_path, capsys):
        bad = tmp_path / "bad.01m"
        bad.write_text("dims: 2 2\n10")
        pat = tmp_path / "p.01m"
        pat.write_text(format_01m(I2))
        code, _, err = run(capsys, ["contains", str(bad), str(pat)])
        assert code == 2
        assert json.loads(err)["status"] == "error"

    def test_missing_file(self, files, capsys):
        pat = files("p.01m", I2)
        code, _, err = run(capsys, ["contains", "/nonexistent.01m", pat])
        assert code == 2


class TestVerify:
    def test_sat_true(self, files, capsys):
        m = Matrix01.from_ones(Shape((2, 2)), [(1, 2), (2, 1), (2, 2)])
        code, out, _ = run(capsys, ["verify", "sat", files("m.01m", m), files("p.01m", I2)])
        assert code == 0
        assert json.loads(out)["verdict"] is True

    def test_sat_dead_flip(self, files, capsys):
        m = Matrix01.zeros(Shape((3, 3)))
        code, out, _ = run(capsys, ["verify", "sat", files("m.01m", m), files("p.01m", I2)])
        assert code == 1
        payload = json.loads(out)
        assert payload["failure_kind"] == "dead_flip"
        assert payload["counterexample"] == {"coord": [1, 1]}

    def test_sat_contains(self, files, capsys):
        m = Matrix01.filled(Shape((2, 2)))
        code, out, _ = run(capsys, ["verify", "sat", files("m.01m", m), files("p.01m", I2)])
        assert code == 1
        payload = json.loads(out)
        assert payload["failure_kind"] == "contains_pattern"
        assert payload["counterexample"] == {"selections": [[1, 2], [1, 2]]}

    def test_ssat_true(self, files, capsys):
        m = Matrix01.from_ones(Shape((5, 5)), [(1, 1), (1, 5), (5, 1), (5, 5)])
        code, out, _ = run(capsys, ["verify", "ssat", files("m.01m", m), files("p.01m", I2)])
        assert code == 0
        assert json.loads(out)["verdict"] is True


class TestConstruct:
    def test_identity_layers(self, capsys):
        code, out, _ = run(
            capsys, ["construct", "--kind", "identity-layers", "--shape", "4", "4", "--k", "1"]
        )
        assert code == 0
        m = parse_01m(out)
        assert m.weight == 7

    def test_greedy_with_seed(self, files, capsys):
        pat = files("p.01m", I2)
        code, out, _ = run(
            capsys,
            ["--seed", "7", "construct", "--kind", "greedy", "--pattern", pat, "--shape", "3", "3"],
        )
        assert code == 0
        assert parse_01m(out).weight == 5

    def test_offset_block_json(self, files, capsys):
        pat = files("p.01m", I2)
        code, out, _ = run(
            capsys,
            ["--json", "construct", "--kind", "offset-block", "--pattern", pat, "--n", "4"],
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["matrix"]["weight"] == 7
        assert payload["matrix"]["dims"] == [4, 4]

    def test_corner_block_to_file(self, files, capsys, tmp_path):
        pat = files("p.01m", I2)
        out_path = tmp_path / "out.01m"
        code, _, _ = run(
            capsys,
            ["construct", "--kind", "corner-block", "--pattern", pat, "--n", "5", "-o", str(out_path)],
        )
        assert code == 0
        assert parse_01m(out_path.read_text()).weight == 4

    def test_greedy_nonfitting_is_input_error(self, files, capsys):
        pat = files("p.01m", identity_pattern(2, 3))
        code, _, err = run(
            capsys, ["construct", "--kind", "greedy", "--pattern", pat, "--shape", "2", "2"]
        )
        assert code == 2

    def test_missing_flags(self, files, capsys):
        code, _, err = run(capsys, ["construct", "--kind", "greedy"])
        assert code == 2


class TestClassify:
    def test_bounded(self, files, capsys):
        code, out, _ = run(capsys, ["classify", files("p.01m", I2)])
        assert code == 0
        payload = json.loads(out)
        assert payload["bounded"] is True
        assert payload["witness_entry"] == [1, 1]

    def test_unbounded_reports_face(self, files, capsys):
        p = Matrix01.from_nested([[1, 0], [0, 0]])
        code, out, _ = run(capsys, ["classify", files("p.01m", p)])
        assert code == 1
        payload = json.loads(out)
        assert payload["bounded"] is False
        assert payload["failing_face"] == {"fixed": [[1, 2]]}


class TestExact:
    def test_values(self, files, capsys):
        pat = files("p.01m", I2)
        for quantity, want in (("ex", 5), ("sat", 5), ("ssat", 4)):
            code, out, _ = run(
                capsys, ["exact", quantity, "--shape", "3", "3", "--pattern", pat]
            )
            assert code == 0
            payload = json.loads(out)
            assert payload["value"] == want
            assert payload["status"] == "ok"
            witness = payload["witness"]
            assert witness["dims"] == [3, 3]
            assert witness["cells"].count("1") == want

    def test_budget_exceeded(self, files, capsys):
        pat = files("p.01m", I2)
        code, out, _ = run(
            capsys,
            ["--budget-cells", "4", "exact", "ex", "--shape", "3", "3", "--pattern", pat],
        )
        assert code == 3
        assert json.loads(out)["status"] == "budget_exceeded"


class TestStaircases:
    def test_extract(self, files, capsys):
        m = Matrix01.from_ones(Shape((2, 2)), [(1, 2), (2, 1), (2, 2)])
        code, out, _ = run(capsys, ["staircases", "extract", files("m.01m", m)])
        assert code == 0
        payload = json.loads(out)
        assert payload["coords"] == [[1, 2], [2, 1], [2, 2]]

    def test_extract_absent(self, files, capsys):
        m = Matrix01.zeros(Shape((2, 2)))
        code, out, _ = run(capsys, ["staircases", "extract", files("m.01m", m)])
        assert code == 1

    def test_decompose(self, files, capsys):
        from satmat import identity_layers

        m = identity_layers(Shape((4, 4)), 2)
        code, out, _ = run(
            capsys, ["staircases", "decompose", files("m.01m", m), "--k", "2"]
        )
        assert code == 0
        assert json.loads(out)["weights"] == [7, 5]

    def test_decompose_failure(self, files, capsys):
        m = Matrix01.zeros(Shape((2, 2)))
        code, out, _ = run(capsys, ["staircases", "decompose", files("m.01m", m), "--k", "1"])
        assert code == 1


class TestTable:
    def test_identity_sweep_csv(self, capsys):
        code, out, _ = run(
            capsys, ["table", "--d", "2", "--k", "1", "--n-lo", "2", "--n-hi", "6"]
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "# format_version=1"
        assert lines[1] == "n,closed_form,greedy_weight,layers_weight,oracle_sat,oracle_ex"
        rows = [line.split(",") for line in lines[2:]]
        assert [r[1] for r in rows] == ["3", "5", "7", "9", "11"]
        assert [r[2] for r in rows] == ["3", "5", "7", "9", "11"]
        assert [r[3] for r in rows] == ["3", "5", "7", "9", "11"]
        # oracle columns computed within the default 16-cell budget
        assert [r[4] for r in rows] == ["3", "5", "7", "skipped", "skipped"]
        assert [r[5] for r in rows] == ["3", "5", "7", "skipped", "skipped"]

    def test_cube_sweep(self, capsys):
        code, out, _ = run(
            capsys,
            ["--budget-cells", "8", "table", "--d", "3", "--k", "1", "--n-lo", "2", "--n-hi", "4"],
        )
        assert code == 0
        rows = [line.split(",") for line in out.strip().splitlines()[2:]]
        assert [r[1] for r in rows] == ["7", "19", "37"]
        assert [r[4] for r in rows] == ["7", "skipped", "skipped"]

    def test_json_table(self, capsys):
        code, out, _ = run(
            capsys,
            ["--json", "table", "--d", "2", "--k", "2", "--n-lo", "3", "--n-hi", "4"],
        )
        assert code == 0
        payload = json.loads(out)
        assert [r["closed_form"] for r in payload["rows"]] == [8, 12]

    def test_bad_range(self, capsys):
        code, _, err = run(
            capsys, ["table", "--d", "2", "--k", "2", "--n-lo", "2", "--n-hi", "4"]
        )
        assert code == 2
