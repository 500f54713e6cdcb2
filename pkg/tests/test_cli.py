from __future__ import annotations

import json
import math

import pytest

from rball import cli


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


LENS_INPUT = {"dim": 2, "r": 2.0, "points": [[-1, 0], [1, 0]]}


class TestCompute:
    def test_planar_polyhedron(self, tmp_path, capsys):
        code, out, _ = run(capsys, ["compute", "polyhedron", "--input", write(tmp_path, "p.json", LENS_INPUT)])
        data = json.loads(out)
        assert code == 0 and data["schema"] == "rball.compute/1"
        assert data["body"]["kind"] == "proper"
        assert data["measures"]["area"] == pytest.approx(2 * (4 * math.pi / 3 - math.sqrt(3)), abs=1e-12)

    def test_planar_hull(self, tmp_path, capsys):
        code, out, _ = run(capsys, ["compute", "hull", "--input", write(tmp_path, "p.json", LENS_INPUT)])
        assert code == 0
        assert json.loads(out)["measures"]["inradius"] == pytest.approx(2 - math.sqrt(3), abs=1e-12)

    def test_radius_override_empty(self, tmp_path, capsys):
        code, out, _ = run(capsys, ["compute", "polyhedron", "--r", "0.5",
                                    "--input", write(tmp_path, "p.json", LENS_INPUT)])
        assert code == 0 and json.loads(out)["body"]["kind"] == "empty"

    def test_round_trip(self, tmp_path, capsys):
        inp = write(tmp_path, "p.json", {"dim": 3, "r": 2.0, "points": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]]})
        first = str(tmp_path / "first.json")
        second = str(tmp_path / "second.json")
        assert cli.main(["compute", "polyhedron", "--input", inp, "--samples", "20000",
                         "--directions", "100", "--report", first]) == 0
        assert cli.main(["compute", "polyhedron", "--input", first, "--samples", "20000",
                         "--directions", "100", "--report", second]) == 0
        a, b = json.loads(open(first).read()), json.loads(open(second).read())
        assert a["seed"] == b["seed"] and a["input"] == b["input"]
        for key, value in a["measures"]["values"].items():
            assert b["measures"]["values"][key] == pytest.approx(value, abs=1e-12)

    def test_whole_space(self, tmp_path, capsys):
        inp = write(tmp_path, "w.json", {"dim": 3, "r": 1.0, "points": "whole-space"})
        _, out, _ = run(capsys, ["compute", "hull", "--input", inp])
        assert json.loads(out)["body"]["kind"] == "whole-space"
        _, out, _ = run(capsys, ["compute", "polyhedron", "--input", inp])
        assert json.loads(out)["body"]["kind"] == "empty"

    def test_highd_hull_two_points(self, tmp_path, capsys):
        inp = write(tmp_path, "s.json", {"dim": 3, "r": 2.0, "points": [[-1, 0, 0], [1, 0, 0]]})
        code, out, _ = run(capsys, ["compute", "hull", "--input", inp, "--seed", "1"])
        data = json.loads(out)
        assert code == 0 and data["body"]["kind"] == "spindle" and data["seed"] == 1

    def test_highd_hull_outer(self, tmp_path, capsys):
        inp = write(tmp_path, "h.json", {"dim": 3, "r": 2.0, "points": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
        code, out, _ = run(capsys, ["compute", "hull", "--input", inp, "--seed", "1",
                                    "--samples", "20000", "--centers", "64"])
        data = json.loads(out)
        assert code == 0 and data["body"]["kind"] == "outer-approximation"

    @pytest.mark.parametrize("content", ["not json", "[1, 2]", '{"dim": 2, "points": [[0, 0]]}',
                                         '{"dim": 2, "r": -1, "points": [[0, 0]]}',
                                         '{"dim": 2, "r": 1, "points": [[0, 0, 0]]}'])
    def test_bad_input(self, tmp_path, capsys, content):
        path = tmp_path / "bad.json"
        path.write_text(content)
        code, _, err = run(capsys, ["compute", "polyhedron", "--input", str(path)])
        assert code == 2 and err.startswith("rball:")

    def test_missing_file(self, tmp_path, capsys):
        assert run(capsys, ["compute", "hull", "--input", str(tmp_path / "none.json")])[0] == 2


class TestShapes:
    def test_lens(self, capsys):
        code, out, _ = run(capsys, ["shapes", "lens", "--dim", "3", "--r", "1", "--rho", "0.5"])
        data = json.loads(out)
        assert code == 0 and data["schema"] == "rball.shapes/1"
        assert data["profile"]["values"]["3"] == pytest.approx(5 * math.pi / 12, rel=1e-12)

    def test_spindle_full(self, capsys):
        code, out, _ = run(capsys, ["shapes", "spindle", "--dim", "3", "--r", "1", "--lambda", "1"])
        assert code == 0
        assert json.loads(out)["profile"]["values"]["3"] == pytest.approx(4 * math.pi / 3, rel=1e-12)

    @pytest.mark.parametrize("argv", [["shapes", "lens", "--dim", "3", "--r", "1"],
                                      ["shapes", "spindle", "--dim", "3", "--r", "1", "--lambda", "2"],
                                      ["shapes", "cube", "--dim", "3", "--r", "1"]])
    def test_bad(self, capsys, argv):
        assert run(capsys, argv)[0] == 2


class TestVerify:
    def test_pass(self, tmp_path, capsys):
        report, table = tmp_path / "r.json", tmp_path / "r.csv"
        code, _, err = run(capsys, ["verify", "theorem1", "--dim", "2", "--n", "10", "--trials", "50",
                                    "--seed", "7", "--report", str(report), "--csv", str(table)])
        data = json.loads(report.read_text())
        assert code == 0 and data["summary"]["pass"] == 50 and data["seed"] == 7
        assert len(table.read_text().splitlines()) == 51
        assert "theorem1: seed=7" in err

    def test_violation_exit(self, capsys):
        assert run(capsys, ["verify", "symmetral-2d", "--trials", "10", "--seed", "0"])[0] == 1

    def test_inconclusive_exit(self, capsys):
        code, out, _ = run(capsys, ["verify", "theorem2", "--dim", "3", "--trials", "3", "--samples", "10",
                                    "--seed", "1"])
        assert code == 3 and json.loads(out)["summary"]["inconclusive"] > 0

    def test_inconclusive_budget(self, capsys):
        code, _, _ = run(capsys, ["verify", "theorem2", "--dim", "3", "--trials", "3", "--samples", "10",
                                  "--seed", "1", "--inconclusive-budget", "3"])
        assert code == 0

    def test_seed_echoed(self, capsys):
        code, out, err = run(capsys, ["verify", "jung-symmetral", "--trials", "2"])
        seed = json.loads(out)["seed"]
        assert code == 0 and f"rball: seed {seed}" in err

    @pytest.mark.parametrize("argv", [["verify", "nope"], ["verify", "kadets", "--dim", "3"],
                                      ["verify", "theorem1", "--trials", "0"]])
    def test_bad(self, capsys, argv):
        assert run(capsys, argv + ["--seed", "1"])[0] == 2


class TestExplore:
    def test_planar(self, capsys):
        code, out, _ = run(capsys, ["explore", "1", "--iterations", "40", "--seed", "2"])
        data = json.loads(out)
        assert code == 0 and data["suite"] == "explore-conjecture1"
        assert data["notes"]["claim"].startswith("none")

    @pytest.mark.parametrize("argv", [["explore", "5"], ["explore", "1", "--k", "4"], ["explore", "2", "--dim", "5"]])
    def test_bad(self, capsys, argv):
        assert run(capsys, argv + ["--seed", "1"])[0] == 2


def test_usage_errors(capsys):
    assert cli.main([]) == 2
    assert cli.main(["--version"]) == 0
