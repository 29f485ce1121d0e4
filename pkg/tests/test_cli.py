import csv
import io
import json
import subprocess
import sys

import pytest

from hilbkit import cache
from hilbkit.cli import main, weight_table
from hilbkit.partitions import Partition


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_weights_single_box(capsys):
    code, out, _ = run(capsys, "weights", "1")
    assert code == 0
    assert out == "1  (0,1), (1,0)\n"


def test_weights_marks_modified_entries():
    text = weight_table(Partition((3, 1)), (0, 2))
    assert text.splitlines()[1:3] == ["2  *(0,1), (1,-1)", "3  *(-1,2), (2,-2)"]
    assert "*" not in text.splitlines()[0] + text.splitlines()[3]


@pytest.mark.parametrize("argv", [
    ["weights", "3,1", "--corner", "0,1"],
    ["weights", "1,3"],
    ["weights", "3,1", "--corner", "x"],
    ["verify", "no-such-id"],
    ["verify", "prop-m1", "--m-min", "3", "--m-max", "1"],
    ["compute", "qm", "--n", "1"],
    ["compute", "kirwan", "--n", "1", "--expr", "p1 +"],
    ["compute", "push-q", "--theory", "H", "--n", "1", "--m", "-1"],
    ["basis", "0"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("hilb: error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 2


def test_verify_json_report(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "prop-m1", "--n-max", "4", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["parameters"]["theorems"] == ["prop-m1"]
    assert report["summary"] == {"pass": len(report["cases"]), "fail": 0, "error": 0}
    assert {c["n"] for c in report["cases"]} == {1, 2, 3, 4}
    assert all(set(c) >= {"theorem", "n", "m", "status", "witnesses"} for c in report["cases"])
    assert "wall_time_seconds" not in report


def test_verify_csv_and_text(capsys):
    _, out, _ = run(capsys, "verify", "cor-m0", "--n-max", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["theorem", "n", "m", "status", "witnesses"]
    assert all(r[3] == "pass" for r in rows[1:])
    _, out, _ = run(capsys, "verify", "cor-m0", "--n-max", "3")
    assert out.splitlines()[0].split()[:2] == ["cor-m0", "pass"]
    assert out.splitlines()[-1].startswith("total:")


def test_reports_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "lem-adams1", "--n-max", "4", "--format", "json", "-o", str(a)]) == 0
    assert main(["verify", "lem-adams1", "--n-max", "4", "--format", "json", "-o", str(b), "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_timing_flag_adds_wall_time(capsys):
    _, out, _ = run(capsys, "verify", "lem-adams2", "--format", "json", "--timing")
    assert "wall_time_seconds" in json.loads(out)


def test_compute_push_q(capsys):
    code, out, _ = run(capsys, "compute", "push-q", "--n", "2", "--m", "1")
    assert code == 0
    data = json.loads(out)
    assert data["target_n"] == 3 and data["class"]["theory"] == "K"
    # 1 + q + t at the partition (2,1)
    assert sorted(data["class"]["restrictions"]["2,1"]) == [[0, 0, "1", "1"], [0, 1, "1", "1"], [1, 0, "1", "1"]]


def test_compute_operators(capsys, tmp_path):
    code, out, _ = run(capsys, "compute", "qm", "--n", "1", "--m", "2")
    assert code == 0 and json.loads(out)["provenance"] == "recursion"
    target = tmp_path / "q1.json"
    assert main(["compute", "q1", "--n", "2", "--expr", "p1", "-o", str(target)]) == 0
    assert json.loads(target.read_text())["target_n"] == 3
    code, out, _ = run(capsys, "compute", "kirwan", "--theory", "H", "--n", "2", "--expr", "p2")
    assert json.loads(out)["class"]["theory"] == "H"


def test_basis_command(capsys):
    code, out, _ = run(capsys, "basis", "2", "--expr", "e1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["partitions"] == ["2", "1,1"]
    assert data["coordinates"] == ["-1/2", "0"]
    assert data["determinant_at_t1"] != "0"


def test_list_contains_all_ids(capsys):
    from hilbkit.theorems import REGISTRY
    _, out, _ = run(capsys, "list")
    assert [line.split()[0] for line in out.splitlines()] == list(REGISTRY)


def test_corrupt_cache_entry_warns(tmp_path):
    env_cmd = [sys.executable, "-m", "hilbkit.cli", "--cache-dir", str(tmp_path), "compute", "push-q",
               "--n", "1", "--m", "2"]
    first = subprocess.run(env_cmd, capture_output=True, text=True, check=True)
    files = list(tmp_path.glob("*.json"))
    assert files
    for f in files:
        f.write_text("garbage")
    second = subprocess.run(env_cmd, capture_output=True, text=True)
    assert second.returncode == 0
    assert second.stdout == first.stdout
    assert "corrupt" in second.stderr
    cache.set_cache_dir(None)


def test_console_script_installed():
    out = subprocess.run(["hilb", "weights", "2,2", "--corner", "1,1"], capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.splitlines()[0] == "1  (-1,1), *(1,0)"
