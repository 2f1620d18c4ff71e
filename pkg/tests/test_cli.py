import csv
import io
import json
import subprocess
import sys

import pytest

from egomotif.cli import main


@pytest.fixture
def pair_file(tmp_path):
    path = tmp_path / "pair.txt"
    path.write_text("0 E A\n300 E A\n")
    return path


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_mine_pair_example(pair_file, capsys):
    code, out, err = run(["mine", "--input", pair_file, "--k", "1", "--n-null", "0", "--alpha", "1"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["signature"] == "11" and rows[0]["count"] == "2"
    assert "snapshots=2" in err and "signatures=1" in err


def test_mine_writes_files(pair_file, tmp_path, capsys):
    prefix = tmp_path / "out"
    code, out, _ = run(["mine", "--input", pair_file, "--k", "1", "--n-null", "3", "--gamma", "1",
                        "--output", prefix], capsys)
    assert code == 0 and out == ""
    assert (tmp_path / "out.counts.csv").read_text().startswith("signature,count\n")
    meta = json.loads((tmp_path / "out.counts.csv.meta.json").read_text())
    assert meta["k"] == 1 and meta["delta_t"] == 300
    assert (tmp_path / "out.report.csv").exists()
    code, _, _ = run(["mine", "--input", pair_file, "--k", "1", "--n-null", "3", "--format", "json",
                      "--output", prefix], capsys)
    assert json.loads((tmp_path / "out.counts.json").read_text())["counts"] == {"11": 2}


def test_missing_input(tmp_path, capsys):
    code, _, err = run(["mine", "--input", tmp_path / "nope.txt"], capsys)
    assert code == 2 and "no such input" in err


def test_graph_too_short(pair_file, capsys):
    code, _, err = run(["mine", "--input", pair_file, "--k", "2"], capsys)
    assert code == 3 and "graph too short for order k" in err


def test_no_partial_output_on_bad_params(pair_file, tmp_path, capsys):
    prefix = tmp_path / "bad"
    for extra in (["--delta-t", "0"], ["--alpha", "3"], ["--k", "0"]):
        code, _, _ = run(["mine", "--input", pair_file, "--output", prefix] + extra, capsys)
        assert code != 0
    code, _, _ = run(["mine", "--input", pair_file, "--k", "1", "--n-null", "0", "--output", prefix], capsys)
    assert code == 1
    assert list(tmp_path.iterdir()) == [pair_file]


@pytest.fixture
def generated(tmp_path, capsys):
    path = tmp_path / "er.txt"
    code, _, _ = run(["generate", "--topology", "er", "--n", "64", "--p", "0.01", "--steps", "301",
                      "--f", "0.3", "--seed", "1", "--output", path], capsys)
    assert code == 0
    return path


def test_generate_example(generated, tmp_path, capsys):
    rows = [ln.split() for ln in generated.read_text().splitlines()]
    assert len({r[2] for r in rows}) == 301
    again = tmp_path / "again.txt"
    run(["generate", "--topology", "er", "--n", "64", "--p", "0.01", "--steps", "301",
         "--f", "0.3", "--seed", "1", "--output", again], capsys)
    assert again.read_bytes() == generated.read_bytes()


def test_generate_f_zero(tmp_path, capsys):
    path = tmp_path / "still.txt"
    assert run(["generate", "--topology", "sw", "--n", "20", "--nn", "4", "--steps", "5", "--f", "0",
                "--output", path], capsys)[0] == 0
    by_t = {}
    for u, v, ts, _ in (ln.split() for ln in path.read_text().splitlines()):
        by_t.setdefault(ts, set()).add((u, v))
    assert len(by_t) == 5 and len({frozenset(s) for s in by_t.values()}) == 1


def test_distance_same_file_twice(generated, capsys):
    base = ["distance", "--input", generated, "--input", generated, "--input-format", "interval",
            "--delta-t", "1", "--k", "2", "--n-null", "10", "--alpha", "0.5", "--gamma", "1"]
    code, out, _ = run(base, capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert float(rows[1][2]) == 0 and float(rows[2][1]) == 0
    code, out, _ = run(base + ["--method", "laplacian", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["matrix"][0][1] == 0
    code, out, _ = run(base + ["--method", "netsimile-mod", "--labels", "a,b"], capsys)
    assert code == 0 and out.startswith(",a,b")


def test_distance_usage_errors(generated, capsys):
    assert run(["distance", "--input", generated], capsys)[0] == 2
    assert run(["distance", "--input", generated, "--input", generated, "--labels", "x"], capsys)[0] == 2
    assert run(["distance", "--input", generated, "--input", generated, "--motif-mode", "top:0"], capsys)[0] == 1


def test_module_entry_point(pair_file):
    proc = subprocess.run([sys.executable, "-m", "egomotif", "mine", "--input", str(pair_file), "--k", "1",
                           "--n-null", "0", "--alpha", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "11,2," in proc.stdout


def test_optional_flags(generated, capsys):
    base = ["distance", "--input", generated, "--input", generated, "--input-format", "interval",
            "--delta-t", "1", "--k", "1", "--n-null", "5", "--alpha", "0.5", "--gamma", "1"]
    for extra in (["--raw-variance", "--motif-mode", "top:2"], ["--method", "laplacian", "--largest-eigenvalues"],
                  ["--count-ties"]):
        code, out, _ = run(base + extra, capsys)
        assert code == 0 and float(list(csv.reader(io.StringIO(out)))[1][2]) == 0
