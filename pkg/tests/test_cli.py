from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import pytest

from icyf.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_slate(capsys):
    code, out, _ = run(capsys, "slate", "--n", "3", "--s", "6/5")
    data = json.loads(out)
    assert code == 0 and data["sigma"] == 1 and data["one_player_decides"] == 2
    assert [t["threshold"] for t in data["thresholds"]] == ["1", "3/2", "9/4"]


def test_slate_csv_and_exclusive_tie(capsys):
    code, out, _ = run(capsys, "slate", "--n", "2", "--s", "1", "--tie", "p2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["comparison"] for r in rows] == [">", ">"]


def test_curve_breakpoints(capsys):
    code, out, _ = run(capsys, "curve", "--n", "10", "--samples", "11", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    steps = [r for r in rows if r["kind"] == "step"]
    assert code == 0 and len(steps) == 10 and len(rows) == 21
    assert steps[1]["alpha"] == "63/256"


def test_asymptote(capsys):
    code, out, _ = run(capsys, "asymptote", "--samples", "5")
    assert code == 0 and len(json.loads(out)) == 5


def test_target_and_bvalue(capsys):
    code, out, _ = run(capsys, "target", "--n", "3", "--s", "1")
    assert code == 0 and json.loads(out)["frozen_target_max"]["value"] == "2/3"
    code, out, _ = run(capsys, "bvalue", "--n-max", "5", "--format", "csv")
    assert code == 0 and out.splitlines()[-1].startswith("5,15/8,")


def test_oracles(capsys):
    code, out, _ = run(capsys, "oracle-game1", "--k", "3", "--s", "3/2", "--D", "12")
    assert code == 0 and json.loads(out)["oracle_value"] == 2
    code, out, _ = run(capsys, "oracle-game2", "--n", "3", "--s", "1", "--D", "6")
    assert code == 0 and json.loads(out)["oracle_value"]["value"] == "2/3"


def test_graph_split(capsys):
    code, out, _ = run(capsys, "graph-split", "--builtin", "ten-node", "--c", "1", "--vertex", "0")
    assert code == 0 and json.loads(out)["valid"] is True
    code, out, _ = run(capsys, "graph-split", "--file", str(DATA / "ten-node.json"), "--c", "1")
    assert code == 0 and json.loads(out)["valid"] is True


def test_graph_split_invalid_vertex_exits_2(capsys):
    code, out, err = run(capsys, "graph-split", "--builtin", "ten-node", "--c", "1", "--vertex", "9")
    assert code == 2 and json.loads(out)["valid"] is False and "verification failed" in err


def test_geosim_is_deterministic(capsys):
    args = ("geosim", "--file", str(DATA / "stair-6532-u4.json"), "--strategy", "random", "--seed", "5")
    code, first, _ = run(capsys, *args)
    assert code == 0
    assert run(capsys, *args)[1] == first
    data = json.loads(first)
    assert data["violations"] == [] and data["bound_holds"]


def test_play(capsys):
    code, out, _ = run(capsys, "play", "--n", "3", "--s", "6/5")
    assert code == 0 and json.loads(out)["slate_p1"] == 1
    args = ("play", "--n", "4", "--s", "2", "--p2", "random", "--seed", "3")
    first = run(capsys, *args)
    assert first[0] == 0 and run(capsys, *args)[1] == first[1]


def test_icif_play(capsys):
    code, out, _ = run(capsys, "icif-play", "--n", "2", "--s", "11/10")
    assert code == 0 and json.loads(out)["slate_p1"] == 2


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "half-vote")
    assert code == 0 and out.startswith("[PASS]")


def test_output_file(capsys, tmp_path):
    path = tmp_path / "b.csv"
    code, out, _ = run(capsys, "bvalue", "--n-max", "3", "--format", "csv", "--output", str(path))
    assert code == 0 and out == "" and path.read_text().startswith("n,b_value")


@pytest.mark.parametrize("argv", [
    ["slate", "--n", "3", "--s", "7"],
    ["slate", "--n", "3"],
    ["slate", "--n", "3", "--s", "x/y"],
    ["play", "--n", "2", "--s", "1", "--p1", "random"],
    ["geosim", "--file", "missing.json", "--strategy", "packer", "--seed", "1"],
    ["nonsense"],
    ["oracle-game1", "--k", "9", "--s", "1"],
])
def test_usage_errors_exit_1(capsys, argv):
    assert run(capsys, *argv)[0] == 1
