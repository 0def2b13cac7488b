"""Tests for the ``raysearch.cli`` module"""
import csv
import io
import json

import pytest
from numpy import testing as npt

from raysearch.cli import build_parser, main


def run_cli(command, *extra):
    """Run the command line given as a string, followed by the arguments in
    ``extra``"""
    stdout, stderr = io.StringIO(), io.StringIO()
    argv = command.split() + list(extra)
    code = main(argv, stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


def run_json(command, *extra):
    code, out, err = run_cli(command, *extra)
    assert code == 0, err
    return json.loads(out)


def test_parser_subcommands():
    parser = build_parser()
    args = parser.parse_args("simulate --w 3 --lambda 2 --n 5".split())
    assert args.command == "simulate"
    assert (args.w, args.lam, args.n, args.path) == (3, 2, 5.0, 0)
    assert args.strategy == "det_multi"


def test_ratio():
    record = run_json("ratio --w 3 --lambda 2")
    assert record["schema"] == 1
    assert record["det_ratio"] == 10
    npt.assert_allclose(record["rand_multi_bound"], 5.414, atol=1e-3)


def test_simulate():
    record = run_json("simulate --w 2 --strategy det_single --n 3 --path 1")
    assert record["ledger"]["total"] == 17
    npt.assert_allclose(record["ratio"], 17 / 3)
    assert "trace" not in record


def test_simulate_trace():
    record = run_json(
        "simulate --w 3 --lambda 3 --strategy straight --n 5 --trace"
    )
    assert record["ratio"] == 3
    assert record["trace"]["lambda"] == 3


def test_simulate_randomized_requires_seed():
    code, out, err = run_cli("simulate --w 2 --strategy rand_single --n 3")
    assert code == 1
    assert out == ""
    assert json.loads(err)["error"]["type"] == "DomainError"


def test_plan():
    record = run_json("plan --w 2 --strategy rand_single --seed 4 --horizon 3")
    assert record["strategy"] == "rand_single"
    assert record["horizon"] == 3
    assert len(record["segments"]) == 6
    assert sorted(record["params"]["permutation"]) == [0, 1]


def test_plan_requires_horizon():
    code, _, err = run_cli("plan --w 2")
    assert code == 2
    assert json.loads(err)["error"]["type"] == "UsageError"


def test_adversary():
    record = run_json("adversary --w 2 --n-max 4096")
    assert record["ratio"] == (9 * 2 ** 11 - 1) / (2 ** 11 + 1)
    assert record["goal"] == {"path": 1, "distance": 2049.0}


def test_mc():
    record = run_json("mc --w 3 --lambda 3 --n 6 --trials 10 --seed 1")
    assert record["point"] == 3
    assert record["lambda"] == 3
    assert record["bound"] == 3


def test_mc_byte_identical():
    command = "mc --w 2 --n 20 --trials 25 --seed 99"
    first = run_cli(command)
    assert first[0] == 0
    assert run_cli(command) == first


def test_seq(tmp_path):
    path = tmp_path / "turns.json"
    path.write_text(
        json.dumps({"w": 2, "h": [1, 2, 4, 8, 16], "a": [0, 1, 0, 1, 0]})
    )
    record = run_json("seq --witness 2", str(path))
    assert record["kind"] == "w-sequence"
    assert record["H"]["rows"][0] == {"i": 1, "value": 3.0}
    assert record["H"]["omitted"] == [4, 5]
    assert record["witness"]["j_star"] == 2
    assert "fact1_gap" not in record


def test_seq_csv_output(tmp_path):
    path = tmp_path / "cyclic.csv"
    path.write_text("i,s\n1,1\n2,2\n3,4\n4,8\n")
    code, out, _ = run_cli("seq --w 2 --format csv", str(path))
    assert code == 0
    assert out.splitlines()[0] == "quantity,i,value"
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [row["quantity"] for row in rows] == ["S"] * 3
    assert [float(row["value"]) for row in rows] == [3, 3.5, 3.75]


def test_seq_csv_keeps_summary(tmp_path):
    """Test that the CSV table ends with the scalar results"""
    path = tmp_path / "turns.json"
    path.write_text(
        json.dumps({"w": 2, "h": [1, 2, 4, 8, 16], "a": [0, 1, 0, 1, 0]})
    )
    code, out, err = run_cli(
        "seq --format csv --window 2 --witness 2", str(path)
    )
    assert code == 0, err
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [row["quantity"] for row in rows] == ["H"] * 3 + ["S"] * 4 + [
        "single_robot_ratio",
        "fact1_gap",
        "witness.j_star",
        "witness.s_ratio",
        "witness.h_ratio",
        "witness.case",
    ]
    summary = {row["quantity"]: row for row in rows[7:]}
    assert float(summary["single_robot_ratio"]["value"]) == 8.5
    assert summary["single_robot_ratio"]["i"] == ""
    assert float(summary["fact1_gap"]["value"]) == -0.125
    assert summary["witness.j_star"]["i"] == "2"
    assert summary["witness.j_star"]["value"] == "2"


def test_seq_witness_requires_w_sequence(tmp_path):
    path = tmp_path / "cyclic.json"
    path.write_text(json.dumps({"w": 2, "s": [1, 2, 4]}))
    code, _, _ = run_cli("seq --witness 1", str(path))
    assert code == 2


def test_seq_missing_file(tmp_path):
    code, _, err = run_cli("seq", str(tmp_path / "missing.json"))
    assert code == 1
    assert json.loads(err)["error"]["type"] == "FileNotFoundError"


@pytest.mark.parametrize(
    "name, content",
    [
        ("broken.json", "{not json"),
        ("list.json", "[1, 2, 3]"),
        ("words.json", json.dumps({"w": 2, "s": [1, "two"]})),
        ("labels.csv", "i,h,a\n1,1,0\n2,2,x\n"),
        ("ragged.csv", "i,s\n1,1\n2,2,3\n"),
    ],
)
def test_seq_malformed_input(tmp_path, name, content):
    path = tmp_path / name
    path.write_text(content)
    code, out, err = run_cli("seq --w 2", str(path))
    assert code == 1
    assert out == ""
    assert json.loads(err)["error"]["type"] == "DomainError"


def test_gfun():
    record = run_json("gfun --w 2 --epsilon 1 --rate 2 --k 2")
    npt.assert_allclose(record["g"], 6)
    npt.assert_allclose(record["finite_sum_bound"], 3.5 / 1.3862943611198906)
    assert record["prefix"] == []


def test_gfun_prefix():
    record = run_json("gfun --w 2 --epsilon 0.5 --prefix 1,3")
    assert record["prefix"] == [1.0, 3.0]
    npt.assert_allclose(record["rate"], 3.5911, atol=1e-4)


def test_schedule():
    record = run_json("schedule --w 2 --strategy det_single --horizon 3")
    assert [event["mode"] for event in record["events"]] == [
        "resume",
        "fresh-replay",
        "fresh-replay",
    ]
    assert record["replay_cost"] == 1
    assert [event["basic_algorithm"] for event in record["events"]] == [
        0,
        1,
        0,
    ]


def test_sweep_csv():
    code, out, _ = run_cli("sweep --w 3,2 --lambda 1,2 --n 8,16 --format csv")
    assert code == 0
    assert out.splitlines()[0] == "w,lambda,n,ratio,ci_low,ci_high,seed"
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(row["w"], row["lambda"]) for row in rows] == [
        ("2", "1"),
        ("2", "1"),
        ("2", "2"),
        ("2", "2"),
        ("3", "1"),
        ("3", "1"),
        ("3", "2"),
        ("3", "2"),
    ]


def test_sweep_json_lines():
    code, out, _ = run_cli("sweep --w 2 --n 4,8")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert [row["n"] for row in rows] == [4, 8]


def test_sweep_randomized_requires_trials():
    code, _, _ = run_cli("sweep --strategy rand_multi --w 3 --n 4 --seed 1")
    assert code == 2


@pytest.mark.parametrize(
    "command",
    [
        "",
        "unknown",
        "ratio",
        "ratio --w two",
        "simulate --w 2 --n 3 --strategy spiral",
        "mc --w 2 --n 3 --trials 10",
    ],
)
def test_usage_errors(command):
    code, out, err = run_cli(command)
    assert code == 2
    assert out == ""
    assert json.loads(err)["schema"] == 1


@pytest.mark.parametrize(
    "command",
    [
        "ratio --w 1",
        "ratio --w 2 --lambda 3",
        "adversary --w 2 --n-max 1",
        "simulate --w 2 --n 0.5",
        "gfun --w 2 --epsilon 0",
        "plan --w 2 --horizon 1100",
        "plan --w 3 --lambda 3 --horizon 1100",
        "plan --w 2 --strategy rand_single --seed 1 --horizon 600",
    ],
)
def test_domain_errors(command):
    code, out, err = run_cli(command)
    assert code == 1
    assert out == ""
    assert json.loads(err)["error"]["type"] == "DomainError"


def test_simulate_beyond_finite_radii():
    """Test that a goal beyond the largest finite radius exhausts the
    horizon instead of overflowing"""
    code, out, err = run_cli("simulate --w 2 --n 1e308")
    assert code == 1
    assert out == ""
    assert json.loads(err)["error"]["type"] == "HorizonExhaustedError"
