"""Generator, experiment-runner and CLI tests."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

DATA = Path(__file__).parent / "data"

from matroidwelfare import Instance, InvalidInputError, Partition, Uniform
from matroidwelfare.cli import main
from matroidwelfare.generators import coverage_arrival_matroid, generate
from matroidwelfare.harness import (CSV_COLUMNS, ExperimentConfig,
                                    instance_from_dict, instance_to_dict,
                                    load_instance, report_csv,
                                    run_experiment, save_instance, verify)


def test_generate_determinism():
    a = generate("random-partition", {"m": 8, "n": 6}, 5)
    b = generate("random-partition", {"m": 8, "n": 6}, 5)
    assert a == b
    c = generate("random-partition", {"m": 8, "n": 6}, 6)
    assert a != c


def test_generate_shapes_and_kinds():
    for kind in ("random-uniform", "random-partition", "random-graphic",
                 "max-coverage"):
        inst = generate(kind, {"m": 8, "n": 12}, 3)
        assert inst.m == 8 and inst.n == 12
        assert all(a.matroid.m == 8 for a in inst.arrivals)
        assert not inst.constraint.loops()
    with pytest.raises(InvalidInputError):
        generate("nope", {"m": 4, "n": 2}, 0)


def test_max_coverage_arrival_block_structure():
    # three sets {a, b}, {b, c}, {c}: the arrival for element b has a single
    # capacity-1 block holding sets 0 and 1
    arrival_b = coverage_arrival_matroid(3, (0, 1))
    assert isinstance(arrival_b, Partition)
    assert arrival_b.blocks == ((0, 1), (2,))
    assert arrival_b.caps == (1, 0)
    assert arrival_b.rank({0, 1, 2}) == 1
    assert arrival_b.rank({2}) == 0


def test_instance_json_round_trip(tmp_path):
    inst = generate("max-coverage", {"m": 6, "n": 5}, 9)
    d = instance_to_dict(inst)
    assert d["m"] == 6 and len(d["arrivals"]) == 5
    assert instance_from_dict(d) == inst
    path = tmp_path / "inst.json"
    save_instance(inst, str(path))
    assert load_instance(str(path)) == inst
    weighted = generate("random-uniform", {"m": 5, "n": 4, "max_weight": 9}, 2)
    assert instance_from_dict(instance_to_dict(weighted)) == weighted


def test_run_experiment_rows_and_aggregates():
    inst = generate("random-partition", {"m": 8, "n": 6}, 13)
    report = run_experiment(ExperimentConfig(instance=inst, trials=20,
                                             master_seed=99))
    assert len(report.rows) == 20
    assert report.opt_kind == "brute-force"
    agg = report.aggregates
    assert agg["trials"] == 20
    assert agg["frac_profit_mean"] == pytest.approx(
        sum(r.frac_profit for r in report.rows) / 20)
    assert agg["int_profit_mean"] == pytest.approx(
        sum(r.int_profit for r in report.rows) / 20)
    assert agg["ratio_mean"] == pytest.approx(
        agg["int_profit_mean"] / report.opt_value)
    assert len(report.cover_rounds) == 20
    assert report.greedy_value >= report.opt_value / 2 - 1e-9


def test_run_experiment_greedy_fallback_above_cap():
    inst = generate("random-partition", {"m": 20, "n": 4}, 21)
    report = run_experiment(ExperimentConfig(instance=inst, trials=2))
    assert report.opt_kind == "greedy-lower-bound"
    assert all(r.opt_kind == "greedy-lower-bound" for r in report.rows)


def test_run_experiment_shuffle_order_is_deterministic(tmp_path):
    # one shuffled element order per (experiment, alpha): trials share the
    # fractional cache and repeated configs are byte-identical
    inst_path = tmp_path / "inst.json"
    save_instance(generate("random-partition", {"m": 8, "n": 6}, 18),
                  str(inst_path))
    texts = []
    for tag in ("a", "b"):
        csv_path = tmp_path / f"s{tag}.csv"
        run_experiment(ExperimentConfig(
            instance_path=str(inst_path), trials=8, master_seed=55,
            order_policy="shuffle", csv_path=str(csv_path)))
        texts.append(csv_path.read_text())
    assert texts[0] == texts[1]
    weighted_path = tmp_path / "w.json"
    save_instance(generate("random-uniform",
                           {"m": 6, "n": 4, "max_weight": 5}, 18),
                  str(weighted_path))
    report = run_experiment(ExperimentConfig(
        instance_path=str(weighted_path), trials=4, master_seed=55,
        order_policy="shuffle"))
    assert len(report.rows) == 4


def test_cli_run_accepts_shuffle_order(tmp_path):
    runner = CliRunner()
    inst = tmp_path / "inst.json"
    res = runner.invoke(main, ["gen", "--kind", "random-graphic", "--m", "8",
                               "--n", "6", "--seed", "2", "-o", str(inst)])
    assert res.exit_code == 0, res.output
    res = runner.invoke(main, ["run", "--instance", str(inst),
                               "--trials", "4", "--seed", "3",
                               "--order", "shuffle",
                               "--csv", str(tmp_path / "s.csv")])
    assert res.exit_code == 0, res.output


def test_run_experiment_deterministic_outputs(tmp_path):
    inst_path = tmp_path / "inst.json"
    save_instance(generate("random-uniform", {"m": 7, "n": 5}, 4),
                  str(inst_path))
    outputs = []
    for tag in ("a", "b"):
        csv_path = tmp_path / f"{tag}.csv"
        json_path = tmp_path / f"{tag}.json"
        run_experiment(ExperimentConfig(
            instance_path=str(inst_path), trials=10, master_seed=1234,
            csv_path=str(csv_path), json_path=str(json_path)))
        outputs.append((csv_path.read_bytes(), json_path.read_bytes()))
    assert outputs[0] == outputs[1]


def test_csv_schema():
    inst = generate("random-uniform", {"m": 6, "n": 4}, 7)
    report = run_experiment(ExperimentConfig(instance=inst, trials=3))
    lines = report_csv(report).splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 4
    weighted = generate("random-uniform", {"m": 6, "n": 4, "max_weight": 5}, 7)
    wreport = run_experiment(ExperimentConfig(instance=weighted, trials=3))
    header = report_csv(wreport).splitlines()[0]
    assert header.startswith(",".join(CSV_COLUMNS))
    assert "scaled_profit" in header


def test_weighted_experiment_rows_carry_scales():
    inst = generate("random-partition", {"m": 6, "n": 5, "max_weight": 8}, 15)
    report = run_experiment(ExperimentConfig(instance=inst, trials=5))
    assert report.weighted
    for row in report.rows:
        assert row.extras["scaled_profit"] <= \
            row.extras["exact_weighted_profit"] + 1e-9
        assert row.int_profit == row.extras["exact_weighted_profit"]


def test_single_trial_matches_golden_row():
    # the tiny two-element instance is fully hand-checkable: the fractional
    # run saturates both elements (profit 1.0) and opt picks both (value 2)
    instance = load_instance(str(DATA / "tiny_instance.json"))
    report = run_experiment(ExperimentConfig(instance=instance, trials=1,
                                             master_seed=7))
    assert report.rows[0].frac_profit == 1.0
    assert report.opt_value == 2.0
    golden = (DATA / "golden_tiny_row.csv").read_text()
    assert report_csv(report) == golden


def test_verify_unknown_suite_rejected():
    with pytest.raises(InvalidInputError):
        verify("lemma42")


def test_cli_gen_run_verify(tmp_path):
    runner = CliRunner()
    inst = tmp_path / "inst.json"
    res = runner.invoke(main, ["gen", "--kind", "max-coverage", "--m", "6",
                               "--n", "5", "--seed", "3", "-o", str(inst)])
    assert res.exit_code == 0, res.output
    assert inst.exists()

    csv_path = tmp_path / "out.csv"
    json_path = tmp_path / "out.json"
    res = runner.invoke(main, ["run", "--instance", str(inst),
                               "--trials", "5", "--seed", "11",
                               "--csv", str(csv_path),
                               "--json", str(json_path)])
    assert res.exit_code == 0, res.output
    assert "opt=" in res.output
    payload = json.loads(json_path.read_text())
    assert payload["aggregates"]["trials"] == 5
    assert payload["instance"]["m"] == 6
    assert csv_path.read_text().splitlines()[0] == ",".join(CSV_COLUMNS)


def test_cli_verify_small_suite():
    runner = CliRunner()
    res = runner.invoke(main, ["verify", "--suite", "matroid-axioms"])
    assert res.exit_code == 0, res.output
    assert "[PASS] matroid-axioms" in res.output


def test_instance_header_mismatch_rejected():
    inst = generate("random-uniform", {"m": 5, "n": 2}, 1)
    d = instance_to_dict(inst)
    d["m"] = 9
    with pytest.raises(InvalidInputError):
        instance_from_dict(d)
