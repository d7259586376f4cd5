"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -s` to see every line.  All
statistical checks are seeded and therefore reproducible; stated runtime
budgets are asserted as hard caps and hold with wide margin.
"""

import time
from pathlib import Path

from matroidwelfare.harness import (DEFAULT_SEED, ExperimentConfig,
                                    _verify_lemma5, check_claim8_toss,
                                    check_competitive_sanity,
                                    check_cover_bound, check_greedy_baseline,
                                    check_rounding_statistics,
                                    load_instance, run_experiment, verify)

DATA = Path(__file__).parent / "data"


def _report(number: int, name: str, passed: bool, elapsed: float,
            extra: str = "") -> None:
    status = "PASS" if passed else "FAIL"
    tail = f" ({extra})" if extra else ""
    print(f"ACCEPTANCE {number:2d} {name}: {status} "
          f"[{elapsed:.1f}s]{tail}", flush=True)
    assert passed, f"criterion {number} ({name}) failed{tail}"


def _run_suite(number: int, name: str, suite: str, budget: float) -> None:
    start = time.perf_counter()
    result = verify(suite, master_seed=DEFAULT_SEED)[0]
    elapsed = time.perf_counter() - start
    extra = f"{result.checks} checks, {result.failures} failures"
    if result.details and not result.passed:
        extra += "; " + result.details[0]
    _report(number, name, result.passed and elapsed < budget, elapsed, extra)


def test_criterion_01_matroid_axioms():
    _run_suite(1, "matroid axioms + rank submodularity",
               "matroid-axioms", budget=30.0)


def test_criterion_02_feasibility():
    _run_suite(2, "fractional output feasible for the restricted LP",
               "lemma4-feasibility", budget=120.0)


def test_criterion_03_z_mass_bound_with_mutation():
    start = time.perf_counter()
    result = verify("lemma5-bound", master_seed=DEFAULT_SEED)[0]
    mutated = _verify_lemma5(DEFAULT_SEED, divisor=4.0)
    elapsed = time.perf_counter() - start
    ok = result.passed and mutated.failures > 0
    _report(3, "per-element z mass bound (constant 48, natural log)",
            ok, elapsed,
            f"{result.checks} checks clean; divisor-4 mutation fails "
            f"{mutated.failures} of them")


def test_criterion_04_update_ratio():
    _run_suite(4, "deterministic update-ratio bounds", "lemma8-ratio",
               budget=120.0)


def test_criterion_05_rounding_size():
    start = time.perf_counter()
    size_res, _ = check_rounding_statistics(DEFAULT_SEED)
    elapsed = time.perf_counter() - start
    _report(5, "mean rounded-set size vs fractional mass", size_res.passed
            and elapsed < 120.0, elapsed,
            "; ".join(size_res.details))


def test_criterion_06_rounding_safety():
    start = time.perf_counter()
    _, safety_res = check_rounding_statistics(DEFAULT_SEED)
    elapsed = time.perf_counter() - start
    _report(6, "rounded sets independent and monotone", safety_res.passed,
            elapsed, f"{safety_res.checks} per-round checks")


def test_criterion_07_cover_bound():
    start = time.perf_counter()
    result = check_cover_bound(DEFAULT_SEED)
    elapsed = time.perf_counter() - start
    _report(7, "sampled sets covered by few independent sets",
            result.passed, elapsed,
            f"{result.checks} checks, worst slack {result.worst_slack:.3f}")


def test_criterion_08_last_element_toss():
    start = time.perf_counter()
    result = check_claim8_toss(DEFAULT_SEED)
    elapsed = time.perf_counter() - start
    _report(8, "exact toss probability of placed-last elements >= 1/2",
            result.passed, elapsed, f"{result.checks} placements")


def test_criterion_09_decomposition():
    _run_suite(9, "per-guess decomposition feasible and objective-exact",
               "lemma3-decomposition", budget=60.0)


def test_criterion_10_greedy_baseline():
    start = time.perf_counter()
    result = check_greedy_baseline(DEFAULT_SEED, count=500)
    elapsed = time.perf_counter() - start
    _report(10, "greedy baseline at least half of brute-force optimum",
            result.passed, elapsed, f"{result.checks} instances")


def test_criterion_11_weighted_reduction():
    _run_suite(11, "weight bucketing bound and under-counting scale",
               "weighted-bound", budget=120.0)


def test_criterion_12_competitive_sanity():
    start = time.perf_counter()
    result = check_competitive_sanity(DEFAULT_SEED, instances=50,
                                      trials=1000, constant=200.0)
    elapsed = time.perf_counter() - start
    _report(12, "mean pipeline profit clears the conservative ratio",
            result.passed and elapsed < 600.0, elapsed,
            f"{result.checks} instances, worst slack "
            f"{result.worst_slack:.3f}")


def test_criterion_13_determinism(tmp_path):
    start = time.perf_counter()
    instance = load_instance(str(DATA / "tiny_instance.json"))
    outputs = []
    for tag in ("first", "second"):
        csv_path = tmp_path / f"{tag}.csv"
        json_path = tmp_path / f"{tag}.json"
        run_experiment(ExperimentConfig(
            instance=instance, trials=25, master_seed=2024,
            csv_path=str(csv_path), json_path=str(json_path)))
        outputs.append((csv_path.read_bytes(), json_path.read_bytes()))
    elapsed = time.perf_counter() - start
    _report(13, "identical config and seed give byte-identical outputs",
            outputs[0] == outputs[1], elapsed)
