"""Command-line entry point: `gen`, `run`, and `verify`."""

from __future__ import annotations

import sys

import click

from . import harness
from .generators import KINDS, generate


@click.group()
def main():
    """Experiments for online welfare maximization under a matroid
    constraint."""


@main.command("gen")
@click.option("--kind", "-k", type=click.Choice(KINDS), required=True)
@click.option("--m", "m", type=int, default=8, show_default=True,
              help="Ground-set size (number of sets for max-coverage).")
@click.option("--n", "n", type=int, default=8, show_default=True,
              help="Number of arrivals.")
@click.option("--rank", "rank_bound", type=int, default=0,
              help="Constraint rank bound where the kind takes one.")
@click.option("--max-weight", type=int, default=None,
              help="Random integer weights in [1, W]; omit for unweighted.")
@click.option("--seed", "-s", type=int, default=harness.DEFAULT_SEED,
              show_default=True)
@click.option("--out", "-o", "out_path", type=click.Path(), required=True)
def gen_cmd(kind, m, n, rank_bound, max_weight, seed, out_path):
    """Generate a random instance and write it as JSON."""
    params = {"m": m, "n": n}
    if rank_bound:
        params["k"] = rank_bound
    if max_weight is not None:
        params["max_weight"] = max_weight
    instance = generate(kind, params, seed)
    harness.save_instance(instance, out_path)
    click.echo(f"wrote {kind} instance (m={instance.m}, n={instance.n}) "
               f"to {out_path}")


@main.command("run")
@click.option("--instance", "-i", "instance_path",
              type=click.Path(exists=True), required=True)
@click.option("--trials", "-t", type=int, default=100, show_default=True)
@click.option("--seed", "-s", type=int, default=harness.DEFAULT_SEED,
              show_default=True)
@click.option("--scheme", type=click.Choice(["known", "unknown"]),
              default="known", show_default=True)
@click.option("--order", type=click.Choice(["asc", "desc", "shuffle"]),
              default="asc", show_default=True)
@click.option("--ratio-known/--ratio-unknown", default=True,
              help="Weighted instances: whether the weight spread is known.")
@click.option("--csv", "csv_path", type=click.Path(), default=None)
@click.option("--json", "json_path", type=click.Path(), default=None)
@click.option("--invariants", is_flag=True,
              help="Run every invariant suite first and embed the summary.")
def run_cmd(instance_path, trials, seed, scheme, order, ratio_known,
            csv_path, json_path, invariants):
    """Run seeded trials of the full pipeline on an instance file."""
    config = harness.ExperimentConfig(
        instance_path=instance_path, trials=trials, master_seed=seed,
        scheme=scheme, order_policy=order, ratio_known=ratio_known,
        csv_path=csv_path, json_path=json_path, run_invariants=invariants)
    report = harness.run_experiment(config)
    agg = report.aggregates
    click.echo(f"trials={agg['trials']} "
               f"frac_mean={agg['frac_profit_mean']:.4f} "
               f"int_mean={agg['int_profit_mean']:.4f} "
               f"opt={report.opt_value} ({report.opt_kind})")
    if "ratio_mean" in agg:
        click.echo(f"empirical ratio (mean profit / opt) = "
                   f"{agg['ratio_mean']:.4f}")
    for path in (csv_path, json_path):
        if path:
            click.echo(f"wrote {path}")


@main.command("verify")
@click.option("--suite", type=click.Choice(harness.SUITES + ("all",)),
              required=True)
@click.option("--seed", "-s", type=int, default=harness.DEFAULT_SEED,
              show_default=True)
def verify_cmd(suite, seed):
    """Run a named invariant suite; exit 0 iff every check passes."""
    results = harness.verify(suite, master_seed=seed)
    failed = False
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        worst = "n/a" if res.worst_slack is None else f"{res.worst_slack:.3e}"
        click.echo(f"[{status}] {res.name}: {res.checks} checks, "
                   f"{res.failures} failures, worst slack {worst}, "
                   f"{res.elapsed:.1f}s")
        for line in res.details[:10]:
            click.echo(f"    {line}")
        failed = failed or not res.passed
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
