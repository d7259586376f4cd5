"""Experiment harness: instance files, seeded trial runs, CSV/JSON reports,
and the lemma-level invariant suites.

The invariant suites are the library's acceptance engine: each one replays a
statement from the analysis (feasibility, per-element z mass, update ratios,
rounding size, covering, decomposition, weight bucketing) against brute-force
oracles at desk scale and reports counts plus the worst slack seen.
"""

from __future__ import annotations

import csv
import io
import json
import math
import statistics
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from scipy import stats as scipy_stats

from . import covering, offline, polytope
from .errors import DegenerateInstanceError, InvalidInputError
from .fractional import (GROWTH_RATE, RATIO_BOUND, Z_SUM_DIVISOR, Arrival,
                         Instance, KnownN, UnknownN, growth_factor, run_algg,
                         sample_alpha)
from .generators import generate
from .matroids import (Explicit, Graphic, MatroidSpec, Partition, Uniform,
                       spec_from_dict, spec_to_dict)
from .offline import (CLASS_COVER_LOWER, brute_force_opt, check_lp2,
                      decompose_optimal, greedy_opt)
from .rng import derive_rng, derive_seed
from .rounding import full_pipeline, run_coupled
from .weighted import run_weighted, verify_bucket_bound, weight_stats

DEFAULT_SEED = 20240801

# -- instance files ----------------------------------------------------------


def instance_to_dict(instance: Instance) -> dict:
    arrivals = []
    for a in instance.arrivals:
        entry: dict = {"matroid": spec_to_dict(a.matroid)}
        if a.weights is not None:
            entry["weights"] = list(a.weights)
        arrivals.append(entry)
    return {"m": instance.m,
            "constraint": spec_to_dict(instance.constraint),
            "arrivals": arrivals}


def instance_from_dict(d: dict) -> Instance:
    constraint = spec_from_dict(d["constraint"])
    arrivals = tuple(
        Arrival(spec_from_dict(entry["matroid"]),
                tuple(entry["weights"]) if "weights" in entry else None)
        for entry in d["arrivals"])
    instance = Instance(constraint, arrivals)
    if d.get("m") not in (None, instance.m):
        raise InvalidInputError("instance header m disagrees with constraint")
    return instance


def save_instance(instance: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_dict(instance), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return instance_from_dict(json.load(fh))


# -- experiment runner --------------------------------------------------------

CSV_COLUMNS = ("seed", "alpha", "frac_profit", "int_profit", "F_size",
               "opt", "opt_kind")
WEIGHTED_EXTRA_COLUMNS = ("bucket", "scale", "unweighted_profit",
                          "scaled_profit", "exact_weighted_profit")


@dataclass
class ExperimentConfig:
    instance: Instance | None = None
    instance_path: str | None = None
    trials: int = 1
    master_seed: int = DEFAULT_SEED
    scheme: str = "known"            # "known" | "unknown"
    order_policy: str = "asc"
    csv_path: str | None = None
    json_path: str | None = None
    ratio_known: bool = True         # weighted instances only
    run_invariants: bool = False

    def load(self) -> Instance:
        if self.instance is not None:
            return self.instance
        if self.instance_path is None:
            raise InvalidInputError("config needs an instance or a path")
        return load_instance(self.instance_path)


@dataclass
class TrialRow:
    seed: int
    alpha: int
    frac_profit: float
    int_profit: float
    f_size: int
    opt: float
    opt_kind: str
    extras: dict = field(default_factory=dict)


@dataclass
class RunReport:
    rows: list[TrialRow]
    aggregates: dict
    opt_value: float
    opt_kind: str
    greedy_value: float
    cover_rounds: list[int]
    instance_summary: dict
    weighted: bool

    def to_dict(self) -> dict:
        return {
            "instance": self.instance_summary,
            "opt": {"value": self.opt_value, "kind": self.opt_kind,
                    "greedy_value": self.greedy_value},
            "weighted": self.weighted,
            "aggregates": self.aggregates,
            "cover_rounds": self.cover_rounds,
        }


def _scheme_for(name: str, n: int):
    if name == "known":
        return KnownN(max(1, n))
    if name == "unknown":
        return UnknownN()
    raise InvalidInputError(f"unknown scheme {name!r} (known|unknown)")


def _mean_se(values: Sequence[float]) -> tuple[float, float]:
    if not values:
        return 0.0, 0.0
    mean = statistics.fmean(values)
    if len(values) < 2:
        return mean, 0.0
    return mean, statistics.stdev(values) / math.sqrt(len(values))


def _aggregate(rows: list[TrialRow], opt_value: float) -> dict:
    frac_mean, frac_se = _mean_se([r.frac_profit for r in rows])
    int_mean, int_se = _mean_se([r.int_profit for r in rows])
    f_mean, _ = _mean_se([float(r.f_size) for r in rows])
    agg = {
        "trials": len(rows),
        "frac_profit_mean": frac_mean,
        "frac_profit_se": frac_se,
        "int_profit_mean": int_mean,
        "int_profit_se": int_se,
        "f_size_mean": f_mean,
    }
    if opt_value > 0:
        agg["ratio_mean"] = int_mean / opt_value
    return agg


def run_experiment(config: ExperimentConfig) -> RunReport:
    """Run seeded trials, compute the offline references, emit CSV/JSON.

    The offline optimum is exhaustive up to the brute-force cap and falls
    back to the greedy value (flagged `greedy-lower-bound`) beyond it.
    Identical configs produce byte-identical outputs.
    """
    instance = config.load()
    weighted = not instance.is_unweighted
    scheme = _scheme_for(config.scheme, instance.n)
    greedy_value = greedy_opt(instance).value
    if instance.m <= offline.BRUTE_FORCE_LIMIT:
        opt_value, opt_kind = brute_force_opt(instance).value, "brute-force"
    else:
        opt_value, opt_kind = greedy_value, "greedy-lower-bound"

    rows: list[TrialRow] = []
    cover_rounds: list[int] = []
    fractional_cache: dict = {}
    invariants = None
    if config.run_invariants:
        invariants = [
            {"suite": r.name, "checks": r.checks, "failures": r.failures}
            for r in verify("all", master_seed=config.master_seed)]
    for t in range(config.trials):
        trial_seed = derive_seed(config.master_seed, "trial", t)
        if weighted:
            result = run_weighted(instance, scheme, config.ratio_known,
                                  trial_seed,
                                  order_policy=config.order_policy,
                                  order_seed=config.master_seed)
            trace = result.trace
            rows.append(TrialRow(
                seed=trial_seed, alpha=trace.alpha,
                frac_profit=trace.fractional_total,
                int_profit=result.exact_weighted_profit,
                f_size=len(trace.final_set),
                opt=opt_value, opt_kind=opt_kind,
                extras={"bucket": result.bucket, "scale": result.scale,
                        "unweighted_profit": result.unweighted_profit,
                        "scaled_profit": result.scaled_profit,
                        "exact_weighted_profit":
                            result.exact_weighted_profit}))
        else:
            trace = full_pipeline(instance, scheme, trial_seed,
                                  fractional_cache=fractional_cache,
                                  order_policy=config.order_policy,
                                  order_seed=config.master_seed)
            rows.append(TrialRow(
                seed=trial_seed, alpha=trace.alpha,
                frac_profit=trace.fractional_total,
                int_profit=trace.total_profit,
                f_size=len(trace.final_set),
                opt=opt_value, opt_kind=opt_kind))
            state = fractional_cache[trace.alpha]
            half = [v / 2.0 for v in state.x]
            drawn = covering.sample_set(half, derive_rng(trial_seed, "cover"))
            cover_rounds.append(
                covering.first_fit_cover(instance.constraint, drawn).rounds)

    report = RunReport(
        rows=rows, aggregates=_aggregate(rows, opt_value),
        opt_value=opt_value, opt_kind=opt_kind, greedy_value=greedy_value,
        cover_rounds=cover_rounds,
        instance_summary={"m": instance.m, "n": instance.n,
                          "weighted": weighted,
                          "constraint_kind":
                              spec_to_dict(instance.constraint)["kind"]},
        weighted=weighted)
    if config.csv_path:
        with open(config.csv_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(report_csv(report))
    if config.json_path:
        payload = report.to_dict()
        payload["config"] = {"trials": config.trials,
                             "master_seed": config.master_seed,
                             "scheme": config.scheme,
                             "order_policy": config.order_policy}
        if invariants is not None:
            payload["invariants"] = invariants
        with open(config.json_path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return report


def report_csv(report: RunReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    columns = CSV_COLUMNS + (WEIGHTED_EXTRA_COLUMNS if report.weighted else ())
    writer.writerow(columns)
    for r in report.rows:
        row = [r.seed, r.alpha, repr(r.frac_profit), repr(r.int_profit),
               r.f_size, repr(r.opt), r.opt_kind]
        if report.weighted:
            row += [r.extras["bucket"], repr(r.extras["scale"]),
                    repr(r.extras["unweighted_profit"]),
                    repr(r.extras["scaled_profit"]),
                    repr(r.extras["exact_weighted_profit"])]
        writer.writerow(row)
    return buf.getvalue()


# -- invariant suites ---------------------------------------------------------

SUITES = ("matroid-axioms", "lemma4-feasibility", "lemma5-bound",
          "lemma7-size", "lemma8-ratio", "lemma9-cover",
          "lemma3-decomposition", "weighted-bound")


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: int = 0
    worst_slack: float | None = None
    elapsed: float = 0.0
    details: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def check(self, ok: bool, slack: float | None = None,
              detail: str | None = None) -> None:
        self.checks += 1
        if slack is not None:
            if self.worst_slack is None or slack < self.worst_slack:
                self.worst_slack = slack
        if not ok:
            self.failures += 1
            if detail and len(self.details) < 20:
                self.details.append(detail)


def _axiom_catalog() -> list[MatroidSpec]:
    specs: list[MatroidSpec] = []
    for m, k in [(2, 1), (4, 2), (5, 0), (6, 3), (8, 4), (8, 8)]:
        specs.append(Uniform(m, k))
    specs.append(Partition(4, ((0, 1), (2, 3)), (1, 1)))
    specs.append(Partition(6, ((0, 1, 2), (3, 4), (5,)), (2, 1, 0)))
    specs.append(Partition(8, ((0, 1, 2, 3), (4, 5, 6, 7)), (2, 3)))
    specs.append(Graphic(3, ((0, 1), (1, 2), (2, 0))))
    specs.append(Graphic(4, ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2))))
    specs.append(Graphic(4, ((0, 1), (0, 1), (2, 3), (1, 2), (3, 3))))
    specs.append(Graphic(5, ((0, 1), (1, 2), (2, 0), (2, 3), (3, 4),
                             (4, 2), (0, 4), (1, 3))))
    specs.append(Explicit(3, ((0, 1, 2),)))
    specs.append(Explicit(4, ((0, 1), (2, 3))))
    specs.append(Explicit(4, ((0, 1, 2), (0, 1, 3), (2, 3))))
    specs.append(Explicit(5, ((0,), (1, 2, 3))))
    return specs


def _verify_matroid_axioms(master_seed: int) -> SuiteResult:
    res = SuiteResult("matroid-axioms")
    rng = derive_rng(master_seed, "axioms")
    for spec in _axiom_catalog():
        m = spec.m
        size = 1 << m
        indep = [spec._independent_mask(mask) for mask in range(size)]
        ranks = [spec.rank([e for e in range(m) if mask >> e & 1])
                 for mask in range(size)]
        # hereditary: every one-element deletion of an independent set
        for mask in range(size):
            if not indep[mask]:
                continue
            rest = mask
            ok = True
            while rest:
                low = rest & -rest
                if not indep[mask ^ low]:
                    ok = False
                rest ^= low
            res.check(ok, detail=f"hereditary fails on {spec} mask={mask}")
        # exchange: |A| > |B| independent pairs
        indep_masks = [mask for mask in range(size) if indep[mask]]
        for a in indep_masks:
            ca = a.bit_count()
            for b in indep_masks:
                if ca <= b.bit_count():
                    continue
                extra = a & ~b
                ok = False
                while extra:
                    low = extra & -extra
                    if indep[b | low]:
                        ok = True
                        break
                    extra ^= low
                res.check(ok, detail=f"exchange fails on {spec} "
                                     f"A={a:b} B={b:b}")
        # rank submodularity over all pairs
        worst = None
        bad = 0
        for a in range(size):
            ra = ranks[a]
            for b in range(size):
                slack = ra + ranks[b] - ranks[a | b] - ranks[a & b]
                if worst is None or slack < worst:
                    worst = slack
                if slack < 0:
                    bad += 1
        res.check(bad == 0, slack=float(worst),
                  detail=f"submodularity fails {bad} times on {spec}")
        # closed-form rank vs greedy augmentation
        for mask in range(size):
            base = MatroidSpec._rank_mask(spec, mask)
            res.check(ranks[mask] == base,
                      detail=f"closed-form rank mismatch on {spec} "
                             f"mask={mask}: {ranks[mask]} vs {base}")
        # greedy weighted rank vs exhaustive maximum
        for _ in range(5):
            w = [rng.randint(0, 8) for _ in range(m)]
            subset = [e for e in range(m) if rng.random() < 0.7]
            sub_mask = 0
            for e in subset:
                sub_mask |= 1 << e
            best = 0.0
            sub = sub_mask
            while True:
                if indep[sub]:
                    best = max(best, sum(w[e] for e in range(m)
                                         if sub >> e & 1))
                if sub == 0:
                    break
                sub = (sub - 1) & sub_mask
            got = spec.weighted_rank(subset, w)
            res.check(abs(got - best) < 1e-9,
                      detail=f"greedy weighted rank {got} != {best} "
                             f"on {spec} S={subset} w={w}")
    return res


def _feasibility_kinds(idx: int) -> str:
    return ("random-uniform", "random-partition", "random-graphic",
            "max-coverage")[idx % 4]


@lru_cache(maxsize=4)
def _feasibility_runs(master_seed: int, count: int, max_m: int, max_n: int):
    """(instance, alpha, final AlgG state) triples shared by the lemma
    4/5/8 suites; regenerating them is deterministic in the seed."""
    runs = []
    for idx in range(count):
        rng = derive_rng(master_seed, "feas", idx)
        m = rng.randint(4, max_m)
        n = rng.randint(2, max_n)
        kind = _feasibility_kinds(idx)
        instance = generate(kind, {"m": m, "n": n},
                            derive_seed(master_seed, "feas-inst", idx))
        alpha = sample_alpha(KnownN(n), derive_rng(master_seed, "feas-a", idx))
        runs.append((instance, alpha, run_algg(instance, alpha)))
    return tuple(runs)


def _verify_lemma4(master_seed: int, count: int = 200) -> SuiteResult:
    res = SuiteResult("lemma4-feasibility")
    for instance, alpha, state in _feasibility_runs(master_seed, count, 12, 16):
        violations = [v for v in check_lp2(instance, alpha, state.x, state.z)
                      if v.constraint != CLASS_COVER_LOWER]
        res.check(not violations,
                  detail=f"alpha={alpha} m={instance.m}: "
                         + "; ".join(f"{v.constraint}:{v.amount:.3g}"
                                     for v in violations[:3]))
    return res


def _verify_lemma5(master_seed: int, count: int = 200,
                   divisor: float = Z_SUM_DIVISOR) -> SuiteResult:
    """Per element: sum_i z_{i,e} >= (alpha / (divisor * ln m)) *
    (x_e - 1/m^2).  Passing a smaller divisor than the analysis constant is
    the mutation hook the acceptance test uses."""
    res = SuiteResult("lemma5-bound")
    for instance, alpha, state in _feasibility_runs(master_seed, count, 12, 16):
        m = instance.m
        totals = [0.0] * m
        for per_round in state.z.values():
            for e, v in per_round.items():
                totals[e] += v
        coeff = alpha / (divisor * math.log(m))
        for e in range(m):
            bound = coeff * (state.x[e] - 1.0 / (m * m))
            slack = totals[e] - bound
            res.check(slack >= -polytope.EPS, slack=slack,
                      detail=f"element {e}: sum z={totals[e]:.6g} < "
                             f"bound={bound:.6g} (alpha={alpha}, m={m})")
    return res


def _verify_lemma8(master_seed: int, count: int = 200) -> SuiteResult:
    res = SuiteResult("lemma8-ratio")
    for instance, alpha, state in _feasibility_runs(master_seed, count, 12, 16):
        m = instance.m
        hard = growth_factor(m, alpha) - 1.0
        linear = RATIO_BOUND * math.log(m) / alpha
        use_linear = alpha >= GROWTH_RATE * math.log(m)
        for rec in state.trace:
            ratio = rec.dx / rec.x_before
            res.check(ratio <= hard + polytope.EPS,
                      slack=hard - ratio,
                      detail=f"ratio {ratio:.6g} > exp bound {hard:.6g}")
            if use_linear:
                res.check(ratio <= linear + polytope.EPS,
                          slack=linear - ratio,
                          detail=f"ratio {ratio:.6g} > linear bound "
                                 f"{linear:.6g} (alpha={alpha}, m={m})")
    return res


def reference_instance() -> Instance:
    """The fixed rounding instance: Uniform(8, 3) constraint and eight
    seeded partition arrivals."""
    base = generate("random-partition", {"m": 8, "n": 8}, 0xF1ED)
    return Instance(Uniform(8, 3), base.arrivals)


def _merge_results(name: str, parts: Sequence[SuiteResult]) -> SuiteResult:
    merged = SuiteResult(name)
    for part in parts:
        merged.checks += part.checks
        merged.failures += part.failures
        if part.worst_slack is not None:
            if merged.worst_slack is None \
                    or part.worst_slack < merged.worst_slack:
                merged.worst_slack = part.worst_slack
        merged.details.extend(part.details)
    return merged


@lru_cache(maxsize=2)
def check_rounding_statistics(master_seed: int = DEFAULT_SEED,
                              seeds: int = 10_000
                              ) -> tuple[SuiteResult, SuiteResult]:
    """Rounding-size and rounding-safety checks on the fixed reference
    instance: mean |F| over seeded trials against sum(x)/8 - 3 standard
    errors per guess, and independence/monotonicity of every per-round set."""
    size_res = SuiteResult("rounding-size")
    safety_res = SuiteResult("rounding-safety")
    instance = reference_instance()
    constraint = instance.constraint
    for alpha in (1, 2, 4, 8):
        state = run_algg(instance, alpha)
        target = sum(state.x) / 8.0
        sizes = []
        for t in range(seeds):
            trace = run_coupled(instance, alpha,
                                derive_rng(master_seed, "l7", alpha, t),
                                fractional=state)
            sizes.append(len(trace.final_set))
            prev: frozenset[int] = frozenset()
            for f_i in trace.f_rounds:
                safety_res.check(constraint.is_independent(f_i),
                                 detail=f"alpha={alpha} trial {t}: "
                                        f"dependent F_i {sorted(f_i)}")
                safety_res.check(prev <= f_i,
                                 detail=f"alpha={alpha} trial {t}: "
                                        f"F shrank")
                prev = f_i
        mean = statistics.fmean(sizes)
        se = statistics.stdev(sizes) / math.sqrt(len(sizes))
        slack = mean - (target - 3.0 * se)
        size_res.check(slack >= 0, slack=slack,
                       detail=f"alpha={alpha}: mean |F|={mean:.4f} < "
                              f"sum x/8 - 3SE = {target - 3 * se:.4f}")
        size_res.details.append(
            f"alpha={alpha}: mean|F|={mean:.4f} target={target:.4f} "
            f"se={se:.4f}")
    return size_res, safety_res


def _verify_lemma7(master_seed: int) -> SuiteResult:
    return _merge_results("lemma7-size",
                          check_rounding_statistics(master_seed))


def _half_polytope_point(spec: MatroidSpec, rng) -> list[float]:
    """Random z with z(S) <= r(S)/2: water-fill x inside P(M), halve it."""
    x = [0.0] * spec.m
    order = list(range(spec.m))
    rng.shuffle(order)
    for e in order:
        cap = polytope.headroom(spec, x, e)
        x[e] = rng.uniform(0.0, cap)
    return [v / 2.0 for v in x]


def _cover_specs(master_seed: int) -> list[MatroidSpec]:
    rng = derive_rng(master_seed, "cover-specs")
    specs: list[MatroidSpec] = []
    from .generators import _random_graphic_spec, _random_partition_spec
    for i in range(20):
        family = i % 3
        m = rng.randint(6, 12)
        if family == 0:
            specs.append(Uniform(m, rng.randint(1, max(1, m // 2))))
        elif family == 1:
            specs.append(_random_partition_spec(m, rng, min_cap=1))
        else:
            specs.append(_random_graphic_spec(m, rng))
    return specs


CLAIM8_CASES: tuple[tuple[MatroidSpec, tuple[float, ...]], ...] = (
    (Uniform(4, 2), (0.25, 0.25, 0.25, 0.25)),
    (Uniform(5, 2), (0.3, 0.3, 0.2, 0.1, 0.1)),
    (Partition(6, ((0, 1, 2), (3, 4, 5)), (1, 2)),
     (1 / 6, 1 / 6, 1 / 6, 0.3, 0.3, 0.3)),
    (Graphic(4, ((0, 1), (1, 2), (2, 0), (0, 3))), (0.25, 0.25, 0.25, 0.25)),
    (Explicit(4, ((0, 1, 2),)), (0.3, 0.3, 0.3, 0.4)),
)


def check_cover_bound(master_seed: int = DEFAULT_SEED,
                      samples_per_point: int = 10_000,
                      n_proxy: int = 16) -> SuiteResult:
    """First-fit cover sizes of sampled half-polytope points stay within the
    logarithmic bound, and the sequential process is distributionally
    equivalent to independent sampling."""
    res = SuiteResult("cover-bound")
    # high-probability first-fit cover bound
    for idx, spec in enumerate(_cover_specs(master_seed)):
        rng = derive_rng(master_seed, "cover-z", idx)
        z = _half_polytope_point(spec, rng)
        bound = 4.0 * (math.log2(spec.m) + math.log2(n_proxy)) + 2.0
        within = 0
        worst_rounds = 0
        for _ in range(samples_per_point):
            drawn = covering.sample_set(z, rng)
            rounds = covering.first_fit_cover(spec, drawn).rounds
            worst_rounds = max(worst_rounds, rounds)
            if rounds <= bound:
                within += 1
        frac = within / samples_per_point
        res.check(frac >= 0.99, slack=frac - 0.99,
                  detail=f"spec {idx}: only {frac:.4f} within bound {bound}")
        res.details.append(f"spec {idx} (m={spec.m}): worst rounds "
                           f"{worst_rounds}, bound {bound:.1f}")
    # distributional equivalence of the sequential process
    for spec, z, trials in (
            (Uniform(4, 2), (0.5, 0.5, 0.5, 0.5), 100_000),
            (Graphic(3, ((0, 1), (1, 2), (2, 0))), (0.4, 0.5, 0.6), 30_000)):
        m = spec.m
        rng = derive_rng(master_seed, "cover-chi", m)
        counts = [0] * (1 << m)
        ordering = list(range(m))
        for _ in range(trials):
            result = covering.sequential_rounds_cover(spec, z, rng, ordering)
            mask = 0
            for e in result.sampled:
                mask |= 1 << e
            counts[mask] += 1
        expected = []
        for mask in range(1 << m):
            p = 1.0
            for e in range(m):
                p *= z[e] if mask >> e & 1 else 1.0 - z[e]
            expected.append(p * trials)
        chi = scipy_stats.chisquare(counts, expected)
        res.check(chi.pvalue > 0.01, slack=chi.pvalue - 0.01,
                  detail=f"chi-square p={chi.pvalue:.4g} on m={m}")
        res.details.append(f"chi-square m={m}: p={chi.pvalue:.4f}")
    return res


def check_claim8_toss(master_seed: int = DEFAULT_SEED,
                      samples: int = 3000) -> SuiteResult:
    """At every recursion level of the last-element ordering, the exact toss
    probability of the element it placed last is at least 1/2 (verified by
    exhaustive enumeration on the small catalog cases)."""
    res = SuiteResult("claim8-toss")
    for case_idx, (spec, z) in enumerate(CLAIM8_CASES):
        rng = derive_rng(master_seed, "claim8", case_idx)
        ordering = covering.last_element_order(spec, z, rng, samples=samples)
        for pos in range(spec.m - 1, -1, -1):
            remaining = ordering[:pos + 1]
            exact = covering.exact_toss_probability(spec, z, remaining,
                                                    ordering[pos])
            res.check(exact >= 0.5 - 1e-12, slack=exact - 0.5,
                      detail=f"case {case_idx}: element {ordering[pos]} "
                             f"placed last with exact p={exact:.4f}")
    return res


def _verify_lemma9(master_seed: int) -> SuiteResult:
    return _merge_results("lemma9-cover", (check_cover_bound(master_seed),
                                           check_claim8_toss(master_seed)))


def _verify_lemma3(master_seed: int, count: int = 100) -> SuiteResult:
    res = SuiteResult("lemma3-decomposition")
    for idx in range(count):
        rng = derive_rng(master_seed, "l3", idx)
        m = rng.randint(3, 10)
        n = rng.randint(2, 12)
        instance = generate(_feasibility_kinds(idx), {"m": m, "n": n},
                            derive_seed(master_seed, "l3-inst", idx))
        opt = brute_force_opt(instance)
        solutions = decompose_optimal(instance, opt)
        total = 0.0
        ok = True
        for sol in solutions:
            total += sol.objective
            if check_lp2(instance, sol.alpha, sol.x, sol.z):
                ok = False
        res.check(ok, detail=f"instance {idx}: infeasible per-guess solution")
        res.check(total == opt.value, slack=-(abs(total - opt.value)),
                  detail=f"instance {idx}: objectives sum {total} != "
                         f"opt {opt.value}")
    return res


def _verify_weighted(master_seed: int, count: int = 200,
                     pipeline_trials: int = 60) -> SuiteResult:
    res = SuiteResult("weighted-bound")
    for idx in range(count):
        rng = derive_rng(master_seed, "wb", idx)
        m = rng.randint(3, 10)
        n = rng.randint(2, 8)
        max_w = rng.choice([3, 8, 16])
        # redraw the rare instance whose arrivals are all loops (weight
        # bucketing is undefined without a positive singleton value)
        for salt in range(100):
            instance = generate(_feasibility_kinds(idx),
                                {"m": m, "n": n, "max_weight": max_w},
                                derive_seed(master_seed, "wb-inst", idx, salt))
            try:
                weight_stats(instance)
                break
            except DegenerateInstanceError:
                continue
        subset = [e for e in range(m) if rng.random() < 0.6]
        res.check(verify_bucket_bound(instance, subset),
                  detail=f"instance {idx}: bucket bound fails on S={subset}")
        # every positive singleton lands in exactly one bucket
        stats = weight_stats(instance)
        for a in instance.arrivals:
            w = a.unit_weights()
            for e in range(m):
                if w[e] > 0 and a.matroid.is_independent({e}):
                    hits = sum(
                        1 for j in range(stats.num_buckets)
                        if (1 << j) * stats.f_min <= w[e]
                        < (1 << (j + 1)) * stats.f_min)
                    res.check(hits == 1,
                              detail=f"instance {idx}: weight {w[e]} in "
                                     f"{hits} buckets")
        if idx < pipeline_trials:
            for ratio_known in (True, False):
                result = run_weighted(instance, KnownN(n), ratio_known,
                                      derive_seed(master_seed, "wb-run", idx,
                                                  ratio_known))
                slack = result.exact_weighted_profit - result.scaled_profit
                res.check(slack >= -1e-9, slack=slack,
                          detail=f"instance {idx}: scaled "
                                 f"{result.scaled_profit} > exact "
                                 f"{result.exact_weighted_profit}")
    return res


_SUITE_FUNCS = {
    "matroid-axioms": _verify_matroid_axioms,
    "lemma4-feasibility": _verify_lemma4,
    "lemma5-bound": _verify_lemma5,
    "lemma7-size": _verify_lemma7,
    "lemma8-ratio": _verify_lemma8,
    "lemma9-cover": _verify_lemma9,
    "lemma3-decomposition": _verify_lemma3,
    "weighted-bound": _verify_weighted,
}


def verify(suite: str, master_seed: int = DEFAULT_SEED) -> list[SuiteResult]:
    """Run one named invariant suite, or all of them."""
    names = SUITES if suite == "all" else (suite,)
    results = []
    for name in names:
        func = _SUITE_FUNCS.get(name)
        if func is None:
            raise InvalidInputError(
                f"unknown suite {suite!r}; choose from "
                f"{', '.join(SUITES)} or 'all'")
        start = time.perf_counter()
        result = func(master_seed)
        result.elapsed = time.perf_counter() - start
        results.append(result)
    return results


# -- standalone checks used by the acceptance tests ---------------------------

def check_greedy_baseline(master_seed: int = DEFAULT_SEED,
                          count: int = 500) -> SuiteResult:
    """greedy >= brute-force optimum / 2 on random small instances."""
    res = SuiteResult("greedy-baseline")
    for idx in range(count):
        rng = derive_rng(master_seed, "greedy", idx)
        m = rng.randint(3, 9)
        n = rng.randint(1, 8)
        instance = generate(_feasibility_kinds(idx), {"m": m, "n": n},
                            derive_seed(master_seed, "greedy-inst", idx))
        opt = brute_force_opt(instance)
        greedy = greedy_opt(instance)
        slack = greedy.value - opt.value / 2.0
        res.check(slack >= -1e-9, slack=slack,
                  detail=f"instance {idx}: greedy {greedy.value} < "
                         f"half of {opt.value}")
    return res


def check_competitive_sanity(master_seed: int = DEFAULT_SEED,
                             instances: int = 50,
                             trials: int = 1000,
                             constant: float = 200.0) -> SuiteResult:
    """Mean pipeline profit over seeded trials stays above
    OPT / (constant * ln m * ln^2 n) on brute-forceable instances."""
    res = SuiteResult("competitive-sanity")
    for idx in range(instances):
        rng = derive_rng(master_seed, "comp", idx)
        m = rng.randint(4, 12)
        n = rng.randint(2, 16)
        instance = generate(_feasibility_kinds(idx), {"m": m, "n": n},
                            derive_seed(master_seed, "comp-inst", idx))
        opt = brute_force_opt(instance)
        scheme = KnownN(n)
        cache: dict = {}
        total = 0.0
        for t in range(trials):
            trace = full_pipeline(instance, scheme,
                                  derive_seed(master_seed, "comp-t", idx, t),
                                  fractional_cache=cache)
            total += trace.total_profit
        mean = total / trials
        threshold = opt.value / (constant * math.log(m) * math.log(n) ** 2)
        res.check(mean >= threshold, slack=mean - threshold,
                  detail=f"instance {idx} (m={m}, n={n}): mean {mean:.4f} < "
                         f"threshold {threshold:.4f} (opt={opt.value})")
    return res
