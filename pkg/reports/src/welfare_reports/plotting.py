"""Read experiment CSV/JSON files and render the documentation charts.

Inputs are never modified.  Each experiment is one CSV of trial rows (the
harness schema) plus, by convention, a sibling JSON aggregate carrying the
instance shape (m, n, kind) and per-trial covering rounds.  Charts are
static PNG files: empirical ratio against n and against m on log-scaled
axes with the 1/(ln m * ln^2 n) reference curve, and a histogram of
covering rounds.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

REQUIRED_COLUMNS = ("seed", "alpha", "frac_profit", "int_profit", "F_size",
                    "opt", "opt_kind")


class SchemaError(ValueError):
    """A CSV is missing required columns."""


def reference_curve(m: float, n: float, scale: float = 1.0) -> float:
    """The competitive-ratio reference shape: scale / (ln m * ln^2 n)."""
    if m <= 1 or n <= 1:
        raise ValueError("reference curve needs m > 1 and n > 1")
    return scale / (math.log(m) * math.log(n) ** 2)


@dataclass
class ExperimentData:
    csv_path: Path
    rows: list[dict]
    m: int | None = None
    n: int | None = None
    kind: str | None = None
    scheme: str | None = None
    cover_rounds: list[int] = field(default_factory=list)

    @property
    def ratio(self) -> float | None:
        usable = [r for r in self.rows if float(r["opt"]) > 0]
        if not usable:
            return None
        mean_int = sum(float(r["int_profit"]) for r in usable) / len(usable)
        return mean_int / float(usable[0]["opt"])

    @property
    def label(self) -> str:
        kind = self.kind or "unknown"
        scheme = self.scheme or "?"
        return f"{kind} m={self.m} n={self.n} [{scheme}]"


@dataclass
class ReportBundle:
    csv_paths: list[Path]
    outdir: Path
    experiments: list[ExperimentData] = field(default_factory=list)


def _read_csv(path: Path) -> list[dict]:
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        if missing:
            raise SchemaError(
                f"{path}: missing required columns {', '.join(missing)} "
                f"(found: {', '.join(header) or 'nothing'})")
        return list(reader)


def load_bundle(csv_paths, outdir) -> ReportBundle:
    """Load every CSV (and its sibling JSON aggregate when present)."""
    bundle = ReportBundle(csv_paths=[Path(p) for p in csv_paths],
                          outdir=Path(outdir))
    for path in bundle.csv_paths:
        rows = _read_csv(path)
        data = ExperimentData(csv_path=path, rows=rows)
        sibling = path.with_suffix(".json")
        if sibling.exists():
            payload = json.loads(sibling.read_text(encoding="utf-8"))
            if "aggregates" in payload:   # run aggregate, not some other JSON
                instance = payload.get("instance", {})
                data.m = instance.get("m")
                data.n = instance.get("n")
                data.kind = instance.get("constraint_kind")
                data.scheme = payload.get("config", {}).get("scheme")
                data.cover_rounds = list(payload.get("cover_rounds", []))
            else:
                warnings.warn(f"{sibling} is not a run aggregate; plotting "
                              f"{path.name} without instance metadata")
        bundle.experiments.append(data)
    return bundle


def _ratio_points(bundle: ReportBundle, axis: str):
    points = []
    for exp in bundle.experiments:
        ratio = exp.ratio
        coord = exp.n if axis == "n" else exp.m
        if ratio is not None and coord is not None and coord > 1:
            points.append((coord, ratio, exp.label))
    return points


def _plot_ratio_against(bundle: ReportBundle, axis: str) -> Path:
    points = _ratio_points(bundle, axis)
    fig, ax = plt.subplots(figsize=(7, 5))
    other_axis = "m" if axis == "n" else "n"
    if points:
        for coord, ratio, label in points:
            ax.scatter([coord], [ratio], label=label)
        coords = sorted({c for c, _, _ in points})
        others = [getattr(exp, other_axis) for exp in bundle.experiments
                  if getattr(exp, other_axis)]
        anchor = sorted(others)[len(others) // 2] if others else 8
        grid = [coords[0] * (coords[-1] / coords[0]) ** (i / 63)
                for i in range(64)] if coords[-1] > coords[0] else coords
        curve = []
        for c in grid:
            m, n = (anchor, c) if axis == "n" else (c, anchor)
            curve.append(reference_curve(m, n))
        ax.plot(grid, curve, "k--",
                label=f"1/(ln m · ln² n), {other_axis}={anchor}")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.legend(fontsize=7)
    else:
        warnings.warn("no plottable ratio points; emitting an empty chart")
        ax.text(0.5, 0.5, "no data", ha="center", va="center")
    ax.set_xlabel(axis)
    ax.set_ylabel("mean profit / opt")
    ax.set_title(f"Empirical competitive ratio vs {axis}")
    out = bundle.outdir / f"ratio_vs_{axis}.png"
    fig.savefig(out, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return out


def _plot_cover_hist(bundle: ReportBundle) -> Path:
    fig, ax = plt.subplots(figsize=(7, 5))
    rounds = [r for exp in bundle.experiments for r in exp.cover_rounds]
    if rounds:
        bins = range(min(rounds), max(rounds) + 2)
        ax.hist(rounds, bins=bins, align="left", rwidth=0.85)
    else:
        warnings.warn("no covering-rounds data; emitting an empty chart")
        ax.text(0.5, 0.5, "no data", ha="center", va="center")
    ax.set_xlabel("first-fit cover size of a sampled half-polytope point")
    ax.set_ylabel("trials")
    ax.set_title("Covering rounds")
    out = bundle.outdir / "cover_rounds_hist.png"
    fig.savefig(out, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return out


def plot_ratio(bundle: ReportBundle) -> list[Path]:
    """Render every chart; returns the written paths."""
    bundle.outdir.mkdir(parents=True, exist_ok=True)
    return [_plot_ratio_against(bundle, "n"),
            _plot_ratio_against(bundle, "m"),
            _plot_cover_hist(bundle)]
