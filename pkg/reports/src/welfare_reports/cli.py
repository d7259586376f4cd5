"""Command-line entry point: `plot`."""

import click

from .plotting import load_bundle, plot_ratio


@click.group()
def main():
    """Render charts from matroidwelfare experiment outputs."""


@main.command("plot")
@click.option("--csv", "csv_paths", type=click.Path(exists=True),
              multiple=True, required=True,
              help="Experiment CSV (repeatable); a sibling .json aggregate "
                   "is picked up automatically.")
@click.option("--outdir", type=click.Path(), required=True)
def plot_cmd(csv_paths, outdir):
    """Emit ratio-vs-n, ratio-vs-m and covering-rounds charts."""
    bundle = load_bundle(csv_paths, outdir)
    for path in plot_ratio(bundle):
        click.echo(f"wrote {path}")


if __name__ == "__main__":
    main()
