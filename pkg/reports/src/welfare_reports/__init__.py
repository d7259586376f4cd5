"""Chart generation from matroidwelfare experiment outputs."""

from .plotting import (ExperimentData, ReportBundle, SchemaError, load_bundle,
                       plot_ratio, reference_curve)

__version__ = "0.1.0"

__all__ = ["ExperimentData", "ReportBundle", "SchemaError", "load_bundle",
           "plot_ratio", "reference_curve"]
