"""Occupancy-imaging fidelity: histogram models, thresholds, and the
three-image model-free estimator."""

from .fitting import FitError, fit_double_lorentzian, fit_histogram
from .io import (model_from_dict, model_to_dict, read_counts,
                 read_triple_records, report_to_dict, write_counts,
                 write_triple_records)
from .model import (FidelityReport, HistogramModel, reference_model,
                    sample_histogram)
from .modelfree import (TripleImageRecord, clopper_pearson,
                        model_free_fidelity, synth_triple_records)
from .threshold import optimize_threshold

__all__ = [
    "HistogramModel", "FidelityReport", "TripleImageRecord",
    "sample_histogram", "fit_histogram", "optimize_threshold",
    "model_free_fidelity", "synth_triple_records", "clopper_pearson",
    "fit_double_lorentzian", "FitError",
    "read_counts", "write_counts", "read_triple_records",
    "reference_model",
    "write_triple_records", "model_to_dict", "model_from_dict",
    "report_to_dict",
]
