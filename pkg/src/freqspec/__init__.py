"""Frequent-itemset count and pattern frequency spectrum estimation.

The estimator samples random paths through the itemset lattice and fits a
non-increasing step function through the per-path estimates; an exact
depth-first enumerator serves as the oracle where counting is feasible.
"""

from .dataset import (
    BitVector,
    TransactionDatabase,
    column_marginals,
    parse_fimi,
    randomize_marginals,
    support_of_intersection,
    to_fimi,
)
from .datasets import DATASETS, DatasetInfo, build_dataset, dataset_names, load_exact_fixture
from .errors import (
    EnumerationCapExceeded,
    FimiParseError,
    FreqspecError,
    InvalidQueryError,
)
from .isotonic import SpectrumCurve, WeightedPoint, evaluate_curve, pava_decreasing
from .sampler import (
    PathSample,
    derive_path_rng,
    path_estimate_lattice,
    path_estimate_tree,
    sample_path,
)
from .spectrum import (
    ExactSpectrum,
    SpectrumQuery,
    SpectrumResult,
    compare_spectra,
    estimate_spectrum,
    exact_spectrum,
    median_log_error,
)

__version__ = "0.1.0"

__all__ = [
    "BitVector",
    "TransactionDatabase",
    "parse_fimi",
    "to_fimi",
    "support_of_intersection",
    "column_marginals",
    "randomize_marginals",
    "PathSample",
    "derive_path_rng",
    "path_estimate_tree",
    "path_estimate_lattice",
    "sample_path",
    "WeightedPoint",
    "SpectrumCurve",
    "pava_decreasing",
    "evaluate_curve",
    "SpectrumQuery",
    "SpectrumResult",
    "ExactSpectrum",
    "estimate_spectrum",
    "exact_spectrum",
    "compare_spectra",
    "median_log_error",
    "DATASETS",
    "DatasetInfo",
    "build_dataset",
    "dataset_names",
    "load_exact_fixture",
    "FreqspecError",
    "FimiParseError",
    "InvalidQueryError",
    "EnumerationCapExceeded",
]
