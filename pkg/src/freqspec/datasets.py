"""Bundled synthetic benchmark datasets.

Three deterministic generators produce 0/1 matrices shaped like classic
frequent-itemset benchmarks (a presence/absence table, a dense game table and
a dense categorical table). They exist so the estimator, the exact counter
and the baseline can be exercised out of the box on inputs with known
structure; none of them contains real data.

``mammals_like`` is built around a tower of nested range columns, which makes
parts of its spectrum exactly 2^t by construction:

* 10 columns cover at least the first 1000 rows, so every subset of them is
  frequent at threshold 1000 and nothing else is (all other columns have
  support below 500). spectrum(1000) = 2^10.
* 10 further columns cover between 540 and 990 rows, giving
  spectrum(500) = 2^20.
* 20 shorter range columns plus 81 random noise columns (support 30..300)
  fill in the low-threshold region.

The one-hot generators (``chess_like``, ``mushroom_like``) draw one value per
categorical variable per row, with a latent two-class row label shifting the
dominant-value probabilities to induce correlation between variables.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from importlib import resources

from .dataset import BitVector, TransactionDatabase
from .spectrum import ExactSpectrum

_MAMMALS_SEED = 0x6D616D
_CHESS_SEED = 0x636873
_MUSHROOM_SEED = 0x6D7368

# lengths of the nested range columns in mammals_like, longest first
_RANGE_LENGTHS = (
    [2183, 2000, 1850, 1700, 1550, 1400, 1300, 1200, 1100, 1000]
    + [990, 940, 890, 840, 790, 740, 690, 640, 590, 540]
    + [490 - 9 * i for i in range(20)]
)


def _build_mammals_like() -> TransactionDatabase:
    rng = random.Random(_MAMMALS_SEED)
    n_rows = 2183
    columns = [BitVector.from_indices(n_rows, range(length)) for length in _RANGE_LENGTHS]
    for _ in range(81):
        support = rng.randrange(30, 301)
        columns.append(BitVector.from_indices(n_rows, rng.sample(range(n_rows), support)))
    labels = list(range(1, len(columns) + 1))
    return TransactionDatabase.from_columns(columns, labels, n_rows)


def _one_hot_columns(
    rng: random.Random,
    n_rows: int,
    var_sizes: list[int],
    dominant_probs: list[float],
    class_shift: float,
) -> list[BitVector]:
    """One categorical value per variable per row, one column per value.

    Value 0 of variable v is drawn with probability dominant_probs[v],
    shifted by +/- class_shift depending on a latent per-row class bit; the
    remaining values split the rest uniformly. Empty value columns are
    repaired afterwards by reassigning rows taken from dominant values.
    """
    n_vars = len(var_sizes)
    assignment = [[0] * n_vars for _ in range(n_rows)]
    for r in range(n_rows):
        cls = rng.random() < 0.5
        for v, size in enumerate(var_sizes):
            if size == 1:
                continue
            p = dominant_probs[v] + (class_shift if cls else -class_shift)
            p = min(max(p, 0.05), 0.99)
            if rng.random() >= p:
                assignment[r][v] = rng.randrange(1, size)

    # guarantee every value appears at least once without unbalancing much:
    # steal rows currently sitting on the (huge) dominant value
    for v, size in enumerate(var_sizes):
        present = {assignment[r][v] for r in range(n_rows)}
        missing = [val for val in range(size) if val not in present]
        if not missing:
            continue
        donors = [r for r in range(n_rows) if assignment[r][v] == 0]
        for val, r in zip(missing, rng.sample(donors, len(missing))):
            assignment[r][v] = val

    columns = []
    for v, size in enumerate(var_sizes):
        for val in range(size):
            rows = [r for r in range(n_rows) if assignment[r][v] == val]
            columns.append(BitVector.from_indices(n_rows, rows))
    return columns


def _build_chess_like() -> TransactionDatabase:
    rng = random.Random(_CHESS_SEED)
    n_rows = 3196
    var_sizes = [2] * 36 + [3]
    probs = []
    for v in range(36):
        if v < 6:
            probs.append(rng.uniform(0.95, 0.97))
        else:
            probs.append(rng.uniform(0.70, 0.77))
    probs.append(0.50)
    columns = _one_hot_columns(rng, n_rows, var_sizes, probs, class_shift=0.04)
    labels = list(range(1, len(columns) + 1))
    return TransactionDatabase.from_columns(columns, labels, n_rows)


def _build_mushroom_like() -> TransactionDatabase:
    rng = random.Random(_MUSHROOM_SEED)
    n_rows = 8124
    var_sizes = [2, 6, 4, 10, 2, 9, 4, 3, 2, 12, 2, 5, 4, 9, 9, 2, 4, 3, 5, 9, 6, 5, 2]
    assert sum(var_sizes) == 119 and len(var_sizes) == 23
    probs = [rng.uniform(0.60, 0.75) for _ in var_sizes]
    columns = _one_hot_columns(rng, n_rows, var_sizes, probs, class_shift=0.10)
    labels = list(range(1, len(columns) + 1))
    return TransactionDatabase.from_columns(columns, labels, n_rows)


@dataclass(frozen=True)
class DatasetInfo:
    """Registry entry for one bundled dataset."""

    name: str
    n_rows: int
    n_attrs: int
    description: str
    default_sigma_min: int
    default_sigma_max: int
    default_n_paths: int
    exact_sigma_min: int | None  # threshold of the shipped exact fixture


DATASETS: dict[str, DatasetInfo] = {
    "mammals_like": DatasetInfo(
        name="mammals_like",
        n_rows=2183,
        n_attrs=121,
        description="sparse presence/absence table with a nested column tower",
        default_sigma_min=1,
        default_sigma_max=1000,
        default_n_paths=5000,
        exact_sigma_min=500,
    ),
    "chess_like": DatasetInfo(
        name="chess_like",
        n_rows=3196,
        n_attrs=75,
        description="dense table of 37 one-hot variables, several heavily skewed",
        default_sigma_min=1,
        default_sigma_max=3196,
        default_n_paths=5000,
        exact_sigma_min=2500,
    ),
    "mushroom_like": DatasetInfo(
        name="mushroom_like",
        n_rows=8124,
        n_attrs=119,
        description="dense table of 23 one-hot variables with latent class structure",
        default_sigma_min=1000,
        default_sigma_max=4000,
        default_n_paths=5000,
        exact_sigma_min=1000,
    ),
}

_BUILDERS = {
    "mammals_like": _build_mammals_like,
    "chess_like": _build_chess_like,
    "mushroom_like": _build_mushroom_like,
}

_CACHE: dict[str, TransactionDatabase] = {}


def dataset_names() -> list[str]:
    return list(DATASETS)


def build_dataset(name: str) -> TransactionDatabase:
    """Generate (and cache) a bundled dataset by name."""
    if name not in _BUILDERS:
        raise KeyError(f"unknown dataset {name!r}; available: {', '.join(DATASETS)}")
    if name not in _CACHE:
        db = _BUILDERS[name]()
        info = DATASETS[name]
        assert db.n_rows == info.n_rows and db.n_attrs == info.n_attrs
        _CACHE[name] = db
    return _CACHE[name]


def exact_fixture_to_json(name: str, spectrum: ExactSpectrum) -> str:
    """Serialize an exact spectrum as the packaged fixture format."""
    hist = {str(s): c for s, c in enumerate(spectrum.histogram) if c}
    doc = {
        "dataset": name,
        "sigma_min": spectrum.sigma_min,
        "n_rows": spectrum.n_rows,
        "include_empty_set": spectrum.include_empty_set,
        "histogram": hist,
    }
    return json.dumps(doc, indent=1, sort_keys=True)


def exact_fixture_from_json(text: str) -> ExactSpectrum:
    doc = json.loads(text)
    n = doc["n_rows"]
    sigma_min = doc["sigma_min"]
    hist = [0] * (n + 1)
    for s, c in doc["histogram"].items():
        hist[int(s)] = c
    running = 0
    counts = [0] * (n + 1 - sigma_min)
    for s in range(n, sigma_min - 1, -1):
        running += hist[s]
        counts[s - sigma_min] = running
    return ExactSpectrum(
        sigma_min=sigma_min,
        n_rows=n,
        include_empty_set=doc["include_empty_set"],
        histogram=tuple(hist),
        counts=tuple(counts),
    )


def load_exact_fixture(name: str) -> ExactSpectrum:
    """Load the precomputed exact spectrum bundled for a dataset."""
    if name not in DATASETS:
        raise KeyError(f"unknown dataset {name!r}")
    if DATASETS[name].exact_sigma_min is None:
        raise KeyError(f"dataset {name!r} ships no exact fixture")
    text = resources.files("freqspec.data").joinpath(f"{name}_exact.json").read_text()
    return exact_fixture_from_json(text)
