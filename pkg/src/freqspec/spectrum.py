"""Full-spectrum estimation and the exact enumerator oracle.

Estimation samples N lattice paths, each with its own threshold drawn
uniformly from an integer interval, then fits a non-increasing step function
through the (threshold, estimate) scatter. The exact enumerator walks every
frequent itemset depth-first and tallies a support histogram, which is only
feasible at desk scale or for high thresholds.
"""
from __future__ import annotations

import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .dataset import TransactionDatabase
from .errors import EnumerationCapExceeded, InvalidQueryError
from .isotonic import SpectrumCurve, WeightedPoint, pava_decreasing
from .sampler import derive_path_rng, sample_path

DEFAULT_EXACT_CAP = 50_000_000

ProgressCallback = Callable[[int, int], None]


@dataclass(frozen=True)
class SpectrumQuery:
    """Parameters of one estimation run."""

    sigma_min: int
    sigma_max: int
    n_paths: int
    master_seed: int
    include_empty_set: bool = True
    log_fit: bool = False

    def __post_init__(self):
        if self.sigma_min < 1 or self.sigma_min > self.sigma_max:
            raise InvalidQueryError(
                f"need 1 <= sigma_min <= sigma_max, got [{self.sigma_min}, {self.sigma_max}]"
            )
        if self.n_paths < 1:
            raise InvalidQueryError("n_paths must be >= 1")


@dataclass(frozen=True)
class SpectrumResult:
    """One completed estimation run."""

    query: SpectrumQuery
    n_rows: int
    n_attrs: int
    points: tuple[tuple[int, float], ...]
    curve: SpectrumCurve
    runtime_ms: float = field(compare=False)


@dataclass(frozen=True)
class ExactSpectrum:
    """Exact frequent-itemset counts for thresholds in [sigma_min, n_rows].

    ``histogram[s]`` is the number of itemsets with support exactly s
    (including the empty set at support n_rows when the flag is set);
    ``counts[i]`` is the number of itemsets with support >= sigma_min + i.
    """

    sigma_min: int
    n_rows: int
    include_empty_set: bool
    histogram: tuple[int, ...]
    counts: tuple[int, ...]

    def count_at(self, sigma: int) -> int:
        if sigma > self.n_rows:
            return 0
        if sigma < self.sigma_min:
            raise ValueError(
                f"sigma {sigma} below enumerated range [{self.sigma_min}, {self.n_rows}]"
            )
        return self.counts[sigma - self.sigma_min]

    def value_at(self, sigma: float) -> float:
        return float(self.count_at(math.ceil(sigma)))


def _path_point(db, sigma_min, sigma_max, master_seed, k, include_empty_set):
    rng = derive_path_rng(master_seed, k)
    sigma = rng.randrange(sigma_min, sigma_max + 1)
    sample = sample_path(db, sigma, rng)
    estimate = sample.estimate
    if not include_empty_set:
        estimate = max(estimate - 1.0, 0.0)
    return sigma, estimate


def _point_chunk(args):
    db, sigma_min, sigma_max, master_seed, k_start, k_end, include_empty_set = args
    return [
        _path_point(db, sigma_min, sigma_max, master_seed, k, include_empty_set)
        for k in range(k_start, k_end)
    ]


def merge_tied_thresholds(
    points: Sequence[tuple[int, float]],
) -> list[WeightedPoint]:
    """Merge points sharing a threshold into one weighted point (mean, count)."""
    acc: dict[int, list[float]] = {}
    for sigma, est in points:
        acc.setdefault(sigma, []).append(est)
    merged = []
    for sigma in sorted(acc):
        vals = acc[sigma]
        merged.append(
            WeightedPoint(x=float(sigma), y=sum(vals) / len(vals), w=float(len(vals)))
        )
    return merged


def fit_spectrum_curve(
    points: Sequence[tuple[int, float]], log_fit: bool = False
) -> SpectrumCurve:
    """Fit the non-increasing step function through a threshold/estimate scatter.

    The default fit is least squares on the raw estimate values. With
    ``log_fit`` the fit runs on log10 of the estimates (floored at 1e-12) and
    the fitted levels are mapped back, which weights relative rather than
    absolute error; this is a non-default option.
    """
    merged = merge_tied_thresholds(points)
    if log_fit:
        merged = [
            WeightedPoint(x=p.x, y=math.log10(max(p.y, 1e-12)), w=p.w) for p in merged
        ]
    curve = pava_decreasing(merged)
    if log_fit:
        curve = SpectrumCurve(
            breakpoints=curve.breakpoints,
            levels=tuple(10.0**v for v in curve.levels),
        )
    return curve


def estimate_spectrum(
    db: TransactionDatabase,
    query: SpectrumQuery,
    workers: int = 1,
    progress: Optional[ProgressCallback] = None,
    progress_every: int = 100,
) -> SpectrumResult:
    """Run the full estimator: N paths, random threshold per path, isotonic fit.

    Path k's threshold and extension choices both come from the generator
    derived from (master_seed, k), so results are identical regardless of
    execution order or worker count.
    """
    if query.sigma_max > db.n_rows:
        raise InvalidQueryError(
            f"sigma_max {query.sigma_max} exceeds n_rows {db.n_rows}; "
            f"clamp the threshold interval to [1, {db.n_rows}]"
        )
    t0 = time.perf_counter()
    n = query.n_paths
    args = (db, query.sigma_min, query.sigma_max, query.master_seed)
    points: list[tuple[int, float]]
    if workers <= 1:
        points = []
        for k in range(1, n + 1):
            points.append(_path_point(*args, k, query.include_empty_set))
            if progress is not None and (k % progress_every == 0 or k == n):
                progress(k, n)
    else:
        chunk = max(1, math.ceil(n / workers))
        tasks = [
            (*args, k0, min(k0 + chunk, n + 1), query.include_empty_set)
            for k0 in range(1, n + 1, chunk)
        ]
        done = 0
        results: list[list[tuple[int, float]]] = [None] * len(tasks)  # type: ignore
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(_point_chunk, t): i for i, t in enumerate(tasks)}
            for fut in as_completed(futures):
                i = futures[fut]
                results[i] = fut.result()
                done += len(results[i])
                if progress is not None:
                    progress(done, n)
        points = [p for chunk_pts in results for p in chunk_pts]
    curve = fit_spectrum_curve(points, log_fit=query.log_fit)
    runtime_ms = (time.perf_counter() - t0) * 1000.0
    return SpectrumResult(
        query=query,
        n_rows=db.n_rows,
        n_attrs=db.n_attrs,
        points=tuple(points),
        curve=curve,
        runtime_ms=runtime_ms,
    )


def exact_spectrum(
    db: TransactionDatabase,
    sigma_min: int,
    max_count: int = DEFAULT_EXACT_CAP,
    include_empty_set: bool = True,
) -> ExactSpectrum:
    """Count every itemset with support >= sigma_min by depth-first enumeration.

    Attributes are extended in ascending dense-index order so each itemset is
    visited exactly once. Raises EnumerationCapExceeded once more than
    ``max_count`` itemsets have been recorded; counting is intractable in
    general, so unbounded runs must fail loudly rather than spin.
    """
    n = db.n_rows
    if sigma_min < 1 or sigma_min > n:
        raise InvalidQueryError(f"sigma_min must be in [1, {n}], got {sigma_min}")
    hist = [0] * (n + 1)
    count = 0
    if include_empty_set:
        hist[n] += 1
        count += 1

    cols = [c.bits for c in db.columns]
    singles = []
    for j in range(db.n_attrs):
        s = db.supports[j]
        if s >= sigma_min:
            hist[s] += 1
            count += 1
            singles.append((j, cols[j]))
    if count > max_count:
        raise EnumerationCapExceeded(max_count, count)

    depth_budget = db.n_attrs + 64
    if sys.getrecursionlimit() < depth_budget:
        sys.setrecursionlimit(depth_budget + 1000)

    def expand(items: list[tuple[int, int]]):
        nonlocal count
        # items: sibling extensions of a common prefix, ascending attr index,
        # each carrying the row mask of prefix + that attribute.
        for i, (j, mj) in enumerate(items):
            children = []
            for k, mk in items[i + 1 :]:
                m = mj & mk
                s = m.bit_count()
                if s >= sigma_min:
                    hist[s] += 1
                    count += 1
                    children.append((k, m))
            if count > max_count:
                raise EnumerationCapExceeded(max_count, count)
            if children:
                expand(children)

    expand(singles)

    running = 0
    by_sigma = [0] * (n + 2)
    for s in range(n, sigma_min - 1, -1):
        running += hist[s]
        by_sigma[s] = running
    counts = [by_sigma[s] for s in range(sigma_min, n + 1)]
    return ExactSpectrum(
        sigma_min=sigma_min,
        n_rows=n,
        include_empty_set=include_empty_set,
        histogram=tuple(hist),
        counts=tuple(counts),
    )


def compare_spectra(a, b, sigma_grid: Sequence[float]) -> list[tuple[float, float]]:
    """Per-threshold absolute log10 error between two spectra.

    ``a`` and ``b`` are anything with a ``value_at(sigma)`` method (fitted
    curves or exact spectra). Values are floored at 1 before taking logs so
    zero counts compare cleanly.
    """
    report = []
    for sigma in sigma_grid:
        va = math.log10(max(a.value_at(sigma), 1.0))
        vb = math.log10(max(b.value_at(sigma), 1.0))
        report.append((sigma, abs(va - vb)))
    return report


def median_log_error(report: Sequence[tuple[float, float]]) -> float:
    errs = sorted(e for _, e in report)
    m = len(errs)
    if m == 0:
        raise ValueError("empty report")
    mid = m // 2
    return errs[mid] if m % 2 else 0.5 * (errs[mid - 1] + errs[mid])
