"""Least-squares non-increasing step fit via Pool Adjacent Violators.

Solves min sum_k w_k * (y_k - g(x_k))^2 over non-increasing functions g on a
totally ordered point set. A single forward pass with a block stack pools
adjacent violators into weighted means, which is amortized linear time.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class WeightedPoint:
    """One fit point: threshold x, estimate y, positive weight w."""

    x: float
    y: float
    w: float = 1.0

    def __post_init__(self):
        if self.w <= 0:
            raise ValueError("weight must be positive")


@dataclass(frozen=True)
class SpectrumCurve:
    """Non-increasing step function: levels[j] on [breakpoints[j], breakpoints[j+1])."""

    breakpoints: tuple[float, ...]
    levels: tuple[float, ...]

    def __post_init__(self):
        if len(self.breakpoints) != len(self.levels) or not self.breakpoints:
            raise ValueError("breakpoints and levels must be non-empty and equal-length")
        if any(b2 <= b1 for b1, b2 in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly ascending")
        if any(v2 > v1 for v1, v2 in zip(self.levels, self.levels[1:])):
            raise ValueError("levels must be non-increasing")

    def value_at(self, sigma: float) -> float:
        return evaluate_curve(self, sigma)


def pava_decreasing(points: Sequence[WeightedPoint]) -> SpectrumCurve:
    """Fit the unique non-increasing least-squares step function through points.

    ``points`` must be non-empty, sorted ascending by x with all x distinct
    (callers merge ties into weights beforehand). Returns one level per input
    x; pooled blocks share their weighted mean, and the total weighted sum of
    levels equals the total weighted sum of y.
    """
    if not points:
        raise ValueError("points must be non-empty")
    for a, b in zip(points, points[1:]):
        if b.x <= a.x:
            raise ValueError("x values must be strictly ascending (merge ties first)")

    # Stack of pooled blocks as (mean, weighted y sum, weight sum, count).
    # A later block whose mean exceeds its predecessor's violates the
    # non-increasing constraint and is merged. The mean is carried explicitly
    # so an unpooled point keeps its y bit-for-bit, which makes refitting an
    # already-monotone sequence the exact identity.
    blocks: list[list[float]] = []
    for p in points:
        mean, wy, w, cnt = p.y, p.w * p.y, p.w, 1
        while blocks and blocks[-1][0] < mean:
            _, pwy, pw, pcnt = blocks.pop()
            wy += pwy
            w += pw
            cnt += pcnt
            mean = wy / w
        blocks.append([mean, wy, w, cnt])

    levels: list[float] = []
    for mean, _, _, cnt in blocks:
        levels.extend([mean] * cnt)
    return SpectrumCurve(
        breakpoints=tuple(p.x for p in points), levels=tuple(levels)
    )


def evaluate_curve(curve: SpectrumCurve, sigma: float) -> float:
    """Piecewise-constant lookup, right-open intervals, clamped at both ends.

    For sigma in [b_j, b_{j+1}) returns levels[j]; below the first breakpoint
    returns the first level, at or above the last returns the last.
    """
    idx = bisect_right(curve.breakpoints, sigma) - 1
    if idx < 0:
        idx = 0
    return curve.levels[idx]
