"""Random root-to-border paths through the frequent-itemset lattice.

A path starts at the empty itemset and repeatedly adds one attribute chosen
uniformly among the extensions that keep support at or above the threshold,
until no such extension exists (a maximal itemset). The recorded branching
factors yield an unbiased estimate of the number of frequent itemsets once
each level's product is divided by the factorial of the level, which accounts
for the multiple orderings that reach the same lattice node.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .dataset import TransactionDatabase

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15

PathRng = random.Random


def _splitmix64(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


def mix_seed(master_seed: int, stream_index: int) -> int:
    """Avalanche (master_seed, stream_index) into one 64-bit seed."""
    z = (master_seed + stream_index * _GOLDEN) & _MASK64
    return _splitmix64(_splitmix64(z) ^ _GOLDEN)


def derive_path_rng(master_seed: int, path_index: int) -> PathRng:
    """Generator for one path, independent of how paths are scheduled.

    The derivation is stateless: identical (master_seed, path_index) pairs
    always produce identical streams, so paths may run in any order or in
    parallel without changing results.
    """
    return random.Random(mix_seed(master_seed, path_index))


def path_estimate_tree(branching: Sequence[int]) -> float:
    """Size estimate of a search tree from one path's branching factors.

    Returns 1 + sum over levels j of the product d_0 * ... * d_{j-1}. For a
    perfectly regular tree this equals the exact node count.
    """
    total = 1.0
    prod = 1.0
    for d in branching:
        if d < 1:
            raise ValueError("branching factors must be >= 1")
        prod *= d
        total += prod
    return total


def path_estimate_lattice(branching: Sequence[int]) -> float:
    """Tree estimate corrected for the itemset lattice.

    Each level-j node of the subset lattice is reached by j! distinct paths,
    so level j's product is divided by j!:

        1 + sum_{j=1..h} (d_0 * ... * d_{j-1}) / j!

    Accumulated in double precision; the running term is kept as a ratio so
    intermediate products cannot overflow before the factorial catches up.
    """
    total = 1.0
    term = 1.0
    for j, d in enumerate(branching, 1):
        if d < 1:
            raise ValueError("branching factors must be >= 1")
        term *= d / j
        total += term
    return total


@dataclass(frozen=True)
class PathSample:
    """One sampled path: threshold, branching factors, chosen items, estimate."""

    sigma: int
    branching: tuple[int, ...]
    items: tuple[int, ...]
    estimate: float

    @property
    def depth(self) -> int:
        return len(self.branching)


def sample_path(db: TransactionDatabase, sigma: int, rng: PathRng) -> PathSample:
    """Sample one root-to-border path at threshold ``sigma``.

    At every step the set E of attributes whose addition keeps support >=
    sigma is computed, |E| recorded, and one member drawn uniformly via
    ``rng``. Support is tracked as a row mask intersected with candidate
    columns. Once an attribute falls below sigma under some mask it stays
    below under any sub-mask, so the candidate list only shrinks.
    """
    n = db.n_rows
    if sigma < 1 or sigma > n:
        raise ValueError(f"sigma must be in [1, {n}], got {sigma}")
    cols = [c.bits for c in db.columns]
    supports = db.supports
    # Root mask is all rows; the root-level E needs no bit operations.
    cand = [j for j in range(db.n_attrs) if supports[j] >= sigma]
    mask = (1 << n) - 1
    branching: list[int] = []
    items: list[int] = []
    while cand:
        d = len(cand)
        branching.append(d)
        pick = cand[rng.randrange(d)] if d > 1 else cand[0]
        items.append(pick)
        mask &= cols[pick]
        nxt = []
        for j in cand:
            if j != pick and (mask & cols[j]).bit_count() >= sigma:
                nxt.append(j)
        cand = nxt
    return PathSample(
        sigma=sigma,
        branching=tuple(branching),
        items=tuple(items),
        estimate=path_estimate_lattice(branching),
    )
