"""Shared fixtures and independent oracles used across the test suite.

The oracles here deliberately avoid the package's vertical representation:
they work on rows as plain Python sets so that agreement with the bit-vector
implementation is meaningful.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from freqspec.dataset import BitVector, TransactionDatabase


def db_from_rows(rows: list[set[int]], n_rows: int | None = None) -> TransactionDatabase:
    """Build a database from row item-sets; rows may be empty."""
    if n_rows is None:
        n_rows = len(rows)
    assert n_rows >= len(rows)
    labels = sorted(set().union(*rows)) if rows else []
    columns = []
    for label in labels:
        columns.append(
            BitVector.from_indices(n_rows, [r for r, row in enumerate(rows) if label in row])
        )
    return TransactionDatabase.from_columns(columns, labels, n_rows)


def correlated_pair_db() -> TransactionDatabase:
    """Two identical columns covering rows 0..3 of an 8-row database."""
    col = BitVector.from_indices(8, [0, 1, 2, 3])
    return TransactionDatabase.from_columns([col, col], [1, 2], 8)


def brute_force_count(rows: list[set[int]], sigma: int, include_empty: bool = True) -> int:
    """Count frequent itemsets by checking every subset of the item universe."""
    items = sorted(set().union(*rows)) if rows else []
    n_rows = len(rows)
    count = 1 if (include_empty and n_rows >= sigma) else 0
    for k in range(1, len(items) + 1):
        for combo in combinations(items, k):
            needed = set(combo)
            support = sum(1 for r in rows if needed <= r)
            if support >= sigma:
                count += 1
    return count


def exhaust_paths(rows: list[set[int]], sigma: int):
    """All root-to-border paths with exact probabilities.

    Yields (branching tuple, Fraction probability); probabilities are the
    product of 1/|E| over the uniform choices along the path.
    """
    items = sorted(set().union(*rows)) if rows else []

    def support(itemset: set[int]) -> int:
        return sum(1 for r in rows if itemset <= r)

    out: list[tuple[tuple[int, ...], Fraction]] = []

    def walk(current: set[int], prob: Fraction, branching: tuple[int, ...]):
        ext = [
            i for i in items if i not in current and support(current | {i}) >= sigma
        ]
        if not ext:
            out.append((branching, prob))
            return
        d = len(ext)
        for i in ext:
            walk(current | {i}, prob / d, branching + (d,))

    walk(set(), Fraction(1), ())
    return out


def random_rows(rng: random.Random, n_rows: int, n_attrs: int, density: float) -> list[set[int]]:
    """Random row sets over items 1..n_attrs; every item appears at least once."""
    rows = [
        {i for i in range(1, n_attrs + 1) if rng.random() < density}
        for _ in range(n_rows)
    ]
    for i in range(1, n_attrs + 1):
        if not any(i in r for r in rows):
            rows[rng.randrange(n_rows)].add(i)
    return rows


@pytest.fixture
def pair_db():
    return correlated_pair_db()


_acceptance_lines: list[str] = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion and assert it."""

    def record(name: str, ok: bool, detail: str = ""):
        status = "PASS" if ok else "FAIL"
        _acceptance_lines.append(f"[{status}] {name}: {detail}".rstrip(": "))
        assert ok, f"{name} failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
