"""Vertical 0/1 transaction database: bit-vector columns, FIMI I/O, randomization.

Each attribute is stored as one bit vector over row positions, so that the
support of an itemset is the popcount of the AND of its columns.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import FimiParseError

_WORD_BITS = 64


@dataclass(frozen=True)
class BitVector:
    """Fixed-length bit vector backed by a single Python integer.

    Bits at positions >= n_bits are guaranteed zero, so popcount over the
    packed words equals popcount of the logical vector.
    """

    bits: int
    n_bits: int

    def __post_init__(self):
        if self.n_bits < 0:
            raise ValueError("n_bits must be >= 0")
        if self.bits < 0 or self.bits >> self.n_bits:
            raise ValueError("bit set outside logical length")

    @classmethod
    def zeros(cls, n_bits: int) -> "BitVector":
        return cls(0, n_bits)

    @classmethod
    def ones(cls, n_bits: int) -> "BitVector":
        return cls((1 << n_bits) - 1, n_bits)

    @classmethod
    def from_indices(cls, n_bits: int, indices: Iterable[int]) -> "BitVector":
        buf = bytearray((n_bits + 7) // 8)
        for r in indices:
            if r < 0 or r >= n_bits:
                raise ValueError(f"index {r} out of range for length {n_bits}")
            buf[r >> 3] |= 1 << (r & 7)
        return cls(int.from_bytes(buf, "little"), n_bits)

    def popcount(self) -> int:
        return self.bits.bit_count()

    def get(self, i: int) -> bool:
        if i < 0 or i >= self.n_bits:
            raise IndexError(i)
        return bool((self.bits >> i) & 1)

    def __and__(self, other: "BitVector") -> "BitVector":
        if self.n_bits != other.n_bits:
            raise ValueError("length mismatch")
        return BitVector(self.bits & other.bits, self.n_bits)

    def __len__(self) -> int:
        return self.n_bits

    @property
    def words(self) -> tuple[int, ...]:
        """The vector as packed 64-bit words, padding bits zero."""
        n_words = (self.n_bits + _WORD_BITS - 1) // _WORD_BITS
        mask = (1 << _WORD_BITS) - 1
        return tuple((self.bits >> (_WORD_BITS * i)) & mask for i in range(n_words))

    def indices(self) -> Iterator[int]:
        """Positions of set bits, ascending."""
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def __repr__(self):
        return f"BitVector(n_bits={self.n_bits}, popcount={self.popcount()})"


@dataclass(frozen=True)
class TransactionDatabase:
    """Immutable vertical database: one BitVector per attribute.

    Attributes are dense-indexed 0..n_attrs-1 in ascending order of their
    original FIMI item id; ``item_labels[j]`` is the original id of column j.
    ``supports`` caches the per-column popcounts (the column marginals).
    """

    n_rows: int
    n_attrs: int
    columns: tuple[BitVector, ...]
    item_labels: tuple[int, ...]
    supports: tuple[int, ...] = field(repr=False)

    @classmethod
    def from_columns(
        cls,
        columns: Iterable[BitVector],
        item_labels: Iterable[int],
        n_rows: int,
    ) -> "TransactionDatabase":
        cols = tuple(columns)
        labels = tuple(item_labels)
        if len(cols) != len(labels):
            raise ValueError("columns and item_labels length mismatch")
        if len(set(labels)) != len(labels):
            raise ValueError("item_labels must be injective")
        supports = []
        for bv in cols:
            if bv.n_bits != n_rows:
                raise ValueError("column length differs from n_rows")
            s = bv.popcount()
            if s < 1:
                raise ValueError("empty columns are not materialized")
            supports.append(s)
        return cls(n_rows, len(cols), cols, labels, tuple(supports))

    def rows(self) -> list[list[int]]:
        """Rows as sorted lists of original item ids."""
        out: list[list[int]] = [[] for _ in range(self.n_rows)]
        for j, col in enumerate(self.columns):
            label = self.item_labels[j]
            for r in col.indices():
                out[r].append(label)
        for row in out:
            row.sort()
        return out


def parse_fimi(source) -> TransactionDatabase:
    """Parse FIMI text (one transaction per line, integer items) into a database.

    ``source`` is a string or an iterable of lines. Blank lines are skipped;
    duplicate items within a transaction are deduplicated. Item ids may be
    sparse and are remapped to dense column indices in ascending id order.
    """
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source
    row_items: list[set[int]] = []
    for lineno, line in enumerate(lines, 1):
        stripped = line.strip()
        if not stripped:
            continue
        items = set()
        for tok in stripped.split():
            try:
                v = int(tok, 10)
            except ValueError:
                raise FimiParseError(
                    f"line {lineno}: non-integer token {tok!r}", line=lineno
                ) from None
            if v < 0:
                raise FimiParseError(
                    f"line {lineno}: negative item id {v}", line=lineno
                )
            items.add(v)
        row_items.append(items)
    n_rows = len(row_items)
    if n_rows == 0:
        raise FimiParseError("empty input: no transactions")

    labels = sorted(set().union(*row_items))
    index_of = {label: j for j, label in enumerate(labels)}
    col_rows: list[list[int]] = [[] for _ in labels]
    for r, items in enumerate(row_items):
        for v in items:
            col_rows[index_of[v]].append(r)
    columns = [BitVector.from_indices(n_rows, rows) for rows in col_rows]
    return TransactionDatabase.from_columns(columns, labels, n_rows)


def to_fimi(db: TransactionDatabase) -> str:
    """Serialize back to FIMI text: rows as sorted original item ids."""
    return "".join(" ".join(str(v) for v in row) + "\n" for row in db.rows())


def support_of_intersection(
    db: TransactionDatabase, current: BitVector, attr: int
) -> int:
    """popcount(current AND columns[attr]); inputs are not mutated."""
    if attr < 0 or attr >= db.n_attrs:
        raise ValueError(f"attribute index {attr} out of range")
    if current.n_bits != db.n_rows:
        raise ValueError("current mask length differs from n_rows")
    return (current.bits & db.columns[attr].bits).bit_count()


def column_marginals(db: TransactionDatabase) -> tuple[int, ...]:
    """Per-attribute support counts."""
    return db.supports


def randomize_marginals(db: TransactionDatabase, seed: int) -> TransactionDatabase:
    """Independently shuffle each column's bits, preserving exact marginals.

    Every column of the output is a uniform random permutation of the
    corresponding input column (equivalently, a uniform random subset of rows
    of the same size), so all inter-column structure is destroyed while
    column marginals are preserved exactly. Deterministic given ``seed``.
    """
    rng = random.Random(seed & 0xFFFFFFFFFFFFFFFF)
    columns = []
    for j in range(db.n_attrs):
        s = db.supports[j]
        rows = rng.sample(range(db.n_rows), s)
        columns.append(BitVector.from_indices(db.n_rows, rows))
    return TransactionDatabase.from_columns(columns, db.item_labels, db.n_rows)
