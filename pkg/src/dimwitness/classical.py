"""Deterministic classical strategies and exact brute-force maxima.

A classical device of dimension d can forward one of d messages per
preparation; the measuring device then answers from the message alone. By
convexity the witness maxima are reached by deterministic strategies, so an
exact classical bound is a finite search: enumerate message assignments
(encodings) and pick each measurement's answer rule (decoding) optimally in
closed form. Shared randomness is not modelled -- it cannot beat the
deterministic maximum.

Encodings are enumerated in canonical form (first occurrences of symbols in
increasing order, i.e. restricted growth strings), which quotients out symbol
relabelling; the reported maximizer is the lexicographically smallest one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from .errors import BadArgument, IncompleteDecoding, TooLarge
from .witnesses import (
    ProbabilityTable,
    WitnessKind,
    max_distinct_pairs,
    pair_labels,
)

#: Enumeration refuses to visit more canonical encodings than this.
SEARCH_GUARD = 10**7


def _canonical_count(n: int, d: int) -> int:
    """Number of canonical encodings: set partitions of n items into <= d blocks."""
    # Stirling-number recurrence S(i, j) = j S(i-1, j) + S(i-1, j-1)
    row = [1] + [0] * d
    for _ in range(n):
        row = [0] + [j * row[j] + row[j - 1] for j in range(1, d + 1)]
    return sum(row)


@dataclass(frozen=True)
class DeterministicStrategy:
    """Message per preparation plus an outcome rule per (measurement, message).

    ``encoding[x-1]`` is the message in {1..d} sent for preparation x;
    ``decoding[(y, s)]`` is the outcome announced when measurement y receives
    message s. Measurement indices follow ``pair_labels`` for pair witnesses
    and are just y = 1 for the guessing witness.
    """

    N: int
    d: int
    encoding: tuple[int, ...]
    decoding: Mapping[tuple[int, int], int]

    def __post_init__(self) -> None:
        if len(self.encoding) != self.N:
            raise BadArgument(f"encoding must assign all {self.N} preparations")
        if any(s < 1 or s > self.d for s in self.encoding):
            raise BadArgument(f"encoding symbols must lie in 1..{self.d}")
        object.__setattr__(self, "encoding", tuple(self.encoding))
        object.__setattr__(self, "decoding", dict(self.decoding))


def strategy_table(strategy: DeterministicStrategy, kind: WitnessKind) -> ProbabilityTable:
    """Deterministic 0/1 table P(b|x,y) = [decoding(y, encoding(x)) = b]."""
    n = strategy.N
    m, k = kind.table_shape(n)
    p = np.zeros((n, m, k))
    for x in range(1, n + 1):
        symbol = strategy.encoding[x - 1]
        for y in range(1, m + 1):
            try:
                outcome = strategy.decoding[(y, symbol)]
            except KeyError:
                raise IncompleteDecoding(f"no decoding for measurement {y}, symbol {symbol}") from None
            if outcome < 1 or outcome > k:
                raise IncompleteDecoding(f"decoding({y}, {symbol}) = {outcome} is not an outcome in 1..{k}")
            p[x - 1, y - 1, outcome - 1] = 1.0
    return ProbabilityTable(p)


def _canonical_encodings(n: int, d: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings over at most d symbols, lexicographic order."""
    enc = [1] * n

    def rec(i: int, used: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(enc)
            return
        for s in range(1, min(used + 1, d) + 1):
            enc[i] = s
            yield from rec(i + 1, max(used, s))

    yield from rec(0, 0)


def _pair_value(encoding: tuple[int, ...], labels) -> int:
    return sum(1 for x, xp in labels if encoding[x - 1] != encoding[xp - 1])


def _pair_decoding(encoding: tuple[int, ...], labels, d: int) -> dict[tuple[int, int], int]:
    # For measurement (x, x') the b=1 effect fires on x's message. When both
    # preparations share a message the pair contributes zero either way.
    decoding = {}
    for y, (x, _xp) in enumerate(labels, start=1):
        fire = encoding[x - 1]
        for s in range(1, d + 1):
            decoding[(y, s)] = 1 if s == fire else 2
    return decoding


def _guessing_decoding(encoding: tuple[int, ...], n: int, d: int) -> dict[tuple[int, int], int]:
    # Each message answers the first preparation that sends it; unused
    # messages answer preparation 1 (they never occur).
    decoding = {}
    for s in range(1, d + 1):
        first = next((x for x in range(1, n + 1) if encoding[x - 1] == s), 1)
        decoding[(1, s)] = first
    return decoding


def enumerate_max(
    kind: WitnessKind, n_preparations: int, dim: int
) -> tuple[float, DeterministicStrategy]:
    """Exact witness maximum over deterministic strategies, with a maximizer.

    Only encodings are enumerated; for a fixed encoding every measurement's
    optimal decoding is analytic (pair witnesses: answer 1 exactly on the
    first preparation's message, contributing 1 per distinctly-encoded pair;
    guessing: map each message to a preparation that sends it). Ties between
    maximizing encodings resolve to the lexicographically smallest canonical
    one. Raises ``TooLarge`` when the number of canonical encodings exceeds
    the search guard.
    """
    if n_preparations < 2:
        raise BadArgument(f"need at least 2 preparations, got {n_preparations}")
    if dim < 1:
        raise BadArgument(f"dimension must be positive, got {dim}")
    work = _canonical_count(n_preparations, min(dim, n_preparations))
    if work > SEARCH_GUARD:
        raise TooLarge(
            f"{work} canonical encodings for N={n_preparations}, d={dim} exceed the guard {SEARCH_GUARD}"
        )

    n = n_preparations
    if kind is WitnessKind.GUESSING:
        best_used = -1
        best_enc: tuple[int, ...] | None = None
        for enc in _canonical_encodings(n, dim):
            used = len(set(enc))
            if used > best_used:
                best_used, best_enc = used, enc
        assert best_enc is not None
        strategy = DeterministicStrategy(n, dim, best_enc, _guessing_decoding(best_enc, n, dim))
        return best_used / n, strategy

    labels = pair_labels(n)
    best_value = -1
    best_enc = None
    for enc in _canonical_encodings(n, dim):
        value = _pair_value(enc, labels)
        if value > best_value:
            best_value, best_enc = value, enc
    assert best_enc is not None
    strategy = DeterministicStrategy(n, dim, best_enc, _pair_decoding(best_enc, labels, dim))
    return float(best_value), strategy


def balanced_partition_value(n_preparations: int, dim: int) -> float:
    """Distinctly-encoded pair count of the most balanced message assignment.

    This closed form equals the deterministic maximum of both pair witnesses
    and is what ``enumerate_max`` must reproduce.
    """
    if n_preparations < 2:
        raise BadArgument(f"need at least 2 preparations, got {n_preparations}")
    if dim < 1:
        raise BadArgument(f"dimension must be positive, got {dim}")
    return float(max_distinct_pairs(n_preparations, dim))
