"""Naive reference detector used as an independent oracle in tests.

Everything here is deliberately plain Python over plain lists: no numpy, no
shared code with the production pipeline. The pipeline in ``detect`` must
reproduce this module's output exactly on every synthetic corpus; keeping the
two routes disjoint is what makes the comparison meaningful.
"""

from __future__ import annotations

import math
import statistics
from typing import Mapping, Sequence


def naive_balance(ir: float, ic: float) -> float:
    """Reciprocity of a year's citation exchange, in [0, 1]."""
    m = max(ir, ic)
    if m == 0:
        return 0.0
    return 1.0 - abs(ir - ic) / m


def naive_volume(ir: float, ic: float) -> float:
    """Evenly weighted two-way citation volume."""
    return 0.5 * ir + 0.5 * ic


def naive_signal(ir_series: Sequence[float], ic_series: Sequence[float]) -> list[float]:
    """Per-year balance * volume product for one subject pair."""
    return [
        naive_balance(ir, ic) * naive_volume(ir, ic)
        for ir, ic in zip(ir_series, ic_series)
    ]


def naive_detect(
    pair_counts: Mapping[tuple[str, str], tuple[Sequence[float], Sequence[float]]],
    start_year: int,
    sigma_multiplier: float = 2.0,
    sigma_kind: str = "population",
    median_scope: str = "pair-years",
) -> list[tuple[str, str, int]]:
    """Run the three detection conditions by brute force.

    ``pair_counts`` maps canonical (a, b) label pairs to their dense yearly
    (ir, ic) count vectors. Returns (a, b, year) triples sorted by
    (year, a, b), one per firing year. A year fires when all hold strictly:

    1. the pair's mean signal exceeds the median of the pooled signal values
       of every pair-year (or of the per-pair means, under "pair-means");
    2. the backward difference at that year exceeds ``sigma_multiplier``
       times the pair's standard deviation over the whole window;
    3. the year's signal value exceeds the pair's mean.
    """
    signals: dict[tuple[str, str], list[float]] = {}
    for pair, (irs, ics) in pair_counts.items():
        if len(irs) != len(ics):
            raise ValueError(f"ragged series for pair {pair}")
        signals[pair] = naive_signal(irs, ics)

    if not signals:
        raise ValueError("no pairs to detect over")

    means = {pair: sum(zs) / len(zs) for pair, zs in signals.items()}
    if median_scope == "pair-years":
        pooled: list[float] = []
        for zs in signals.values():
            pooled.extend(zs)
        gate = statistics.median(pooled)
    elif median_scope == "pair-means":
        gate = statistics.median(means.values())
    else:
        raise ValueError(f"unknown median_scope: {median_scope!r}")

    events: list[tuple[str, str, int]] = []
    for pair in sorted(signals):
        zs = signals[pair]
        n = len(zs)
        mean = means[pair]
        sq = sum((v - mean) ** 2 for v in zs)
        denom = n if sigma_kind == "population" else n - 1
        sigma = math.sqrt(sq / denom)
        if not mean > gate:
            continue
        for i in range(1, n):
            slope = zs[i] - zs[i - 1]
            if slope > sigma_multiplier * sigma and zs[i] > mean:
                events.append((pair[0], pair[1], start_year + i))
    events.sort(key=lambda e: (e[2], e[0], e[1]))
    return events
