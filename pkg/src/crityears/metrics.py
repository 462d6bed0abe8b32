"""Balance/volume metrics over pair citation series.

Three quantities are derived from a pair's yearly directed counts (ir, ic):

* ``balance``: 1 - |ir - ic| / max(ir, ic), in [0, 1]. 1 means perfectly
  reciprocal exchange, 0 means strictly one-way citation. Defined as 0 when
  both counts are zero (the formula is 0/0 there; zero keeps the
  "no reciprocal exchange" reading and never affects the signal, which is
  zero regardless).
* ``knowledge_flow``: ir/2 + ic/2, the evenly weighted exchange volume.
* ``signal``: balance * knowledge_flow, the per-year detection statistic.

Counts stay exact integers until they enter these formulas; all metric
arithmetic is IEEE float64.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numpy as np

from . import kernels
from .aggregate import PairSeries, PairSeriesStore
from .model import Window


def balance(ir: float, ic: float) -> float:
    """Reciprocity of one year's exchange between two subjects.

    Scale-free: balance(k*ir, k*ic) == balance(ir, ic) for k > 0, and
    symmetric in its arguments.

    >>> balance(5, 5)
    1.0
    >>> balance(0, 7)
    0.0
    """
    hi = max(ir, ic)
    if hi == 0:
        return 0.0
    return 1.0 - abs(ir - ic) / hi


def knowledge_flow(ir: float, ic: float) -> float:
    """Total exchange volume with both directions weighted equally.

    >>> knowledge_flow(4, 6)
    5.0
    """
    return 0.5 * ir + 0.5 * ic


@dataclass
class MetricSeries:
    """Yearly balance (ib), volume (kf) and signal (z) for one pair."""

    a: str
    b: str
    window: Window
    ib: np.ndarray
    kf: np.ndarray
    z: np.ndarray

    @property
    def pair(self) -> tuple[str, str]:
        return (self.a, self.b)


def metric_series(series: PairSeries) -> MetricSeries:
    """Element-wise metrics for a single pair series."""
    ib, kf, z = kernels.metric_arrays(
        series.ir.astype(np.float64), series.ic.astype(np.float64)
    )
    return MetricSeries(series.a, series.b, series.window, ib, kf, z)


class MetricsStore:
    """Metric matrices for every surviving pair, kernel-computed in bulk."""

    def __init__(self, window: Window, pairs: list[tuple[str, str]],
                 ib: np.ndarray, kf: np.ndarray, z: np.ndarray):
        self.window = window
        self.pairs = pairs
        self.ib = ib
        self.kf = kf
        self.z = z

    @classmethod
    def from_pairs(cls, store: PairSeriesStore) -> "MetricsStore":
        ib, kf, z = kernels.metric_arrays(store.ir, store.ic)
        return cls(store.window, list(store.pairs), ib, kf, z)

    @property
    def n_pairs(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[MetricSeries]:
        for i, (a, b) in enumerate(self.pairs):
            yield MetricSeries(a, b, self.window, self.ib[i], self.kf[i], self.z[i])


def dump_metrics(store: MetricsStore, path: str | Path) -> None:
    """Write per-pair-year metrics as TSV with fixed 6-decimal formatting."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("a\tb\tyear\tib\tkf\tz\n")
        for i, (a, b) in enumerate(store.pairs):
            for j, year in enumerate(store.window.years()):
                fh.write(
                    f"{a}\t{b}\t{year}\t{store.ib[i, j]:.6f}\t"
                    f"{store.kf[i, j]:.6f}\t{store.z[i, j]:.6f}\n"
                )
