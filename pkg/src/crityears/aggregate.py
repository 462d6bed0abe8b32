"""Reduce citation edges into per-pair yearly (ir, ic) time series.

Counting conventions:
  * The citing paper's publication year anchors each count; edges whose
    citing paper falls outside the analysis window contribute nothing.
  * Every ordered (citing-subject, cited-subject) combination of an edge
    increments its directed count, same-subject combinations excluded.
    Under ``counting="full"`` each combination adds 1; under
    ``counting="fractional"`` it adds 1/(n_citing_subjects * n_cited_subjects).
  * The unordered pair {a, b} (a < b lexicographically) stores the a->b flow
    as ``ir`` and the b->a flow as ``ic``. Pairs with all-zero series never
    appear in the store.

Chunks of edges are expanded and reduced independently and merged by keyed
addition, so any sharding (including the thread pool) is observably identical
to a sequential pass.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numpy as np

from . import kernels
from .ingest import CitationReader, PaperIndex
from .model import ConfigError, CorpusStats, Window, canonical_pair

log = logging.getLogger("crityears")

COUNTING_MODES = ("full", "fractional")


@dataclass
class PairSeries:
    """Dense yearly flows for one canonical subject pair."""

    a: str
    b: str
    window: Window
    ir: np.ndarray  # citations from a-papers to b-papers, per year
    ic: np.ndarray  # citations from b-papers to a-papers, per year

    @property
    def pair(self) -> tuple[str, str]:
        return (self.a, self.b)


def pair_totals(series: PairSeries) -> tuple[float, float, int]:
    """Window totals: (sum ir, sum ic, years with flow in both directions)."""
    both = int(np.count_nonzero((series.ir > 0) & (series.ic > 0)))
    return float(series.ir.sum()), float(series.ic.sum()), both


class PairSeriesStore:
    """All surviving pairs as dense (n_pairs, n_years) flow matrices."""

    def __init__(self, window: Window, pairs: list[tuple[str, str]],
                 ir: np.ndarray, ic: np.ndarray):
        self.window = window
        self.pairs = pairs
        self.ir = ir
        self.ic = ic
        self._by_pair = {p: i for i, p in enumerate(pairs)}

    @property
    def n_pairs(self) -> int:
        return len(self.pairs)

    def get(self, a: str, b: str) -> PairSeries:
        pair = canonical_pair(a, b)
        i = self._by_pair[pair]
        return PairSeries(pair[0], pair[1], self.window, self.ir[i], self.ic[i])

    def __contains__(self, pair: tuple[str, str]) -> bool:
        return pair in self._by_pair

    def __iter__(self) -> Iterator[PairSeries]:
        for i, (a, b) in enumerate(self.pairs):
            yield PairSeries(a, b, self.window, self.ir[i], self.ic[i])


@dataclass
class AggregateResult:
    store: PairSeriesStore
    stats: CorpusStats
    citations_per_year: dict[int, int]


def _merge_reduced(acc, chunk):
    """Keyed-sum merge; stable sort keeps accumulator-first addition order."""
    if acc is None:
        return chunk
    keys = np.concatenate([acc[0], chunk[0]])
    sums = np.concatenate([acc[1], chunk[1]])
    return kernels.reduce_keyed(keys, sums)


def _expand_reduce(citing, cited, years, offsets, codes, window, n_subjects, fractional):
    in_window = (years >= window.start) & (years <= window.end)
    year_off = (years[in_window] - window.start).astype(np.int64)
    keys, weights = kernels.expand_pairs(
        citing[in_window], cited[in_window], year_off,
        offsets, codes, n_subjects, window.n_years, fractional,
    )
    reduced = kernels.reduce_keyed(keys, weights)
    yearly = np.bincount(year_off, minlength=window.n_years).astype(np.int64)
    return reduced, yearly


def _build_store(index: PaperIndex, window: Window, acc) -> PairSeriesStore:
    n_years = window.n_years
    names = index.subject_names
    if acc is None or acc[0].size == 0:
        log.warning("no citation flow inside the analysis window; zero surviving pairs")
        shape = (0, n_years)
        return PairSeriesStore(window, [], np.zeros(shape), np.zeros(shape))

    keys, sums = acc
    n_subjects = len(names)
    year_off = keys % n_years
    ordered = keys // n_years
    x = ordered // n_subjects
    y = ordered % n_subjects

    # canonical direction via lexicographic rank of the subject labels
    rank = np.empty(n_subjects, dtype=np.int64)
    rank[np.argsort(np.asarray(names, dtype=object))] = np.arange(n_subjects)
    swap = rank[x] > rank[y]
    first = np.where(swap, y, x)
    second = np.where(swap, x, y)
    unordered = first * n_subjects + second

    uniq, inv = np.unique(unordered, return_inverse=True)
    ir = np.zeros((uniq.size, n_years), dtype=np.float64)
    ic = np.zeros_like(ir)
    fwd = ~swap
    ir[inv[fwd], year_off[fwd]] = sums[fwd]
    ic[inv[swap], year_off[swap]] = sums[swap]

    pairs = [(names[int(k // n_subjects)], names[int(k % n_subjects)]) for k in uniq]
    order = sorted(range(len(pairs)), key=lambda i: pairs[i])
    return PairSeriesStore(
        window,
        [pairs[i] for i in order],
        np.ascontiguousarray(ir[order]),
        np.ascontiguousarray(ic[order]),
    )


def aggregate(
    index: PaperIndex,
    citations_path: str | Path,
    window: Window,
    counting: str = "full",
    strict: bool = False,
    threads: int = 1,
) -> AggregateResult:
    """Single pass over the citations file into a :class:`PairSeriesStore`.

    Memory stays proportional to the surviving (pair, year) key set plus one
    chunk of edges; the edge list itself is never held.
    """
    if counting not in COUNTING_MODES:
        raise ConfigError(f"counting must be one of {COUNTING_MODES}, got {counting!r}")
    if window.n_years < 1:
        raise ConfigError("empty analysis window")
    fractional = counting == "fractional"

    reader = CitationReader(citations_path, index, strict=strict)
    offsets = index.subj_offsets
    codes = index.subj_codes
    years_arr = index.years
    n_subjects = index.subject_count

    acc = None
    yearly = np.zeros(window.n_years, dtype=np.int64)

    def job(pair):
        citing, cited = pair
        return _expand_reduce(
            citing, cited, years_arr[citing], offsets, codes,
            window, n_subjects, fractional,
        )

    if threads <= 1:
        for chunk in reader.chunks():
            reduced, chunk_yearly = job(chunk)
            acc = _merge_reduced(acc, reduced)
            yearly += chunk_yearly
    else:
        # merge in submission order so the result matches the sequential pass
        with ThreadPoolExecutor(max_workers=threads) as pool:
            pending = []
            for chunk in reader.chunks():
                pending.append(pool.submit(job, chunk))
                while len(pending) > threads:
                    reduced, chunk_yearly = pending.pop(0).result()
                    acc = _merge_reduced(acc, reduced)
                    yearly += chunk_yearly
            for fut in pending:
                reduced, chunk_yearly = fut.result()
                acc = _merge_reduced(acc, reduced)
                yearly += chunk_yearly

    store = _build_store(index, window, acc)
    stats = index.stats()
    stats.edge_count = reader.edge_count
    stats.skipped_edges = reader.skips.total
    stats.edge_skips = reader.skips
    per_year = {window.start + i: int(v) for i, v in enumerate(yearly)}
    return AggregateResult(store=store, stats=stats, citations_per_year=per_year)


def _format_count(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def dump_pair_counts(store: PairSeriesStore, path: str | Path) -> None:
    """Write the dense per-pair counts as diffable TSV sorted by (a, b, year)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("a\tb\tyear\tir\tic\n")
        for series in store:
            for i, year in enumerate(store.window.years()):
                fh.write(
                    f"{series.a}\t{series.b}\t{year}\t"
                    f"{_format_count(series.ir[i])}\t{_format_count(series.ic[i])}\n"
                )
