"""Derived analytical artifacts: rankings, change matrix, partner timelines.

Every export here is a pure function of (classified events, segmentation,
cluster map, corpus summaries); rerunning on the same inputs produces
byte-identical files. Cluster orderings are deterministic: alphabetical when
unranked, count-descending with alphabetical tie-break when ranked, and
natural-group-first in the change matrix.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from decimal import Decimal
from pathlib import Path

from .detect import CriticalYearEvent
from .model import ConfigError, SchemaVersionError, Window
from .rounding import half_up_2dp
from .segmentation import PhaseSegmentation, per_year_average
from .taxonomy import ClusterMap

SCHEMA_VERSION = 1


def format_percentage(part: int, whole: int) -> str:
    """Share of a whole as a half-up 2-decimal percent string.

    >>> format_percentage(2529, 2747)
    '92.06%'
    """
    if whole <= 0:
        raise ConfigError("format_percentage requires a positive whole")
    if part > whole:
        raise ConfigError("part exceeds whole; use growth_percentage for rates")
    return half_up_2dp(Decimal(part) * 100 / Decimal(whole)) + "%"


def growth_percentage(before: int, after: int) -> str:
    """Relative change before -> after, half-up 2-decimal percent string.

    >>> growth_percentage(125, 206)
    '64.80%'
    """
    if before <= 0:
        raise ConfigError("growth_percentage requires a positive base")
    return half_up_2dp(Decimal(after - before) * 100 / Decimal(before)) + "%"


def _event_clusters(ev: CriticalYearEvent, cmap: ClusterMap, lenient: bool) -> tuple[str, str, bool]:
    ca = cmap.cluster_of(ev.a, lenient=lenient)
    cb = cmap.cluster_of(ev.b, lenient=lenient)
    is_cross = ev.cross_cluster if ev.cross_cluster is not None else ca != cb
    return ca, cb, is_cross


# --- cluster rankings per period ---------------------------------------------


@dataclass
class ClusterPeriodRanking:
    label: str
    start: int
    end: int
    rows: list[tuple[str, int]]
    unique_events: int
    per_year: str

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "start": self.start,
            "end": self.end,
            "rows": [{"cluster": c, "count": n} for c, n in self.rows],
            "unique_events": self.unique_events,
            "per_year": self.per_year,
        }


def rank_clusters(
    events: list[CriticalYearEvent],
    segmentation: PhaseSegmentation,
    cmap: ClusterMap,
    lenient: bool = False,
) -> list[ClusterPeriodRanking]:
    """Cross-cluster event counts per cluster and period.

    A cross-cluster event counts toward both endpoint clusters, so the listed
    counts sum to exactly twice the period's unique event total.
    """
    clusters = cmap.clusters()
    rankings = []
    for period in segmentation.periods:
        counts = {c: 0 for c in clusters}
        unique = 0
        for ev in events:
            if ev.year not in period:
                continue
            ca, cb, is_cross = _event_clusters(ev, cmap, lenient)
            if not is_cross:
                continue
            unique += 1
            counts[ca] = counts.get(ca, 0) + 1
            counts[cb] = counts.get(cb, 0) + 1
        rows = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        rankings.append(
            ClusterPeriodRanking(
                label=period.label,
                start=period.start,
                end=period.end,
                rows=rows,
                unique_events=unique,
                per_year=per_year_average(unique, period.n_years),
            )
        )
    return rankings


def write_ranking_csv(ranking: ClusterPeriodRanking, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["rank", "cluster", "count"])
        for rank, (cluster, count) in enumerate(ranking.rows, start=1):
            writer.writerow([rank, cluster, count])


# --- cluster-pair change matrix ----------------------------------------------


@dataclass
class DeltaMatrix:
    period_a: str
    period_b: str
    clusters: list[str]
    groups: dict[str, str]
    matrix: list[list[int]]
    row_totals: list[int]

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "delta-matrix",
            "period_a": self.period_a,
            "period_b": self.period_b,
            "clusters": self.clusters,
            "groups": {c: self.groups.get(c, "unassigned") for c in self.clusters},
            "matrix": self.matrix,
            "row_totals": self.row_totals,
        }


def _matrix_cluster_order(cmap: ClusterMap, exclude: tuple[str, ...]) -> list[str]:
    """Natural block first, then humanities/social, then anything untagged."""
    ordered = []
    for group in ("natural", "humsoc", "unassigned"):
        ordered.extend(
            c for c in cmap.clusters()
            if cmap.group_of(c) == group and c not in exclude
        )
    return ordered


def _pair_counts_in(
    events: list[CriticalYearEvent], start: int, end: int, cmap: ClusterMap, lenient: bool
) -> dict[tuple[str, str], int]:
    counts: dict[tuple[str, str], int] = {}
    for ev in events:
        if not (start <= ev.year <= end):
            continue
        ca, cb, is_cross = _event_clusters(ev, cmap, lenient)
        key = (ca, cb) if ca <= cb else (cb, ca)  # diagonal key when intra
        if not is_cross:
            key = (ca, ca)
        counts[key] = counts.get(key, 0) + 1
    return counts


def delta_matrix(
    events: list[CriticalYearEvent],
    segmentation: PhaseSegmentation,
    period_a: str,
    period_b: str,
    cmap: ClusterMap,
    exclude: tuple[str, ...] = ("General",),
    lenient: bool = False,
) -> DeltaMatrix:
    """Per-cluster-pair event count differences: period_b minus period_a.

    Cross-cluster deltas fill the symmetric off-diagonal cells; intra-cluster
    deltas sit on the diagonal. Row totals sum off-diagonal entries only.
    """
    pa = segmentation.period(period_a)
    pb = segmentation.period(period_b)
    counts_a = _pair_counts_in(events, pa.start, pa.end, cmap, lenient)
    counts_b = _pair_counts_in(events, pb.start, pb.end, cmap, lenient)

    clusters = _matrix_cluster_order(cmap, exclude)
    idx = {c: i for i, c in enumerate(clusters)}
    n = len(clusters)
    matrix = [[0] * n for _ in range(n)]
    for key in set(counts_a) | set(counts_b):
        ca, cb = key
        if ca not in idx or cb not in idx:
            continue
        delta = counts_b.get(key, 0) - counts_a.get(key, 0)
        i, j = idx[ca], idx[cb]
        matrix[i][j] = delta
        matrix[j][i] = delta
    row_totals = [
        sum(v for j, v in enumerate(row) if j != i) for i, row in enumerate(matrix)
    ]
    return DeltaMatrix(
        period_a=period_a,
        period_b=period_b,
        clusters=clusters,
        groups=dict(cmap.groups),
        matrix=matrix,
        row_totals=row_totals,
    )


def write_delta_csv(dm: DeltaMatrix, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["cluster"] + dm.clusters + ["total"])
        for i, cluster in enumerate(dm.clusters):
            writer.writerow([cluster] + dm.matrix[i] + [dm.row_totals[i]])


# --- partner timeline for a focal cluster ------------------------------------


def partner_timeline(
    events: list[CriticalYearEvent],
    focal: str,
    k: int,
    cmap: ClusterMap,
    window: Window,
    lenient: bool = False,
) -> dict:
    """Top-k yearly cross-cluster partners of ``focal`` plus cumulative totals."""
    if focal not in cmap.clusters():
        raise ConfigError(f"unknown focal cluster {focal!r}")
    if k < 1:
        raise ConfigError("k must be at least 1")
    yearly: dict[int, dict[str, int]] = {y: {} for y in window.years()}
    cumulative: dict[str, int] = {}
    for ev in events:
        if ev.year not in window:
            continue
        ca, cb, is_cross = _event_clusters(ev, cmap, lenient)
        if not is_cross:
            continue
        if ca == focal:
            partner = cb
        elif cb == focal:
            partner = ca
        else:
            continue
        yearly[ev.year][partner] = yearly[ev.year].get(partner, 0) + 1
        cumulative[partner] = cumulative.get(partner, 0) + 1

    years_out = []
    for year in window.years():
        counts = yearly[year]
        ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        chosen = ranked[:k]
        chosen_counts = [n for _, n in chosen]
        tie = len(set(chosen_counts)) < len(chosen_counts) or (
            len(ranked) > len(chosen)
            and chosen
            and ranked[len(chosen)][1] == chosen_counts[-1]
        )
        years_out.append(
            {
                "year": year,
                "partners": [{"cluster": c, "count": n} for c, n in chosen],
                "tie": tie,
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "partner-evolution",
        "focal": focal,
        "k": k,
        "years": years_out,
        "cumulative": {c: cumulative[c] for c in sorted(cumulative)},
    }


# --- full timeline export ------------------------------------------------------


def export_timeline(
    events: list[CriticalYearEvent],
    publications: dict[tuple[str, int], int],
    cmap: ClusterMap,
    window: Window,
    lenient: bool = False,
) -> dict:
    """Everything a renderer needs for the cluster-timeline figure.

    Circles carry per-cluster-year intra/cross event counts plus publication
    volume; links carry per-cluster-pair-year event counts and mean signal.
    """
    circles: dict[tuple[str, int], dict] = {}
    links: dict[tuple[str, str, int], dict] = {}

    def circle(cluster: str, year: int) -> dict:
        key = (cluster, year)
        if key not in circles:
            circles[key] = {
                "cluster": cluster,
                "year": year,
                "intra": 0,
                "cross": 0,
                "publications": publications.get(key, 0),
            }
        return circles[key]

    for ev in events:
        if ev.year not in window:
            continue
        ca, cb, is_cross = _event_clusters(ev, cmap, lenient)
        if is_cross:
            circle(ca, ev.year)["cross"] += 1
            circle(cb, ev.year)["cross"] += 1
            lo, hi = (ca, cb) if ca < cb else (cb, ca)
            link = links.setdefault(
                (lo, hi, ev.year),
                {"a": lo, "b": hi, "year": ev.year, "count": 0, "z_sum": 0.0},
            )
            link["count"] += 1
            link["z_sum"] += ev.z_value
        else:
            circle(ca, ev.year)["intra"] += 1

    for (cluster, year), pubs in publications.items():
        if pubs and year in window:
            circle(cluster, year)

    link_rows = []
    for key in sorted(links):
        row = links[key]
        link_rows.append(
            {
                "a": row["a"],
                "b": row["b"],
                "year": row["year"],
                "count": row["count"],
                "mean_z": row["z_sum"] / row["count"],
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "timeline",
        "window": [window.start, window.end],
        "clusters": cmap.clusters(),
        "circles": [circles[k] for k in sorted(circles)],
        "links": link_rows,
    }


# --- staged JSON I/O ----------------------------------------------------------


def write_json(obj: dict, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def read_json(path: str | Path, kind: str | None = None) -> dict:
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    version = obj.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"{path}: schema_version {version!r}, this build reads {SCHEMA_VERSION}"
        )
    if kind is not None and obj.get("kind") != kind:
        raise SchemaVersionError(f"{path}: kind {obj.get('kind')!r}, expected {kind!r}")
    return obj
