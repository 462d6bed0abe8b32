"""Critical-year detection over metric series.

A pair/year combination is emitted when all three hold, strictly:

1. the pair's mean signal exceeds the gate median (by default the median of
   every pair-year signal value pooled across surviving pairs);
2. the backward difference of the signal at that year exceeds
   ``sigma_multiplier`` times the pair's standard deviation over the window;
3. the year's signal exceeds the pair's own mean.

The first window year can never fire: its backward difference is undefined.
All comparisons are strict, so a constant series (slope 0, sigma 0) never
fires. Statistics are computed in one numpy implementation regardless of the
kernel backend, keeping outputs byte-identical across backends and thread
counts.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .metrics import MetricSeries, MetricsStore
from .model import ConfigError

MEDIAN_SCOPES = ("pair-years", "pair-means")
SIGMA_KINDS = ("population", "sample")
SLOPE_METHODS = ("backward-difference",)

EVENT_FIELDS = (
    "a", "b", "year", "z_value", "slope",
    "pair_mean", "pair_sigma", "global_median", "cross_cluster",
)


@dataclass(frozen=True)
class DetectionParams:
    sigma_multiplier: float = 2.0
    median_scope: str = "pair-years"
    slope_method: str = "backward-difference"
    sigma_kind: str = "population"

    def validated(self) -> "DetectionParams":
        if self.sigma_multiplier <= 0:
            raise ConfigError("sigma_multiplier must be positive")
        if self.median_scope not in MEDIAN_SCOPES:
            raise ConfigError(f"median_scope must be one of {MEDIAN_SCOPES}")
        if self.sigma_kind not in SIGMA_KINDS:
            raise ConfigError(f"sigma_kind must be one of {SIGMA_KINDS}")
        if self.slope_method not in SLOPE_METHODS:
            raise ConfigError(f"slope_method must be one of {SLOPE_METHODS}")
        return self


@dataclass
class CriticalYearEvent:
    a: str
    b: str
    year: int
    z_value: float
    slope: float
    pair_mean: float
    pair_sigma: float
    global_median: float
    cross_cluster: bool | None = None

    @property
    def pair(self) -> tuple[str, str]:
        return (self.a, self.b)

    def to_dict(self) -> dict:
        return {f: getattr(self, f) for f in EVENT_FIELDS}


def _means_sigmas(z: np.ndarray, params: DetectionParams) -> tuple[np.ndarray, np.ndarray]:
    n = z.shape[1]
    if n < 2:
        raise ConfigError("window length must be at least 2 for detection statistics")
    means = z.sum(axis=1) / n
    devs = z - means[:, None]
    denom = n if params.sigma_kind == "population" else n - 1
    sigmas = np.sqrt((devs * devs).sum(axis=1) / denom)
    return means, sigmas


def global_median(store: MetricsStore, params: DetectionParams = DetectionParams()) -> float:
    """Gate value for condition 1 over the surviving pairs."""
    if store.n_pairs == 0:
        raise ConfigError("no surviving pairs; cannot compute a detection gate")
    if params.median_scope == "pair-means":
        means, _ = _means_sigmas(store.z, params)
        return float(np.median(means))
    return float(np.median(store.z))


def pair_stats(series: MetricSeries, params: DetectionParams = DetectionParams()) -> tuple[float, float]:
    """Mean and standard deviation of one pair's signal over the window."""
    z = series.z[None, :]
    means, sigmas = _means_sigmas(z, params)
    return float(means[0]), float(sigmas[0])


def slope_at(series: MetricSeries, year: int, params: DetectionParams = DetectionParams()) -> float:
    """Backward first difference of the signal at ``year``."""
    start = series.window.start
    if year <= start:
        raise ConfigError(f"slope undefined at the first window year {start}")
    if year > series.window.end:
        raise ConfigError(f"year {year} outside window")
    idx = year - start
    return float(series.z[idx] - series.z[idx - 1])


def detect(store: MetricsStore, params: DetectionParams = DetectionParams()) -> list[CriticalYearEvent]:
    """Evaluate the three conditions over every surviving pair.

    Returns events sorted by (year, pair); a pair may fire in several years.
    """
    params = params.validated()
    if store.n_pairs == 0:
        return []
    z = store.z
    means, sigmas = _means_sigmas(z, params)
    gate = global_median(store, params)

    slopes = np.diff(z, axis=1)
    fires = (
        (means > gate)[:, None]
        & (slopes > params.sigma_multiplier * sigmas[:, None])
        & (z[:, 1:] > means[:, None])
    )
    rows, cols = np.nonzero(fires)

    events = []
    start = store.window.start
    for p, t in zip(rows.tolist(), cols.tolist()):
        a, b = store.pairs[p]
        events.append(
            CriticalYearEvent(
                a=a,
                b=b,
                year=start + t + 1,
                z_value=float(z[p, t + 1]),
                slope=float(slopes[p, t]),
                pair_mean=float(means[p]),
                pair_sigma=float(sigmas[p]),
                global_median=gate,
            )
        )
    events.sort(key=lambda e: (e.year, e.a, e.b))
    return events


# --- event persistence -------------------------------------------------------


def write_events_jsonl(events: list[CriticalYearEvent], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for ev in events:
            fh.write(json.dumps(ev.to_dict()) + "\n")


def write_events_csv(events: list[CriticalYearEvent], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(EVENT_FIELDS)
        for ev in events:
            d = ev.to_dict()
            writer.writerow([
                d["a"], d["b"], d["year"],
                repr(d["z_value"]), repr(d["slope"]), repr(d["pair_mean"]),
                repr(d["pair_sigma"]), repr(d["global_median"]),
                "" if d["cross_cluster"] is None else str(d["cross_cluster"]).lower(),
            ])


def read_events_jsonl(path: str | Path) -> list[CriticalYearEvent]:
    events = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            missing = [f for f in EVENT_FIELDS if f not in obj]
            if missing:
                raise ConfigError(f"{path}:{line_no}: event missing fields {missing}")
            events.append(CriticalYearEvent(**{f: obj[f] for f in EVENT_FIELDS}))
    return events


def with_classification(event: CriticalYearEvent, cross: bool) -> CriticalYearEvent:
    return replace(event, cross_cluster=cross)
