"""Development-phase segmentation from annual cross-cluster activity.

Two rule families mark a year as a turning point:

* emergence: both the cross-cluster event count and the participating-cluster
  count reach a configurable multiple (default 2x) of their maxima over all
  prior years, with both prior maxima at least 1;
* acceleration: the previous year's count exceeds a base threshold (default
  100) and year-over-year growth exceeds a rate threshold (default 50%).

Firings within two years of an already-kept turning point collapse into it,
so a single multi-year ramp yields one division point. Turning points start
new periods labeled I, II, III, ... that tile the window exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

from .detect import CriticalYearEvent
from .model import ConfigError, Window
from .rounding import half_up_2dp, ratio_2dp
from .taxonomy import ClusterMap

COLLAPSE_WINDOW = 2


@dataclass
class AnnualActivity:
    year: int
    cross_cluster_events: int
    participating_clusters: int
    total_citations: int


@dataclass(frozen=True)
class SegmentationRules:
    emergence_count_multiplier: float = 2.0
    emergence_cluster_multiplier: float = 2.0
    acceleration_growth_threshold: float = 0.5
    acceleration_base_threshold: float = 100.0

    def validated(self) -> "SegmentationRules":
        for name in (
            "emergence_count_multiplier",
            "emergence_cluster_multiplier",
            "acceleration_growth_threshold",
            "acceleration_base_threshold",
        ):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        return self


@dataclass
class Period:
    label: str
    start: int
    end: int

    @property
    def n_years(self) -> int:
        return self.end - self.start + 1

    def __contains__(self, year: object) -> bool:
        return isinstance(year, int) and self.start <= year <= self.end


@dataclass
class PhaseSegmentation:
    window: Window
    turning_points: list[int]
    periods: list[Period]

    def period_of(self, year: int) -> Period:
        for period in self.periods:
            if year in period:
                return period
        raise KeyError(f"year {year} outside segmentation window")

    def period(self, label: str) -> Period:
        for p in self.periods:
            if p.label == label:
                return p
        raise KeyError(f"no period labeled {label!r}")

    def to_dict(self) -> dict:
        return {
            "turning_points": list(self.turning_points),
            "periods": [
                {"label": p.label, "start": p.start, "end": p.end} for p in self.periods
            ],
        }


_ROMAN = (
    (10, "X"), (9, "IX"), (5, "V"), (4, "IV"), (1, "I"),
)


def roman(n: int) -> str:
    if n < 1:
        raise ValueError("roman numerals start at 1")
    out = []
    for value, glyph in _ROMAN:
        while n >= value:
            out.append(glyph)
            n -= value
    return "".join(out)


def annual_activity(
    events: list[CriticalYearEvent],
    cmap: ClusterMap,
    citations_per_year: dict[int, int],
    window: Window,
    lenient: bool = False,
) -> list[AnnualActivity]:
    """Per-year cross-cluster event counts, cluster participation, citations."""
    counts = {y: 0 for y in window.years()}
    clusters: dict[int, set[str]] = {y: set() for y in window.years()}
    for ev in events:
        if ev.year not in window:
            continue
        is_cross = ev.cross_cluster
        ca = cmap.cluster_of(ev.a, lenient=lenient)
        cb = cmap.cluster_of(ev.b, lenient=lenient)
        if is_cross is None:
            is_cross = ca != cb
        if not is_cross:
            continue
        counts[ev.year] += 1
        clusters[ev.year].update((ca, cb))
    return [
        AnnualActivity(
            year=y,
            cross_cluster_events=counts[y],
            participating_clusters=len(clusters[y]),
            total_citations=int(citations_per_year.get(y, 0)),
        )
        for y in window.years()
    ]


def _fires_emergence(activity: list[AnnualActivity], i: int, rules: SegmentationRules) -> bool:
    prior_counts = [a.cross_cluster_events for a in activity[:i]]
    prior_clusters = [a.participating_clusters for a in activity[:i]]
    max_count = max(prior_counts)
    max_clusters = max(prior_clusters)
    if max_count < 1 or max_clusters < 1:
        return False
    return (
        activity[i].cross_cluster_events >= rules.emergence_count_multiplier * max_count
        and activity[i].participating_clusters >= rules.emergence_cluster_multiplier * max_clusters
    )


def _fires_acceleration(activity: list[AnnualActivity], i: int, rules: SegmentationRules) -> bool:
    base = activity[i - 1].cross_cluster_events
    if base <= rules.acceleration_base_threshold:
        return False
    growth = (activity[i].cross_cluster_events - base) / base
    return growth > rules.acceleration_growth_threshold


def detect_turning_points(
    activity: list[AnnualActivity], rules: SegmentationRules = SegmentationRules()
) -> PhaseSegmentation:
    """Scan the activity series causally; no turning points is a valid outcome."""
    rules = rules.validated()
    if len(activity) < 3:
        raise ConfigError("need at least 3 years of activity to segment")
    years = [a.year for a in activity]
    if years != list(range(years[0], years[0] + len(years))):
        raise ConfigError("activity series must cover consecutive years")

    fired = []
    for i in range(1, len(activity)):
        if _fires_emergence(activity, i, rules) or _fires_acceleration(activity, i, rules):
            fired.append(activity[i].year)

    kept: list[int] = []
    for year in fired:
        if not kept or year > kept[-1] + COLLAPSE_WINDOW:
            kept.append(year)

    window = Window(years[0], years[-1])
    bounds = [window.start] + kept + [window.end + 1]
    periods = [
        Period(label=roman(i + 1), start=bounds[i], end=bounds[i + 1] - 1)
        for i in range(len(bounds) - 1)
    ]
    return PhaseSegmentation(window=window, turning_points=kept, periods=periods)


def growth_stats(
    activity: list[AnnualActivity], segmentation: PhaseSegmentation
) -> dict:
    """Per-period totals/averages and between-period growth, half-up 2dp."""
    by_year = {a.year: a for a in activity}
    rows = []
    averages: list[Decimal] = []
    for period in segmentation.periods:
        total = sum(
            by_year[y].cross_cluster_events for y in range(period.start, period.end + 1)
            if y in by_year
        )
        citations = sum(
            by_year[y].total_citations for y in range(period.start, period.end + 1)
            if y in by_year
        )
        avg = Decimal(total) / Decimal(period.n_years)
        averages.append(avg)
        rows.append(
            {
                "label": period.label,
                "start": period.start,
                "end": period.end,
                "years": period.n_years,
                "events": total,
                "citations": citations,
                "per_year": half_up_2dp(avg),
            }
        )
    growth = []
    for i in range(1, len(rows)):
        prev, cur = averages[i - 1], averages[i]
        pct = None if prev == 0 else half_up_2dp((cur - prev) * 100 / prev) + "%"
        cit_prev, cit_cur = rows[i - 1]["citations"], rows[i]["citations"]
        prev_cit_avg = Decimal(cit_prev) / Decimal(rows[i - 1]["years"])
        cur_cit_avg = Decimal(cit_cur) / Decimal(rows[i]["years"])
        cit_pct = (
            None
            if prev_cit_avg == 0
            else half_up_2dp((cur_cit_avg - prev_cit_avg) * 100 / prev_cit_avg) + "%"
        )
        growth.append(
            {
                "from": rows[i - 1]["label"],
                "to": rows[i]["label"],
                "events_pct": pct,
                "citations_pct": cit_pct,
            }
        )
    return {"periods": rows, "growth": growth}


def per_year_average(total: int, years: int) -> str:
    """Events-per-year footer figure, half-up to 2 decimals."""
    if years <= 0:
        raise ConfigError("period length must be positive")
    return ratio_2dp(total, years)
