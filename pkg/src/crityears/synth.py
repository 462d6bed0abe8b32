"""Deterministic synthetic corpora with planted ground truth.

A scenario prescribes per-ordered-pair yearly citation rates, optionally with
planted surges: from the surge year onward a pair's rate is multiplied by
``surge_factor`` ("scale" mode) or both directions are set to
``surge_factor * max(baseline_ab, baseline_ba)`` ("equalize" mode, the
one-way-to-reciprocal transition).

Deterministic mode realizes each rate as the half-up-rounded expectation, so
tiny fixtures are hand-checkable and ground truth is exact; stochastic mode
draws Poisson counts from the seeded generator in a fixed iteration order.
Either way, identical scenarios produce byte-identical files.

The manifest declares what the files contain: paper/edge totals plus the
full-counting ordered pair/year expansion of every emitted edge. Ground truth
for detection (``expected_detections``) runs the naive reference detector on
that exact schedule and never touches the production pipeline.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np

from .detect import DetectionParams
from .model import ConfigError, Window, canonical_pair
from .oracle import naive_detect

BALANCE_MODES = ("equalize", "scale")
MANIFEST_KIND = "manifest"
SCHEMA_VERSION = 1


@dataclass(frozen=True)
class PlantedEvent:
    a: str
    b: str
    year: int
    surge_factor: float
    balance_mode: str = "equalize"


@dataclass
class Scenario:
    seed: int
    window: Window
    subjects: list[tuple[str, str, str]]  # (label, cluster, group)
    baseline_rates: dict[tuple[str, str], float] = field(default_factory=dict)
    planted_events: list[PlantedEvent] = field(default_factory=list)
    mode: str = "deterministic"
    papers_per_subject_year: int = 3
    multi_subject_fraction: float = 0.0

    def labels(self) -> list[str]:
        return [s[0] for s in self.subjects]

    def validate(self) -> "Scenario":
        if not self.subjects:
            raise ConfigError("scenario has no subjects")
        labels = self.labels()
        if len(set(labels)) != len(labels):
            raise ConfigError("duplicate subject labels in scenario")
        if self.window.n_years < 1:
            raise ConfigError("scenario window is empty")
        if self.mode not in ("deterministic", "stochastic"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.papers_per_subject_year < 1:
            raise ConfigError("papers_per_subject_year must be >= 1")
        if not 0.0 <= self.multi_subject_fraction <= 1.0:
            raise ConfigError("multi_subject_fraction must be in [0, 1]")
        if self.multi_subject_fraction > 0 and len(labels) < 2:
            raise ConfigError("multi-subject papers need at least 2 subjects")
        known = set(labels)
        for (x, y), rate in self.baseline_rates.items():
            if x == y:
                raise ConfigError(f"baseline rate on same-subject pair {x!r}")
            if x not in known or y not in known:
                raise ConfigError(f"baseline rate names unknown subject: {x!r}->{y!r}")
            if rate < 0:
                raise ConfigError(f"negative rate for {x!r}->{y!r}")
        for ev in self.planted_events:
            if ev.a == ev.b:
                raise ConfigError("planted event pair labels must differ")
            if ev.a not in known or ev.b not in known:
                raise ConfigError(f"planted event names unknown subject: {ev.a!r}/{ev.b!r}")
            if ev.year not in self.window:
                raise ConfigError(f"planted event year {ev.year} outside window")
            if ev.surge_factor <= 1:
                raise ConfigError("surge_factor must exceed 1")
            if ev.balance_mode not in BALANCE_MODES:
                raise ConfigError(f"balance_mode must be one of {BALANCE_MODES}")
        return self

    @classmethod
    def from_dict(cls, obj: dict) -> "Scenario":
        window = Window(int(obj["window"][0]), int(obj["window"][1]))
        subjects = [
            (s["label"], s.get("cluster", s["label"]), s.get("group", "natural"))
            for s in obj["subjects"]
        ]
        rates = {
            (r["from"], r["to"]): float(r["rate"])
            for r in obj.get("baseline_rates", [])
        }
        planted = [
            PlantedEvent(
                a=p["a"],
                b=p["b"],
                year=int(p["year"]),
                surge_factor=float(p["surge_factor"]),
                balance_mode=p.get("balance_mode", "equalize"),
            )
            for p in obj.get("planted_events", [])
        ]
        return cls(
            seed=int(obj.get("seed", 0)),
            window=window,
            subjects=subjects,
            baseline_rates=rates,
            planted_events=planted,
            mode=obj.get("mode", "deterministic"),
            papers_per_subject_year=int(obj.get("papers_per_subject_year", 3)),
            multi_subject_fraction=float(obj.get("multi_subject_fraction", 0.0)),
        ).validate()

    @classmethod
    def from_file(cls, path: str | Path) -> "Scenario":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def rate_schedule(scenario: Scenario) -> dict[tuple[str, str], list[float]]:
    """Per-ordered-pair yearly rates with planted surges applied in order."""
    n = scenario.window.n_years
    rates: dict[tuple[str, str], list[float]] = {}
    for pair, base in scenario.baseline_rates.items():
        rates[pair] = [base] * n
    for ev in scenario.planted_events:
        fwd = (ev.a, ev.b)
        rev = (ev.b, ev.a)
        start_idx = ev.year - scenario.window.start
        base_fwd = scenario.baseline_rates.get(fwd, 0.0)
        base_rev = scenario.baseline_rates.get(rev, 0.0)
        rates.setdefault(fwd, [base_fwd] * n)
        rates.setdefault(rev, [base_rev] * n)
        if ev.balance_mode == "equalize":
            surged = ev.surge_factor * max(base_fwd, base_rev)
            for t in range(start_idx, n):
                rates[fwd][t] = surged
                rates[rev][t] = surged
        else:
            for t in range(start_idx, n):
                rates[fwd][t] = base_fwd * ev.surge_factor
                rates[rev][t] = base_rev * ev.surge_factor
    return rates


def count_schedule(scenario: Scenario) -> dict[tuple[str, str, int], int]:
    """Realized per-ordered-pair-per-year counts (zeros omitted)."""
    rates = rate_schedule(scenario)
    rng = np.random.default_rng(scenario.seed) if scenario.mode == "stochastic" else None
    counts: dict[tuple[str, str, int], int] = {}
    for pair in sorted(rates):
        series = rates[pair]
        for t, rate in enumerate(series):
            if scenario.mode == "deterministic":
                count = int(math.floor(rate + 0.5))
            else:
                count = int(rng.poisson(rate)) if rate > 0 else 0
            if count > 0:
                counts[(pair[0], pair[1], scenario.window.start + t)] = count
    return counts


def _paper_subjects(scenario: Scenario) -> dict[tuple[str, int, int], tuple[str, ...]]:
    """Subject tuple of every synthetic paper, keyed (subject, year, slot)."""
    labels = scenario.labels()
    multi_per_block = int(math.floor(scenario.multi_subject_fraction * scenario.papers_per_subject_year + 0.5))
    out = {}
    for si, label in enumerate(labels):
        extra = labels[(si + 1) % len(labels)]
        for year in scenario.window.years():
            for slot in range(scenario.papers_per_subject_year):
                if slot < multi_per_block and extra != label:
                    out[(label, year, slot)] = (label, extra)
                else:
                    out[(label, year, slot)] = (label,)
    return out


@dataclass
class GeneratedCorpus:
    papers_path: Path
    citations_path: Path
    clusters_path: Path
    manifest_path: Path
    manifest: dict


def generate(scenario: Scenario, outdir: str | Path) -> GeneratedCorpus:
    """Write the corpus files plus a manifest that recounts them exactly."""
    scenario.validate()
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    labels = scenario.labels()
    counts = count_schedule(scenario)
    subjects_of = _paper_subjects(scenario)
    per_block = scenario.papers_per_subject_year

    paper_id: dict[tuple[str, int, int], str] = {}
    serial = 0
    papers_path = outdir / "papers.tsv"
    with open(papers_path, "w", encoding="utf-8") as fh:
        fh.write("paper_id\tyear\tsubjects\n")
        for label in labels:
            for year in scenario.window.years():
                for slot in range(per_block):
                    pid = f"P{serial:07d}"
                    serial += 1
                    paper_id[(label, year, slot)] = pid
                    fh.write(f"{pid}\t{year}\t{';'.join(subjects_of[(label, year, slot)])}\n")

    # edges cycle through the citing block first, then advance the cited slot
    recount: dict[tuple[str, str, int], int] = {}
    edge_count = 0
    citations_path = outdir / "citations.tsv"
    with open(citations_path, "w", encoding="utf-8") as fh:
        fh.write("citing_id\tcited_id\n")
        for (x, y, year) in sorted(counts):
            k = counts[(x, y, year)]
            for i in range(k):
                citing_key = (x, year, i % per_block)
                cited_key = (y, year, (i // per_block) % per_block)
                fh.write(f"{paper_id[citing_key]}\t{paper_id[cited_key]}\n")
                edge_count += 1
                for sx in subjects_of[citing_key]:
                    for sy in subjects_of[cited_key]:
                        if sx != sy:
                            rk = (sx, sy, year)
                            recount[rk] = recount.get(rk, 0) + 1

    clusters_path = outdir / "clusters.tsv"
    with open(clusters_path, "w", encoding="utf-8") as fh:
        fh.write("subject\tcluster\tgroup\n")
        for label, cluster, group in scenario.subjects:
            fh.write(f"{label}\t{cluster}\t{group}\n")

    manifest = {
        "schema_version": SCHEMA_VERSION,
        "kind": MANIFEST_KIND,
        "seed": scenario.seed,
        "mode": scenario.mode,
        "window": [scenario.window.start, scenario.window.end],
        "paper_count": serial,
        "edge_count": edge_count,
        "subjects": labels,
        "files": {
            "papers": papers_path.name,
            "citations": citations_path.name,
            "clusters": clusters_path.name,
        },
        "counts": [
            {"from": x, "to": y, "year": year, "count": recount[(x, y, year)]}
            for (x, y, year) in sorted(recount)
        ],
        "planted": [
            {
                "a": ev.a,
                "b": ev.b,
                "year": ev.year,
                "surge_factor": ev.surge_factor,
                "balance_mode": ev.balance_mode,
            }
            for ev in scenario.planted_events
        ],
    }
    manifest_path = outdir / "manifest.json"
    with open(manifest_path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    return GeneratedCorpus(
        papers_path=papers_path,
        citations_path=citations_path,
        clusters_path=clusters_path,
        manifest_path=manifest_path,
        manifest=manifest,
    )


def fold_schedule(
    schedule: Mapping[tuple[str, str, int], int | float], window: Window
) -> dict[tuple[str, str], tuple[list[float], list[float]]]:
    """Fold ordered per-year counts into canonical unordered pair series."""
    n = window.n_years
    folded: dict[tuple[str, str], tuple[list[float], list[float]]] = {}
    for (x, y, year), count in schedule.items():
        a, b = canonical_pair(x, y)
        if (a, b) not in folded:
            folded[(a, b)] = ([0.0] * n, [0.0] * n)
        irs, ics = folded[(a, b)]
        idx = year - window.start
        if x == a:
            irs[idx] += count
        else:
            ics[idx] += count
    return folded


def expanded_schedule(
    scenario: Scenario, counting: str = "full"
) -> dict[tuple[str, str, int], float]:
    """Ordered pair/year counts after multi-subject expansion.

    Matches the manifest recount (full counting) without writing any files;
    under ``counting="fractional"`` each ordered combination contributes
    1/(n_citing_subjects * n_cited_subjects) instead of 1. Deterministic mode
    only; stochastic realizations are defined by the generated files alone.
    """
    if scenario.mode != "deterministic":
        raise ConfigError("exact schedules exist only in deterministic mode")
    counts = count_schedule(scenario)
    subjects_of = _paper_subjects(scenario)
    per_block = scenario.papers_per_subject_year
    recount: dict[tuple[str, str, int], float] = {}
    for (x, y, year) in sorted(counts):
        for i in range(counts[(x, y, year)]):
            citing = subjects_of[(x, year, i % per_block)]
            cited = subjects_of[(y, year, (i // per_block) % per_block)]
            w = 1.0 / (len(citing) * len(cited)) if counting == "fractional" else 1
            for sx in citing:
                for sy in cited:
                    if sx != sy:
                        rk = (sx, sy, year)
                        recount[rk] = recount.get(rk, 0) + w
    return recount


def expected_detections(
    scenario: Scenario,
    params: DetectionParams = DetectionParams(),
    counting: str = "full",
) -> list[tuple[str, str, int]]:
    """Ground-truth events from the naive detector on the exact schedule."""
    if scenario.mode != "deterministic":
        raise ConfigError("ground truth is only defined for deterministic scenarios")
    params = params.validated()
    folded = fold_schedule(expanded_schedule(scenario, counting), scenario.window)
    if not folded:
        return []
    return naive_detect(
        folded,
        scenario.window.start,
        sigma_multiplier=params.sigma_multiplier,
        sigma_kind=params.sigma_kind,
        median_scope=params.median_scope,
    )
