"""Command line pipeline: ingest, detect, segment, report, simulate.

Each stage writes versioned artifacts into the output directory and refuses
inputs whose schema_version it does not understand. Flags override values
from an optional JSON config file. On failure a machine-readable error report
is written to stderr and the exit code is nonzero.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .aggregate import COUNTING_MODES, aggregate, dump_pair_counts
from .detect import (
    DetectionParams,
    detect,
    read_events_jsonl,
    write_events_csv,
    write_events_jsonl,
)
from .ingest import corpus_stats, ingest_citations, ingest_papers
from .metrics import MetricsStore, dump_metrics
from .model import ConfigError, CrityearsError, PrerequisiteError, Window
from .reports import (
    SCHEMA_VERSION,
    delta_matrix,
    export_timeline,
    partner_timeline,
    rank_clusters,
    read_json,
    write_delta_csv,
    write_json,
    write_ranking_csv,
)
from .segmentation import (
    SegmentationRules,
    annual_activity,
    detect_turning_points,
    growth_stats,
)
from .synth import Scenario, generate
from .taxonomy import classify_events, load_cluster_map, publications_by_cluster_year

STATS_FILE = "corpus_stats.json"
EVENTS_JSONL = "events.jsonl"
EVENTS_CSV = "events.csv"
CLASSIFICATION_FILE = "classification.json"
PUBLICATIONS_FILE = "cluster_publications.json"
SEGMENTATION_FILE = "segmentation.json"


@dataclass
class RunConfig:
    papers: str | None = None
    citations: str | None = None
    clusters: str | None = None
    window: str = "1981:2020"
    out: str = "out"
    sigma_multiplier: float = 2.0
    median_scope: str = "pair-years"
    sigma_kind: str = "population"
    counting: str = "full"
    strict: bool = False
    threads: int = 1
    lenient_clusters: bool = False
    emergence_count_multiplier: float = 2.0
    emergence_cluster_multiplier: float = 2.0
    acceleration_growth_threshold: float = 0.5
    acceleration_base_threshold: float = 100.0

    def parsed_window(self) -> Window:
        return Window.parse(self.window)

    def detection_params(self) -> DetectionParams:
        return DetectionParams(
            sigma_multiplier=self.sigma_multiplier,
            median_scope=self.median_scope,
            sigma_kind=self.sigma_kind,
        ).validated()

    def segmentation_rules(self) -> SegmentationRules:
        return SegmentationRules(
            emergence_count_multiplier=self.emergence_count_multiplier,
            emergence_cluster_multiplier=self.emergence_cluster_multiplier,
            acceleration_growth_threshold=self.acceleration_growth_threshold,
            acceleration_base_threshold=self.acceleration_base_threshold,
        ).validated()


def _load_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        path = Path(args.config)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        unknown = set(data) - set(vars(cfg))
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        for key, value in data.items():
            setattr(cfg, key, value)
    for key in vars(cfg):
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            setattr(cfg, key, flag_value)
    return cfg


def _require_input(path: str | None, flag: str) -> Path:
    if not path:
        raise ConfigError(f"missing required input: {flag}")
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"input file not found: {p}")
    return p


def _require_artifact(outdir: Path, name: str, producer: str) -> Path:
    p = outdir / name
    if not p.exists():
        raise PrerequisiteError(f"missing {p}; run `crityears {producer}` first")
    return p


def _outdir(cfg: RunConfig) -> Path:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_stats(outdir: Path, stats, citations_per_year: dict[int, int]) -> None:
    write_json(
        {
            "schema_version": SCHEMA_VERSION,
            "kind": "corpus-stats",
            "stats": stats.to_dict(),
            "citations_per_year": {str(y): n for y, n in sorted(citations_per_year.items())},
        },
        outdir / STATS_FILE,
    )


def _write_publications(outdir: Path, index, cfg: RunConfig) -> None:
    if not cfg.clusters:
        return
    cmap = load_cluster_map(_require_input(cfg.clusters, "--clusters"))
    pubs = publications_by_cluster_year(
        index, cmap, cfg.parsed_window(), lenient=cfg.lenient_clusters
    )
    write_json(
        {
            "schema_version": SCHEMA_VERSION,
            "kind": "cluster-publications",
            "publications": [
                {"cluster": c, "year": y, "count": n}
                for (c, y), n in sorted(pubs.items())
            ],
        },
        outdir / PUBLICATIONS_FILE,
    )


def cmd_ingest(cfg: RunConfig) -> int:
    outdir = _outdir(cfg)
    papers = _require_input(cfg.papers, "--papers")
    citations = _require_input(cfg.citations, "--citations")
    window = cfg.parsed_window()
    index = ingest_papers(papers, strict=cfg.strict)
    result = aggregate(
        index, citations, window,
        counting=cfg.counting, strict=cfg.strict, threads=cfg.threads,
    )
    _write_stats(outdir, result.stats, result.citations_per_year)
    _write_publications(outdir, index, cfg)
    print(json.dumps(result.stats.to_dict()))
    return 0


def cmd_detect(cfg: RunConfig, dump_metrics_flag: bool, dump_counts_flag: bool) -> int:
    outdir = _outdir(cfg)
    papers = _require_input(cfg.papers, "--papers")
    citations = _require_input(cfg.citations, "--citations")
    clusters = _require_input(cfg.clusters, "--clusters")
    window = cfg.parsed_window()

    index = ingest_papers(papers, strict=cfg.strict)
    result = aggregate(
        index, citations, window,
        counting=cfg.counting, strict=cfg.strict, threads=cfg.threads,
    )
    mstore = MetricsStore.from_pairs(result.store)
    events = detect(mstore, cfg.detection_params()) if mstore.n_pairs else []

    cmap = load_cluster_map(clusters)
    events, report = classify_events(events, cmap, lenient=cfg.lenient_clusters)

    _write_stats(outdir, result.stats, result.citations_per_year)
    _write_publications(outdir, index, cfg)
    write_events_jsonl(events, outdir / EVENTS_JSONL)
    write_events_csv(events, outdir / EVENTS_CSV)
    write_json(
        {"schema_version": SCHEMA_VERSION, "kind": "classification", **report.to_dict()},
        outdir / CLASSIFICATION_FILE,
    )
    if dump_metrics_flag:
        dump_metrics(mstore, outdir / "metrics.tsv")
    if dump_counts_flag:
        dump_pair_counts(result.store, outdir / "pair_counts.tsv")
    print(f"pairs={mstore.n_pairs} events={len(events)} cross={report.cross} intra={report.intra}")
    return 0


def _read_citations_per_year(outdir: Path) -> dict[int, int]:
    stats = read_json(_require_artifact(outdir, STATS_FILE, "detect"), "corpus-stats")
    return {int(y): int(n) for y, n in stats.get("citations_per_year", {}).items()}


def cmd_segment(cfg: RunConfig) -> int:
    outdir = _outdir(cfg)
    clusters = _require_input(cfg.clusters, "--clusters")
    events = read_events_jsonl(_require_artifact(outdir, EVENTS_JSONL, "detect"))
    citations_per_year = _read_citations_per_year(outdir)
    cmap = load_cluster_map(clusters)
    window = cfg.parsed_window()
    activity = annual_activity(
        events, cmap, citations_per_year, window, lenient=cfg.lenient_clusters
    )
    segmentation = detect_turning_points(activity, cfg.segmentation_rules())
    write_json(
        {"schema_version": SCHEMA_VERSION, "kind": "segmentation", **segmentation.to_dict()},
        outdir / SEGMENTATION_FILE,
    )
    print(json.dumps(segmentation.to_dict()))
    return 0


def _segmentation_from_json(obj: dict) -> "PhaseSegmentation":
    from .segmentation import Period, PhaseSegmentation

    periods = [Period(p["label"], int(p["start"]), int(p["end"])) for p in obj["periods"]]
    return PhaseSegmentation(
        window=Window(periods[0].start, periods[-1].end),
        turning_points=[int(y) for y in obj["turning_points"]],
        periods=periods,
    )


def cmd_report(cfg: RunConfig, focal: str | None, top_k: int,
               delta_periods: tuple[str, str] | None) -> int:
    outdir = _outdir(cfg)
    clusters = _require_input(cfg.clusters, "--clusters")
    events = read_events_jsonl(_require_artifact(outdir, EVENTS_JSONL, "detect"))
    seg_obj = read_json(_require_artifact(outdir, SEGMENTATION_FILE, "segment"), "segmentation")
    segmentation = _segmentation_from_json(seg_obj)
    citations_per_year = _read_citations_per_year(outdir)
    pubs_obj = read_json(
        _require_artifact(outdir, PUBLICATIONS_FILE, "detect"), "cluster-publications"
    )
    publications = {
        (row["cluster"], int(row["year"])): int(row["count"])
        for row in pubs_obj["publications"]
    }
    cmap = load_cluster_map(clusters)
    window = cfg.parsed_window()
    lenient = cfg.lenient_clusters

    rankings = rank_clusters(events, segmentation, cmap, lenient=lenient)
    activity = annual_activity(events, cmap, citations_per_year, window, lenient=lenient)
    growth = growth_stats(activity, segmentation)
    write_json(
        {
            "schema_version": SCHEMA_VERSION,
            "kind": "rankings",
            "periods": [r.to_dict() for r in rankings],
            "growth": growth["growth"],
            "period_stats": growth["periods"],
        },
        outdir / "rankings.json",
    )
    for ranking in rankings:
        write_ranking_csv(ranking, outdir / f"rankings_{ranking.label}.csv")

    if delta_periods is None and len(segmentation.periods) >= 2:
        delta_periods = (segmentation.periods[-2].label, segmentation.periods[-1].label)
    if delta_periods is not None:
        dm = delta_matrix(
            events, segmentation, delta_periods[0], delta_periods[1], cmap, lenient=lenient
        )
        write_json(dm.to_dict(), outdir / "delta_matrix.json")
        write_delta_csv(dm, outdir / "delta_matrix.csv")

    if focal is None:
        totals: dict[str, int] = {}
        for ev in events:
            ca = cmap.cluster_of(ev.a, lenient=lenient)
            cb = cmap.cluster_of(ev.b, lenient=lenient)
            if ca != cb:
                totals[ca] = totals.get(ca, 0) + 1
                totals[cb] = totals.get(cb, 0) + 1
        focal = min(totals, key=lambda c: (-totals[c], c)) if totals else cmap.clusters()[0]
    timeline = partner_timeline(events, focal, top_k, cmap, window, lenient=lenient)
    write_json(timeline, outdir / "partner_timeline.json")

    full = export_timeline(events, publications, cmap, window, lenient=lenient)
    write_json(full, outdir / "timeline.json")
    print(f"report written to {outdir} (focal={focal})")
    return 0


def cmd_simulate(scenario_path: str, out: str, seed: int | None) -> int:
    scenario = Scenario.from_file(_require_input(scenario_path, "--scenario"))
    if seed is not None:
        scenario.seed = seed
        scenario.validate()
    corpus = generate(scenario, out)
    print(
        json.dumps(
            {
                "papers": str(corpus.papers_path),
                "citations": str(corpus.citations_path),
                "clusters": str(corpus.clusters_path),
                "manifest": str(corpus.manifest_path),
                "paper_count": corpus.manifest["paper_count"],
                "edge_count": corpus.manifest["edge_count"],
            }
        )
    )
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file; flags override its values")
    p.add_argument("--papers", help="papers TSV (.gz accepted)")
    p.add_argument("--citations", help="citations TSV (.gz accepted)")
    p.add_argument("--clusters", help="subject->cluster map TSV")
    p.add_argument("--window", help="analysis window, e.g. 1981:2020")
    p.add_argument("--out", help="output directory (default: out)")
    p.add_argument("--sigma-mult", dest="sigma_multiplier", type=float,
                   help="slope threshold multiplier (default 2.0)")
    p.add_argument("--median-scope", dest="median_scope",
                   choices=["pair-years", "pair-means"],
                   help="condition-1 gate scope (default pair-years)")
    p.add_argument("--sigma-kind", dest="sigma_kind",
                   choices=["population", "sample"],
                   help="standard deviation normalization (default population)")
    p.add_argument("--counting", choices=list(COUNTING_MODES),
                   help="multi-subject counting convention (default full)")
    p.add_argument("--strict", action="store_const", const=True, default=None,
                   help="abort on the first malformed row")
    p.add_argument("--lenient-clusters", dest="lenient_clusters",
                   action="store_const", const=True, default=None,
                   help="route unmapped subjects to an Unassigned cluster")
    p.add_argument("--threads", type=int, help="worker threads for aggregation (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crityears",
        description="Detect critical years of balanced cross-subject citation exchange",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="validate corpus files and emit stats")
    _add_common(p_ingest)

    p_detect = sub.add_parser("detect", help="run the full detection pipeline")
    _add_common(p_detect)
    p_detect.add_argument("--dump-metrics", action="store_true",
                          help="also write per-pair-year metrics.tsv")
    p_detect.add_argument("--dump-counts", action="store_true",
                          help="also write per-pair-year pair_counts.tsv")

    p_segment = sub.add_parser("segment", help="derive development-phase turning points")
    _add_common(p_segment)
    p_segment.add_argument("--emergence-count-mult", dest="emergence_count_multiplier",
                           type=float, help="default 2.0")
    p_segment.add_argument("--emergence-cluster-mult", dest="emergence_cluster_multiplier",
                           type=float, help="default 2.0")
    p_segment.add_argument("--accel-growth", dest="acceleration_growth_threshold",
                           type=float, help="default 0.5")
    p_segment.add_argument("--accel-base", dest="acceleration_base_threshold",
                           type=float, help="default 100")

    p_report = sub.add_parser("report", help="rankings, change matrix, timelines")
    _add_common(p_report)
    p_report.add_argument("--focal", help="focal cluster for the partner timeline")
    p_report.add_argument("--top-k", type=int, default=3,
                          help="partners per year in the partner timeline (default 3)")
    p_report.add_argument("--delta-periods", nargs=2, metavar=("A", "B"),
                          help="period labels for the change matrix (default: last two)")

    p_sim = sub.add_parser("simulate", help="generate a synthetic corpus from a scenario")
    p_sim.add_argument("--scenario", required=True, help="scenario JSON file")
    p_sim.add_argument("--out", default="out", help="output directory")
    p_sim.add_argument("--seed", type=int, help="override the scenario seed")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "simulate":
            return cmd_simulate(args.scenario, args.out, args.seed)
        cfg = _load_config(args)
        if args.command == "ingest":
            return cmd_ingest(cfg)
        if args.command == "detect":
            return cmd_detect(cfg, args.dump_metrics, args.dump_counts)
        if args.command == "segment":
            return cmd_segment(cfg)
        if args.command == "report":
            dp = tuple(args.delta_periods) if args.delta_periods else None
            return cmd_report(cfg, args.focal, args.top_k, dp)
        parser.error(f"unknown command {args.command!r}")
    except CrityearsError as exc:
        sys.stderr.write(
            json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}) + "\n"
        )
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
