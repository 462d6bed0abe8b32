"""Toolkit for finding critical years of balanced cross-subject citation flow.

Pipeline: ingest papers/citations -> aggregate per-pair yearly flows ->
balance/volume metrics -> threshold detection -> cluster classification,
phase segmentation and report exports. A seeded synthetic generator with
ground-truth manifests closes the loop for validation.
"""

__version__ = "0.1.0"

from .aggregate import AggregateResult, PairSeries, PairSeriesStore, aggregate, pair_totals
from .detect import CriticalYearEvent, DetectionParams, detect, global_median, pair_stats, slope_at
from .ingest import PaperIndex, ingest_citations, ingest_papers, iter_citations, iter_papers
from .metrics import MetricSeries, MetricsStore, balance, knowledge_flow, metric_series
from .model import CitationEdge, ConfigError, CorpusStats, CrityearsError, PaperRecord, Window
from .reports import delta_matrix, export_timeline, format_percentage, partner_timeline, rank_clusters
from .segmentation import (
    AnnualActivity,
    PhaseSegmentation,
    SegmentationRules,
    annual_activity,
    detect_turning_points,
    growth_stats,
)
from .synth import Scenario, expected_detections, generate
from .taxonomy import ClusterMap, classify_events, load_cluster_map

__all__ = [
    "AggregateResult",
    "AnnualActivity",
    "CitationEdge",
    "ClusterMap",
    "ConfigError",
    "CorpusStats",
    "CriticalYearEvent",
    "CrityearsError",
    "DetectionParams",
    "MetricSeries",
    "MetricsStore",
    "PairSeries",
    "PairSeriesStore",
    "PaperIndex",
    "PaperRecord",
    "PhaseSegmentation",
    "Scenario",
    "SegmentationRules",
    "Window",
    "aggregate",
    "annual_activity",
    "balance",
    "classify_events",
    "delta_matrix",
    "detect",
    "detect_turning_points",
    "expected_detections",
    "export_timeline",
    "format_percentage",
    "generate",
    "global_median",
    "growth_stats",
    "ingest_citations",
    "ingest_papers",
    "iter_citations",
    "iter_papers",
    "knowledge_flow",
    "load_cluster_map",
    "metric_series",
    "pair_stats",
    "pair_totals",
    "partner_timeline",
    "rank_clusters",
    "slope_at",
]
