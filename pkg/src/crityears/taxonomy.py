"""Subject-to-cluster mapping and event classification.

The cluster map is data, not code: a TSV with header
``subject<TAB>cluster<TAB>group`` where group is "natural" or "humsoc".
A starter file with 21 discipline clusters (identity rows, subject name ==
cluster name) ships with the package as a template; real corpora supply
their own subject rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .detect import CriticalYearEvent, with_classification
from .ingest import PaperIndex, open_text
from .model import ConfigError, IngestError, Window

GROUP_TAGS = ("natural", "humsoc")
UNASSIGNED = "Unassigned"

CLUSTER_MAP_HEADER = "subject\tcluster\tgroup"


@dataclass
class ClusterMap:
    assignments: dict[str, str] = field(default_factory=dict)
    groups: dict[str, str] = field(default_factory=dict)

    def cluster_of(self, subject: str, lenient: bool = False) -> str:
        cluster = self.assignments.get(subject)
        if cluster is None:
            if lenient:
                return UNASSIGNED
            raise ConfigError(f"subject {subject!r} has no cluster assignment")
        return cluster

    def group_of(self, cluster: str) -> str:
        return self.groups.get(cluster, "unassigned")

    def clusters(self) -> list[str]:
        names = set(self.assignments.values()) | set(self.groups)
        return sorted(names)


def load_cluster_map(path: str | Path) -> ClusterMap:
    cmap = ClusterMap()
    spath = str(path)
    with open_text(path) as fh:
        header = fh.readline()
        if not header:
            raise IngestError(f"{spath}: empty cluster map")
        if header.rstrip("\r\n") != CLUSTER_MAP_HEADER:
            raise IngestError(
                f"{spath}: bad header {header.rstrip()!r}, expected {CLUSTER_MAP_HEADER!r}"
            )
        for line_no, line in enumerate(fh, start=2):
            line = line.rstrip("\r\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise IngestError(f"{spath}:{line_no}: expected 3 fields, got {len(parts)}")
            subject, cluster, group = (p.strip() for p in parts)
            if not subject or not cluster:
                raise IngestError(f"{spath}:{line_no}: empty subject or cluster name")
            if subject in cmap.assignments:
                raise IngestError(f"{spath}:{line_no}: duplicate subject {subject!r}")
            if group not in GROUP_TAGS:
                raise IngestError(
                    f"{spath}:{line_no}: unknown group tag {group!r}, expected one of {GROUP_TAGS}"
                )
            prior = cmap.groups.get(cluster)
            if prior is not None and prior != group:
                raise IngestError(
                    f"{spath}:{line_no}: cluster {cluster!r} tagged both {prior!r} and {group!r}"
                )
            cmap.assignments[subject] = cluster
            cmap.groups[cluster] = group
    if not cmap.assignments:
        raise IngestError(f"{spath}: cluster map has no data rows")
    return cmap


def starter_map_path() -> Path:
    """Bundled 21-cluster template (identity subject rows)."""
    return Path(str(resources.files("crityears").joinpath("data/starter_clusters.tsv")))


@dataclass
class ClassificationReport:
    cross: int
    intra: int

    @property
    def total(self) -> int:
        return self.cross + self.intra

    def percent_cross(self) -> str:
        from .reports import format_percentage

        return format_percentage(self.cross, self.total)

    def to_dict(self) -> dict:
        return {
            "cross": self.cross,
            "intra": self.intra,
            "total": self.total,
            "percent_cross": self.percent_cross() if self.total else None,
        }


def classify_events(
    events: list[CriticalYearEvent], cmap: ClusterMap, lenient: bool = False
) -> tuple[list[CriticalYearEvent], ClassificationReport]:
    """Fill cross_cluster on every event and tally both classes."""
    out = []
    cross = intra = 0
    for ev in events:
        ca = cmap.cluster_of(ev.a, lenient=lenient)
        cb = cmap.cluster_of(ev.b, lenient=lenient)
        is_cross = ca != cb
        if is_cross:
            cross += 1
        else:
            intra += 1
        out.append(with_classification(ev, is_cross))
    report = ClassificationReport(cross=cross, intra=intra)
    assert report.total == len(events)
    return out, report


def publications_by_cluster_year(
    index: PaperIndex, cmap: ClusterMap, window: Window, lenient: bool = False
) -> dict[tuple[str, int], int]:
    """In-window publication counts per (cluster, year).

    A paper counts once per distinct cluster its subjects touch.
    """
    counts: dict[tuple[str, int], int] = {}
    offsets = index.subj_offsets
    codes = index.subj_codes
    names = index.subject_names
    cluster_by_code = []
    missing = []
    for name in names:
        cluster = cmap.assignments.get(name)
        if cluster is None:
            if lenient:
                cluster = UNASSIGNED
            else:
                missing.append(name)
        cluster_by_code.append(cluster)
    if missing:
        raise ConfigError(f"subjects without cluster assignment: {sorted(missing)[:5]}")
    for i in range(len(index)):
        year = int(index.years[i])
        if year not in window:
            continue
        touched = {cluster_by_code[c] for c in codes[offsets[i]:offsets[i + 1]]}
        for cluster in touched:
            counts[(cluster, year)] = counts.get((cluster, year), 0) + 1
    return counts
