"""Shared record types and error hierarchy."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple


class CrityearsError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(CrityearsError):
    """Invalid run configuration (bad window, missing inputs, ...)."""


class IngestError(CrityearsError):
    """Unrecoverable problem while reading a corpus file."""


class MalformedRowError(IngestError):
    def __init__(self, path: str, line_no: int, reason: str):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.path = path
        self.line_no = line_no
        self.reason = reason


class DuplicatePaperIdError(IngestError):
    def __init__(self, path: str, line_no: int, paper_id: str):
        super().__init__(f"{path}:{line_no}: duplicate paper_id {paper_id!r}")
        self.paper_id = paper_id
        self.line_no = line_no


class SchemaVersionError(CrityearsError):
    """A staged artifact carries an unsupported schema_version."""


class PrerequisiteError(CrityearsError):
    """A pipeline stage was invoked before its inputs were produced."""


class Window(NamedTuple):
    """Closed year interval [start, end] anchoring every dense series."""

    start: int
    end: int

    @property
    def n_years(self) -> int:
        return self.end - self.start + 1

    def years(self) -> range:
        return range(self.start, self.end + 1)

    def __contains__(self, year: object) -> bool:
        return isinstance(year, int) and self.start <= year <= self.end

    @classmethod
    def parse(cls, text: str) -> "Window":
        """Parse "1981:2020" into a validated Window."""
        try:
            lo, hi = text.split(":")
            win = cls(int(lo), int(hi))
        except ValueError as exc:
            raise ConfigError(f"bad window {text!r}, expected START:END") from exc
        if win.end < win.start:
            raise ConfigError(f"empty window {text!r}")
        return win


@dataclass(frozen=True)
class PaperRecord:
    paper_id: str
    year: int
    subjects: frozenset[str]


class CitationEdge(NamedTuple):
    citing_id: str
    cited_id: str


def canonical_pair(a: str, b: str) -> tuple[str, str]:
    """Canonical unordered form: lexicographically smaller label first."""
    if a == b:
        raise ValueError(f"pair labels must differ, got {a!r} twice")
    return (a, b) if a < b else (b, a)


@dataclass
class EdgeSkips:
    """Breakdown of citation rows that were skipped rather than emitted."""

    unresolved: int = 0
    self_loops: int = 0
    malformed: int = 0

    @property
    def total(self) -> int:
        return self.unresolved + self.self_loops + self.malformed


@dataclass
class CorpusStats:
    paper_count: int = 0
    edge_count: int = 0
    skipped_edges: int = 0
    subject_count: int = 0
    year_range: tuple[int, int] | None = None
    skipped_paper_rows: int = 0
    edge_skips: EdgeSkips = field(default_factory=EdgeSkips)

    def to_dict(self) -> dict:
        return {
            "paper_count": self.paper_count,
            "edge_count": self.edge_count,
            "skipped_edges": self.skipped_edges,
            "subject_count": self.subject_count,
            "year_range": list(self.year_range) if self.year_range else None,
            "skipped_paper_rows": self.skipped_paper_rows,
            "edge_skip_breakdown": {
                "unresolved": self.edge_skips.unresolved,
                "self_loops": self.edge_skips.self_loops,
                "malformed": self.edge_skips.malformed,
            },
        }
