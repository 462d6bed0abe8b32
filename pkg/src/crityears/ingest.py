"""Streaming corpus ingestion.

Papers and citations arrive as tab-separated files (plain or gzip by ``.gz``
extension). Papers are folded into a :class:`PaperIndex`; citations are
scanned in chunks and resolved against that index without ever being
materialized as a whole. Lenient mode (the default) counts and skips dirty
rows; strict mode aborts on the first one with its line number.
"""

from __future__ import annotations

import gzip
from array import array
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numpy as np

from .model import (
    CitationEdge,
    CorpusStats,
    DuplicatePaperIdError,
    EdgeSkips,
    IngestError,
    MalformedRowError,
    PaperRecord,
)

PAPERS_HEADER = "paper_id\tyear\tsubjects"
CITATIONS_HEADER = "citing_id\tcited_id"

# readlines hint, in bytes; bounds per-chunk memory independent of file size
CHUNK_BYTES = 32 << 20


def open_text(path: str | Path):
    p = str(path)
    if p.endswith(".gz"):
        return gzip.open(p, "rt", encoding="utf-8", newline="")
    return open(p, "rt", encoding="utf-8", newline="")


def _read_header(fh, path, expected):
    first = fh.readline()
    if not first:
        raise IngestError(f"{path}: empty file, expected header {expected!r}")
    if first.rstrip("\r\n") != expected:
        raise IngestError(
            f"{path}: bad header {first.rstrip()!r}, expected {expected!r}"
        )


def parse_subjects(field: str) -> tuple[str, ...]:
    """Split a ';'-joined subject field, trimming surrounding whitespace only."""
    seen: dict[str, None] = {}
    for tok in field.split(";"):
        tok = tok.strip()
        if tok:
            seen[tok] = None
    return tuple(seen)


class PaperIndex:
    """All ingested papers, keyed for O(1) id resolution.

    Subjects are interned to integer codes in first-seen order; per-paper
    subject code lists live in a flat CSR layout (``subj_offsets`` /
    ``subj_codes``) so the aggregation kernels can walk them without any
    Python-level indirection.
    """

    def __init__(self):
        self.ids: list[str] = []
        self.id_to_idx: dict[str, int] = {}
        self.subject_names: list[str] = []
        self.subject_code: dict[str, int] = {}
        self._years = array("i")
        self._offsets = array("q", [0])
        self._codes = array("i")
        self.skipped_rows = 0
        self.years: np.ndarray | None = None
        self.subj_offsets: np.ndarray | None = None
        self.subj_codes: np.ndarray | None = None

    def _add(self, paper_id: str, year: int, subjects: tuple[str, ...]) -> None:
        self.id_to_idx[paper_id] = len(self.ids)
        self.ids.append(paper_id)
        self._years.append(year)
        code_of = self.subject_code
        for name in subjects:
            code = code_of.get(name)
            if code is None:
                code = len(self.subject_names)
                code_of[name] = code
                self.subject_names.append(name)
            self._codes.append(code)
        self._offsets.append(len(self._codes))

    def _finalize(self) -> None:
        self.years = np.frombuffer(self._years, dtype=np.int32).copy()
        self.subj_offsets = np.frombuffer(self._offsets, dtype=np.int64).copy()
        self.subj_codes = np.frombuffer(self._codes, dtype=np.int32).copy()

    def __len__(self) -> int:
        return len(self.ids)

    @property
    def paper_count(self) -> int:
        return len(self.ids)

    @property
    def subject_count(self) -> int:
        return len(self.subject_names)

    @property
    def year_range(self) -> tuple[int, int] | None:
        if self.years is None or self.years.size == 0:
            return None
        return int(self.years.min()), int(self.years.max())

    def subjects_of(self, idx: int) -> frozenset[str]:
        lo, hi = self.subj_offsets[idx], self.subj_offsets[idx + 1]
        return frozenset(self.subject_names[c] for c in self.subj_codes[lo:hi])

    def records(self) -> Iterator[PaperRecord]:
        for i, pid in enumerate(self.ids):
            yield PaperRecord(pid, int(self.years[i]), self.subjects_of(i))

    def stats(self) -> CorpusStats:
        return CorpusStats(
            paper_count=self.paper_count,
            subject_count=self.subject_count,
            year_range=self.year_range,
            skipped_paper_rows=self.skipped_rows,
        )


def _parse_paper_row(path, line_no, line, strict):
    parts = line.split("\t")
    if len(parts) != 3:
        if strict:
            raise MalformedRowError(path, line_no, f"expected 3 fields, got {len(parts)}")
        return None
    paper_id, year_text, subj_field = parts
    if not paper_id:
        if strict:
            raise MalformedRowError(path, line_no, "empty paper_id")
        return None
    try:
        year = int(year_text)
    except ValueError:
        if strict:
            raise MalformedRowError(path, line_no, f"bad year {year_text!r}")
        return None
    subjects = parse_subjects(subj_field)
    if not subjects:
        if strict:
            raise MalformedRowError(path, line_no, "empty subjects field")
        return None
    return paper_id, year, subjects


def ingest_papers(path: str | Path, strict: bool = False) -> PaperIndex:
    """Build the paper index from a papers file.

    Duplicate paper ids abort in both modes; they poison every downstream
    count, so there is no lenient reading of them.
    """
    index = PaperIndex()
    spath = str(path)
    with open_text(path) as fh:
        _read_header(fh, spath, PAPERS_HEADER)
        line_no = 1
        while True:
            lines = fh.readlines(CHUNK_BYTES)
            if not lines:
                break
            for line in lines:
                line_no += 1
                row = _parse_paper_row(spath, line_no, line.rstrip("\r\n"), strict)
                if row is None:
                    index.skipped_rows += 1
                    continue
                paper_id, year, subjects = row
                if paper_id in index.id_to_idx:
                    raise DuplicatePaperIdError(spath, line_no, paper_id)
                index._add(paper_id, year, subjects)
    index._finalize()
    return index


def iter_papers(path: str | Path, strict: bool = False) -> Iterator[PaperRecord]:
    """Stream validated paper records without building an index."""
    seen: set[str] = set()
    spath = str(path)
    with open_text(path) as fh:
        _read_header(fh, spath, PAPERS_HEADER)
        for line_no, line in enumerate(fh, start=2):
            row = _parse_paper_row(spath, line_no, line.rstrip("\r\n"), strict)
            if row is None:
                continue
            paper_id, year, subjects = row
            if paper_id in seen:
                raise DuplicatePaperIdError(spath, line_no, paper_id)
            seen.add(paper_id)
            yield PaperRecord(paper_id, year, frozenset(subjects))


@dataclass
class EdgeScanResult:
    edge_count: int
    skips: EdgeSkips


class CitationReader:
    """Chunked scan of a citations file against a built paper index.

    ``chunks()`` yields (citing_idx, cited_idx) int64 arrays of resolved,
    non-self edges; row skips are tallied on ``self.skips`` and the resolved
    total on ``self.edge_count`` as the scan advances.
    """

    def __init__(self, path: str | Path, index: PaperIndex, strict: bool = False):
        self.path = str(path)
        self.index = index
        self.strict = strict
        self.skips = EdgeSkips()
        self.edge_count = 0

    def chunks(self) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        resolve = self.index.id_to_idx.get
        strict = self.strict
        spath = self.path
        skips = self.skips
        with open_text(self.path) as fh:
            _read_header(fh, spath, CITATIONS_HEADER)
            line_no = 1
            while True:
                lines = fh.readlines(CHUNK_BYTES)
                if not lines:
                    break
                citing_buf = array("q")
                cited_buf = array("q")
                for line in lines:
                    line_no += 1
                    parts = line.rstrip("\r\n").split("\t")
                    if len(parts) != 2:
                        if strict:
                            raise MalformedRowError(
                                spath, line_no, f"expected 2 fields, got {len(parts)}"
                            )
                        skips.malformed += 1
                        continue
                    citing_id, cited_id = parts
                    if citing_id == cited_id:
                        skips.self_loops += 1
                        continue
                    ci = resolve(citing_id)
                    cd = resolve(cited_id)
                    if ci is None or cd is None:
                        skips.unresolved += 1
                        continue
                    citing_buf.append(ci)
                    cited_buf.append(cd)
                self.edge_count += len(citing_buf)
                yield (
                    np.frombuffer(citing_buf, dtype=np.int64).copy(),
                    np.frombuffer(cited_buf, dtype=np.int64).copy(),
                )


def iter_citations(
    path: str | Path, index: PaperIndex, strict: bool = False
) -> Iterator[CitationEdge]:
    """Stream resolved citation edges (testing/API convenience)."""
    reader = CitationReader(path, index, strict=strict)
    ids = index.ids
    for citing, cited in reader.chunks():
        for ci, cd in zip(citing.tolist(), cited.tolist()):
            yield CitationEdge(ids[ci], ids[cd])


def ingest_citations(
    path: str | Path, index: PaperIndex, strict: bool = False
) -> EdgeScanResult:
    """Scan the citations file for validation/stats only."""
    reader = CitationReader(path, index, strict=strict)
    for _ in reader.chunks():
        pass
    return EdgeScanResult(edge_count=reader.edge_count, skips=reader.skips)


def corpus_stats(index: PaperIndex, scan: EdgeScanResult) -> CorpusStats:
    stats = index.stats()
    stats.edge_count = scan.edge_count
    stats.skipped_edges = scan.skips.total
    stats.edge_skips = scan.skips
    return stats
