from __future__ import annotations

import gzip
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from crityears.aggregate import PairSeriesStore
from crityears.ingest import CITATIONS_HEADER, PAPERS_HEADER
from crityears.model import Window, canonical_pair

settings.register_profile(
    "suite",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def write_papers(path: Path, rows, gz: bool = False) -> Path:
    """rows: iterable of (paper_id, year, subjects-field) raw strings."""
    opener = gzip.open if gz else open
    with opener(path, "wt", encoding="utf-8") as fh:
        fh.write(PAPERS_HEADER + "\n")
        for pid, year, subjects in rows:
            fh.write(f"{pid}\t{year}\t{subjects}\n")
    return path


def write_citations(path: Path, rows, gz: bool = False) -> Path:
    opener = gzip.open if gz else open
    with opener(path, "wt", encoding="utf-8") as fh:
        fh.write(CITATIONS_HEADER + "\n")
        for citing, cited in rows:
            fh.write(f"{citing}\t{cited}\n")
    return path


def write_raw(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


def store_from_counts(pair_counts: dict, window: Window) -> PairSeriesStore:
    """Build a PairSeriesStore straight from {(a, b): (ir_list, ic_list)}."""
    n = window.n_years
    pairs = []
    ir_rows = []
    ic_rows = []
    for (a, b) in sorted(pair_counts):
        if canonical_pair(a, b) != (a, b):
            raise ValueError(f"pair {(a, b)} not canonical")
        irs, ics = pair_counts[(a, b)]
        if len(irs) != n or len(ics) != n:
            raise ValueError("series length must match window")
        pairs.append((a, b))
        ir_rows.append(np.asarray(irs, dtype=np.float64))
        ic_rows.append(np.asarray(ics, dtype=np.float64))
    ir = np.vstack(ir_rows) if ir_rows else np.zeros((0, n))
    ic = np.vstack(ic_rows) if ic_rows else np.zeros((0, n))
    return PairSeriesStore(window, pairs, ir, ic)


@pytest.fixture
def tmp_corpus(tmp_path):
    """Three-subject toy corpus: A cites B in 2001, B cites A in 2002."""
    papers = write_papers(
        tmp_path / "papers.tsv",
        [
            ("p1", 2001, "A"),
            ("p2", 2000, "B"),
            ("p3", 2002, "B"),
            ("p4", 2001, "C"),
        ],
    )
    citations = write_citations(
        tmp_path / "citations.tsv",
        [("p1", "p2"), ("p3", "p1")],
    )
    return papers, citations
