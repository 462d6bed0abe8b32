"""Corpus file ingestion: validation, accounting, order independence."""

import numpy as np
import pytest

from crityears.aggregate import aggregate
from crityears.ingest import (
    ingest_citations,
    ingest_papers,
    iter_citations,
    iter_papers,
)
from crityears.model import (
    DuplicatePaperIdError,
    IngestError,
    MalformedRowError,
    Window,
)

from conftest import write_citations, write_papers, write_raw


def test_three_valid_rows(tmp_path):
    path = write_papers(tmp_path / "p.tsv", [("a", 2000, "X"), ("b", 2001, "Y"), ("c", 2002, "X;Y")])
    index = ingest_papers(path)
    assert index.paper_count == 3
    assert index.skipped_rows == 0
    assert index.subject_count == 2
    assert index.year_range == (2000, 2002)


def test_empty_subjects_lenient_vs_strict(tmp_path):
    path = write_papers(tmp_path / "p.tsv", [("a", 2000, "X"), ("b", 2001, "")])
    index = ingest_papers(path)
    assert index.paper_count == 1
    assert index.skipped_rows == 1
    with pytest.raises(MalformedRowError) as err:
        ingest_papers(path, strict=True)
    assert err.value.line_no == 3


def test_bad_year_and_column_count(tmp_path):
    path = write_raw(
        tmp_path / "p.tsv",
        "paper_id\tyear\tsubjects\nok\t2000\tX\nbad\tnineteen\tX\nshort\t2001\n",
    )
    index = ingest_papers(path)
    assert index.paper_count == 1
    assert index.skipped_rows == 2
    # row accounting: valid + skipped = data rows
    assert index.paper_count + index.skipped_rows == 3


def test_duplicate_id_errors_in_both_modes(tmp_path):
    path = write_papers(tmp_path / "p.tsv", [("a", 2000, "X"), ("a", 2001, "Y")])
    for strict in (False, True):
        with pytest.raises(DuplicatePaperIdError) as err:
            ingest_papers(path, strict=strict)
        assert "'a'" in str(err.value)


def test_subject_whitespace_and_duplicates_collapse(tmp_path):
    path = write_papers(tmp_path / "p.tsv", [("a", 2000, " X ; Y ;X;")])
    index = ingest_papers(path)
    rec = next(index.records())
    assert rec.subjects == frozenset({"X", "Y"})


def test_header_required(tmp_path):
    with pytest.raises(IngestError):
        ingest_papers(write_raw(tmp_path / "p.tsv", "id\tyr\tsub\na\t2000\tX\n"))
    with pytest.raises(IngestError):
        ingest_papers(write_raw(tmp_path / "empty.tsv", ""))


def test_gzip_variant_matches_plain(tmp_path):
    rows = [("a", 2000, "X"), ("b", 2001, "Y;Z")]
    plain = ingest_papers(write_papers(tmp_path / "p.tsv", rows))
    gz = ingest_papers(write_papers(tmp_path / "p.tsv.gz", rows, gz=True))
    assert plain.ids == gz.ids
    assert np.array_equal(plain.years, gz.years)
    assert plain.subject_names == gz.subject_names


def test_iter_papers_streaming_parity(tmp_path):
    rows = [("a", 2000, "X"), ("b", 2001, "Y;Z"), ("c", 1999, "X")]
    path = write_papers(tmp_path / "p.tsv", rows)
    streamed = list(iter_papers(path))
    indexed = list(ingest_papers(path).records())
    assert streamed == indexed


def test_citation_skips(tmp_path):
    papers = write_papers(tmp_path / "p.tsv", [("a", 2000, "X"), ("b", 2001, "Y")])
    citations = write_citations(
        tmp_path / "c.tsv",
        [("a", "b"), ("a", "ghost"), ("a", "a"), ("b", "a")],
    )
    index = ingest_papers(papers)
    scan = ingest_citations(citations, index)
    assert scan.edge_count == 2
    assert scan.skips.unresolved == 1
    assert scan.skips.self_loops == 1
    assert scan.skips.total == 2


def test_unresolved_only_edge_emits_nothing(tmp_path):
    papers = write_papers(tmp_path / "p.tsv", [("a", 2000, "X")])
    citations = write_citations(tmp_path / "c.tsv", [("a", "missing")])
    index = ingest_papers(papers)
    assert list(iter_citations(citations, index)) == []
    scan = ingest_citations(citations, index)
    assert scan.edge_count == 0 and scan.skips.unresolved == 1


def test_malformed_citation_rows(tmp_path):
    papers = write_papers(tmp_path / "p.tsv", [("a", 2000, "X"), ("b", 2001, "Y")])
    index = ingest_papers(papers)
    path = write_raw(tmp_path / "c.tsv", "citing_id\tcited_id\na\tb\nonlyone\na\tb\textra\n")
    scan = ingest_citations(path, index)
    assert scan.edge_count == 1
    assert scan.skips.malformed == 2
    with pytest.raises(MalformedRowError) as err:
        ingest_citations(path, index, strict=True)
    assert err.value.line_no == 3


def test_iter_citations_yields_resolved_pairs(tmp_path):
    papers = write_papers(tmp_path / "p.tsv", [("a", 2000, "X"), ("b", 2001, "Y")])
    citations = write_citations(tmp_path / "c.tsv", [("a", "b"), ("b", "a")])
    index = ingest_papers(papers)
    edges = list(iter_citations(citations, index))
    assert [(e.citing_id, e.cited_id) for e in edges] == [("a", "b"), ("b", "a")]


def test_ingestion_order_independent(tmp_path):
    rows = [("a", 2001, "X"), ("b", 2001, "Y"), ("c", 2002, "X;Z"), ("d", 2000, "Z")]
    edges = [("a", "b"), ("c", "a"), ("c", "d"), ("b", "d")]
    window = Window(2000, 2002)

    def run(paper_rows, edge_rows, tag):
        p = write_papers(tmp_path / f"p{tag}.tsv", paper_rows)
        c = write_citations(tmp_path / f"c{tag}.tsv", edge_rows)
        index = ingest_papers(p)
        return index, aggregate(index, c, window)

    i1, r1 = run(rows, edges, 1)
    i2, r2 = run(rows[::-1], edges[::-1], 2)
    assert i1.stats().to_dict() == i2.stats().to_dict()
    assert r1.stats.to_dict() == r2.stats.to_dict()
    assert r1.store.pairs == r2.store.pairs
    assert np.array_equal(r1.store.ir, r2.store.ir)
    assert np.array_equal(r1.store.ic, r2.store.ic)
    assert r1.citations_per_year == r2.citations_per_year


def test_crlf_lines_accepted(tmp_path):
    path = write_raw(tmp_path / "p.tsv", "paper_id\tyear\tsubjects\r\na\t2000\tX\r\n")
    index = ingest_papers(path)
    assert index.paper_count == 1
    assert index.subject_names == ["X"]
