"""Pair aggregation: counting conventions, window anchoring, shard merging."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crityears.aggregate import aggregate, dump_pair_counts, pair_totals
from crityears.ingest import ingest_papers, iter_citations
from crityears.model import ConfigError, Window

from conftest import write_citations, write_papers


def build(tmp_path, paper_rows, edge_rows, window, **kw):
    papers = write_papers(tmp_path / "p.tsv", paper_rows)
    citations = write_citations(tmp_path / "c.tsv", edge_rows)
    index = ingest_papers(papers)
    return index, aggregate(index, citations, window, **kw)


def test_single_edge(tmp_path):
    _, res = build(
        tmp_path,
        [("p", 2000, "A"), ("q", 1995, "B")],
        [("p", "q")],
        Window(1998, 2002),
    )
    assert res.store.pairs == [("A", "B")]
    series = res.store.get("A", "B")
    assert series.ir.tolist() == [0, 0, 1, 0, 0]
    assert series.ic.tolist() == [0, 0, 0, 0, 0]


def test_multi_subject_edge_counts_both_directions(tmp_path):
    # P{A,B} -> Q{A,B}: ordered combinations A->B and B->A (A->A, B->B excluded)
    _, res = build(
        tmp_path,
        [("p", 2000, "A;B"), ("q", 2000, "A;B")],
        [("p", "q")],
        Window(2000, 2001),
    )
    series = res.store.get("A", "B")
    assert series.ir.tolist() == [1, 0]
    assert series.ic.tolist() == [1, 0]


def test_fractional_counting(tmp_path):
    _, res = build(
        tmp_path,
        [("p", 2000, "A;B"), ("q", 2000, "A;B")],
        [("p", "q")],
        Window(2000, 2001),
        counting="fractional",
    )
    series = res.store.get("A", "B")
    assert series.ir.tolist() == [0.25, 0]
    assert series.ic.tolist() == [0.25, 0]


def test_citing_year_anchors_and_prewindow_targets_count(tmp_path):
    _, res = build(
        tmp_path,
        [("old", 1970, "B"), ("new", 2000, "A"), ("late", 2005, "A")],
        [("new", "old"), ("late", "old")],  # "late" cites from outside the window
        Window(1999, 2002),
    )
    series = res.store.get("A", "B")
    assert series.ir.tolist() == [0, 1, 0, 0]
    assert res.stats.edge_count == 2  # both edges valid, one just out of window
    assert res.citations_per_year == {1999: 0, 2000: 1, 2001: 0, 2002: 0}


def test_direction_fold(tmp_path):
    _, res = build(
        tmp_path,
        [("a1", 2000, "A"), ("a2", 2000, "A"), ("b1", 2000, "B")],
        [("a1", "b1"), ("a2", "b1"), ("a1", "b1"), ("b1", "a2")],
        Window(2000, 2000),
    )
    series = res.store.get("A", "B")
    assert series.ir.tolist() == [3.0]
    assert series.ic.tolist() == [1.0]
    # lookup is canonical regardless of argument order
    swapped = res.store.get("B", "A")
    assert swapped.ir.tolist() == [3.0]


def test_zero_surviving_pairs_warns(tmp_path, caplog):
    with caplog.at_level("WARNING", logger="crityears"):
        _, res = build(
            tmp_path,
            [("p", 2000, "A")],
            [],
            Window(2000, 2001),
        )
    assert res.store.n_pairs == 0
    assert any("zero surviving pairs" in r.message for r in caplog.records)


def test_bad_counting_mode_rejected(tmp_path):
    papers = write_papers(tmp_path / "p.tsv", [("p", 2000, "A")])
    citations = write_citations(tmp_path / "c.tsv", [])
    index = ingest_papers(papers)
    with pytest.raises(ConfigError):
        aggregate(index, citations, Window(2000, 2001), counting="half")


def test_pair_totals():
    window = Window(2000, 2001)
    from conftest import store_from_counts

    store = store_from_counts({("A", "B"): ([1, 2], [3, 4])}, window)
    assert pair_totals(store.get("A", "B")) == (3.0, 7.0, 2)
    zero = store_from_counts({("A", "B"): ([0, 0], [0, 0])}, window)
    assert pair_totals(zero.get("A", "B")) == (0.0, 0.0, 0)


def brute_force_counts(index, citations_path, window, fractional=False):
    """Independent recount by plain edge enumeration."""
    counts = {}
    for edge in iter_citations(citations_path, index):
        ci = index.id_to_idx[edge.citing_id]
        cd = index.id_to_idx[edge.cited_id]
        year = int(index.years[ci])
        if year not in window:
            continue
        citing_subjects = sorted(index.subjects_of(ci))
        cited_subjects = sorted(index.subjects_of(cd))
        w = 1.0 / (len(citing_subjects) * len(cited_subjects)) if fractional else 1.0
        for x in citing_subjects:
            for y in cited_subjects:
                if x != y:
                    counts[(x, y, year)] = counts.get((x, y, year), 0.0) + w
    return counts


def store_as_ordered_counts(store):
    out = {}
    for series in store:
        for i, year in enumerate(store.window.years()):
            if series.ir[i]:
                out[(series.a, series.b, year)] = series.ir[i]
            if series.ic[i]:
                out[(series.b, series.a, year)] = series.ic[i]
    return out


@settings(max_examples=25)
@given(st.data())
def test_aggregation_equals_bruteforce(tmp_path_factory, data):
    rng_seed = data.draw(st.integers(min_value=0, max_value=10**6))
    rng = np.random.default_rng(rng_seed)
    tmp_path = tmp_path_factory.mktemp("agg")
    subjects = ["S1", "S2", "S3", "S4"]
    n_papers = int(rng.integers(2, 12))
    paper_rows = []
    for i in range(n_papers):
        k = int(rng.integers(1, 3))
        labels = rng.choice(subjects, size=k, replace=False)
        paper_rows.append((f"p{i}", int(rng.integers(1998, 2004)), ";".join(labels)))
    n_edges = int(rng.integers(0, 30))
    edge_rows = [
        (f"p{int(rng.integers(0, n_papers))}", f"p{int(rng.integers(0, n_papers))}")
        for _ in range(n_edges)
    ]
    window = Window(1999, 2002)
    fractional = bool(rng.integers(0, 2))
    index, res = build(
        tmp_path, paper_rows, edge_rows, window,
        counting="fractional" if fractional else "full",
    )
    expected = brute_force_counts(
        index, tmp_path / "c.tsv", window, fractional=fractional
    )
    got = store_as_ordered_counts(res.store)
    assert set(got) == set(expected)
    for key in expected:
        assert got[key] == pytest.approx(expected[key], abs=1e-12)


def test_threaded_equals_sequential(tmp_path):
    rng = np.random.default_rng(11)
    paper_rows = [
        (f"p{i}", int(rng.integers(1999, 2003)), ["A", "B", "C", "A;B"][int(rng.integers(0, 4))])
        for i in range(50)
    ]
    edge_rows = [
        (f"p{int(rng.integers(0, 50))}", f"p{int(rng.integers(0, 50))}")
        for _ in range(400)
    ]
    papers = write_papers(tmp_path / "p.tsv", paper_rows)
    citations = write_citations(tmp_path / "c.tsv", edge_rows)
    index = ingest_papers(papers)
    window = Window(1999, 2002)
    seq = aggregate(index, citations, window, threads=1)
    par = aggregate(index, citations, window, threads=4)
    assert seq.store.pairs == par.store.pairs
    assert seq.store.ir.tobytes() == par.store.ir.tobytes()
    assert seq.store.ic.tobytes() == par.store.ic.tobytes()


def test_ordered_count_sum_matches_edge_expansion(tmp_path):
    paper_rows = [("p1", 2000, "A;B"), ("p2", 2000, "B;C"), ("p3", 2000, "C")]
    edge_rows = [("p1", "p2"), ("p2", "p3"), ("p1", "p3")]
    index, res = build(tmp_path, paper_rows, edge_rows, Window(2000, 2000))
    total = sum(
        series.ir.sum() + series.ic.sum() for series in res.store
    )
    # per edge: |subjects(P)| * |subjects(Q)| minus excluded same-label combos
    expected = (2 * 2 - 1) + (2 * 1 - 1) + (2 * 1 - 0)
    assert total == expected


def test_dump_pair_counts_format(tmp_path):
    index, res = build(
        tmp_path,
        [("p", 2000, "A"), ("q", 2000, "B")],
        [("p", "q"), ("q", "p")],
        Window(2000, 2001),
    )
    out = tmp_path / "counts.tsv"
    dump_pair_counts(res.store, out)
    assert out.read_text() == (
        "a\tb\tyear\tir\tic\n"
        "A\tB\t2000\t1\t1\n"
        "A\tB\t2001\t0\t0\n"
    )
