"""Cluster map loading and event classification."""

import pytest

from crityears.detect import CriticalYearEvent
from crityears.model import ConfigError, IngestError
from crityears.taxonomy import (
    ClassificationReport,
    ClusterMap,
    classify_events,
    load_cluster_map,
    starter_map_path,
)

from conftest import write_raw


def event(a, b, year=2000):
    return CriticalYearEvent(a, b, year, 5.0, 3.0, 1.0, 0.5, 0.1)


def write_map(path, rows):
    lines = ["subject\tcluster\tgroup"] + [f"{s}\t{c}\t{g}" for s, c, g in rows]
    return write_raw(path, "\n".join(lines) + "\n")


def test_two_row_map(tmp_path):
    cmap = load_cluster_map(write_map(tmp_path / "m.tsv", [("A", "X", "natural"), ("B", "Y", "humsoc")]))
    assert cmap.assignments == {"A": "X", "B": "Y"}
    assert cmap.groups == {"X": "natural", "Y": "humsoc"}
    assert cmap.clusters() == ["X", "Y"]


def test_duplicate_subject_names_offender(tmp_path):
    path = write_map(tmp_path / "m.tsv", [("A", "X", "natural"), ("A", "Y", "natural")])
    with pytest.raises(IngestError) as err:
        load_cluster_map(path)
    assert "'A'" in str(err.value)


def test_unknown_group_tag(tmp_path):
    with pytest.raises(IngestError):
        load_cluster_map(write_map(tmp_path / "m.tsv", [("A", "X", "formal")]))


def test_empty_and_headerless_files(tmp_path):
    with pytest.raises(IngestError):
        load_cluster_map(write_raw(tmp_path / "e.tsv", ""))
    with pytest.raises(IngestError):
        load_cluster_map(write_raw(tmp_path / "h.tsv", "subject\tcluster\tgroup\n"))


def test_conflicting_cluster_groups(tmp_path):
    path = write_map(tmp_path / "m.tsv", [("A", "X", "natural"), ("B", "X", "humsoc")])
    with pytest.raises(IngestError):
        load_cluster_map(path)


def test_starter_map_has_21_clusters():
    cmap = load_cluster_map(starter_map_path())
    assert len(set(cmap.assignments.values())) == 21
    assert set(cmap.groups.values()) == {"natural", "humsoc"}
    assert "Medicine" in cmap.groups


def test_254_subject_fixture_keeps_21_clusters(tmp_path):
    starter = load_cluster_map(starter_map_path())
    clusters = sorted(starter.groups)
    rows = [
        (f"Subject {i:03d}", clusters[i % 21], starter.groups[clusters[i % 21]])
        for i in range(254)
    ]
    cmap = load_cluster_map(write_map(tmp_path / "big.tsv", rows))
    assert len(cmap.assignments) == 254
    assert len(set(cmap.assignments.values())) == 21


def test_classify_cross_and_intra(tmp_path):
    cmap = load_cluster_map(
        write_map(tmp_path / "m.tsv", [("A", "X", "natural"), ("B", "Y", "natural"), ("C", "X", "natural")])
    )
    events, report = classify_events([event("A", "B"), event("A", "C")], cmap)
    assert [e.cross_cluster for e in events] == [True, False]
    assert (report.cross, report.intra, report.total) == (1, 1, 2)


def test_classification_report_percent():
    report = ClassificationReport(cross=2529, intra=218)
    assert report.total == 2747
    assert report.percent_cross() == "92.06%"


def test_unassigned_subject_strict_vs_lenient(tmp_path):
    cmap = load_cluster_map(write_map(tmp_path / "m.tsv", [("A", "X", "natural")]))
    with pytest.raises(ConfigError):
        classify_events([event("A", "Mystery")], cmap)
    events, report = classify_events([event("A", "Mystery")], cmap, lenient=True)
    assert events[0].cross_cluster is True
    assert report.total == 1


def test_cluster_rename_changes_nothing():
    cmap1 = ClusterMap({"A": "X", "B": "Y", "C": "X"}, {"X": "natural", "Y": "humsoc"})
    cmap2 = ClusterMap({"A": "X2", "B": "Y", "C": "X2"}, {"X2": "natural", "Y": "humsoc"})
    evs = [event("A", "B"), event("A", "C"), event("B", "C")]
    out1, rep1 = classify_events(evs, cmap1)
    out2, rep2 = classify_events(evs, cmap2)
    assert [e.cross_cluster for e in out1] == [e.cross_cluster for e in out2]
    assert (rep1.cross, rep1.intra) == (rep2.cross, rep2.intra)


def test_merging_clusters_only_converts_cross_to_intra():
    fine = ClusterMap(
        {"A": "X", "B": "Y", "C": "Z", "D": "X"},
        {"X": "natural", "Y": "natural", "Z": "humsoc"},
    )
    coarse = ClusterMap(
        {"A": "XY", "B": "XY", "C": "Z", "D": "XY"},  # X and Y merged
        {"XY": "natural", "Z": "humsoc"},
    )
    evs = [event(a, b) for a, b in [("A", "B"), ("A", "C"), ("B", "C"), ("A", "D"), ("B", "D")]]
    out_fine, _ = classify_events(evs, fine)
    out_coarse, _ = classify_events(evs, coarse)
    for before, after in zip(out_fine, out_coarse):
        if not before.cross_cluster:
            assert not after.cross_cluster
