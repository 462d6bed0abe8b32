"""Deterministic scenario corpus shared by the synth tests and acceptance.

``hand_expected`` is filled only where the event list was derived by hand;
every scenario is additionally checked pipeline-vs-oracle regardless.
"""

from __future__ import annotations

from dataclasses import dataclass

from crityears.model import Window
from crityears.synth import PlantedEvent, Scenario


@dataclass
class Case:
    name: str
    scenario: Scenario
    counting: str = "full"
    hand_expected: list[tuple[str, str, int]] | None = None


def _subjects(*labels, cluster_every=1):
    return [
        (lab, f"C{idx // cluster_every}", "natural")
        for idx, lab in enumerate(labels)
    ]


def hand_fixture() -> Scenario:
    """One-way trickle flipping to reciprocal 12 then 13: fires once, 2004."""
    return Scenario(
        seed=7,
        window=Window(2000, 2005),
        subjects=_subjects("Astro", "Botany"),
        baseline_rates={("Astro", "Botany"): 0.5, ("Botany", "Astro"): 0.0},
        planted_events=[
            PlantedEvent("Astro", "Botany", 2004, 24.0, "equalize"),
            PlantedEvent("Astro", "Botany", 2005, 26.0, "equalize"),
        ],
    ).validate()


def cases() -> list[Case]:
    out = [
        Case(
            "hand_fixture",
            hand_fixture(),
            hand_expected=[("Astro", "Botany", 2004)],
        ),
        Case(
            "flat_balanced",
            Scenario(
                seed=1,
                window=Window(1990, 1997),
                subjects=_subjects("A", "B"),
                baseline_rates={("A", "B"): 4.0, ("B", "A"): 4.0},
            ).validate(),
            hand_expected=[],
        ),
        Case(
            "one_way_only",
            Scenario(
                seed=2,
                window=Window(1990, 1999),
                subjects=_subjects("A", "B", "C"),
                baseline_rates={("A", "B"): 6.0, ("A", "C"): 2.0},
            ).validate(),
            hand_expected=[],
        ),
        Case(
            "two_disjoint_surges",
            Scenario(
                seed=3,
                window=Window(2000, 2009),
                subjects=_subjects("A", "B", "C", "D"),
                baseline_rates={
                    ("A", "B"): 0.4,
                    ("C", "D"): 0.4,
                },
                planted_events=[
                    PlantedEvent("A", "B", 2008, 30.0, "equalize"),
                    PlantedEvent("C", "D", 2009, 40.0, "equalize"),
                ],
            ).validate(),
            hand_expected=[("A", "B", 2008), ("C", "D", 2009)],
        ),
        Case(
            "scale_mode_surge",
            Scenario(
                seed=4,
                window=Window(2000, 2005),
                subjects=_subjects("A", "B"),
                baseline_rates={("A", "B"): 1.0, ("B", "A"): 1.0},
                planted_events=[PlantedEvent("A", "B", 2005, 12.0, "scale")],
            ).validate(),
            hand_expected=[("A", "B", 2005)],
        ),
        Case(
            "stepped_doubling_never_fires",
            Scenario(
                seed=5,
                window=Window(2000, 2005),
                subjects=_subjects("A", "B"),
                baseline_rates={("A", "B"): 1.0, ("B", "A"): 1.0},
                planted_events=[
                    PlantedEvent("A", "B", 2002, 2.0, "scale"),
                    PlantedEvent("A", "B", 2003, 4.0, "scale"),
                    PlantedEvent("A", "B", 2004, 8.0, "scale"),
                    PlantedEvent("A", "B", 2005, 16.0, "scale"),
                ],
            ).validate(),
            hand_expected=[],
        ),
        Case(
            "multi_subject_full",
            Scenario(
                seed=6,
                window=Window(2000, 2006),
                subjects=_subjects("A", "B", "C"),
                baseline_rates={("A", "B"): 0.5},
                planted_events=[PlantedEvent("A", "B", 2005, 28.0, "equalize")],
                papers_per_subject_year=4,
                multi_subject_fraction=0.5,
            ).validate(),
        ),
        Case(
            "multi_subject_fractional",
            Scenario(
                seed=7,
                window=Window(2000, 2006),
                subjects=_subjects("A", "B", "C"),
                baseline_rates={("A", "B"): 0.5},
                planted_events=[PlantedEvent("A", "B", 2005, 28.0, "equalize")],
                papers_per_subject_year=4,
                multi_subject_fraction=0.5,
            ).validate(),
            counting="fractional",
        ),
        Case(
            "shared_subject_surges",
            Scenario(
                seed=8,
                window=Window(2000, 2007),
                subjects=_subjects("A", "B", "C"),
                baseline_rates={
                    ("A", "B"): 0.3,
                    ("A", "C"): 0.3,
                    ("B", "C"): 1.0,
                },
                planted_events=[
                    PlantedEvent("A", "B", 2006, 40.0, "equalize"),
                    PlantedEvent("A", "C", 2006, 50.0, "equalize"),
                ],
            ).validate(),
        ),
        Case(
            "small_factor_no_fire",
            Scenario(
                seed=9,
                window=Window(2000, 2005),
                subjects=_subjects("A", "B"),
                baseline_rates={("A", "B"): 2.0, ("B", "A"): 2.0},
                planted_events=[PlantedEvent("A", "B", 2003, 2.0, "equalize")],
            ).validate(),
            hand_expected=[],
        ),
        Case(
            # surged years dominate the pair's own values: its mean (10) sits
            # below the pooled median (12), so condition 1 gates it out
            "early_surge_gated_by_median",
            Scenario(
                seed=10,
                window=Window(2000, 2005),
                subjects=_subjects("A", "B"),
                baseline_rates={("A", "B"): 0.5},
                planted_events=[PlantedEvent("A", "B", 2001, 24.0, "equalize")],
            ).validate(),
            hand_expected=[],
        ),
        Case(
            # same early surge, but a quiet one-way bystander pair drags the
            # pooled median down to 6 and the surge fires at its onset
            "surge_second_year_with_bystander",
            Scenario(
                seed=10,
                window=Window(2000, 2005),
                subjects=_subjects("A", "B", "C", "D"),
                baseline_rates={("A", "B"): 0.5, ("C", "D"): 2.0},
                planted_events=[PlantedEvent("A", "B", 2001, 24.0, "equalize")],
            ).validate(),
            hand_expected=[("A", "B", 2001)],
        ),
        Case(
            "surge_last_year_with_bystander",
            Scenario(
                seed=11,
                window=Window(2000, 2007),
                subjects=_subjects("A", "B", "C", "D"),
                baseline_rates={
                    ("A", "B"): 0.4,
                    ("C", "D"): 5.0,
                },
                planted_events=[PlantedEvent("A", "B", 2007, 30.0, "equalize")],
            ).validate(),
        ),
        Case(
            "papers_only_zero_edges",
            Scenario(
                seed=12,
                window=Window(2000, 2004),
                subjects=_subjects("A", "B"),
                baseline_rates={},
            ).validate(),
            hand_expected=[],
        ),
    ]
    return out
