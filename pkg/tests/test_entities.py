"""Heuristic entity extraction behavior on crafted sentences."""

from __future__ import annotations

from provcards.entities import (
    EntityKind,
    EntityMention,
    HeuristicEntityExtractor,
    count_entities,
    extract_entities_heuristic,
)


def kinds(text: str) -> list[tuple[str, str]]:
    return [(m.surface, m.kind.value) for m in extract_entities_heuristic(text)]


def test_given_name_starts_a_person():
    assert kinds("The courier saw Omar Vance arrive.") == [("Omar Vance", "Person")]


def test_honorific_marks_person_and_drops_from_surface():
    assert kinds("They met Dr Elena Castellan today.") == [("Elena Castellan", "Person")]


def test_honorific_abbreviation_dot_does_not_break_the_run():
    assert kinds("Gen. Franco Ellington spoke.") == [("Franco Ellington", "Person")]


def test_known_location_is_tagged():
    assert kinds("The convoy reached Vienna overnight.") == [("Vienna", "Location")]


def test_multiword_location_matches_longest():
    assert kinds("The flights to Abu Dhabi resumed.") == [("Abu Dhabi", "Location")]


def test_sentence_initial_entity_is_still_found():
    assert kinds("Vienna hosted the talks.") == [("Vienna", "Location")]


def test_adjacent_location_repeats_stay_separate():
    assert kinds("Paris Paris Paris") == [
        ("Paris", "Location"), ("Paris", "Location"), ("Paris", "Location"),
    ]


def test_person_then_location_in_one_run():
    assert kinds("Dalia Rafferty was in Cairo.") == [
        ("Dalia Rafferty", "Person"), ("Cairo", "Location"),
    ]


def test_run_splits_between_person_and_location():
    # No separator between the name and the place; the gazetteer boundary
    # still splits the capitalized run.
    assert kinds("Omar Vance Cairo") == [
        ("Omar Vance", "Person"), ("Cairo", "Location"),
    ]


def test_sentence_initial_stopword_is_not_an_entity():
    assert kinds("The meeting happened later. They left quickly.") == []


def test_sentence_boundary_breaks_runs():
    assert kinds("She saw Cairo. Vienna was next.") == [
        ("Cairo", "Location"), ("Vienna", "Location"),
    ]


def test_unknown_capitalized_run_is_other():
    assert kinds("Project Nightfall continues.") == [("Project Nightfall", "Other")]


def test_lowercase_text_has_no_entities():
    assert kinds("the cargo moved through the harbor at night") == []


def test_hyphen_joined_run_stays_together():
    assert kinds("She visited Saint-Denis yesterday.") == [("Saint-Denis", "Other")]


def test_surfaces_are_exact_substrings():
    text = "Gen. Franco Ellington met Dalia Rafferty in Abu Dhabi.\nOmar Vance watched."
    for mention in extract_entities_heuristic(text):
        assert mention.surface in text


def test_extractor_is_deterministic():
    text = "Dalia Rafferty saw Omar Vance in Cairo and Vienna."
    first = extract_entities_heuristic(text)
    second = HeuristicEntityExtractor().extract(text)
    assert first == second


def test_count_entities_orders_by_count_then_surface():
    mentions = [
        EntityMention("Cairo", EntityKind.LOCATION),
        EntityMention("Omar Vance", EntityKind.PERSON),
        EntityMention("Cairo", EntityKind.LOCATION),
        EntityMention("Aden", EntityKind.LOCATION),
    ]
    assert count_entities(mentions) == [
        ("Cairo", EntityKind.LOCATION, 2),
        ("Aden", EntityKind.LOCATION, 1),
        ("Omar Vance", EntityKind.PERSON, 1),
    ]
