from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from newsthemes.domain import (
    DomainError,
    Story,
    Tag,
    TagKind,
    normalize_text,
    render_tokens,
    story_from_json,
    story_json_line,
    story_to_json,
    tokenize,
)


def test_normalize_collapses_whitespace_and_trims():
    assert normalize_text("  Brexit\t Day ") == "Brexit Day"


def test_normalize_empty_is_empty():
    assert normalize_text("") == ""


def test_normalize_single_internal_run():
    assert normalize_text("a  b") == "a b"


def test_normalize_strips_control_characters():
    assert normalize_text("a\x00b") == "ab"
    # \x1f counts as whitespace, so it collapses to a space instead.
    assert normalize_text("a\x1fb") == "a b"


def test_tokenize_plain_words():
    toks = tokenize("Britain to Leave the EU")
    assert [t.surface for t in toks] == ["Britain", "to", "Leave", "the", "EU"]
    assert [t.lower for t in toks] == ["britain", "to", "leave", "the", "eu"]


def test_tokenize_keeps_internal_periods():
    assert [t.surface for t in tokenize("U.K.")] == ["U.K."]


def test_tokenize_empty():
    assert list(tokenize("")) == []


def test_tokenize_peels_edge_punctuation():
    toks = tokenize("'Beginning' on Brexit Day.")
    assert [t.surface for t in toks] == ["'", "Beginning", "'", "on", "Brexit", "Day", "."]


def test_tokenize_never_emits_empty_tokens():
    for text in ("...", "a.", ".a", "(x)", "-- --"):
        for tok in tokenize(normalize_text(text)):
            assert tok.surface
            assert tok.lower == tok.surface.lower()


def test_render_tokens_reattaches_punctuation():
    assert render_tokens(tokenize("Stocks fell, analysts said.")) == "Stocks fell, analysts said."
    assert render_tokens(tokenize("(a b) c")) == "(a b) c"


@given(st.text(max_size=80))
def test_tokenize_idempotent_on_own_output(raw):
    once = tokenize(normalize_text(raw))
    again = tokenize(" ".join(t.surface for t in once))
    assert [t.surface for t in again] == [t.surface for t in once]


@given(st.lists(st.sampled_from(["Brexit", "day", "U.K.", "fell,", "(on)", "7%"]), max_size=8))
def test_tokenize_roundtrips_through_space_join(words):
    toks = tokenize(normalize_text(" ".join(words)))
    rejoined = tokenize(" ".join(t.surface for t in toks))
    assert list(rejoined) == list(toks)


def test_tag_parse_accepts_wellformed():
    tag = Tag.parse("TOPIC:ECOM")
    assert tag.kind is TagKind.TOPIC
    assert tag.value == "ECOM"
    assert str(tag) == "TOPIC:ECOM"


def test_tag_rejects_lowercase_kind():
    with pytest.raises(DomainError):
        Tag.parse("topic:ECOM")


def test_tag_rejects_empty_value():
    with pytest.raises(DomainError):
        Tag.parse("TOPIC:")


def test_tag_rejects_unknown_kind():
    with pytest.raises(DomainError):
        Tag.parse("FLAVOR:VANILLA")


@given(st.text(max_size=20))
def test_tag_parse_never_crashes_and_only_accepts_valid_shapes(raw):
    try:
        tag = Tag.parse(raw)
    except DomainError:
        return
    assert tag.kind.value in {"TOPIC", "COMPANY", "REGION", "PERSON", "SOURCE"}
    assert tag.value
    assert all(c.isupper() or c.isdigit() or c in "_." for c in tag.value)


def test_story_requires_nonempty_headline(make_story):
    with pytest.raises(DomainError):
        make_story(headline="")


def test_story_requires_positive_timestamp(make_story):
    with pytest.raises(DomainError):
        make_story(ingested_at=0)


def test_story_with_cluster_does_not_mutate(make_story):
    story = make_story()
    assigned = story.with_cluster("oc-00000001")
    assert story.online_cluster is None
    assert assigned.online_cluster == "oc-00000001"
    assert assigned.id == story.id


def test_story_wire_format_field_names_and_tag_order(make_story):
    story = make_story(
        tags=(Tag.parse("TOPIC:ECOM"), Tag.parse("COMPANY:AMZN")),
        online_cluster="oc-00000007",
    )
    payload = story_to_json(story)
    assert list(payload) == ["id", "headline", "body", "source", "ingested_at", "tags"]
    # sorted by (kind, value); never carries the cluster id
    assert payload["tags"] == [
        {"kind": "COMPANY", "value": "AMZN"},
        {"kind": "TOPIC", "value": "ECOM"},
    ]
    assert "online_cluster" not in payload


def test_story_json_line_is_compact_utf8(make_story):
    story = make_story(headline="Résultats solides")
    line = story_json_line(story)
    assert ": " not in line and ", " not in line
    assert "Résultats" in line
    assert json.loads(line)["headline"] == "Résultats solides"


def test_story_json_roundtrip(make_story):
    story = make_story(tags=(Tag.parse("REGION:UK"),))
    back = story_from_json(json.loads(story_json_line(story)))
    assert back == story


def test_story_from_json_rejects_missing_fields():
    with pytest.raises(DomainError):
        story_from_json({"id": "x", "headline": "h"})


def test_story_from_json_rejects_bool_timestamp(make_story):
    payload = story_to_json(make_story())
    payload["ingested_at"] = True
    with pytest.raises(DomainError):
        story_from_json(payload)


def test_story_tokens_cover_headline_then_body():
    story = Story(
        id="s1",
        headline="Stocks fell",
        body="Bonds rose.",
        source="wire",
        ingested_at=5,
    )
    assert [t.surface for t in story.tokens()] == ["Stocks", "fell", "Bonds", "rose", "."]
