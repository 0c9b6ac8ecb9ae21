from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from newsthemes.domain import Tag
from newsthemes.query import (
    And,
    KeywordTerm,
    Not,
    Or,
    QuerySyntaxError,
    SearchRequest,
    TagTerm,
    canonicalize,
    matches,
    parse_query,
)


def test_parse_tagged_boolean_query_shape():
    ast = parse_query("TOPIC:ECOM AND NOT COMPANY:AMZN")
    assert ast == And(
        TagTerm(Tag.parse("TOPIC:ECOM")), Not(TagTerm(Tag.parse("COMPANY:AMZN")))
    )


def test_and_binds_tighter_than_or():
    assert parse_query("a OR b AND c") == Or(
        KeywordTerm("a"), And(KeywordTerm("b"), KeywordTerm("c"))
    )


def test_not_binds_tightest():
    assert parse_query("NOT a AND b") == And(Not(KeywordTerm("a")), KeywordTerm("b"))


def test_parens_override_precedence():
    assert parse_query("(a OR b) AND c") == And(
        Or(KeywordTerm("a"), KeywordTerm("b")), KeywordTerm("c")
    )


def test_barewords_lowercased():
    assert parse_query("Brexit") == KeywordTerm("brexit")


def test_operators_are_case_sensitive():
    with pytest.raises(QuerySyntaxError):
        parse_query("a AND")
    # lowercase "and" is a bareword, leaving two adjacent terms
    with pytest.raises(QuerySyntaxError) as err:
        parse_query("a and b")
    assert err.value.offset == 2


def test_unbalanced_paren_offset_zero():
    with pytest.raises(QuerySyntaxError) as err:
        parse_query("(")
    assert err.value.offset == 0


def test_error_offsets_point_into_input():
    cases = {
        "": 0,
        "a OR": 4,
        "AND b": 0,
        "FLAVOR:X": 0,
        "a (b": 2,
    }
    for text, offset in cases.items():
        with pytest.raises(QuerySyntaxError) as err:
            parse_query(text)
        assert err.value.offset == offset, text


def test_unknown_tag_kind_rejected():
    with pytest.raises(QuerySyntaxError):
        parse_query("SECURITY:AMZN")


def test_matches_tag_membership(make_story):
    story = make_story(tags=(Tag.parse("COMPANY:AMZN"),))
    assert matches(TagTerm(Tag.parse("COMPANY:AMZN")), story)
    assert not matches(TagTerm(Tag.parse("COMPANY:MSFT")), story)


def test_matches_keyword_case_insensitive(make_story):
    story = make_story(headline="Boris Johnson Hails 'Beginning' on Brexit Day")
    assert not matches(Not(KeywordTerm("brexit")), story)
    assert matches(KeywordTerm("brexit"), story)


def test_matches_keyword_whole_token_only(make_story):
    story = make_story(headline="Brexiteers cheered", body="No deal yet.")
    assert not matches(KeywordTerm("brexit"), story)


def test_matches_searches_body_too(make_story):
    story = make_story(headline="Markets open", body="Brexit talks resume today.")
    assert matches(KeywordTerm("brexit"), story)


def test_contradiction_never_matches(make_story):
    story = make_story()
    x = KeywordTerm("quarterly")
    assert not matches(And(x, Not(x)), story)


def test_canonicalize_sorts_commutative_operands():
    assert canonicalize(And(KeywordTerm("b"), KeywordTerm("a"))) == "((a) AND (b))"


def test_canonicalize_single_term():
    assert canonicalize(TagTerm(Tag.parse("TOPIC:ECOM"))) == "(TOPIC:ECOM)"


def test_canonicalize_or_is_commutative():
    assert canonicalize(parse_query("x OR y")) == canonicalize(parse_query("y OR x"))


def test_canonicalize_roundtrips_through_parse():
    for text in (
        "TOPIC:ECOM AND NOT COMPANY:AMZN",
        "a OR b AND c",
        "NOT (a OR b)",
        "x",
    ):
        canon = canonicalize(parse_query(text))
        assert canonicalize(parse_query(canon)) == canon


_keywords = st.sampled_from(["alpha", "beta", "gamma", "delta"])
_tags = st.sampled_from(["TOPIC:ECOM", "COMPANY:AMZN", "REGION:UK"])


def _asts(depth: int = 3):
    leaf = st.one_of(
        _keywords.map(KeywordTerm),
        _tags.map(lambda t: TagTerm(Tag.parse(t))),
    )
    return st.recursive(
        leaf,
        lambda inner: st.one_of(
            st.tuples(inner, inner).map(lambda p: And(*p)),
            st.tuples(inner, inner).map(lambda p: Or(*p)),
            inner.map(Not),
        ),
        max_leaves=6,
    )


@given(_asts())
def test_parse_of_canonical_form_is_a_fixpoint(ast):
    canon = canonicalize(ast)
    reparsed = parse_query(canon)
    assert canonicalize(reparsed) == canon


@given(_asts(), _asts(), st.lists(_keywords, max_size=3), st.lists(_tags, max_size=2))
def test_de_morgan_on_random_stories(a, b, words, tag_texts):
    from newsthemes.domain import Story

    story = Story(
        id="s1",
        headline=" ".join(words) or "empty",
        body="",
        source="wire",
        ingested_at=10,
        tags=frozenset(Tag.parse(t) for t in tag_texts),
    )
    assert matches(Not(And(a, b)), story) == matches(Or(Not(a), Not(b)), story)


@given(st.text(max_size=40))
def test_parser_never_panics(raw):
    try:
        parse_query(raw)
    except QuerySyntaxError as err:
        assert 0 <= err.offset <= len(raw)


def test_search_request_validates_bounds():
    ast = parse_query("a")
    request = SearchRequest(ast=ast, horizon_seconds=3600)
    assert request.k_facets == 50
    assert request.n_stories == 20
    from newsthemes.domain import DomainError

    with pytest.raises(DomainError):
        SearchRequest(ast=ast, horizon_seconds=0)
    with pytest.raises(DomainError):
        SearchRequest(ast=ast, horizon_seconds=10, k_facets=0)
