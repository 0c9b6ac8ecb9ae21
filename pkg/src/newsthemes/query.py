"""Boolean tag/keyword query language: parser, evaluator, canonical form.

Grammar (operators are case-sensitive uppercase; NOT binds tightest):

    expr    := or
    or      := and ("OR" and)*
    and     := unary ("AND" unary)*
    unary   := "NOT" unary | primary
    primary := "(" expr ")" | KIND ":" VALUE | bareword

Barewords become lowercased keyword terms matched whole-token against a
story's headline+body tokens. The canonical rendering is fully parenthesized
with commutative operands sorted, so equivalent queries share a cache key.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Union

from .domain import DomainError, Story, Tag

__all__ = [
    "QuerySyntaxError",
    "TagTerm",
    "KeywordTerm",
    "Not",
    "And",
    "Or",
    "QueryAst",
    "SearchRequest",
    "parse_query",
    "matches",
    "canonicalize",
]


class QuerySyntaxError(ValueError):
    """Malformed query. `offset` points at the offending character."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.reason = message
        self.offset = offset


@dataclass(frozen=True)
class TagTerm:
    tag: Tag


_KEYWORD_RE = re.compile(r"^[^\s():]+$")


@dataclass(frozen=True)
class KeywordTerm:
    word: str

    def __post_init__(self) -> None:
        if not _KEYWORD_RE.match(self.word) or self.word != self.word.lower():
            raise DomainError(f"invalid keyword term: {self.word!r}")


@dataclass(frozen=True)
class Not:
    child: "QueryAst"


@dataclass(frozen=True)
class And:
    left: "QueryAst"
    right: "QueryAst"


@dataclass(frozen=True)
class Or:
    left: "QueryAst"
    right: "QueryAst"


QueryAst = Union[TagTerm, KeywordTerm, Not, And, Or]


@dataclass(frozen=True)
class SearchRequest:
    """One retrieval request: query plus horizon and tier sizes."""

    ast: QueryAst
    horizon_seconds: int
    k_facets: int = 50
    n_stories: int = 20

    def __post_init__(self) -> None:
        if self.horizon_seconds <= 0:
            raise DomainError("horizon_seconds must be positive")
        if self.k_facets < 1 or self.n_stories < 1:
            raise DomainError("k_facets and n_stories must be >= 1")


_LPAREN = "("
_RPAREN = ")"
_EOF = "eof"
_WORD = "word"
_TAG = "tag"
_OPERATOR = "op"

_OPERATORS = frozenset({"AND", "OR", "NOT"})


@dataclass(frozen=True)
class _Lexeme:
    kind: str
    text: str
    offset: int
    tag: Tag | None = None


def _check_balance(text: str) -> None:
    opens: list[int] = []
    for i, ch in enumerate(text):
        if ch == "(":
            opens.append(i)
        elif ch == ")":
            if not opens:
                raise QuerySyntaxError("unbalanced ')'", i)
            opens.pop()
    if opens:
        raise QuerySyntaxError("unbalanced '('", opens[0])


def _lex(text: str) -> list[_Lexeme]:
    _check_balance(text)
    out: list[_Lexeme] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()":
            out.append(_Lexeme(_LPAREN if ch == "(" else _RPAREN, ch, i))
            i += 1
            continue
        j = i
        while j < n and not text[j].isspace() and text[j] not in "()":
            j += 1
        word = text[i:j]
        if word in _OPERATORS:
            out.append(_Lexeme(_OPERATOR, word, i))
        elif ":" in word:
            try:
                tag = Tag.parse(word)
            except DomainError as exc:
                raise QuerySyntaxError(str(exc), i) from None
            out.append(_Lexeme(_TAG, word, i, tag=tag))
        else:
            out.append(_Lexeme(_WORD, word.lower(), i))
        i = j
    out.append(_Lexeme(_EOF, "", n))
    return out


class _Parser:
    def __init__(self, lexemes: list[_Lexeme]):
        self._lexemes = lexemes
        self._pos = 0

    def _peek(self) -> _Lexeme:
        return self._lexemes[self._pos]

    def _advance(self) -> _Lexeme:
        lex = self._lexemes[self._pos]
        self._pos += 1
        return lex

    def parse(self) -> QueryAst:
        node = self._parse_or()
        trailing = self._peek()
        if trailing.kind != _EOF:
            raise QuerySyntaxError(f"unexpected {trailing.text!r}", trailing.offset)
        return node

    def _parse_or(self) -> QueryAst:
        node = self._parse_and()
        while self._peek().kind == _OPERATOR and self._peek().text == "OR":
            self._advance()
            node = Or(node, self._parse_and())
        return node

    def _parse_and(self) -> QueryAst:
        node = self._parse_unary()
        while self._peek().kind == _OPERATOR and self._peek().text == "AND":
            self._advance()
            node = And(node, self._parse_unary())
        return node

    def _parse_unary(self) -> QueryAst:
        lex = self._peek()
        if lex.kind == _OPERATOR and lex.text == "NOT":
            self._advance()
            return Not(self._parse_unary())
        return self._parse_primary()

    def _parse_primary(self) -> QueryAst:
        lex = self._advance()
        if lex.kind == _LPAREN:
            node = self._parse_or()
            closing = self._advance()
            if closing.kind != _RPAREN:
                raise QuerySyntaxError("expected ')'", closing.offset)
            return node
        if lex.kind == _TAG:
            assert lex.tag is not None
            return TagTerm(lex.tag)
        if lex.kind == _WORD:
            return KeywordTerm(lex.text)
        raise QuerySyntaxError("expected term", lex.offset)


def parse_query(text: str) -> QueryAst:
    """Parse a query string into its AST.

    Raises QuerySyntaxError carrying the character offset of the fault
    (unbalanced parens, dangling operator, empty input, unknown tag kind).
    """
    lexemes = _lex(text)
    if lexemes[0].kind == _EOF:
        raise QuerySyntaxError("empty query", 0)
    return _Parser(lexemes).parse()


@functools.lru_cache(maxsize=8192)
def _story_token_lowers(story: Story) -> frozenset[str]:
    return frozenset(tok.lower for tok in story.tokens())


def matches(ast: QueryAst, story: Story) -> bool:
    """Evaluate the query against one story.

    TagTerm: tag membership. KeywordTerm: case-insensitive whole-token
    presence in headline or body. And/Or/Not: Boolean semantics.
    """
    if isinstance(ast, TagTerm):
        return ast.tag in story.tags
    if isinstance(ast, KeywordTerm):
        return ast.word in _story_token_lowers(story)
    if isinstance(ast, Not):
        return not matches(ast.child, story)
    if isinstance(ast, And):
        return matches(ast.left, story) and matches(ast.right, story)
    if isinstance(ast, Or):
        return matches(ast.left, story) or matches(ast.right, story)
    raise TypeError(f"not a query node: {ast!r}")


def canonicalize(ast: QueryAst) -> str:
    """Deterministic fully-parenthesized rendering with the operands of
    commutative nodes sorted, e.g. And(kw b, kw a) -> "((a) AND (b))"."""
    if isinstance(ast, TagTerm):
        return f"({ast.tag})"
    if isinstance(ast, KeywordTerm):
        return f"({ast.word})"
    if isinstance(ast, Not):
        return f"(NOT {canonicalize(ast.child)})"
    if isinstance(ast, And):
        a, b = sorted((canonicalize(ast.left), canonicalize(ast.right)))
        return f"({a} AND {b})"
    if isinstance(ast, Or):
        a, b = sorted((canonicalize(ast.left), canonicalize(ast.right)))
        return f"({a} OR {b})"
    raise TypeError(f"not a query node: {ast!r}")
