"""Core value types: stories, tags, and token sequences.

Everything downstream (query evaluation, indexing, embedding, summarization)
operates on the types defined here. Stories are immutable; ingestion assigns
the online cluster by producing a copy.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Iterable, NamedTuple

__all__ = [
    "DomainError",
    "TagKind",
    "Tag",
    "Token",
    "TokenSeq",
    "Story",
    "normalize_text",
    "tokenize",
    "render_tokens",
    "story_from_json",
    "story_to_json",
]


class DomainError(ValueError):
    """Raised when a value violates a domain invariant."""


class TagKind(str, Enum):
    """Closed set of tag kinds a story may carry."""

    TOPIC = "TOPIC"
    COMPANY = "COMPANY"
    REGION = "REGION"
    PERSON = "PERSON"
    SOURCE = "SOURCE"


# Tag values are uppercase alphanumerics plus underscore and period.
_TAG_VALUE_RE = re.compile(r"^[A-Z0-9_.]+$")

# Tokens shaped like single letters separated by periods ("U.K.", "U.S.A.")
# keep their trailing period instead of having it split off.
_ACRONYM_RE = re.compile(r"^(?:[^\W\d_]\.){2,}$")

_WS_RUN_RE = re.compile(r"\s+")


@dataclass(frozen=True, order=True)
class Tag:
    """A faceted label attached to a story, e.g. TOPIC:ECOM."""

    kind: TagKind
    value: str

    def __post_init__(self) -> None:
        if not isinstance(self.kind, TagKind):
            raise DomainError(f"unknown tag kind: {self.kind!r}")
        if not _TAG_VALUE_RE.match(self.value or ""):
            raise DomainError(f"invalid tag value: {self.value!r}")

    @classmethod
    def parse(cls, text: str) -> "Tag":
        """Parse "KIND:VALUE" notation. Kind must be uppercase and known."""
        kind_text, sep, value = text.partition(":")
        if not sep:
            raise DomainError(f"tag missing ':': {text!r}")
        try:
            kind = TagKind(kind_text)
        except ValueError:
            raise DomainError(f"unknown tag kind: {kind_text!r}") from None
        return cls(kind, value)

    def __str__(self) -> str:
        return f"{self.kind.value}:{self.value}"


class Token(NamedTuple):
    """One token: the surface as written plus its case-folded form."""

    surface: str
    lower: str


TokenSeq = tuple[Token, ...]


def normalize_text(raw: str) -> str:
    """NFC-normalize, drop non-whitespace control characters, collapse
    whitespace runs to single spaces, and strip the ends."""
    text = unicodedata.normalize("NFC", raw)
    text = "".join(
        ch for ch in text if ch.isspace() or unicodedata.category(ch) not in ("Cc", "Cf")
    )
    return _WS_RUN_RE.sub(" ", text).strip()


def _make_token(surface: str) -> Token:
    return Token(surface, surface.lower())


def _split_chunk(chunk: str) -> list[str]:
    """Split leading/trailing punctuation of a whitespace-delimited chunk
    into separate one-character tokens; internal punctuation stays put."""
    if _ACRONYM_RE.match(chunk):
        return [chunk]
    i, j = 0, len(chunk)
    lead: list[str] = []
    trail: list[str] = []
    while i < j and not chunk[i].isalnum():
        lead.append(chunk[i])
        i += 1
    while j > i and not chunk[j - 1].isalnum():
        trail.append(chunk[j - 1])
        j -= 1
    middle = chunk[i:j]
    out = lead
    if middle:
        out.append(middle)
    out.extend(reversed(trail))
    return out


def tokenize(text: str) -> TokenSeq:
    """Tokenize normalized text on whitespace, peeling edge punctuation into
    its own tokens. Internal periods, hyphens, and apostrophes are kept, so
    "U.K." and "don't" survive as single tokens."""
    tokens: list[Token] = []
    for chunk in text.split():
        tokens.extend(_make_token(piece) for piece in _split_chunk(chunk))
    return tuple(tokens)


# Punctuation that visually binds to the preceding token when rendering.
_CLOSERS = ",.;:!?%)]}"
_OPENERS = "([{"


def render_tokens(tokens: Iterable[Token]) -> str:
    """Join token surfaces with single spaces, re-attaching closing
    punctuation to the left and opening punctuation to the right."""
    out: list[str] = []
    for tok in tokens:
        s = tok.surface
        if out and s in _CLOSERS:
            out[-1] += s
        elif out and out[-1] and out[-1][-1] in _OPENERS:
            out[-1] += s
        else:
            out.append(s)
    return " ".join(out)


@dataclass(frozen=True)
class Story:
    """One news story as ingested.

    `online_cluster` is absent until ingestion assigns one; the wire format
    never carries it.
    """

    id: str
    headline: str
    body: str
    source: str
    ingested_at: int
    tags: frozenset[Tag] = field(default_factory=frozenset)
    online_cluster: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise DomainError("story id must be nonempty")
        if not self.headline:
            raise DomainError("story headline must be nonempty")
        if not isinstance(self.ingested_at, int) or self.ingested_at <= 0:
            raise DomainError(f"ingested_at must be a positive integer, got {self.ingested_at!r}")
        for tag in self.tags:
            if not isinstance(tag, Tag):
                raise DomainError(f"not a Tag: {tag!r}")

    def with_cluster(self, cluster_id: str) -> "Story":
        return replace(self, online_cluster=cluster_id)

    def tokens(self) -> TokenSeq:
        """All tokens of headline followed by body, normalized."""
        return tokenize(normalize_text(self.headline)) + tokenize(normalize_text(self.body))


def story_to_json(story: Story) -> dict[str, Any]:
    """Wire format: id, headline, body, source, ingested_at, tags.

    Tags are emitted sorted by (kind, value) so serialization round-trips
    byte-identically.
    """
    return {
        "id": story.id,
        "headline": story.headline,
        "body": story.body,
        "source": story.source,
        "ingested_at": story.ingested_at,
        "tags": [
            {"kind": t.kind.value, "value": t.value}
            for t in sorted(story.tags, key=lambda t: (t.kind.value, t.value))
        ],
    }


def story_from_json(payload: dict[str, Any]) -> Story:
    """Build a Story from its wire form, validating every field."""
    if not isinstance(payload, dict):
        raise DomainError(f"story must be an object, got {type(payload).__name__}")
    for key in ("id", "headline", "body", "source", "ingested_at"):
        if key not in payload:
            raise DomainError(f"story missing field {key!r}")
    raw_tags = payload.get("tags", [])
    if not isinstance(raw_tags, list):
        raise DomainError("tags must be a list")
    tags = []
    for entry in raw_tags:
        if not isinstance(entry, dict) or "kind" not in entry or "value" not in entry:
            raise DomainError(f"malformed tag entry: {entry!r}")
        try:
            kind = TagKind(entry["kind"])
        except ValueError:
            raise DomainError(f"unknown tag kind: {entry['kind']!r}") from None
        tags.append(Tag(kind, entry["value"]))
    for key in ("id", "headline", "body", "source"):
        if not isinstance(payload[key], str):
            raise DomainError(f"story field {key!r} must be a string")
    if isinstance(payload["ingested_at"], bool) or not isinstance(payload["ingested_at"], int):
        raise DomainError("ingested_at must be an integer")
    return Story(
        id=payload["id"],
        headline=payload["headline"],
        body=payload["body"],
        source=payload["source"],
        ingested_at=payload["ingested_at"],
        tags=frozenset(tags),
    )


def story_json_line(story: Story) -> str:
    """One journal line: the story's wire JSON, compact separators."""
    return json.dumps(story_to_json(story), ensure_ascii=False, separators=(",", ":"))
