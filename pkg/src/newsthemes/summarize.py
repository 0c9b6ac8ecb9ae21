"""Micro-summary extraction and ranking.

Builds a pool of sub-sentence candidates per cluster via two extraction
routes (verb-anchored tuples, deletion-based compression), scores them with a
linear ranker over hand-countable features, and picks one summary of at most
50 characters.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter, deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator, Sequence

from .cluster import ThemeCluster
from .domain import Story, TokenSeq, normalize_text, render_tokens, tokenize
from .verbs import VERB_LEXICON

MAX_SUMMARY_CHARS = 50
MAX_COMPRESSION_VARIANTS = 64
MAX_RIGHT_EXPANSION = 6


class NoCandidatesError(ValueError):
    """Raised when a cluster yields no candidate that survives the gates."""


class NoTrainingSignalError(ValueError):
    """Raised when labeled data contains no pair of differing grades."""


class LabelFormatError(ValueError):
    """Raised on malformed labeled-candidate lines."""


class ModelFormatError(ValueError):
    """Raised on malformed ranker model files."""


class Method(str, Enum):
    TUPLE = "tuple"
    COMPRESSION = "compression"


class Grade(str, Enum):
    GREAT = "Great"
    ACCEPTABLE = "Acceptable"
    TERRIBLE = "Terrible"


_GRADE_RANK = {Grade.TERRIBLE: 0, Grade.ACCEPTABLE: 1, Grade.GREAT: 2}

FEATURE_NAMES = (
    "length_chars",
    "token_count",
    "has_finite_verb",
    "starts_capitalized",
    "svo_complete",
    "salience",
    "from_headline",
    "method_is_tuple",
)


@dataclass(frozen=True)
class FeatureVector:
    length_chars: float
    token_count: float
    has_finite_verb: float
    starts_capitalized: float
    svo_complete: float
    salience: float
    from_headline: float
    method_is_tuple: float

    def __post_init__(self) -> None:
        for name in FEATURE_NAMES:
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"feature {name} is not finite: {value!r}")
        if self.salience < 0:
            raise ValueError(f"salience must be >= 0, got {self.salience!r}")

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in FEATURE_NAMES)

    def to_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in FEATURE_NAMES}

    @classmethod
    def from_dict(cls, raw: dict) -> "FeatureVector":
        if set(raw) != set(FEATURE_NAMES):
            raise ValueError(f"feature keys mismatch: {sorted(raw)}")
        values = {}
        for name in FEATURE_NAMES:
            value = raw[name]
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"feature {name} must be a number")
            values[name] = float(value)
        return cls(**values)


@dataclass(frozen=True)
class CandidateLabel:
    grade: Grade
    annotator: str

    def __post_init__(self) -> None:
        if not isinstance(self.grade, Grade):
            raise ValueError(f"unknown grade: {self.grade!r}")
        if not self.annotator:
            raise ValueError("annotator must be nonempty")


@dataclass(frozen=True)
class SummaryCandidate:
    text: str
    method: Method
    source_story: str
    source_sentence_index: int
    features: FeatureVector

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("candidate text must be nonempty")
        if len(self.text) > MAX_SUMMARY_CHARS:
            raise ValueError(f"candidate text exceeds {MAX_SUMMARY_CHARS} chars")


@dataclass(frozen=True)
class RankerModel:
    weights: tuple[float, ...]
    bias: float

    def __post_init__(self) -> None:
        if len(self.weights) != len(FEATURE_NAMES):
            raise ValueError(
                f"expected {len(FEATURE_NAMES)} weights, got {len(self.weights)}"
            )
        for w in self.weights:
            if not math.isfinite(w):
                raise ValueError(f"weight is not finite: {w!r}")
        if not math.isfinite(self.bias):
            raise ValueError(f"bias is not finite: {self.bias!r}")


def default_model() -> RankerModel:
    # Linear form of "-0.02 per char over 30": -0.02 * length + 0.6 bias.
    # Below 30 chars this hands out a small bonus instead of zero penalty;
    # argmax behavior is what matters and short-text ties already win.
    return RankerModel(
        weights=(-0.02, 0.0, 1.5, 0.0, 2.0, 1.0, 0.5, 0.0),
        bias=0.6,
    )


# --- sentence splitting ---

_ABBREVIATIONS = frozenset(
    """
    mr. mrs. ms. dr. prof. gen. gov. sen. rep. col. capt. lt. sgt. st. mt.
    no. nos. vs. etc. inc. corp. co. ltd. jr. sr. fig. dept. est. approx.
    jan. feb. mar. apr. jun. jul. aug. sep. sept. oct. nov. dec. mon. tue.
    wed. thu. fri. sat. sun.
    """.split()
)

_ACRONYM_RE = re.compile(r"^(?:[^\W\d_]\.){2,}$")
_INITIAL_RE = re.compile(r"^[^\W\d_]\.$")


def _guarded_word(text: str, end: int) -> bool:
    """True when the word ending at text[end] must not end a sentence."""
    start = end
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    word = text[start : end + 1]
    if _ACRONYM_RE.match(word) or _INITIAL_RE.match(word):
        return True
    return word.lower() in _ABBREVIATIONS


def split_sentences(text: str) -> list[TokenSeq]:
    """Split normalized text into sentences, returned as token sequences.

    A boundary is one or more of ``. ! ?`` followed by whitespace and an
    uppercase letter. Abbreviations ("Mr.", "Inc."), acronyms ("U.K."), and
    single initials do not end a sentence.
    """
    pieces: list[str] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] not in ".!?":
            i += 1
            continue
        j = i
        while j + 1 < n and text[j + 1] in ".!?":
            j += 1
        k = j + 1
        while k < n and text[k].isspace():
            k += 1
        boundary = k > j + 1 and k < n and text[k].isupper()
        if boundary and i == j and text[i] == ".":
            boundary = not _guarded_word(text, j)
        if boundary:
            pieces.append(text[start : j + 1])
            start = k
            i = k
        else:
            i = j + 1
    tail = text[start:]
    if tail.strip():
        pieces.append(tail)
    sentences = []
    for piece in pieces:
        tokens = tokenize(piece)
        if tokens:
            sentences.append(tokens)
    return sentences


# --- verb detection ---


def _base_candidates(lower: str) -> Iterator[str]:
    yield lower
    if lower.endswith("ies") and len(lower) > 4:
        yield lower[:-3] + "y"
    if lower.endswith("es") and len(lower) > 3:
        yield lower[:-2]
    if lower.endswith("s") and len(lower) > 2:
        yield lower[:-1]
    if lower.endswith("ied") and len(lower) > 4:
        yield lower[:-3] + "y"
    if lower.endswith("ed") and len(lower) > 3:
        yield lower[:-2]
        yield lower[:-1]
        if len(lower) > 4 and lower[-3] == lower[-4]:
            yield lower[:-3]
    if lower.endswith("ing") and len(lower) > 4:
        stem = lower[:-3]
        yield stem
        yield stem + "e"
        if len(stem) > 2 and stem[-1] == stem[-2]:
            yield stem[:-1]


def is_finite_verb(lower: str, lexicon: frozenset[str] = VERB_LEXICON) -> bool:
    return any(base in lexicon for base in _base_candidates(lower))


# --- tuple extraction ---

_FUNCTION_WORDS = frozenset(
    """
    a an the this that these those my your his her its our their
    of in on at by for with from to into onto over under about against
    between during without within through across after before since until
    and but or nor so yet if because while when where as than
    i you he she it we they who whom whose which what
    not no also still just only both each few more most other some such
    own same too very there here then now however
    """.split()
)

_CLAUSE_BOUNDARY = frozenset(
    """
    and but or nor which who whom whose that because after while when
    where as although though since unless until if
    """.split()
)

_SUBORDINATE_STARTS = frozenset("which who after because as while".split())


def _has_alnum(surface: str) -> bool:
    return any(ch.isalnum() for ch in surface)


def _trim_edges(tokens: TokenSeq) -> TokenSeq:
    lo, hi = 0, len(tokens)
    while lo < hi and not _has_alnum(tokens[lo].surface):
        lo += 1
    while hi > lo and not _has_alnum(tokens[hi - 1].surface):
        hi -= 1
    return tokens[lo:hi]


def _render_gate(tokens: TokenSeq) -> str | None:
    """Trim edge punctuation tokens, render, and apply the length cap."""
    trimmed = _trim_edges(tokens)
    if not trimmed:
        return None
    text = render_tokens(trimmed)
    if len(text) > MAX_SUMMARY_CHARS:
        return None
    return text


def _is_nounish(token, lexicon: frozenset[str]) -> bool:
    if not _has_alnum(token.surface):
        return False
    if token.lower in _FUNCTION_WORDS:
        return False
    return not is_finite_verb(token.lower, lexicon)


def extract_tuples(
    sentence: TokenSeq, lexicon: frozenset[str] = VERB_LEXICON
) -> list[str]:
    """Emit who-does-what spans anchored at each finite verb.

    For a verb v the subject is the longest noun-ish run directly left of v;
    the right side extends token by token (each prefix is its own candidate)
    until a clause boundary, capped at 6 tokens. Verbs with no subject span
    emit nothing; candidates over the length cap are dropped.
    """
    out: list[str] = []
    for i, token in enumerate(sentence):
        if not is_finite_verb(token.lower, lexicon):
            continue
        lo = i
        while lo > 0 and _is_nounish(sentence[lo - 1], lexicon):
            lo -= 1
        if lo == i:
            continue
        stem = sentence[lo : i + 1]
        right: list = []
        for follower in sentence[i + 1 :]:
            if not _has_alnum(follower.surface) or follower.lower in _CLAUSE_BOUNDARY:
                break
            right.append(follower)
            if len(right) == MAX_RIGHT_EXPANSION:
                break
        if not right:
            text = _render_gate(stem)
            if text is not None:
                out.append(text)
            continue
        for j in range(1, len(right) + 1):
            text = _render_gate(stem + tuple(right[:j]))
            if text is not None:
                out.append(text)
    return out


# --- compression ---


def _deletions(tokens: TokenSeq) -> Iterator[TokenSeq]:
    # (a) parenthesized spans
    for i, token in enumerate(tokens):
        if token.surface == "(":
            for j in range(i + 1, len(tokens)):
                if tokens[j].surface == ")":
                    yield tokens[:i] + tokens[j + 1 :]
                    break
    commas = [i for i, token in enumerate(tokens) if token.surface == ","]
    # (b) appositive between consecutive commas, both commas removed
    for a, b in zip(commas, commas[1:]):
        yield tokens[:a] + tokens[b + 1 :]
    # (c) trailing attribution after the last comma
    if commas:
        tail = tokens[commas[-1] + 1 :]
        if tail and (
            tail[0].lower in ("according", "said")
            or (len(tail) >= 2 and tail[0].lower == "sources" and tail[1].lower == "say")
        ):
            yield tokens[: commas[-1]]
    # (d) leading adverbial through the first comma
    if commas:
        yield tokens[commas[0] + 1 :]
    # (e) trailing subordinate clause
    for i in range(len(tokens) - 1, 0, -1):
        if tokens[i].lower in _SUBORDINATE_STARTS:
            yield tokens[:i]
            break


def compress_sentence(sentence: TokenSeq) -> list[str]:
    """Deletion-closure compression; the unmodified sentence counts too.

    Breadth-first over the deletion rules, capped at 64 distinct variants.
    Each variant that renders within the length cap becomes a candidate.
    """
    variants: list[TokenSeq] = [sentence]
    seen = {sentence}
    queue = deque([sentence])
    while queue and len(variants) < MAX_COMPRESSION_VARIANTS:
        current = queue.popleft()
        for variant in _deletions(current):
            if not variant or variant in seen:
                continue
            seen.add(variant)
            variants.append(variant)
            queue.append(variant)
            if len(variants) == MAX_COMPRESSION_VARIANTS:
                break
    out: list[str] = []
    for variant in variants:
        text = _render_gate(variant)
        if text is not None:
            out.append(text)
    return out


# --- features and pool ---


def cluster_salience(stories: Sequence[Story]) -> Callable[[TokenSeq], float]:
    """TF-IDF scorer relative to a cluster, document = story.

    tf = log1p(occurrences across the cluster); idf = ln((1+N)/(1+df)) + 1.
    Returns the mean over a candidate's content tokens, 0 when there are none.
    """
    counts: Counter = Counter()
    df: Counter = Counter()
    for story in stories:
        lowers = [t.lower for t in story.tokens() if _has_alnum(t.lower)]
        counts.update(lowers)
        df.update(set(lowers))
    n = len(stories)

    def salience(tokens: TokenSeq) -> float:
        values = []
        for token in tokens:
            if not _has_alnum(token.surface):
                continue
            tf = math.log1p(counts[token.lower])
            idf = math.log((1 + n) / (1 + df[token.lower])) + 1.0
            values.append(tf * idf)
        if not values:
            return 0.0
        return sum(values) / len(values)

    return salience


def compute_features(
    text: str,
    method: Method,
    from_headline: bool,
    salience: Callable[[TokenSeq], float],
    lexicon: frozenset[str] = VERB_LEXICON,
) -> FeatureVector:
    tokens = tokenize(text)
    verb_positions = [
        i for i, t in enumerate(tokens) if is_finite_verb(t.lower, lexicon)
    ]
    svo = 0.0
    for i in verb_positions:
        before = any(_has_alnum(t.surface) for t in tokens[:i])
        after = any(_has_alnum(t.surface) for t in tokens[i + 1 :])
        if before and after:
            svo = 1.0
            break
    return FeatureVector(
        length_chars=float(len(text)),
        token_count=float(len(tokens)),
        has_finite_verb=1.0 if verb_positions else 0.0,
        starts_capitalized=1.0 if text[:1].isupper() else 0.0,
        svo_complete=svo,
        salience=salience(tokens),
        from_headline=1.0 if from_headline else 0.0,
        method_is_tuple=1.0 if method is Method.TUPLE else 0.0,
    )


def build_pool(
    cluster: ThemeCluster,
    methods: Iterable[Method] = (Method.TUPLE, Method.COMPRESSION),
    max_body_sentences: int = 3,
    lexicon: frozenset[str] = VERB_LEXICON,
) -> list[SummaryCandidate]:
    """Candidate pool for one cluster, deduplicated case-insensitively.

    Headline sentences come first, then up to max_body_sentences body
    sentences per story; per sentence the tuple route runs before the
    compression route. First occurrence wins on dedup.
    """
    method_set = set(methods)
    salience = cluster_salience(cluster.members)
    pool: list[SummaryCandidate] = []
    seen: set[str] = set()
    for story in cluster.members:
        sentences: list[tuple[TokenSeq, bool]] = []
        for sent in split_sentences(normalize_text(story.headline)):
            sentences.append((sent, True))
        for sent in split_sentences(normalize_text(story.body))[:max_body_sentences]:
            sentences.append((sent, False))
        for index, (sent, from_headline) in enumerate(sentences):
            emitted: list[tuple[str, Method]] = []
            if Method.TUPLE in method_set:
                emitted.extend(
                    (text, Method.TUPLE) for text in extract_tuples(sent, lexicon)
                )
            if Method.COMPRESSION in method_set:
                emitted.extend(
                    (text, Method.COMPRESSION) for text in compress_sentence(sent)
                )
            for text, method in emitted:
                key = text.casefold()
                if key in seen:
                    continue
                seen.add(key)
                pool.append(
                    SummaryCandidate(
                        text=text,
                        method=method,
                        source_story=story.id,
                        source_sentence_index=index,
                        features=compute_features(
                            text, method, from_headline, salience, lexicon
                        ),
                    )
                )
    if not pool:
        raise NoCandidatesError("no summary candidates survived the gates")
    return pool


# --- scoring and selection ---


def score_features(model: RankerModel, features: FeatureVector) -> float:
    total = model.bias
    for w, x in zip(model.weights, features.as_tuple()):
        total += w * x
    return total


def score(model: RankerModel, candidate: SummaryCandidate) -> float:
    return score_features(model, candidate.features)


def select_summary(
    model: RankerModel, pool: Sequence[SummaryCandidate]
) -> SummaryCandidate:
    if not pool:
        raise NoCandidatesError("empty candidate pool")
    return min(pool, key=lambda c: (-score(model, c), len(c.text), c.text))


# --- training ---


def train_ranker(
    labeled: Sequence[tuple[FeatureVector, CandidateLabel]],
    epochs: int = 25,
    margin: float = 1.0,
    learning_rate: float = 0.1,
) -> RankerModel:
    """Pairwise margin perceptron over grade comparisons.

    For every ordered pair where the first grade outranks the second, nudge
    the weights whenever the margin is violated. Bias stays zero; it cancels
    in every pairwise difference.
    """
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")
    if margin < 0:
        raise ValueError(f"margin must be >= 0, got {margin}")
    ranks = [_GRADE_RANK[label.grade] for _, label in labeled]
    if len(set(ranks)) < 2:
        raise NoTrainingSignalError("all labels share one grade")
    features = [fv.as_tuple() for fv, _ in labeled]
    dim = len(FEATURE_NAMES)
    weights = [0.0] * dim
    for _ in range(epochs):
        for i in range(len(labeled)):
            for j in range(len(labeled)):
                if ranks[i] <= ranks[j]:
                    continue
                gap = sum(
                    w * (a - b) for w, a, b in zip(weights, features[i], features[j])
                )
                if gap < margin:
                    for d in range(dim):
                        weights[d] += learning_rate * (features[i][d] - features[j][d])
    return RankerModel(weights=tuple(weights), bias=0.0)


def pairwise_accuracy(
    model: RankerModel,
    labeled: Sequence[tuple[FeatureVector, CandidateLabel]],
) -> float:
    correct = 0
    total = 0
    scores = [score_features(model, fv) for fv, _ in labeled]
    ranks = [_GRADE_RANK[label.grade] for _, label in labeled]
    for i in range(len(labeled)):
        for j in range(i + 1, len(labeled)):
            if ranks[i] == ranks[j]:
                continue
            total += 1
            better, worse = (i, j) if ranks[i] > ranks[j] else (j, i)
            if scores[better] > scores[worse]:
                correct += 1
    if total == 0:
        raise NoTrainingSignalError("no pair of differing grades")
    return correct / total


# --- persistence ---


def save_model(model: RankerModel, path: str) -> None:
    payload = {"weights": list(model.weights), "bias": model.bias}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, separators=(",", ":"), ensure_ascii=False)
        fh.write("\n")


def load_model(path: str) -> RankerModel:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"invalid model JSON: {exc}") from exc
    if not isinstance(raw, dict) or set(raw) != {"weights", "bias"}:
        raise ModelFormatError("model file must be {\"weights\":[...],\"bias\":x}")
    weights = raw["weights"]
    bias = raw["bias"]
    if not isinstance(weights, list) or not all(
        isinstance(w, (int, float)) and not isinstance(w, bool) for w in weights
    ):
        raise ModelFormatError("weights must be a list of numbers")
    if isinstance(bias, bool) or not isinstance(bias, (int, float)):
        raise ModelFormatError("bias must be a number")
    try:
        return RankerModel(weights=tuple(float(w) for w in weights), bias=float(bias))
    except ValueError as exc:
        raise ModelFormatError(str(exc)) from exc


def load_labels(path: str) -> list[tuple[FeatureVector, CandidateLabel]]:
    out: list[tuple[FeatureVector, CandidateLabel]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise LabelFormatError(f"line {lineno}: invalid JSON: {exc}") from exc
            if not isinstance(raw, dict) or set(raw) != {
                "features",
                "grade",
                "annotator",
            }:
                raise LabelFormatError(
                    f"line {lineno}: expected features/grade/annotator keys"
                )
            try:
                features = FeatureVector.from_dict(raw["features"])
            except (TypeError, ValueError) as exc:
                raise LabelFormatError(f"line {lineno}: {exc}") from exc
            try:
                grade = Grade(raw["grade"])
            except ValueError as exc:
                raise LabelFormatError(
                    f"line {lineno}: unknown grade {raw['grade']!r}"
                ) from exc
            annotator = raw["annotator"]
            if not isinstance(annotator, str) or not annotator:
                raise LabelFormatError(f"line {lineno}: annotator must be nonempty")
            out.append((features, CandidateLabel(grade=grade, annotator=annotator)))
    return out


def label_distribution(
    labeled: Sequence[tuple[FeatureVector, CandidateLabel]],
) -> dict[Grade, float]:
    counts = Counter(label.grade for _, label in labeled)
    total = len(labeled)
    return {
        grade: (counts[grade] / total if total else 0.0)
        for grade in (Grade.GREAT, Grade.ACCEPTABLE, Grade.TERRIBLE)
    }


def annotation_conflicts(
    labeled: Sequence[tuple[FeatureVector, CandidateLabel]],
) -> tuple[int, int]:
    """(multi-annotated groups, conflicting groups) keyed by identical features."""
    groups: dict[tuple[float, ...], list[CandidateLabel]] = {}
    for fv, label in labeled:
        groups.setdefault(fv.as_tuple(), []).append(label)
    multi = 0
    conflicts = 0
    for labels in groups.values():
        if len({label.annotator for label in labels}) < 2:
            continue
        multi += 1
        if len({label.grade for label in labels}) > 1:
            conflicts += 1
    return multi, conflicts
