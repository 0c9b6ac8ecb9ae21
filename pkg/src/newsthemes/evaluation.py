"""ROUGE metrics and the single-story summarization comparison harness."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Sequence

from .cluster import ThemeCluster
from .domain import DomainError, Story, normalize_text, story_from_json, tokenize
from .embed import Embedder, EmptyDocumentError
from .summarize import (
    Method,
    NoCandidatesError,
    RankerModel,
    SummaryCandidate,
    build_pool,
    default_model,
    score,
)

METRICS = ("rouge_1", "rouge_2", "rouge_3", "rouge_4", "rouge_l")

_METHOD_SETS = {
    "tuple": (Method.TUPLE,),
    "compression": (Method.COMPRESSION,),
    "both": (Method.TUPLE, Method.COMPRESSION),
}


class SdsFormatError(ValueError):
    pass


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float


def _make_score(precision: float, recall: float) -> RougeScore:
    if precision + recall > 0:
        f1 = 2 * precision * recall / (precision + recall)
    else:
        f1 = 0.0
    return RougeScore(precision=precision, recall=recall, f1=f1)


def _lowers(tokens: Sequence) -> list[str]:
    out: list[str] = []
    for t in tokens:
        if isinstance(t, str):
            out.append(t.lower())
        else:
            out.append(t.lower)
    return out


def rouge_n(candidate: Sequence, reference: Sequence, n: int) -> RougeScore:
    """Clipped n-gram overlap on lowercased tokens."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    cand = _lowers(candidate)
    ref = _lowers(reference)
    cand_grams = Counter(
        tuple(cand[i : i + n]) for i in range(len(cand) - n + 1)
    )
    ref_grams = Counter(tuple(ref[i : i + n]) for i in range(len(ref) - n + 1))
    match = sum(min(count, ref_grams[gram]) for gram, count in cand_grams.items())
    cand_total = sum(cand_grams.values())
    ref_total = sum(ref_grams.values())
    precision = match / cand_total if cand_total else 0.0
    recall = match / ref_total if ref_total else 0.0
    return _make_score(precision, recall)


def _lcs_length(a: list[str], b: list[str]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(max(cur[j - 1], prev[j]))
        prev = cur
    return prev[len(b)]


def rouge_l(candidate: Sequence, reference: Sequence) -> RougeScore:
    """LCS-based score on lowercased tokens."""
    cand = _lowers(candidate)
    ref = _lowers(reference)
    lcs = _lcs_length(cand, ref)
    precision = lcs / len(cand) if cand else 0.0
    recall = lcs / len(ref) if ref else 0.0
    return _make_score(precision, recall)


@dataclass(frozen=True)
class SdsCase:
    story: Story
    reference_summary: str

    def __post_init__(self) -> None:
        if not self.reference_summary:
            raise DomainError("reference summary must be nonempty")


@dataclass(frozen=True)
class SdsReport:
    method: str
    cases: int
    empty_pool: int
    mean_f1: dict[str, float]


def load_sds_cases(path: str) -> list[SdsCase]:
    out: list[SdsCase] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SdsFormatError(f"line {lineno}: invalid JSON: {exc}") from exc
            if not isinstance(raw, dict) or set(raw) != {"story", "reference_summary"}:
                raise SdsFormatError(
                    f"line {lineno}: expected story/reference_summary keys"
                )
            try:
                story = story_from_json(raw["story"])
                case = SdsCase(
                    story=story, reference_summary=raw["reference_summary"]
                )
            except (DomainError, TypeError) as exc:
                raise SdsFormatError(f"line {lineno}: {exc}") from exc
            out.append(case)
    return out


def _oracle_select(
    pool: Sequence[SummaryCandidate], ref_tokens: Sequence
) -> SummaryCandidate:
    def key(c: SummaryCandidate):
        f1 = rouge_l(tokenize(c.text), ref_tokens).f1
        return (-f1, len(c.text), c.text)

    return min(pool, key=key)


def run_sds(
    cases: Sequence[SdsCase],
    method: str,
    embedder: Embedder,
    *,
    ranker: RankerModel | None = None,
    oracle: bool = False,
    max_body_sentences: int = 3,
    summarize_fn: Callable[[SdsCase], str] | None = None,
) -> SdsReport:
    """Score one pool method over single-story cases, macro-averaged F1.

    With oracle=True the selector picks the candidate with the best ROUGE-L
    against the reference (ceiling analysis of the pool). summarize_fn, when
    given, replaces the whole pipeline; tests use it for identity summaries.
    Cases with an empty pool score 0 on all metrics and are counted.
    """
    if not cases:
        raise DomainError("run_sds requires at least one case")
    if method not in _METHOD_SETS:
        raise DomainError(f"unknown method: {method!r}")
    if ranker is None:
        ranker = default_model()
    methods = _METHOD_SETS[method]
    totals = {metric: 0.0 for metric in METRICS}
    empty = 0
    for case in cases:
        ref_tokens = tokenize(normalize_text(case.reference_summary))
        try:
            if summarize_fn is not None:
                summary = summarize_fn(case)
            else:
                cluster = ThemeCluster(
                    members=(case.story,),
                    centroid=embedder.embed(case.story),
                    source_histogram={case.story.source: 1},
                )
                pool = build_pool(
                    cluster, methods=methods, max_body_sentences=max_body_sentences
                )
                if oracle:
                    summary = _oracle_select(pool, ref_tokens).text
                else:
                    summary = min(
                        pool, key=lambda c: (-score(ranker, c), len(c.text), c.text)
                    ).text
        except (NoCandidatesError, EmptyDocumentError):
            empty += 1
            continue
        cand_tokens = tokenize(normalize_text(summary))
        for n in range(1, 5):
            totals[f"rouge_{n}"] += rouge_n(cand_tokens, ref_tokens, n).f1
        totals["rouge_l"] += rouge_l(cand_tokens, ref_tokens).f1
    mean = {metric: totals[metric] / len(cases) for metric in METRICS}
    return SdsReport(
        method=method, cases=len(cases), empty_pool=empty, mean_f1=mean
    )


def format_sds_table(reports: Sequence[SdsReport]) -> str:
    header = ["method", "cases", "empty_pool", *METRICS]
    rows = [
        [
            report.method,
            str(report.cases),
            str(report.empty_pool),
            *(f"{report.mean_f1[m]:.4f}" for m in METRICS),
        ]
        for report in reports
    ]
    widths = [
        max(len(header[i]), *(len(row[i]) for row in rows)) if rows else len(header[i])
        for i in range(len(header))
    ]
    lines = []
    for row in [header, *rows]:
        cells = [row[0].ljust(widths[0])]
        cells.extend(row[i].rjust(widths[i]) for i in range(1, len(row)))
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)


def sds_reports_json(reports: Sequence[SdsReport]) -> str:
    payload = [
        {
            "method": report.method,
            "cases": report.cases,
            "empty_pool": report.empty_pool,
            "mean_f1": {metric: report.mean_f1[metric] for metric in METRICS},
        }
        for report in reports
    ]
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False)
