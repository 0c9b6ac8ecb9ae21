"""Theme assembly: summaries, key stories, and entropy-aware ranking."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cluster import ThemeCluster, hac_k
from .domain import DomainError, Story
from .embed import Embedder, tau
from .summarize import (
    MAX_SUMMARY_CHARS,
    Method,
    NoCandidatesError,
    RankerModel,
    build_pool,
    select_summary,
)


@dataclass(frozen=True)
class Theme:
    cluster: ThemeCluster
    summary: str
    key_stories: tuple[Story, ...]
    score: float

    def __post_init__(self) -> None:
        if not self.summary:
            raise DomainError("theme summary must be nonempty")
        if len(self.summary) > MAX_SUMMARY_CHARS:
            raise DomainError(f"theme summary exceeds {MAX_SUMMARY_CHARS} chars")
        ids = [s.id for s in self.key_stories]
        if len(set(ids)) != len(ids):
            raise DomainError("key stories must be unique")
        member_ids = {s.id for s in self.cluster.members}
        if not set(ids) <= member_ids:
            raise DomainError("key stories must belong to the cluster")
        if not self.score >= 0:
            raise DomainError(f"theme score must be >= 0, got {self.score}")


def _recency(theme: Theme) -> int:
    return max(s.ingested_at for s in theme.cluster.members)


@dataclass(frozen=True)
class Overview:
    themes: tuple[Theme, ...]
    query_canonical: str
    horizon_seconds: int
    composed_at: int

    def __post_init__(self) -> None:
        for prev, cur in zip(self.themes, self.themes[1:]):
            if (-prev.score, -_recency(prev)) > (-cur.score, -_recency(cur)):
                raise DomainError("themes must be ordered by score, then recency")

    def to_json_dict(self) -> dict:
        return {
            "query": self.query_canonical,
            "horizon_seconds": self.horizon_seconds,
            "composed_at": self.composed_at,
            "themes": [
                {
                    "summary": theme.summary,
                    "score": theme.score,
                    "size": len(theme.cluster.members),
                    "key_stories": [
                        {
                            "id": s.id,
                            "headline": s.headline,
                            "source": s.source,
                            "ingested_at": s.ingested_at,
                        }
                        for s in theme.key_stories
                    ],
                }
                for theme in self.themes
            ],
        }


def overview_json(overview: Overview) -> str:
    return json.dumps(
        overview.to_json_dict(), separators=(",", ":"), ensure_ascii=False
    )


def select_key_stories(
    cluster: ThemeCluster, embedder: Embedder, p_subclusters: int = 3
) -> list[Story]:
    """One medoid per sub-cluster, largest and freshest sub-clusters first."""
    if p_subclusters < 1:
        raise DomainError(f"p_subclusters must be >= 1, got {p_subclusters}")
    members = cluster.members
    embeds = [embedder.embed(s) for s in members]
    groups = hac_k([(e, 1.0) for e in embeds], p_subclusters)
    chosen: list[tuple[int, Story]] = []
    for group in groups:
        if len(group) == 1:
            pick = group[0]
        else:

            def mean_tau(i: int) -> float:
                total = sum(tau(embeds[i], embeds[j]) for j in group if j != i)
                return total / (len(group) - 1)

            pick = min(group, key=lambda i: (-mean_tau(i), members[i].id))
        chosen.append((len(group), members[pick]))
    chosen.sort(key=lambda pair: (-pair[0], -pair[1].ingested_at, pair[1].id))
    return [story for _, story in chosen]


def source_entropy(cluster: ThemeCluster) -> float:
    """Shannon entropy (natural log) of the cluster's source distribution."""
    total = len(cluster.members)
    h = 0.0
    for _, count in sorted(cluster.source_histogram.items()):
        p = count / total
        h -= p * math.log(p)
    return h


def theme_score(cluster: ThemeCluster) -> float:
    """size * (1 + normalized entropy); ranges over [size, 2*size]."""
    m = len(cluster.source_histogram)
    if m >= 2:
        h_norm = source_entropy(cluster) / math.log(m)
    else:
        h_norm = 0.0
    return len(cluster.members) * (1.0 + h_norm)


def assemble_overview(
    clusters: Sequence[ThemeCluster],
    embedder: Embedder,
    ranker: RankerModel,
    *,
    query_canonical: str,
    horizon_seconds: int,
    composed_at: int,
    max_themes: int = 5,
    p_subclusters: int = 3,
    methods: Iterable[Method] = (Method.TUPLE, Method.COMPRESSION),
    max_body_sentences: int = 3,
) -> Overview:
    """Summarize, pick key stories, score, sort, truncate.

    Clusters with no surviving summary candidate are dropped. Ordering is
    score desc, then max ingested_at desc, then min story id for stability.
    """
    if max_themes < 1:
        raise DomainError(f"max_themes must be >= 1, got {max_themes}")
    methods = tuple(methods)
    built: list[Theme] = []
    for cluster in clusters:
        try:
            pool = build_pool(
                cluster, methods=methods, max_body_sentences=max_body_sentences
            )
        except NoCandidatesError:
            continue
        built.append(
            Theme(
                cluster=cluster,
                summary=select_summary(ranker, pool).text,
                key_stories=tuple(
                    select_key_stories(cluster, embedder, p_subclusters)
                ),
                score=theme_score(cluster),
            )
        )
    built.sort(
        key=lambda t: (
            -t.score,
            -_recency(t),
            min(s.id for s in t.cluster.members),
        )
    )
    return Overview(
        themes=tuple(built[:max_themes]),
        query_canonical=query_canonical,
        horizon_seconds=horizon_seconds,
        composed_at=composed_at,
    )
