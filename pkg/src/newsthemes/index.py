"""Embedded inverted index: tag/keyword postings, time filtering, facet
counts over online-cluster ids, and tiered top-k-by-n retrieval.

Single writer, many readers: `add_story` mutates under a lock, retrieval
runs on immutable snapshots. Faceting surfaces the k largest online
clusters among the matching stories, then each contributes its n most
recent matches.
"""

from __future__ import annotations

import bisect
import threading
from dataclasses import dataclass
from typing import Iterator

from .domain import Story, Tag
from .query import And, KeywordTerm, Not, Or, QueryAst, SearchRequest, TagTerm

__all__ = [
    "IndexError_",
    "DuplicateIdError",
    "MissingClusterError",
    "FacetResult",
    "IndexSnapshot",
    "NewsIndex",
]


class IndexError_(ValueError):
    """Base for index contract violations (named to avoid the builtin)."""


class DuplicateIdError(IndexError_):
    pass


class MissingClusterError(IndexError_):
    """Story reached the index without an online-cluster assignment."""


@dataclass(frozen=True)
class FacetResult:
    """Per-cluster match counts, largest first, ties by cluster id ascending."""

    entries: tuple[tuple[str, int], ...]


def _insort_unique(postings: list[str], story_id: str) -> None:
    pos = bisect.bisect_left(postings, story_id)
    if pos == len(postings) or postings[pos] != story_id:
        postings.insert(pos, story_id)


class IndexSnapshot:
    """Immutable point-in-time view; all retrieval operations live here."""

    def __init__(
        self,
        stories: dict[str, Story],
        keyword_postings: dict[str, tuple[str, ...]],
        tag_postings: dict[Tag, tuple[str, ...]],
        time_index: tuple[str, ...],
        cluster_members: dict[str, tuple[str, ...]],
    ):
        self._stories = stories
        self._keyword_postings = keyword_postings
        self._tag_postings = tag_postings
        self._time_index = time_index
        self._cluster_members = cluster_members

    def __len__(self) -> int:
        return len(self._stories)

    def get(self, story_id: str) -> Story | None:
        return self._stories.get(story_id)

    def stories(self) -> Iterator[Story]:
        return iter(self._stories.values())

    def keyword_posting(self, token_lower: str) -> tuple[str, ...]:
        return self._keyword_postings.get(token_lower, ())

    def tag_posting(self, tag: Tag) -> tuple[str, ...]:
        return self._tag_postings.get(tag, ())

    def _eval(self, ast: QueryAst) -> set[str]:
        # Set algebra over posting lists; cross-checked in tests against the
        # per-story `matches` predicate.
        if isinstance(ast, TagTerm):
            return set(self._tag_postings.get(ast.tag, ()))
        if isinstance(ast, KeywordTerm):
            return set(self._keyword_postings.get(ast.word, ()))
        if isinstance(ast, Not):
            return set(self._stories) - self._eval(ast.child)
        if isinstance(ast, And):
            return self._eval(ast.left) & self._eval(ast.right)
        if isinstance(ast, Or):
            return self._eval(ast.left) | self._eval(ast.right)
        raise TypeError(f"not a query node: {ast!r}")

    def matching_ids(self, request: SearchRequest, now: float) -> set[str]:
        """Ids matching the query whose age at `now` is within the horizon."""
        cutoff = now - request.horizon_seconds
        return {
            sid for sid in self._eval(request.ast) if self._stories[sid].ingested_at >= cutoff
        }

    def facet_top_clusters(self, request: SearchRequest, now: float) -> FacetResult:
        counts: dict[str, int] = {}
        for sid in self.matching_ids(request, now):
            cluster = self._stories[sid].online_cluster
            assert cluster is not None
            counts[cluster] = counts.get(cluster, 0) + 1
        ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return FacetResult(entries=tuple(ranked[: request.k_facets]))

    def retrieve_tiered(
        self, request: SearchRequest, now: float
    ) -> list[tuple[str, list[Story]]]:
        """For each facet cluster, its n_stories most recent matching stories
        (ingested_at descending, ties by id ascending)."""
        matched = self.matching_ids(request, now)
        by_cluster: dict[str, list[Story]] = {}
        for sid in matched:
            story = self._stories[sid]
            assert story.online_cluster is not None
            by_cluster.setdefault(story.online_cluster, []).append(story)
        out: list[tuple[str, list[Story]]] = []
        for cluster_id, _count in self.facet_top_clusters(request, now).entries:
            members = sorted(by_cluster[cluster_id], key=lambda s: (-s.ingested_at, s.id))
            out.append((cluster_id, members[: request.n_stories]))
        return out


class NewsIndex:
    """Mutable index; writes are serialized, reads go through snapshots."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._stories: dict[str, Story] = {}
        self._keyword_postings: dict[str, list[str]] = {}
        self._tag_postings: dict[Tag, list[str]] = {}
        self._time_keys: list[tuple[int, str]] = []
        self._cluster_members: dict[str, list[str]] = {}

    def __len__(self) -> int:
        return len(self._stories)

    def add_story(self, story: Story) -> None:
        if story.online_cluster is None:
            raise MissingClusterError(f"story {story.id!r} has no online cluster")
        with self._lock:
            if story.id in self._stories:
                raise DuplicateIdError(f"story id already indexed: {story.id!r}")
            self._stories[story.id] = story
            for token in {tok.lower for tok in story.tokens()}:
                _insort_unique(self._keyword_postings.setdefault(token, []), story.id)
            for tag in story.tags:
                _insort_unique(self._tag_postings.setdefault(tag, []), story.id)
            bisect.insort(self._time_keys, (story.ingested_at, story.id))
            self._cluster_members.setdefault(story.online_cluster, []).append(story.id)

    def get(self, story_id: str) -> Story | None:
        with self._lock:
            return self._stories.get(story_id)

    def snapshot(self) -> IndexSnapshot:
        with self._lock:
            return IndexSnapshot(
                stories=dict(self._stories),
                keyword_postings={k: tuple(v) for k, v in self._keyword_postings.items()},
                tag_postings={k: tuple(v) for k, v in self._tag_postings.items()},
                time_index=tuple(sid for _, sid in self._time_keys),
                cluster_members={k: tuple(v) for k, v in self._cluster_members.items()},
            )

    # Convenience passthroughs: a fresh snapshot per call keeps live reads
    # equivalent to snapshot reads at the same instant.
    def facet_top_clusters(self, request: SearchRequest, now: float) -> FacetResult:
        return self.snapshot().facet_top_clusters(request, now)

    def retrieve_tiered(self, request: SearchRequest, now: float) -> list[tuple[str, list[Story]]]:
        return self.snapshot().retrieve_tiered(request, now)
