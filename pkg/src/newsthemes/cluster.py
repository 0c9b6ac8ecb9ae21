"""Clustering: online assignment at ingestion, agglomerative merging at
query time.

Online clustering keeps running-mean centroids and joins a story to the
most-similar active cluster when tau clears a threshold. Query-time HAC
uses weighted average linkage over tau: the linkage between two groups is
the weighted mean pairwise tau, maintained exactly via pair-sum updates.
Ties always break toward the smallest member index, so merges are
deterministic.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .domain import DomainError, Story
from .embed import EmbeddingVector, centroid

__all__ = [
    "OnlineClusterState",
    "OnlineClusterer",
    "ThemeCluster",
    "hac",
    "hac_with_trace",
    "hac_k",
    "compose_theme_clusters",
]


@dataclass
class OnlineClusterState:
    id: str
    centroid: EmbeddingVector
    size: int
    last_updated: float


class OnlineClusterer:
    """Single-writer online clustering state.

    Cluster ids are zero-padded so lexicographic order equals creation
    order; "older cluster" tie-breaks reduce to smallest id.
    """

    def __init__(self, theta_online: float = 0.80, window_seconds: float = 7 * 86400):
        if not 0.0 < theta_online <= 1.0:
            raise DomainError(f"theta_online must be in (0,1], got {theta_online}")
        if window_seconds <= 0:
            raise DomainError("window_seconds must be positive")
        self.theta_online = theta_online
        self.window_seconds = window_seconds
        self._clusters: list[OnlineClusterState] = []

    def __len__(self) -> int:
        return len(self._clusters)

    def clusters(self) -> list[OnlineClusterState]:
        return list(self._clusters)

    def assign_online(self, story_embedding: EmbeddingVector, now: float) -> str:
        """Join the best active cluster if its centroid-tau clears the
        threshold, else open a new cluster seeded by this story."""
        best: OnlineClusterState | None = None
        best_tau = -1.0
        vec = story_embedding.values
        for state in self._clusters:
            if now - state.last_updated > self.window_seconds:
                continue
            cos = float(np.dot(state.centroid.values, vec))
            t = min(1.0, max(0.0, 0.5 * (cos + 1.0)))
            if t > best_tau:
                best, best_tau = state, t
        if best is not None and best_tau >= self.theta_online:
            raw = (best.centroid.values * best.size + vec) / (best.size + 1)
            norm = float(np.linalg.norm(raw))
            if norm > 1e-9:
                best.centroid = EmbeddingVector(raw / norm)
            best.size += 1
            best.last_updated = now
            return best.id
        state = OnlineClusterState(
            id=f"oc-{len(self._clusters):08d}",
            centroid=story_embedding,
            size=1,
            last_updated=now,
        )
        self._clusters.append(state)
        return state.id


@dataclass(frozen=True)
class ThemeCluster:
    """One final cluster: the story group behind a theme."""

    members: tuple[Story, ...]
    centroid: EmbeddingVector
    source_histogram: dict[str, int]

    def __post_init__(self) -> None:
        if not self.members:
            raise DomainError("theme cluster must be nonempty")
        ids = [s.id for s in self.members]
        if len(set(ids)) != len(ids):
            raise DomainError("theme cluster members must be unique by id")
        if sum(self.source_histogram.values()) != len(self.members):
            raise DomainError("source histogram must sum to member count")


def _agglomerate(
    vectors: np.ndarray,
    weights: np.ndarray,
    *,
    theta: float | None,
    k_target: int | None,
) -> tuple[list[list[int]], list[tuple[int, int]]]:
    """Shared merge loop. Exactly one of theta / k_target is set.

    Returns (partition, merge trace). Groups live in the slot of their
    smallest member index, so slot pairs double as the tie-break key.
    """
    n = vectors.shape[0]
    sim = np.clip(0.5 * (vectors @ vectors.T + 1.0), 0.0, 1.0)
    # S[i,j] = sum of w_a*w_b*tau(a,b) over cross pairs of groups i,j.
    pair_sums = sim * np.outer(weights, weights)
    group_weight = weights.astype(np.float64).copy()
    alive = np.ones(n, dtype=bool)
    members: list[list[int]] = [[i] for i in range(n)]
    merges: list[tuple[int, int]] = []
    neg_inf = float("-inf")

    while int(alive.sum()) > (k_target if k_target is not None else 1):
        linkage = pair_sums / np.outer(group_weight, group_weight)
        linkage[~alive, :] = neg_inf
        linkage[:, ~alive] = neg_inf
        linkage[np.tril_indices(n)] = neg_inf
        best = float(linkage.max())
        if theta is not None and best < theta:
            break
        tied = np.argwhere(linkage == best)
        a, b = int(tied[0][0]), int(tied[0][1])
        pair_sums[a, :] += pair_sums[b, :]
        pair_sums[:, a] += pair_sums[:, b]
        group_weight[a] += group_weight[b]
        alive[b] = False
        members[a].extend(members[b])
        merges.append((a, b))

    partition = [sorted(members[i]) for i in range(n) if alive[i]]
    return partition, merges


def _validate_items(items: Sequence[tuple[EmbeddingVector, float]]) -> tuple[np.ndarray, np.ndarray]:
    if not items:
        raise DomainError("hac requires at least one item")
    dim = items[0][0].dimension
    for vec, weight in items:
        if vec.dimension != dim:
            raise DomainError("hac items must share a dimension")
        if weight <= 0:
            raise DomainError(f"item weight must be positive, got {weight}")
    vectors = np.stack([vec.values for vec, _ in items])
    weights = np.array([w for _, w in items], dtype=np.float64)
    return vectors, weights


def hac(items: Sequence[tuple[EmbeddingVector, float]], theta_hac: float) -> list[list[int]]:
    """Average-linkage agglomeration over tau; merge while linkage >= theta."""
    return hac_with_trace(items, theta_hac)[0]


def hac_with_trace(
    items: Sequence[tuple[EmbeddingVector, float]], theta_hac: float
) -> tuple[list[list[int]], list[tuple[int, int]]]:
    """hac plus the merge sequence as (group-key, group-key) pairs, where a
    group's key is its smallest member index. Exposed for oracle tests."""
    if not 0.0 < theta_hac <= 1.0:
        raise DomainError(f"theta_hac must be in (0,1], got {theta_hac}")
    vectors, weights = _validate_items(items)
    return _agglomerate(vectors, weights, theta=theta_hac, k_target=None)


def hac_k(items: Sequence[tuple[EmbeddingVector, float]], k_target: int) -> list[list[int]]:
    """Same agglomeration, stopping at exactly min(k_target, |items|) groups."""
    if k_target < 1:
        raise DomainError(f"k_target must be >= 1, got {k_target}")
    vectors, weights = _validate_items(items)
    stop = min(k_target, len(items))
    partition, _ = _agglomerate(vectors, weights, theta=None, k_target=stop)
    return partition


def compose_theme_clusters(
    tiered: Sequence[tuple[str, Sequence[Story]]],
    embedder,
    theta_hac: float,
) -> list[ThemeCluster]:
    """Merge retrieved online clusters into final theme clusters.

    Each online cluster contributes its retrieved-story centroid weighted by
    story count; HAC groups then flatten back into story lists.
    """
    if not tiered:
        return []
    for cluster_id, stories in tiered:
        if not stories:
            raise DomainError(f"online cluster {cluster_id!r} retrieved no stories")
    embeddings: list[list[EmbeddingVector]] = [
        [embedder.embed(s) for s in stories] for _, stories in tiered
    ]
    items = [
        (centroid(embeds), float(len(embeds)))
        for embeds in embeddings
    ]
    out: list[ThemeCluster] = []
    for group in hac(items, theta_hac):
        stories: list[Story] = []
        group_embeds: list[EmbeddingVector] = []
        for idx in group:
            stories.extend(tiered[idx][1])
            group_embeds.extend(embeddings[idx])
        out.append(
            ThemeCluster(
                members=tuple(stories),
                centroid=centroid(group_embeds),
                source_histogram=dict(Counter(s.source for s in stories)),
            )
        )
    return out
