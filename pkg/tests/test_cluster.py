from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newsthemes.domain import DomainError, Story
from newsthemes.cluster import (
    OnlineClusterer,
    ThemeCluster,
    compose_theme_clusters,
    hac,
    hac_k,
    hac_with_trace,
)
from newsthemes.embed import EmbeddingVector

from .oracles import hac_oracle


def basis(i: int, dim: int = 4) -> EmbeddingVector:
    values = np.zeros(dim)
    values[i] = 1.0
    return EmbeddingVector(values)


def random_unit_vectors(seed: int, count: int, dim: int = 6) -> list[EmbeddingVector]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        raw = rng.normal(size=dim)
        out.append(EmbeddingVector(raw / np.linalg.norm(raw)))
    return out


def test_first_story_opens_cluster():
    clusterer = OnlineClusterer()
    assert clusterer.assign_online(basis(0), now=100) == "oc-00000000"
    assert len(clusterer) == 1
    assert clusterer.clusters()[0].size == 1


def test_identical_story_joins():
    clusterer = OnlineClusterer()
    first = clusterer.assign_online(basis(0), now=100)
    second = clusterer.assign_online(basis(0), now=101)
    assert first == second
    assert len(clusterer) == 1
    assert clusterer.clusters()[0].size == 2
    assert clusterer.clusters()[0].last_updated == 101


def test_orthogonal_story_opens_new_cluster():
    clusterer = OnlineClusterer(theta_online=0.8)
    clusterer.assign_online(basis(0), now=100)
    assigned = clusterer.assign_online(basis(1), now=101)
    assert assigned == "oc-00000001"
    assert len(clusterer) == 2


def test_stale_cluster_not_a_join_candidate():
    clusterer = OnlineClusterer(window_seconds=100)
    clusterer.assign_online(basis(0), now=100)
    assigned = clusterer.assign_online(basis(0), now=201)
    assert assigned == "oc-00000001"


def test_window_boundary_still_active():
    clusterer = OnlineClusterer(window_seconds=100)
    clusterer.assign_online(basis(0), now=100)
    assert clusterer.assign_online(basis(0), now=200) == "oc-00000000"


def test_tie_goes_to_older_cluster():
    clusterer = OnlineClusterer(theta_online=0.6)
    clusterer.assign_online(basis(0), now=100)
    clusterer.assign_online(basis(1), now=100)
    # equidistant from both centroids; strict > keeps the first (older) one
    mid = EmbeddingVector(np.array([1.0, 1.0, 0.0, 0.0]) / np.sqrt(2.0))
    assert clusterer.assign_online(mid, now=101) == "oc-00000000"


def test_centroid_is_renormalized_running_mean():
    clusterer = OnlineClusterer(theta_online=0.5)
    clusterer.assign_online(basis(0), now=100)
    clusterer.assign_online(EmbeddingVector(np.array([0.6, 0.8, 0.0, 0.0])), now=101)
    state = clusterer.clusters()[0]
    expected = np.array([1.6, 0.8, 0.0, 0.0]) / 2.0
    expected /= np.linalg.norm(expected)
    assert np.allclose(state.centroid.values, expected)
    assert abs(np.linalg.norm(state.centroid.values) - 1.0) <= 1e-9


def test_replaying_stream_reproduces_assignments():
    vectors = random_unit_vectors(11, 30)
    runs = []
    for _ in range(2):
        clusterer = OnlineClusterer()
        runs.append([clusterer.assign_online(v, now=i) for i, v in enumerate(vectors, 1)])
    assert runs[0] == runs[1]


def test_hac_singleton():
    assert hac([(basis(0), 1.0)], 0.75) == [[0]]


def test_hac_merges_identical_pair():
    assert hac([(basis(0), 1.0), (basis(0), 1.0)], 0.9) == [[0, 1]]


def test_hac_three_items_planted_split():
    items = [(basis(0), 1.0), (basis(0), 1.0), (basis(1), 1.0)]
    assert hac(items, 0.8) == [[0, 1], [2]]


def test_hac_theta_one_keeps_distinct_vectors_apart():
    items = [(v, 1.0) for v in random_unit_vectors(5, 5)]
    assert hac(items, 1.0) == [[0], [1], [2], [3], [4]]


def test_hac_tiny_theta_merges_everything():
    items = [(v, 1.0) for v in random_unit_vectors(6, 5)]
    assert hac(items, 1e-9) == [[0, 1, 2, 3, 4]]


def test_hac_k_no_merges_at_k_equals_n():
    items = [(v, 1.0) for v in random_unit_vectors(7, 5)]
    assert hac_k(items, 5) == [[0], [1], [2], [3], [4]]


def test_hac_k_one_cluster():
    items = [(v, 1.0) for v in random_unit_vectors(8, 5)]
    assert hac_k(items, 1) == [[0, 1, 2, 3, 4]]


def test_hac_k_two_planted_pairs():
    items = [(basis(0), 1.0), (basis(0), 1.0), (basis(1), 1.0), (basis(1), 1.0)]
    assert hac_k(items, 2) == [[0, 1], [2, 3]]


def test_hac_k_target_above_n_means_singletons():
    items = [(v, 1.0) for v in random_unit_vectors(9, 3)]
    assert hac_k(items, 10) == [[0], [1], [2]]


def test_hac_rejects_bad_arguments():
    with pytest.raises(DomainError):
        hac([], 0.75)
    with pytest.raises(DomainError):
        hac([(basis(0), 1.0)], 1.5)
    with pytest.raises(DomainError):
        hac([(basis(0), 0.0)], 0.75)
    with pytest.raises(DomainError):
        hac_k([(basis(0), 1.0)], 0)


def test_hac_matches_exhaustive_oracle_small():
    for seed in range(25):
        count = 2 + seed % 7
        items = [(v, 1.0) for v in random_unit_vectors(100 + seed, count)]
        partition, merges = hac_with_trace(items, 0.6)
        oracle_partition, oracle_merges = hac_oracle(items, theta=0.6)
        assert partition == oracle_partition, seed
        assert merges == oracle_merges, seed


def test_hac_weighted_linkage_matches_oracle():
    rng = np.random.default_rng(42)
    for seed in range(10):
        vectors = random_unit_vectors(200 + seed, 6)
        weights = [float(w) for w in rng.integers(1, 5, size=6)]
        items = list(zip(vectors, weights))
        assert hac(items, 0.55) == hac_oracle(items, theta=0.55)[0]


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=1, max_value=8))
def test_hac_partition_is_exact(seed, count):
    items = [(v, 1.0) for v in random_unit_vectors(seed, count)]
    partition = hac(items, 0.7)
    flat = sorted(i for group in partition for i in group)
    assert flat == list(range(count))


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=0, max_value=10_000),
    st.integers(min_value=1, max_value=8),
    st.integers(min_value=1, max_value=8),
)
def test_hac_k_matches_oracle(seed, count, k_target):
    items = [(v, 1.0) for v in random_unit_vectors(seed, count)]
    assert hac_k(items, k_target) == hac_oracle(items, k_target=k_target)[0]


def _story(i: int, words: str, cluster: str) -> Story:
    return Story(
        id=f"s{i:02d}",
        headline=words,
        body="",
        source=f"src{i % 3}",
        ingested_at=1000 + i,
        tags=frozenset(),
        online_cluster=cluster,
    )


class _PlantedEmbedder:
    """Maps stories to fixed vectors by headline keyword; test double."""

    def __init__(self, mapping: dict[str, EmbeddingVector]):
        self._mapping = mapping

    def embed(self, story: Story) -> EmbeddingVector:
        return self._mapping[story.headline.split()[0]]


def test_compose_single_online_cluster():
    embedder = _PlantedEmbedder({"aaa": basis(0)})
    tiered = [("oc-00000000", [_story(1, "aaa one", "oc-00000000"), _story(2, "aaa two", "oc-00000000")])]
    clusters = compose_theme_clusters(tiered, embedder, 0.75)
    assert len(clusters) == 1
    assert [s.id for s in clusters[0].members] == ["s01", "s02"]
    assert clusters[0].source_histogram == {"src1": 1, "src2": 1}


def test_compose_merges_identical_centroids():
    embedder = _PlantedEmbedder({"aaa": basis(0), "bbb": basis(0)})
    tiered = [
        ("oc-00000000", [_story(1, "aaa one", "oc-00000000")]),
        ("oc-00000001", [_story(2, "bbb two", "oc-00000001")]),
    ]
    clusters = compose_theme_clusters(tiered, embedder, 0.75)
    assert len(clusters) == 1
    assert {s.id for s in clusters[0].members} == {"s01", "s02"}


def test_compose_keeps_orthogonal_clusters_apart():
    embedder = _PlantedEmbedder({"aaa": basis(0), "bbb": basis(1)})
    tiered = [
        ("oc-00000000", [_story(1, "aaa one", "oc-00000000")]),
        ("oc-00000001", [_story(2, "bbb two", "oc-00000001")]),
    ]
    clusters = compose_theme_clusters(tiered, embedder, 0.75)
    assert len(clusters) == 2


def test_compose_empty_input():
    assert compose_theme_clusters([], _PlantedEmbedder({}), 0.75) == []


def test_theme_cluster_validates_histogram(make_story):
    story = make_story()
    with pytest.raises(DomainError):
        ThemeCluster(members=(story,), centroid=basis(0), source_histogram={})
    with pytest.raises(DomainError):
        ThemeCluster(
            members=(story, story), centroid=basis(0), source_histogram={story.source: 2}
        )
