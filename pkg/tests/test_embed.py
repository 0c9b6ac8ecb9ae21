from __future__ import annotations

import numpy as np
import pytest

from newsthemes.embed import (
    DimensionMismatchError,
    Embedder,
    EmbedderConfig,
    EmbeddingError,
    EmbeddingVector,
    EmptyDocumentError,
    EmptyInputError,
    MatrixLoadError,
    ZeroVectorError,
    centroid,
    tau,
)


def basis(i: int, dim: int = 4) -> EmbeddingVector:
    values = np.zeros(dim)
    values[i] = 1.0
    return EmbeddingVector(values)


def test_embedding_vector_rejects_non_unit():
    with pytest.raises(EmbeddingError):
        EmbeddingVector(np.array([1.0, 1.0]))


def test_embedding_vector_is_read_only():
    vec = basis(0)
    with pytest.raises(ValueError):
        vec.values[0] = 2.0


def test_tau_of_identical_is_one():
    v = basis(0)
    assert tau(v, v) == 1.0


def test_tau_of_orthogonal_is_half():
    assert tau(basis(0), basis(1)) == 0.5


def test_tau_of_opposite_is_zero():
    v = basis(2)
    neg = EmbeddingVector(-v.values)
    assert tau(v, neg) == 0.0


def test_tau_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        tau(basis(0, 4), basis(0, 5))


def test_centroid_singleton_and_duplicates():
    v = basis(1)
    assert np.allclose(centroid([v]).values, v.values)
    assert np.allclose(centroid([v, v]).values, v.values)


def test_centroid_of_two_basis_vectors():
    got = centroid([basis(0), basis(1)])
    expected = np.array([1.0, 1.0, 0.0, 0.0]) / np.sqrt(2.0)
    assert np.allclose(got.values, expected)


def test_centroid_errors():
    with pytest.raises(EmptyInputError):
        centroid([])
    v = basis(0)
    neg = EmbeddingVector(-v.values)
    with pytest.raises(ZeroVectorError):
        centroid([v, neg])


def test_identical_stories_embed_identically(embedder, make_story):
    a = make_story(id="a", headline="Markets rally on earnings", body="Stocks rose.")
    b = make_story(id="b", headline="Markets rally on earnings", body="Stocks rose.")
    assert np.array_equal(embedder.embed(a).values, embedder.embed(b).values)


def test_embedder_deterministic_across_instances(make_story):
    story = make_story(headline="Chipmaker posts record quarter")
    one = Embedder(EmbedderConfig(seed=3)).embed(story)
    two = Embedder(EmbedderConfig(seed=3)).embed(story)
    assert np.array_equal(one.values, two.values)


def test_seed_changes_the_projection(make_story):
    story = make_story(headline="Chipmaker posts record quarter")
    one = Embedder(EmbedderConfig(seed=0)).embed(story)
    two = Embedder(EmbedderConfig(seed=1)).embed(story)
    assert not np.array_equal(one.values, two.values)


def test_disjoint_vocabularies_near_orthogonal(embedder, make_story):
    a = make_story(id="a", headline="alpha bravo charlie delta", body="echo foxtrot")
    b = make_story(id="b", headline="golf hotel india juliet", body="kilo lima")
    cos = float(np.dot(embedder.embed(a).values, embedder.embed(b).values))
    assert abs(cos) <= 0.15


def test_embeddings_are_unit_norm(embedder, make_story):
    for headline in ("one", "two words here", "a much longer headline with many tokens"):
        vec = embedder.embed(make_story(headline=headline))
        assert abs(float(np.linalg.norm(vec.values)) - 1.0) <= 1e-6


def test_punctuation_only_story_is_empty_document(embedder, make_story):
    with pytest.raises(EmptyDocumentError):
        embedder.embed(make_story(headline="...", body="-- !!"))


def test_duplicated_body_preserves_direction(embedder, make_story):
    # Constructed so duplication scales every token count uniformly: the
    # headline carries the same tokens as the body, so the log1p damping
    # rescales the whole vector and leaves its direction intact.
    text = "Regulators approve merger review"
    original = make_story(id="a", headline=text, body=text)
    for k in (2, 3, 7):
        duplicated = make_story(id=f"b{k}", headline=text, body=" ".join([text] * k))
        cos = float(
            np.dot(embedder.embed(original).values, embedder.embed(duplicated).values)
        )
        assert cos >= 0.999


def test_headline_weight_triples_headline_counts(make_story):
    # weight-3 headline must equal the same token repeated 3x at weight 1
    weighted = Embedder(EmbedderConfig(headline_weight=3)).embed(
        make_story(id="a", headline="brexit", body="talks resume")
    )
    repeated = Embedder(EmbedderConfig(headline_weight=1)).embed(
        make_story(id="b", headline="brexit brexit brexit", body="talks resume")
    )
    assert np.allclose(weighted.values, repeated.values, atol=1e-12)


def _write_matrix(path, rows, dimension=4):
    lines = [f"{dimension} {len(rows)}"]
    for token, vec in rows:
        lines.append(token + " " + " ".join(str(x) for x in vec))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def test_loaded_matrix_mode_mean_of_rows(tmp_path, make_story):
    path = tmp_path / "matrix.txt"
    _write_matrix(path, [("brexit", [1, 0, 0, 0]), ("talks", [0, 1, 0, 0])])
    emb = Embedder(EmbedderConfig(dimension=4, mode="loaded-matrix", matrix_path=str(path)))
    vec = emb.embed(make_story(headline="Brexit talks", body=""))
    assert np.allclose(vec.values, np.array([1.0, 1.0, 0.0, 0.0]) / np.sqrt(2.0))


def test_loaded_matrix_weights_by_occurrence(tmp_path, make_story):
    path = tmp_path / "matrix.txt"
    _write_matrix(path, [("brexit", [1, 0, 0, 0]), ("talks", [0, 1, 0, 0])])
    emb = Embedder(
        EmbedderConfig(dimension=4, mode="loaded-matrix", matrix_path=str(path), headline_weight=1)
    )
    vec = emb.embed(make_story(headline="brexit brexit talks", body=""))
    expected = np.array([2.0, 1.0, 0.0, 0.0])
    assert np.allclose(vec.values, expected / np.linalg.norm(expected))


def test_loaded_matrix_skips_unknown_tokens(tmp_path, make_story):
    path = tmp_path / "matrix.txt"
    _write_matrix(path, [("brexit", [1, 0, 0, 0])])
    emb = Embedder(EmbedderConfig(dimension=4, mode="loaded-matrix", matrix_path=str(path)))
    vec = emb.embed(make_story(headline="Brexit negotiations stall", body=""))
    assert np.allclose(vec.values, [1.0, 0.0, 0.0, 0.0])


def test_loaded_matrix_all_unknown_is_empty_document(tmp_path, make_story):
    path = tmp_path / "matrix.txt"
    _write_matrix(path, [("brexit", [1, 0, 0, 0])])
    emb = Embedder(EmbedderConfig(dimension=4, mode="loaded-matrix", matrix_path=str(path)))
    with pytest.raises(EmptyDocumentError):
        emb.embed(make_story(headline="totally unrelated words", body=""))


def test_matrix_loader_rejects_ragged_rows(tmp_path):
    path = tmp_path / "matrix.txt"
    path.write_text("4 2\nbrexit 1 0 0 0\ntalks 0 1\n", encoding="utf-8")
    with pytest.raises(MatrixLoadError):
        Embedder(EmbedderConfig(dimension=4, mode="loaded-matrix", matrix_path=str(path)))


def test_matrix_loader_rejects_row_count_mismatch(tmp_path):
    path = tmp_path / "matrix.txt"
    path.write_text("4 3\nbrexit 1 0 0 0\n", encoding="utf-8")
    with pytest.raises(MatrixLoadError):
        Embedder(EmbedderConfig(dimension=4, mode="loaded-matrix", matrix_path=str(path)))


def test_matrix_loader_rejects_dimension_mismatch(tmp_path):
    path = tmp_path / "matrix.txt"
    path.write_text("3 1\nbrexit 1 0 0\n", encoding="utf-8")
    with pytest.raises(MatrixLoadError):
        Embedder(EmbedderConfig(dimension=4, mode="loaded-matrix", matrix_path=str(path)))


def test_config_requires_matrix_path_iff_loaded():
    with pytest.raises(EmbeddingError):
        EmbedderConfig(mode="loaded-matrix")
    with pytest.raises(EmbeddingError):
        EmbedderConfig(matrix_path="somewhere")
    with pytest.raises(EmbeddingError):
        EmbedderConfig(dimension=1)
