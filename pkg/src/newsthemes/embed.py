"""Document embeddings and the similarity metric tau.

The default embedder is a seeded hashed bag-of-words projection: every
vocabulary token hashes to a fixed random signed direction in R^n, counts
are log-scaled, directions are summed and L2-normalized. It is a stand-in
for a learned document model behind the same interface; a pretrained
per-token embedding matrix can be loaded from file instead.

Similarity is tau(d1,d2) = 0.5*(cos(z1,z2)+1), mapping cosine into [0,1].
"""

from __future__ import annotations

import hashlib
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

from .domain import Story, Token, normalize_text, tokenize

__all__ = [
    "EmbeddingError",
    "EmptyDocumentError",
    "MatrixLoadError",
    "DimensionMismatchError",
    "ZeroVectorError",
    "EmptyInputError",
    "EmbeddingVector",
    "EmbedderConfig",
    "Embedder",
    "tau",
    "centroid",
]


class EmbeddingError(ValueError):
    pass


class EmptyDocumentError(EmbeddingError):
    """Story has no embeddable tokens."""


class MatrixLoadError(EmbeddingError):
    """Embedding matrix file missing or malformed."""


class DimensionMismatchError(EmbeddingError):
    pass


class ZeroVectorError(EmbeddingError):
    """Vector sum or mean is numerically zero and cannot be normalized."""


class EmptyInputError(EmbeddingError):
    pass


_UNIT_TOL = 1e-6
_ZERO_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class EmbeddingVector:
    """Unit-L2 real vector. The wrapped array is made read-only."""

    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1 or arr.shape[0] < 1:
            raise EmbeddingError(f"embedding must be a 1-d vector, got shape {arr.shape}")
        norm = float(np.linalg.norm(arr))
        if abs(norm - 1.0) > _UNIT_TOL:
            raise EmbeddingError(f"embedding not unit length (norm {norm!r})")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def dimension(self) -> int:
        return int(self.values.shape[0])


def _normalized(raw: np.ndarray) -> EmbeddingVector:
    norm = float(np.linalg.norm(raw))
    if norm <= _ZERO_TOL:
        raise ZeroVectorError("cannot normalize a zero vector")
    return EmbeddingVector(raw / norm)


def tau(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """Similarity 0.5*(cos(a,b)+1), clamped to [0,1] against rounding."""
    if a.dimension != b.dimension:
        raise DimensionMismatchError(f"dimensions differ: {a.dimension} vs {b.dimension}")
    cos = float(np.dot(a.values, b.values))
    return min(1.0, max(0.0, 0.5 * (cos + 1.0)))


def centroid(members: Sequence[EmbeddingVector]) -> EmbeddingVector:
    """Arithmetic mean of unit vectors, re-normalized to unit length."""
    if not members:
        raise EmptyInputError("centroid of no vectors")
    dim = members[0].dimension
    for m in members[1:]:
        if m.dimension != dim:
            raise DimensionMismatchError("centroid members must share a dimension")
    mean = np.mean(np.stack([m.values for m in members]), axis=0)
    return _normalized(mean)


Mode = Literal["deterministic-projection", "loaded-matrix"]

_MODES = ("deterministic-projection", "loaded-matrix")


@dataclass(frozen=True)
class EmbedderConfig:
    dimension: int = 128
    mode: str = "deterministic-projection"
    matrix_path: str | None = None
    seed: int = 0
    headline_weight: int = 3

    def __post_init__(self) -> None:
        if self.dimension < 2:
            raise EmbeddingError(f"dimension must be >= 2, got {self.dimension}")
        if self.mode not in _MODES:
            raise EmbeddingError(f"unknown embedder mode: {self.mode!r}")
        if (self.mode == "loaded-matrix") != (self.matrix_path is not None):
            raise EmbeddingError("matrix_path is required iff mode is loaded-matrix")
        if self.headline_weight < 1:
            raise EmbeddingError("headline_weight must be >= 1")


def _load_matrix(path: str, dimension: int) -> dict[str, np.ndarray]:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise MatrixLoadError(f"cannot read matrix file: {exc}") from exc
    if not lines:
        raise MatrixLoadError("matrix file is empty")
    header = lines[0].split()
    if len(header) != 2:
        raise MatrixLoadError(f"matrix header must be 'n V', got {lines[0]!r}")
    try:
        n, vocab = int(header[0]), int(header[1])
    except ValueError:
        raise MatrixLoadError(f"matrix header must be integers, got {lines[0]!r}") from None
    if n != dimension:
        raise MatrixLoadError(f"matrix dimension {n} does not match configured {dimension}")
    rows = [line for line in lines[1:] if line.strip()]
    if len(rows) != vocab:
        raise MatrixLoadError(f"expected {vocab} rows, found {len(rows)}")
    out: dict[str, np.ndarray] = {}
    for lineno, line in enumerate(rows, start=2):
        parts = line.split()
        if len(parts) != n + 1:
            raise MatrixLoadError(f"line {lineno}: expected {n + 1} fields, got {len(parts)}")
        try:
            vec = np.array([float(x) for x in parts[1:]], dtype=np.float64)
        except ValueError:
            raise MatrixLoadError(f"line {lineno}: non-numeric value") from None
        out[parts[0]] = vec
    return out


def _content_tokens(tokens: Iterable[Token]) -> list[str]:
    # Pure-punctuation tokens carry no topical signal and are skipped.
    return [t.lower for t in tokens if any(ch.isalnum() for ch in t.surface)]


class Embedder:
    """Immutable story embedder; embed/tau/centroid are pure and thread-safe."""

    def __init__(self, config: EmbedderConfig):
        self._config = config
        self._directions: dict[str, np.ndarray] = {}
        self._matrix: dict[str, np.ndarray] | None = None
        if config.mode == "loaded-matrix":
            assert config.matrix_path is not None
            self._matrix = _load_matrix(config.matrix_path, config.dimension)

    @property
    def config(self) -> EmbedderConfig:
        return self._config

    @property
    def dimension(self) -> int:
        return self._config.dimension

    def token_direction(self, token_lower: str) -> np.ndarray:
        """Fixed signed direction for a token, derived from a seeded hash.

        Deterministic across processes (no reliance on interpreter hashing).
        """
        cached = self._directions.get(token_lower)
        if cached is not None:
            return cached
        digest = hashlib.blake2b(
            f"{self._config.seed}\x1f{token_lower}".encode("utf-8"), digest_size=8
        ).digest()
        rng = np.random.Generator(np.random.PCG64(int.from_bytes(digest, "big")))
        signs = rng.integers(0, 2, size=self._config.dimension).astype(np.float64) * 2.0 - 1.0
        signs.setflags(write=False)
        self._directions[token_lower] = signs
        return signs

    def _counts(self, story: Story) -> Counter[str]:
        counts: Counter[str] = Counter()
        head = _content_tokens(tokenize(normalize_text(story.headline)))
        body = _content_tokens(tokenize(normalize_text(story.body)))
        for tok in head:
            counts[tok] += self._config.headline_weight
        for tok in body:
            counts[tok] += 1
        return counts

    def embed(self, story: Story) -> EmbeddingVector:
        counts = self._counts(story)
        if not counts:
            raise EmptyDocumentError(f"story {story.id!r} has no embeddable tokens")
        if self._matrix is not None:
            return self._embed_matrix(counts)
        total = np.zeros(self._config.dimension, dtype=np.float64)
        for token in sorted(counts):
            total += math.log1p(counts[token]) * self.token_direction(token)
        return _normalized(total)

    def _embed_matrix(self, counts: Counter[str]) -> EmbeddingVector:
        # Mean of per-occurrence rows; tokens absent from the matrix are skipped.
        total = np.zeros(self._config.dimension, dtype=np.float64)
        occurrences = 0
        assert self._matrix is not None
        for token in sorted(counts):
            row = self._matrix.get(token)
            if row is None:
                continue
            total += counts[token] * row
            occurrences += counts[token]
        if occurrences == 0:
            raise EmptyDocumentError("no story token appears in the loaded matrix")
        return _normalized(total / occurrences)
