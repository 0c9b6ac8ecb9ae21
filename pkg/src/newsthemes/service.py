"""Engine wiring and the HTTP facade.

One process hosts both halves: ingestion (embed, online-assign, index,
journal) and querying (snapshot, tiered retrieval, theme assembly) behind
the overview cache.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass
from typing import Any, Callable

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response

from .cache import CacheKey, OverviewCache, load_popular_keys
from .cluster import OnlineClusterer, compose_theme_clusters
from .config import EngineConfig
from .domain import DomainError, Story, story_from_json, story_json_line
from .embed import Embedder, EmbeddingError
from .index import IndexError_, NewsIndex
from .query import QuerySyntaxError, SearchRequest, canonicalize, parse_query
from .summarize import RankerModel, default_model, load_model
from .themes import Overview, assemble_overview, overview_json

VOTES = ("up", "down", "none")


@dataclass(frozen=True)
class FeedbackRecord:
    query: str
    theme_summary: str
    vote: str
    comment: str
    received_at: int

    def __post_init__(self) -> None:
        if self.vote not in VOTES:
            raise DomainError(f"vote must be one of {VOTES}, got {self.vote!r}")
        if self.vote == "none" and not self.comment:
            raise DomainError("feedback needs a vote or a nonempty comment")
        if not self.query:
            raise DomainError("feedback query must be nonempty")
        if not self.theme_summary:
            raise DomainError("feedback theme_summary must be nonempty")

    def to_json_dict(self) -> dict:
        return {
            "query": self.query,
            "theme_summary": self.theme_summary,
            "vote": self.vote,
            "comment": self.comment,
            "received_at": self.received_at,
        }


def parse_horizon(text: str) -> int:
    """'1h', '8h', '1d', '2d', or raw seconds; returns seconds."""
    raw = text.strip()
    if raw.isdigit():
        seconds = int(raw)
    elif raw[:-1].isdigit() and raw[-1:] == "h":
        seconds = int(raw[:-1]) * 3600
    elif raw[:-1].isdigit() and raw[-1:] == "d":
        seconds = int(raw[:-1]) * 86400
    else:
        raise DomainError(f"invalid horizon: {text!r}")
    if seconds <= 0:
        raise DomainError(f"horizon must be positive: {text!r}")
    return seconds


class NewsEngine:
    """Ingestion, retrieval, composition, cache, and feedback in one place."""

    def __init__(self, config: EngineConfig | None = None) -> None:
        self.config = config or EngineConfig()
        self.embedder = Embedder(self.config.embedder_config())
        self.clusterer = OnlineClusterer(
            theta_online=self.config.theta_online,
            window_seconds=self.config.online_window_seconds,
        )
        self.index = NewsIndex()
        if self.config.model_path is not None:
            self.ranker: RankerModel = load_model(self.config.model_path)
        else:
            self.ranker = default_model()
        popular: list[CacheKey] = []
        if self.config.popular_keys_path is not None:
            popular = load_popular_keys(
                self.config.popular_keys_path, self._make_key
            )
        self.cache = OverviewCache(
            ttl_seconds=self.config.ttl_seconds,
            priming_seconds=self.config.priming_seconds,
            popular_keys=popular,
        )
        self._ingest_lock = threading.Lock()
        self._journaling = self.config.journal_path is not None
        self._feedback_lock = threading.Lock()
        self._feedback: list[FeedbackRecord] = []

    @staticmethod
    def _make_key(query: str, horizon_seconds: int) -> CacheKey:
        return CacheKey(
            query_canonical=canonicalize(parse_query(query)),
            horizon_seconds=horizon_seconds,
        )

    # --- ingestion ---

    def ingest_story(self, story: Story) -> Story:
        """Embed, assign an online cluster (clock = ingested_at), index.

        Using the story's own timestamp for the clustering window keeps
        journal replay byte-for-byte reproducible.
        """
        with self._ingest_lock:
            embedding = self.embedder.embed(story)
            cluster_id = self.clusterer.assign_online(
                embedding, now=story.ingested_at
            )
            stored = story.with_cluster(cluster_id)
            self.index.add_story(stored)
            if self._journaling:
                assert self.config.journal_path is not None
                with open(self.config.journal_path, "a", encoding="utf-8") as fh:
                    fh.write(story_json_line(story) + "\n")
        return stored

    def ingest_payload(self, payload: Any) -> tuple[int, list[dict]]:
        """Batch ingest; bad stories are reported, good ones still land."""
        if not isinstance(payload, list):
            raise DomainError("expected a JSON array of stories")
        accepted = 0
        errors: list[dict] = []
        for position, raw in enumerate(payload):
            try:
                self.ingest_story(story_from_json(raw))
                accepted += 1
            except (DomainError, EmbeddingError, IndexError_) as exc:
                entry = {"index": position, "error": str(exc)}
                if isinstance(raw, dict) and isinstance(raw.get("id"), str):
                    entry["id"] = raw["id"]
                errors.append(entry)
        return accepted, errors

    def replay_journal(self, path: str) -> tuple[int, list[str]]:
        """Load a journal file; returns (ingested count, per-line errors)."""
        count = 0
        problems: list[str] = []
        was_journaling = self._journaling
        self._journaling = False
        try:
            with open(path, "r", encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, start=1):
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        self.ingest_story(story_from_json(json.loads(line)))
                        count += 1
                    except (
                        ValueError,
                        TypeError,
                    ) as exc:
                        problems.append(f"line {lineno}: {exc}")
        finally:
            self._journaling = was_journaling
        return count, problems

    # --- querying ---

    def compose_request(
        self,
        ast,
        horizon_seconds: int,
        now: int,
        max_themes: int | None = None,
        stories_per_theme: int | None = None,
    ) -> Overview:
        request = SearchRequest(
            ast=ast,
            horizon_seconds=horizon_seconds,
            k_facets=self.config.k_facets,
            n_stories=self.config.n_stories,
        )
        tiered = self.index.snapshot().retrieve_tiered(request, now)
        clusters = compose_theme_clusters(
            tiered, self.embedder, self.config.theta_hac
        )
        return assemble_overview(
            clusters,
            self.embedder,
            self.ranker,
            query_canonical=canonicalize(ast),
            horizon_seconds=horizon_seconds,
            composed_at=now,
            max_themes=max_themes or self.config.max_themes,
            p_subclusters=stories_per_theme or self.config.p_subclusters,
            max_body_sentences=self.config.max_body_sentences,
        )

    def overview(
        self,
        q: str,
        *,
        now: int,
        horizon_seconds: int | None = None,
        max_themes: int | None = None,
        stories_per_theme: int | None = None,
        use_cache: bool = True,
    ) -> tuple[Overview, bool]:
        """Returns (overview, served-from-cache).

        The cache key is (canonical query, horizon); requests overriding
        max_themes or stories_per_theme bypass the cache so one key always
        maps to one response shape.
        """
        ast = parse_query(q)
        horizon = horizon_seconds or self.config.default_horizon_seconds
        defaults = (
            max_themes in (None, self.config.max_themes)
            and stories_per_theme in (None, self.config.p_subclusters)
        )

        def compose() -> Overview:
            return self.compose_request(
                ast, horizon, now, max_themes, stories_per_theme
            )

        if use_cache and defaults:
            key = CacheKey(
                query_canonical=canonicalize(ast), horizon_seconds=horizon
            )
            return self.cache.get_or_compose(key, now, compose)
        return compose(), False

    def refresh_cache(self, now: int) -> int:
        def compose_key(key: CacheKey) -> Overview:
            ast = parse_query(key.query_canonical)
            return self.compose_request(ast, key.horizon_seconds, now)

        return self.cache.refresh_tick(now, compose_key)

    # --- feedback and stats ---

    def feedback(self, raw: Any, received_at: int) -> FeedbackRecord:
        if not isinstance(raw, dict):
            raise DomainError("feedback must be a JSON object")
        allowed = {"query", "theme_summary", "vote", "comment"}
        unknown = sorted(set(raw) - allowed)
        if unknown:
            raise DomainError(f"unknown feedback keys: {', '.join(unknown)}")
        for key in ("query", "theme_summary", "vote"):
            if not isinstance(raw.get(key), str):
                raise DomainError(f"feedback {key} must be a string")
        comment = raw.get("comment", "")
        if not isinstance(comment, str):
            raise DomainError("feedback comment must be a string")
        record = FeedbackRecord(
            query=raw["query"],
            theme_summary=raw["theme_summary"],
            vote=raw["vote"],
            comment=comment,
            received_at=received_at,
        )
        with self._feedback_lock:
            self._feedback.append(record)
            if self.config.feedback_path is not None:
                with open(self.config.feedback_path, "a", encoding="utf-8") as fh:
                    fh.write(
                        json.dumps(
                            record.to_json_dict(),
                            separators=(",", ":"),
                            ensure_ascii=False,
                        )
                        + "\n"
                    )
        return record

    def feedback_positive_fraction(self) -> float:
        with self._feedback_lock:
            ups = sum(1 for r in self._feedback if r.vote == "up")
            downs = sum(1 for r in self._feedback if r.vote == "down")
        voted = ups + downs
        return ups / voted if voted else 0.0

    def stats(self) -> dict:
        cache = self.cache.stats()
        with self._feedback_lock:
            feedback_count = len(self._feedback)
        return {
            "stories": len(self.index),
            "online_clusters": len(self.clusterer),
            "cache": {
                "hits": cache.hits,
                "misses": cache.misses,
                "hit_ratio": cache.hit_ratio,
            },
            "feedback": {
                "count": feedback_count,
                "positive_fraction": self.feedback_positive_fraction(),
            },
        }


def create_app(
    engine: NewsEngine, clock: Callable[[], int] = lambda: int(time.time())
) -> FastAPI:
    app = FastAPI(title="news theme overviews", version="0.1.0")

    @app.post("/stories")
    async def post_stories(request: Request):
        try:
            payload = json.loads(await request.body())
        except json.JSONDecodeError as exc:
            return JSONResponse({"error": f"malformed JSON: {exc}"}, status_code=400)
        try:
            accepted, errors = engine.ingest_payload(payload)
        except DomainError as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        return JSONResponse({"accepted": accepted, "errors": errors})

    @app.get("/overview")
    def get_overview(
        q: str | None = None,
        horizon: str | None = None,
        max_themes: int | None = None,
        stories_per_theme: int | None = None,
    ):
        if q is None:
            return JSONResponse({"error": "missing query parameter q"}, status_code=400)
        try:
            horizon_seconds = (
                parse_horizon(horizon) if horizon is not None else None
            )
        except DomainError as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        try:
            overview, hit = engine.overview(
                q,
                now=clock(),
                horizon_seconds=horizon_seconds,
                max_themes=max_themes,
                stories_per_theme=stories_per_theme,
            )
        except QuerySyntaxError as exc:
            return JSONResponse(
                {"error": str(exc), "offset": exc.offset}, status_code=400
            )
        except DomainError as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        return Response(
            content=overview_json(overview),
            media_type="application/json",
            headers={"x-cache": "hit" if hit else "miss"},
        )

    @app.post("/feedback")
    async def post_feedback(request: Request):
        try:
            payload = json.loads(await request.body())
        except json.JSONDecodeError as exc:
            return JSONResponse({"error": f"malformed JSON: {exc}"}, status_code=400)
        try:
            engine.feedback(payload, received_at=clock())
        except DomainError as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        return JSONResponse({"status": "accepted"})

    @app.get("/health")
    def get_health():
        return JSONResponse({"status": "ok"})

    @app.get("/stats")
    def get_stats():
        return JSONResponse(engine.stats())

    return app
