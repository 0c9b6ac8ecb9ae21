"""Overview cache: TTL entries, single-flight composition, refresh, priming.

All time comes in through method arguments, so TTL and priming behavior is
fully testable with a fake clock.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from typing import Callable, Iterable

from .domain import DomainError
from .themes import Overview

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CacheKey:
    query_canonical: str
    horizon_seconds: int


@dataclass(frozen=True)
class CacheEntry:
    overview: Overview
    stored_at: int
    expires_at: int

    def __post_init__(self) -> None:
        if self.expires_at <= self.stored_at:
            raise DomainError("cache entry must expire after it is stored")


@dataclass(frozen=True)
class PrimingRecord:
    key: CacheKey
    primed_until: int


@dataclass(frozen=True)
class CacheStats:
    hits: int
    misses: int
    hit_ratio: float


class _Flight:
    """In-progress composition; followers block on the event."""

    __slots__ = ("event", "overview", "error")

    def __init__(self) -> None:
        self.event = threading.Event()
        self.overview: Overview | None = None
        self.error: BaseException | None = None


class OverviewCache:
    def __init__(
        self,
        ttl_seconds: int = 1800,
        priming_seconds: int = 86400,
        popular_keys: Iterable[CacheKey] = (),
    ) -> None:
        if ttl_seconds <= 0:
            raise DomainError(f"ttl_seconds must be positive, got {ttl_seconds}")
        if priming_seconds <= 0:
            raise DomainError(
                f"priming_seconds must be positive, got {priming_seconds}"
            )
        self._ttl_seconds = ttl_seconds
        self._priming_seconds = priming_seconds
        self._popular = tuple(popular_keys)
        self._lock = threading.Lock()
        self._entries: dict[CacheKey, CacheEntry] = {}
        self._priming: dict[CacheKey, int] = {}
        self._flights: dict[CacheKey, _Flight] = {}
        self._hits = 0
        self._misses = 0

    def entry(self, key: CacheKey) -> CacheEntry | None:
        with self._lock:
            return self._entries.get(key)

    def priming_records(self) -> list[PrimingRecord]:
        with self._lock:
            return [
                PrimingRecord(key=key, primed_until=until)
                for key, until in self._priming.items()
            ]

    def get_or_compose(
        self, key: CacheKey, now: int, composer: Callable[[], Overview]
    ) -> tuple[Overview, bool]:
        """Serve a live entry or compose once; concurrent misses coalesce.

        Followers of an in-flight composition get the leader's overview (or
        its error) and count as misses. Composer failures are never cached.
        """
        with self._lock:
            entry = self._entries.get(key)
            if entry is not None and now < entry.expires_at:
                self._hits += 1
                return entry.overview, True
            flight = self._flights.get(key)
            leader = flight is None
            if leader:
                flight = _Flight()
                self._flights[key] = flight
        if not leader:
            flight.event.wait()
            with self._lock:
                self._misses += 1
            if flight.error is not None:
                raise flight.error
            assert flight.overview is not None
            return flight.overview, False
        try:
            overview = composer()
        except BaseException as exc:
            flight.error = exc
            with self._lock:
                self._misses += 1
                self._flights.pop(key, None)
            flight.event.set()
            raise
        with self._lock:
            self._misses += 1
            self._entries[key] = CacheEntry(
                overview=overview,
                stored_at=now,
                expires_at=now + self._ttl_seconds,
            )
            self._priming[key] = max(
                self._priming.get(key, 0), now + self._priming_seconds
            )
            self._flights.pop(key, None)
        flight.overview = overview
        flight.event.set()
        return overview, False

    def refresh_tick(
        self, now: int, composer: Callable[[CacheKey], Overview]
    ) -> int:
        """Recompose popular keys plus live primed keys; drop stale priming.

        Per-key composer failures are logged and skipped; the tick continues.
        Returns the number of entries recomposed.
        """
        with self._lock:
            stale = [key for key, until in self._priming.items() if until <= now]
            for key in stale:
                del self._priming[key]
            todo = dict.fromkeys(self._popular)
            todo.update(dict.fromkeys(self._priming))
        refreshed = 0
        for key in todo:
            try:
                overview = composer(key)
            except Exception:
                logger.exception("refresh failed for %r", key)
                continue
            with self._lock:
                self._entries[key] = CacheEntry(
                    overview=overview,
                    stored_at=now,
                    expires_at=now + self._ttl_seconds,
                )
            refreshed += 1
        return refreshed

    def stats(self) -> CacheStats:
        with self._lock:
            hits, misses = self._hits, self._misses
        total = hits + misses
        return CacheStats(
            hits=hits,
            misses=misses,
            hit_ratio=hits / total if total else 0.0,
        )


def load_popular_keys(path: str, parse_key: Callable[[str, int], CacheKey]) -> list[CacheKey]:
    """Read "query<TAB>horizon_seconds" lines; parse_key canonicalizes."""
    out: list[CacheKey] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise DomainError(
                    f"line {lineno}: expected 'query<TAB>horizon_seconds'"
                )
            query, raw_horizon = parts
            try:
                horizon = int(raw_horizon)
            except ValueError as exc:
                raise DomainError(
                    f"line {lineno}: horizon must be an integer"
                ) from exc
            if horizon <= 0:
                raise DomainError(f"line {lineno}: horizon must be positive")
            out.append(parse_key(query, horizon))
    return out
