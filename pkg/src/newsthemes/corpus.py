"""Synthetic planted-topic corpora for tests and demos.

Stands in for a real feed: per-topic vocabularies (optionally disjoint),
controllable verbatim duplication across sources, uniform timestamps, and a
retained story-to-topic labeling for clustering checks.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterable

from .domain import Story, Tag, normalize_text, tokenize


class InvalidSpecError(ValueError):
    pass


@dataclass(frozen=True)
class TopicSpec:
    name: str
    tags: tuple[Tag, ...]
    core_words: tuple[str, ...]
    extra_words: tuple[str, ...]
    headlines: tuple[str, ...]

    def __post_init__(self) -> None:
        # Canonical tag order, so saving and reloading a spec is an identity.
        object.__setattr__(self, "tags", tuple(sorted(self.tags)))
        if not self.name or not self.name.isalnum() or not self.name.islower():
            raise InvalidSpecError(
                f"topic name must be lowercase alphanumeric, got {self.name!r}"
            )
        if not self.core_words:
            raise InvalidSpecError(f"topic {self.name}: core_words must be nonempty")
        if not self.headlines:
            raise InvalidSpecError(f"topic {self.name}: headlines must be nonempty")

    def vocabulary(self) -> set[str]:
        """All lowercased tokens the topic can emit, headline words included."""
        vocab = {w.lower() for w in self.core_words}
        vocab.update(w.lower() for w in self.extra_words)
        for headline in self.headlines:
            vocab.update(t.lower for t in tokenize(normalize_text(headline)))
        return vocab


@dataclass(frozen=True)
class CorpusSpec:
    topics: tuple[TopicSpec, ...]
    stories_per_topic: int
    duplicate_rate: float
    sources: tuple[str, ...]
    time_start: int
    time_end: int
    seed: int
    extras_per_story: int = 4
    disjoint_vocab: bool = True

    def __post_init__(self) -> None:
        if not self.topics:
            raise InvalidSpecError("at least one topic required")
        names = [t.name for t in self.topics]
        if len(set(names)) != len(names):
            raise InvalidSpecError("topic names must be unique")
        if self.stories_per_topic < 1:
            raise InvalidSpecError(
                f"stories_per_topic must be >= 1, got {self.stories_per_topic}"
            )
        if not 0.0 <= self.duplicate_rate <= 1.0:
            raise InvalidSpecError(
                f"duplicate_rate must be in [0, 1], got {self.duplicate_rate}"
            )
        if not self.sources:
            raise InvalidSpecError("source pool must be nonempty")
        if self.duplicate_rate > 0 and len(set(self.sources)) < 2:
            raise InvalidSpecError("duplication requires at least 2 sources")
        if self.time_start < 1 or self.time_end < self.time_start:
            raise InvalidSpecError(
                f"bad time range [{self.time_start}, {self.time_end}]"
            )
        if self.extras_per_story < 0:
            raise InvalidSpecError("extras_per_story must be >= 0")
        if self.disjoint_vocab:
            seen: dict[str, str] = {}
            for topic in self.topics:
                for word in sorted(topic.vocabulary()):
                    if word in seen and seen[word] != topic.name:
                        raise InvalidSpecError(
                            f"word {word!r} shared by topics"
                            f" {seen[word]} and {topic.name}"
                        )
                    seen[word] = topic.name


@dataclass(frozen=True)
class GeneratedCorpus:
    stories: tuple[Story, ...]
    topic_labels: dict[str, int]


def generate(spec: CorpusSpec) -> GeneratedCorpus:
    """Deterministic under seed; duplicates are verbatim under a new source.

    Each topic emits exactly stories_per_topic stories; a slot after the
    first becomes, with probability duplicate_rate, a re-publication of an
    earlier same-topic story. Output is sorted by (ingested_at, id).
    """
    rng = random.Random(spec.seed)
    stories: list[Story] = []
    labels: dict[str, int] = {}
    for topic_index, topic in enumerate(spec.topics):
        emitted: list[Story] = []
        for slot in range(spec.stories_per_topic):
            story_id = f"{topic.name}-{slot:04d}"
            ingested_at = rng.randint(spec.time_start, spec.time_end)
            source = rng.choice(spec.sources)
            duplicate = emitted and rng.random() < spec.duplicate_rate
            if duplicate:
                original = emitted[rng.randrange(len(emitted))]
                others = [s for s in spec.sources if s != original.source]
                source = others[rng.randrange(len(others))]
                headline, body = original.headline, original.body
            else:
                headline = topic.headlines[slot % len(topic.headlines)]
                words = list(topic.core_words)
                words.append(f"{topic.name}{slot:02d}")
                k = min(spec.extras_per_story, len(topic.extra_words))
                if k:
                    words.extend(rng.sample(topic.extra_words, k))
                body = " ".join(words) + "."
            story = Story(
                id=story_id,
                headline=headline,
                body=body,
                source=source,
                ingested_at=ingested_at,
                tags=frozenset(topic.tags),
            )
            emitted.append(story)
            labels[story_id] = topic_index
        stories.extend(emitted)
    stories.sort(key=lambda s: (s.ingested_at, s.id))
    return GeneratedCorpus(stories=tuple(stories), topic_labels=labels)


# --- spec (de)serialization ---


def spec_to_json_dict(spec: CorpusSpec) -> dict:
    return {
        "topics": [
            {
                "name": t.name,
                "tags": [str(tag) for tag in sorted(t.tags)],
                "core_words": list(t.core_words),
                "extra_words": list(t.extra_words),
                "headlines": list(t.headlines),
            }
            for t in spec.topics
        ],
        "stories_per_topic": spec.stories_per_topic,
        "duplicate_rate": spec.duplicate_rate,
        "sources": list(spec.sources),
        "time_start": spec.time_start,
        "time_end": spec.time_end,
        "seed": spec.seed,
        "extras_per_story": spec.extras_per_story,
        "disjoint_vocab": spec.disjoint_vocab,
    }


def spec_from_json_dict(raw: dict) -> CorpusSpec:
    if not isinstance(raw, dict):
        raise InvalidSpecError("corpus spec must be a JSON object")
    expected = set(spec_to_json_dict(default_five_topic_spec()))
    if set(raw) != expected:
        missing = sorted(expected - set(raw))
        unknown = sorted(set(raw) - expected)
        raise InvalidSpecError(
            f"spec keys mismatch (missing {missing}, unknown {unknown})"
        )
    try:
        topics = tuple(
            TopicSpec(
                name=t["name"],
                tags=tuple(Tag.parse(s) for s in t["tags"]),
                core_words=tuple(t["core_words"]),
                extra_words=tuple(t["extra_words"]),
                headlines=tuple(t["headlines"]),
            )
            for t in raw["topics"]
        )
        return CorpusSpec(
            topics=topics,
            stories_per_topic=raw["stories_per_topic"],
            duplicate_rate=raw["duplicate_rate"],
            sources=tuple(raw["sources"]),
            time_start=raw["time_start"],
            time_end=raw["time_end"],
            seed=raw["seed"],
            extras_per_story=raw["extras_per_story"],
            disjoint_vocab=raw["disjoint_vocab"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidSpecError):
            raise
        raise InvalidSpecError(f"bad corpus spec: {exc}") from exc


def load_spec(path: str) -> CorpusSpec:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidSpecError(f"invalid spec JSON: {exc}") from exc
    return spec_from_json_dict(raw)


def save_spec(spec: CorpusSpec, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec_to_json_dict(spec), fh, indent=2, ensure_ascii=False)
        fh.write("\n")


# --- default planted corpus ---


def _topic(name: str, tag_values: Iterable[str], core: str, extras: str,
           headlines: Iterable[str]) -> TopicSpec:
    return TopicSpec(
        name=name,
        tags=tuple(Tag.parse(v) for v in tag_values),
        core_words=tuple(core.split()),
        extra_words=tuple(extras.split()),
        headlines=tuple(headlines),
    )


def default_five_topic_spec() -> CorpusSpec:
    """Five disjoint-vocabulary topics, 40 stories each, 30% duplication.

    Headlines within a topic share a four-word stem so same-topic stories
    stay well above the online threshold while cross-topic similarity stays
    far below the merge threshold.
    """
    topics = (
        _topic(
            "ecom",
            ("TOPIC:ECOM", "COMPANY:SHOPSPHERE"),
            """retailer shoppers parcels baskets merchants storefronts coupons
               fulfillment warehouses couriers discounts inventory refunds
               loyalty vouchers catalogs carts sellers returns packaging""",
            """wishlists flashsale dropship basketsize reseller outlet
               giftwrap preorder bundles stockouts overstock freebies""",
            (
                "Shopsphere expands marketplace checkout rewards",
                "Shopsphere expands marketplace checkout vouchers",
                "Shopsphere expands marketplace checkout listings",
                "Shopsphere expands marketplace checkout lanes",
            ),
        ),
        _topic(
            "chips",
            ("TOPIC:CHIPS", "COMPANY:NANOTESSERA"),
            """semiconductor transistors silicon foundry etching photomask
               nanometer substrate wafers cleanroom lithography yields dies
               interconnect bonding gates doping annealing reticle epitaxy""",
            """chiplets fabs tooling metrology overlay stepper scanner
               photoresist tapeout binning sputtering planarization""",
            (
                "Nanotessera unveils wafer lithography roadmap",
                "Nanotessera unveils wafer lithography milestones",
                "Nanotessera unveils wafer lithography upgrades",
                "Nanotessera unveils wafer lithography yields",
            ),
        ),
        _topic(
            "energy",
            ("TOPIC:ENERGY", "COMPANY:VOLTGRID"),
            """megawatts turbines electrolyzers photovoltaic hydrogen reactors
               pipelines drilling rigs substations transmission voltage
               inverters batteries gigawatt smelters refineries barrels crude
               flaring""",
            """geothermal biomass peaker curtailment microgrid ampere
               kilovolt nacelle rotor blade offshore onshore""",
            (
                "Voltgrid commissions offshore turbine farm",
                "Voltgrid commissions offshore turbine array",
                "Voltgrid commissions offshore turbine cluster",
                "Voltgrid commissions offshore turbine fleet",
            ),
        ),
        _topic(
            "health",
            ("TOPIC:HEALTH", "COMPANY:MEDICORA"),
            """patients clinics dosage antibodies biotech placebo oncology
               diagnostics hospitals insurers enrollment trials biomarkers
               immunology therapeutics pharmacology nurses wards triage
               prescriptions""",
            """radiology cardiology sequencing genomics telehealth vials
               syringes boosters antigens peptides enzymes microbiome""",
            (
                "Medicora reports vaccine trial enrollment",
                "Medicora reports vaccine trial readouts",
                "Medicora reports vaccine trial expansion",
                "Medicora reports vaccine trial cohorts",
            ),
        ),
        _topic(
            "sport",
            ("TOPIC:SPORT", "COMPANY:GOALFORGE"),
            """stadium playoffs midfielder goalkeeper referees league
               tournament championship coaches fixtures transfers defenders
               strikers penalties relegation standings derby kickoff halftime
               scoreline""",
            """winger fullback hattrick cleansheet dugout touchline
               extratime shootout scouts academy loanee friendly""",
            (
                "Goalforge signs striker transfer contract",
                "Goalforge signs striker transfer extension",
                "Goalforge signs striker transfer clause",
                "Goalforge signs striker transfer deal",
            ),
        ),
    )
    return CorpusSpec(
        topics=topics,
        stories_per_topic=40,
        duplicate_rate=0.3,
        sources=(
            "meridianwire",
            "coastalpost",
            "arbordaily",
            "summitjournal",
            "harborledger",
            "pinnacletimes",
        ),
        time_start=1_700_000_000,
        time_end=1_700_086_399,
        seed=7,
    )
