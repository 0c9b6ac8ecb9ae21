from __future__ import annotations

import pytest

from newsthemes.corpus import default_five_topic_spec, generate
from newsthemes.domain import Story, Tag
from newsthemes.embed import Embedder, EmbedderConfig


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance: top-level acceptance criterion, reported one line each"
    )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance test, printed after the run."""
    lines = []
    for outcome, label in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            lines.append((name, label))
    if not lines:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, label in sorted(lines):
        terminalreporter.write_line(f"{label}  {name}")


@pytest.fixture(scope="session")
def embedder() -> Embedder:
    return Embedder(EmbedderConfig())


@pytest.fixture
def make_story():
    counter = {"n": 0}

    def build(
        headline: str = "Quarterly results beat analyst expectations",
        body: str = "The company reported earnings above forecasts.",
        *,
        id: str | None = None,
        source: str = "wireone",
        ingested_at: int = 1_700_000_000,
        tags: tuple[Tag, ...] = (),
        online_cluster: str | None = None,
    ) -> Story:
        counter["n"] += 1
        return Story(
            id=id if id is not None else f"s-{counter['n']:04d}",
            headline=headline,
            body=body,
            source=source,
            ingested_at=ingested_at,
            tags=frozenset(tags),
            online_cluster=online_cluster,
        )

    return build


@pytest.fixture(scope="session")
def five_topic_corpus():
    return generate(default_five_topic_spec())
