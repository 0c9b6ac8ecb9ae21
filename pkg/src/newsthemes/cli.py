"""Operator command line: ingest, query, train, evaluate, serve, generate."""

from __future__ import annotations

import json
import logging
import socket
import threading
import time

import click

from .config import ConfigError, EngineConfig, load_config
from .corpus import InvalidSpecError, default_five_topic_spec, generate, load_spec
from .domain import DomainError, story_json_line
from .embed import Embedder
from .evaluation import (
    SdsFormatError,
    format_sds_table,
    load_sds_cases,
    run_sds,
    sds_reports_json,
)
from .query import QuerySyntaxError
from .service import NewsEngine, create_app, parse_horizon
from .summarize import (
    LabelFormatError,
    ModelFormatError,
    NoTrainingSignalError,
    label_distribution,
    load_labels,
    load_model,
    pairwise_accuracy,
    save_model,
    train_ranker,
)
from .themes import overview_json

logger = logging.getLogger(__name__)


def _engine_config(path: str | None) -> EngineConfig:
    if path is None:
        return EngineConfig()
    try:
        return load_config(path)
    except (ConfigError, OSError) as exc:
        raise click.UsageError(f"config: {exc}")


@click.group()
@click.option(
    "--config",
    "config_path",
    type=click.Path(),
    default=None,
    help="JSON config file; defaults apply when omitted.",
)
@click.pass_context
def main(ctx: click.Context, config_path: str | None) -> None:
    """Theme overviews over a news stream: ingest, search, summarize."""
    ctx.obj = _engine_config(config_path)


def _replay(engine: NewsEngine, journal: str) -> int:
    try:
        count, problems = engine.replay_journal(journal)
    except OSError as exc:
        raise click.UsageError(f"cannot read journal: {exc}")
    for problem in problems:
        click.echo(f"warning: {problem}", err=True)
    return count


@main.command()
@click.argument("journal", type=click.Path())
@click.pass_obj
def ingest(config: EngineConfig, journal: str) -> None:
    """Load a story journal, then report index and cluster counts."""
    engine = NewsEngine(config)
    count = _replay(engine, journal)
    click.echo(
        f"ingested {count} stories, {len(engine.clusterer)} online clusters"
    )


@main.command()
@click.argument("q")
@click.option("--journal", type=click.Path(), default=None, help="Journal to load first.")
@click.option("--horizon", default=None, help="1h/8h/1d/2d or raw seconds.")
@click.option("--now", "now_override", type=int, default=None, help="Clock override (epoch seconds).")
@click.option("--max-themes", type=int, default=None)
@click.option("--stories-per-theme", type=int, default=None)
@click.option("--cache/--no-cache", "use_cache", default=False, help="Serve through the TTL cache.")
@click.pass_obj
def overview(
    config: EngineConfig,
    q: str,
    journal: str | None,
    horizon: str | None,
    now_override: int | None,
    max_themes: int | None,
    stories_per_theme: int | None,
    use_cache: bool,
) -> None:
    """Print overview JSON for one query."""
    engine = NewsEngine(config)
    if journal is not None:
        _replay(engine, journal)
    now = now_override if now_override is not None else int(time.time())
    try:
        horizon_seconds = parse_horizon(horizon) if horizon is not None else None
        result, _ = engine.overview(
            q,
            now=now,
            horizon_seconds=horizon_seconds,
            max_themes=max_themes,
            stories_per_theme=stories_per_theme,
            use_cache=use_cache,
        )
    except (QuerySyntaxError, DomainError) as exc:
        raise click.UsageError(str(exc))
    click.echo(overview_json(result))


@main.command("train-ranker")
@click.argument("labels", type=click.Path())
@click.option("--out", "out_path", type=click.Path(), required=True, help="Model JSON output.")
@click.option("--epochs", type=int, default=25, show_default=True)
@click.option("--margin", type=float, default=1.0, show_default=True)
def train_ranker_cmd(labels: str, out_path: str, epochs: int, margin: float) -> None:
    """Train the pairwise ranker from a labeled-candidate file."""
    try:
        data = load_labels(labels)
    except (LabelFormatError, OSError) as exc:
        raise click.UsageError(str(exc))
    try:
        model = train_ranker(data, epochs=epochs, margin=margin)
    except (NoTrainingSignalError, ValueError) as exc:
        raise click.UsageError(str(exc))
    save_model(model, out_path)
    click.echo(f"pairwise accuracy: {pairwise_accuracy(model, data):.3f}")
    for grade, fraction in label_distribution(data).items():
        click.echo(f"{grade.value.lower()}: {fraction:.3f}")


@main.group(name="eval")
def eval_group() -> None:
    """Evaluation harnesses."""


@eval_group.command("sds")
@click.option("--corpus", "corpus_path", type=click.Path(), required=True, help="JSONL of story + reference_summary.")
@click.option("--method", type=click.Choice(["tuple", "compression", "both"]), default="both", show_default=True)
@click.option("--json", "as_json", is_flag=True, default=False, help="JSON instead of a table.")
@click.option("--oracle", is_flag=True, default=False, help="Select by ROUGE-L against the reference (pool ceiling).")
@click.option("--model", "model_path", type=click.Path(), default=None, help="Ranker model JSON.")
@click.pass_obj
def eval_sds(
    config: EngineConfig,
    corpus_path: str,
    method: str,
    as_json: bool,
    oracle: bool,
    model_path: str | None,
) -> None:
    """Single-story summarization comparison against references."""
    try:
        cases = load_sds_cases(corpus_path)
    except (SdsFormatError, OSError) as exc:
        raise click.UsageError(str(exc))
    try:
        ranker = load_model(model_path) if model_path is not None else None
    except (ModelFormatError, OSError) as exc:
        raise click.UsageError(str(exc))
    try:
        report = run_sds(
            cases,
            method,
            Embedder(config.embedder_config()),
            ranker=ranker,
            oracle=oracle,
            max_body_sentences=config.max_body_sentences,
        )
    except DomainError as exc:
        raise click.UsageError(str(exc))
    if as_json:
        click.echo(sds_reports_json([report]))
    else:
        click.echo(format_sds_table([report]))


@main.command()
@click.option("--port", type=int, default=None, help="Override the config port.")
@click.pass_obj
def serve(config: EngineConfig, port: int | None) -> None:
    """Run the HTTP service until interrupted."""
    import uvicorn

    bind_port = port if port is not None else config.port
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind(("127.0.0.1", bind_port))
    except OSError as exc:
        raise click.ClickException(f"cannot bind port {bind_port}: {exc}")
    finally:
        probe.close()
    engine = NewsEngine(config)
    if config.journal_path is not None:
        try:
            count = _replay(engine, config.journal_path)
        except click.UsageError:
            count = 0
        if count:
            click.echo(f"replayed {count} stories from journal", err=True)
    stop = threading.Event()

    def refresher() -> None:
        while not stop.wait(config.refresh_interval_seconds):
            try:
                engine.refresh_cache(now=int(time.time()))
            except Exception:
                logger.exception("refresh tick failed")

    thread = threading.Thread(target=refresher, daemon=True, name="cache-refresh")
    thread.start()
    try:
        uvicorn.run(
            create_app(engine),
            host="127.0.0.1",
            port=bind_port,
            log_level="warning",
        )
    finally:
        stop.set()


@main.command("gen-corpus")
@click.option("--out", "out_path", type=click.Path(), required=True, help="Journal file to write.")
@click.option("--spec", "spec_path", type=click.Path(), default=None, help="Corpus spec JSON; built-in five-topic corpus when omitted.")
@click.option("--labels-out", type=click.Path(), default=None, help="Also write story-to-topic labels JSON.")
def gen_corpus(out_path: str, spec_path: str | None, labels_out: str | None) -> None:
    """Write a synthetic planted-topic story journal."""
    try:
        spec = load_spec(spec_path) if spec_path is not None else default_five_topic_spec()
    except (InvalidSpecError, OSError) as exc:
        raise click.UsageError(str(exc))
    corpus = generate(spec)
    with open(out_path, "w", encoding="utf-8") as fh:
        for story in corpus.stories:
            fh.write(story_json_line(story) + "\n")
    if labels_out is not None:
        with open(labels_out, "w", encoding="utf-8") as fh:
            json.dump(corpus.topic_labels, fh, separators=(",", ":"), sort_keys=True)
            fh.write("\n")
    click.echo(f"wrote {len(corpus.stories)} stories to {out_path}")
