"""Command-line interface: ingestion, enrichment coverage, the four
analyses, figure/CSV reports, and the API server."""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .analyses import AnalysisError, Snapshot, ValidationError, parse_request, run_analysis
from .barriers import UNKNOWN, BarrierKind, BarriersError, assign_barrier, load_barriers_db
from .corpus import Corpus, CorpusError, TimeWindow, load_corpus_with_report, parse_timestamp, write_corpus
from .documents import canonical_json
from .remote import ArticleQuery, ClientConfig, HttpNewsClient, RemoteError
from .service import ConfigError, load_config


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


@click.group()
def main():
    """Barrier-aware news analytics."""


@main.command()
@click.option("--event", required=True, help="event tag for the corpus")
@click.option("--out", "out_path", required=True, type=click.Path(), help="corpus file to write")
@click.option("--input", "input_path", type=click.Path(exists=True), help="local line-delimited records to convert")
@click.option("--endpoint", help="remote feed endpoint URL")
@click.option("--api-key", default="", help="remote feed API key")
@click.option("--category", multiple=True, help="category filter (repeatable)")
@click.option("--concept", multiple=True, help="concept filter (repeatable)")
@click.option("--from", "from_ts", help="window start, ISO-8601")
@click.option("--to", "to_ts", help="window end, ISO-8601")
@click.option("--page-size", default=100, show_default=True)
def ingest(event, out_path, input_path, endpoint, api_key, category, concept, from_ts, to_ts, page_size):
    """Convert a local record file or fetch a remote feed into a corpus file."""
    if input_path is None and endpoint is None:
        _fail("ingest needs either --input or --endpoint")
    try:
        if input_path is not None:
            corpus, report = load_corpus_with_report(input_path, event)
            click.echo(
                f"raw records: {report.raw_records}  retained: {report.retained}  "
                f"malformed: {report.malformed}  duplicates: {report.duplicates}"
            )
        else:
            window = None
            if from_ts and to_ts:
                window = TimeWindow(start=parse_timestamp(from_ts), end=parse_timestamp(to_ts))
            client = HttpNewsClient(ClientConfig(endpoint=endpoint, api_key=api_key, page_size=page_size))
            query = ArticleQuery(categories=category, concepts=concept, window=window)
            articles = list(client.fetch(query))
            corpus = Corpus.from_articles(event, articles)
            click.echo(f"fetched: {len(articles)}  retained: {len(corpus)}")
        write_corpus(corpus, out_path)
        click.echo(f"wrote {len(corpus)} articles to {out_path}")
    except (CorpusError, RemoteError, ValueError) as exc:
        _fail(str(exc))


@main.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--event", default="event", show_default=True)
@click.option("--publishers", required=True, type=click.Path(exists=True))
@click.option("--clusters", required=True, type=click.Path(exists=True))
def enrich(corpus_path, event, publishers, clusters):
    """Join the barriers database and report label coverage per barrier kind."""
    try:
        corpus, _ = load_corpus_with_report(corpus_path, event)
        db = load_barriers_db(publishers, clusters)
    except (CorpusError, BarriersError) as exc:
        _fail(str(exc))
    click.echo(f"articles: {len(corpus)}")
    for kind in BarrierKind:
        known = sum(
            1 for art in corpus if assign_barrier(art, kind, db) != UNKNOWN
        )
        unknown = len(corpus) - known
        click.echo(f"{kind.value:<12} known: {known:>6}  unknown: {unknown:>6}")


def _analysis_command(analysis: str):
    @click.option("--config", "config_path", required=True, type=click.Path(exists=True),
                  help="service config naming corpora and barriers files")
    @click.option("--event", required=True)
    @click.option("--barrier", default="geographic", show_default=True)
    @click.option("--from", "from_ts", required=True, help="window start, ISO-8601")
    @click.option("--to", "to_ts", required=True, help="window end, ISO-8601")
    @click.option("--tau", default=0.5, show_default=True)
    @click.option("--max-lag", default="7", show_default=True, help="days; 'none' disables the cap")
    @click.option("--mode", default="concepts", show_default=True, type=click.Choice(["concepts", "tfidf"]))
    @click.option("--k", default=10, show_default=True)
    @click.option("--m", default=10, show_default=True)
    @click.option("--bin", "bin_size", default="day", show_default=True)
    @click.option("--cumulative", is_flag=True)
    @click.option("--label", default=None, help="topics: restrict to one barrier label")
    @click.option("--out", "out_path", required=True, type=click.Path())
    def command(config_path, event, barrier, from_ts, to_ts, tau, max_lag, mode,
                k, m, bin_size, cumulative, label, out_path):
        params = {
            "analysis": analysis,
            "event": event,
            "barrier": barrier,
            "from": from_ts,
            "to": to_ts,
            "tau": tau,
            "max_lag": max_lag,
            "mode": mode,
            "k": k,
            "m": m,
            "bin": bin_size,
            "cumulative": cumulative,
            "label": label,
        }
        try:
            config = load_config(config_path)
            snapshot = _snapshot_from_config(config)
            request = parse_request(params)
            document = run_analysis(snapshot, request)
        except (ValidationError, AnalysisError, ConfigError, CorpusError) as exc:
            _fail(str(exc))
        Path(out_path).write_bytes(canonical_json(document))
        click.echo(f"wrote {analysis} document to {out_path}")

    command.__name__ = analysis
    return command


def _snapshot_from_config(config: dict) -> Snapshot:
    from .service import build_snapshot

    return build_snapshot(config)


main.command(name="propagate")(_analysis_command("propagation"))
main.command(name="trends")(_analysis_command("trends"))
main.command(name="sentiment")(_analysis_command("sentiment"))
main.command(name="topics")(_analysis_command("topics"))


@main.command()
@click.option("--in", "in_path", required=True, type=click.Path(exists=True),
              help="AnalysisDocument JSON file")
@click.option("--stem", required=True, type=click.Path(),
              help="output stem; writes <stem>.png and <stem>.csv")
def report(in_path, stem):
    """Render an AnalysisDocument to figures and delimited tables."""
    from .report import render

    document = json.loads(Path(in_path).read_text(encoding="utf-8"))
    try:
        written = render(document, stem)
    except ValueError as exc:
        _fail(str(exc))
    for path in written:
        click.echo(f"wrote {path}")


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
def serve(config_path):
    """Run the HTTP API until interrupted."""
    from .service import serve as run_server

    try:
        run_server(load_config(config_path))
    except ConfigError as exc:
        _fail(str(exc))


if __name__ == "__main__":
    main()
