"""Article data model, line-delimited corpus ingestion, and time-window slicing.

On-disk corpus format: UTF-8, one JSON object per line with keys
id, title, body, source_name, published_at (ISO-8601), concepts
(array of [label, weight] pairs), categories (array of strings).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Iterator


class CorpusError(Exception):
    pass


class MissingField(CorpusError):
    def __init__(self, name: str):
        super().__init__(f"missing required field: {name}")
        self.field_name = name


class MalformedTimestamp(CorpusError):
    pass


class MalformedRecord(CorpusError):
    pass


class AllRecordsMalformed(CorpusError):
    pass


REQUIRED_FIELDS = ("id", "title", "body", "source_name", "published_at")


def parse_timestamp(raw: str) -> datetime:
    """Parse an ISO-8601 timestamp; naive values are assumed UTC."""
    if not isinstance(raw, str):
        raise MalformedTimestamp(f"timestamp must be a string, got {type(raw).__name__}")
    try:
        ts = datetime.fromisoformat(raw.replace("Z", "+00:00"))
    except ValueError as exc:
        raise MalformedTimestamp(str(exc)) from exc
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc).replace(microsecond=0)


@dataclass(frozen=True)
class Article:
    id: str
    title: str
    body: str
    source_name: str
    published_at: datetime  # tz-aware UTC, second resolution
    concepts: tuple[tuple[str, float], ...] = ()
    categories: tuple[str, ...] = ()

    def sort_key(self) -> tuple[datetime, str]:
        return (self.published_at, self.id)

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "body": self.body,
            "source_name": self.source_name,
            "published_at": self.published_at.strftime("%Y-%m-%dT%H:%M:%SZ"),
            "concepts": [[label, weight] for label, weight in self.concepts],
            "categories": list(self.categories),
        }


def parse_article(record: str | dict) -> Article:
    """Parse one serialized article (a JSON line or an already-decoded dict)."""
    if isinstance(record, str):
        try:
            obj = json.loads(record)
        except json.JSONDecodeError as exc:
            raise MalformedRecord(f"invalid JSON: {exc}") from exc
    else:
        obj = record
    if not isinstance(obj, dict):
        raise MalformedRecord("record is not an object")

    for name in REQUIRED_FIELDS:
        if name not in obj or obj[name] is None:
            raise MissingField(name)

    published_at = parse_timestamp(obj["published_at"])

    concepts = []
    for pair in obj.get("concepts") or []:
        try:
            label, weight = pair[0], float(pair[1])
        except (TypeError, ValueError, IndexError) as exc:
            raise MalformedRecord(f"bad concept entry {pair!r}") from exc
        if weight < 0:
            raise MalformedRecord(f"negative concept weight for {label!r}")
        concepts.append((str(label), weight))

    categories = tuple(str(c) for c in obj.get("categories") or [])

    return Article(
        id=str(obj["id"]),
        title=str(obj["title"]),
        body=str(obj["body"]),
        source_name=str(obj["source_name"]),
        published_at=published_at,
        concepts=tuple(concepts),
        categories=categories,
    )


@dataclass(frozen=True)
class TimeWindow:
    """Half-open [start, end) interval over UTC timestamps."""

    start: datetime
    end: datetime

    def __post_init__(self):
        start = _as_utc(self.start)
        end = _as_utc(self.end)
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "end", end)
        if not start < end:
            raise ValueError(f"window start {start} must precede end {end}")

    def contains(self, ts: datetime) -> bool:
        return self.start <= ts < self.end


def _as_utc(ts: datetime) -> datetime:
    if ts.tzinfo is None:
        return ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


@dataclass(frozen=True)
class Corpus:
    """Immutable snapshot of articles for one tracked event, sorted by
    (published_at, id) with unique ids."""

    event_tag: str
    articles: tuple[Article, ...] = ()

    def __len__(self) -> int:
        return len(self.articles)

    def __iter__(self) -> Iterator[Article]:
        return iter(self.articles)

    @staticmethod
    def from_articles(event_tag: str, articles: Iterable[Article]) -> "Corpus":
        """Sort and dedupe (first occurrence of an id wins, in input order)."""
        seen: set[str] = set()
        kept = []
        for art in articles:
            if art.id in seen:
                continue
            seen.add(art.id)
            kept.append(art)
        kept.sort(key=Article.sort_key)
        return Corpus(event_tag=event_tag, articles=tuple(kept))


@dataclass
class LoadReport:
    """Ingestion accounting: raw vs retained counts plus skip reasons."""

    raw_records: int = 0
    malformed: int = 0
    duplicates: int = 0
    errors: list[str] = field(default_factory=list)

    @property
    def retained(self) -> int:
        return self.raw_records - self.malformed - self.duplicates


def load_corpus_with_report(path: str | Path, event_tag: str) -> tuple[Corpus, LoadReport]:
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CorpusError(f"cannot read corpus file {path}: {exc}") from exc

    report = LoadReport()
    seen: set[str] = set()
    articles = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        report.raw_records += 1
        try:
            art = parse_article(line)
        except CorpusError as exc:
            report.malformed += 1
            report.errors.append(f"line {lineno}: {exc}")
            continue
        if art.id in seen:
            report.duplicates += 1
            continue
        seen.add(art.id)
        articles.append(art)

    if report.raw_records > 0 and not articles and report.malformed == report.raw_records:
        raise AllRecordsMalformed(f"{path}: all {report.raw_records} records malformed")

    articles.sort(key=Article.sort_key)
    return Corpus(event_tag=event_tag, articles=tuple(articles)), report


def load_corpus(path: str | Path, event_tag: str) -> Corpus:
    corpus, _ = load_corpus_with_report(path, event_tag)
    return corpus


def write_corpus(corpus: Corpus, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for art in corpus:
            fh.write(json.dumps(art.to_record(), ensure_ascii=False) + "\n")


def slice_window(corpus: Corpus, window: TimeWindow) -> Corpus:
    """Articles with start <= published_at < end, order preserved."""
    kept = tuple(a for a in corpus if window.contains(a.published_at))
    return Corpus(event_tag=corpus.event_tag, articles=kept)
