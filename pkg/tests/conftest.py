from __future__ import annotations

from datetime import datetime, timedelta, timezone
from pathlib import Path

import pytest

from newsbarriers.barriers import load_barriers_db
from newsbarriers.corpus import Article, Corpus, TimeWindow

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "newsbarriers" / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def barriers_db():
    return load_barriers_db(
        DATA_DIR / "publishers.csv",
        DATA_DIR / "clusters.csv",
        DATA_DIR / "prosperity.csv",
    )


def make_article(
    id: str,
    hours: float = 0.0,
    body: str = "",
    title: str = "",
    source: str = "CNN",
    concepts: tuple = (),
) -> Article:
    return Article(
        id=id,
        title=title or f"title {id}",
        body=body,
        source_name=source,
        published_at=datetime(2023, 11, 1, tzinfo=timezone.utc) + timedelta(hours=hours),
        concepts=concepts,
        categories=("Test Event",),
    )


@pytest.fixture
def november_window() -> TimeWindow:
    return TimeWindow(
        start=datetime(2023, 11, 1, tzinfo=timezone.utc),
        end=datetime(2023, 12, 1, tzinfo=timezone.utc),
    )


@pytest.fixture
def small_corpus() -> Corpus:
    arts = [
        make_article("a1", hours=1, body="Peace talks bring hope.", source="CNN"),
        make_article("a2", hours=5, body="Attack causes fear and crisis.", source="RT"),
        make_article("a3", hours=30, body="Markets improve on trade progress.", source="Haaretz"),
        make_article("a4", hours=31, body="Sanctions threaten exports.", source="Unknown Gazette"),
    ]
    return Corpus.from_articles("test-event", arts)
