"""Remote news-feed client: paginated HTTPS fetching with retry/backoff,
plus a fixture-backed client for tests and offline runs."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator, Protocol, Sequence

import httpx

from .corpus import Article, CorpusError, TimeWindow, parse_article


class RemoteError(Exception):
    pass


class AuthError(RemoteError):
    pass


class RateLimited(RemoteError):
    pass


class NetworkError(RemoteError):
    pass


@dataclass(frozen=True)
class ClientConfig:
    endpoint: str
    api_key: str
    page_size: int = 100
    max_attempts: int = 3
    backoff_base: float = 0.5  # seconds, doubled per retry


@dataclass(frozen=True)
class ArticleQuery:
    categories: Sequence[str] = ()
    concepts: Sequence[str] = ()
    window: TimeWindow | None = None

    def matches(self, article: Article) -> bool:
        if self.window is not None and not self.window.contains(article.published_at):
            return False
        if self.categories and not set(self.categories) & set(article.categories):
            return False
        if self.concepts:
            labels = {label for label, _ in article.concepts}
            if not set(self.concepts) & labels:
                return False
        return True


class NewsClient(Protocol):
    def fetch(self, query: ArticleQuery) -> Iterator[Article]: ...


class HttpNewsClient:
    """Paginated GET client.

    Expects JSON responses shaped {"articles": [...], "total_pages": n};
    retries 429/5xx and transport errors with exponential backoff up to
    the configured attempt budget.
    """

    def __init__(self, config: ClientConfig, transport: httpx.BaseTransport | None = None):
        self.config = config
        self._client = httpx.Client(transport=transport, timeout=30.0)

    def fetch(self, query: ArticleQuery) -> Iterator[Article]:
        page = 1
        while True:
            payload = self._get_page(query, page)
            for record in payload.get("articles", []):
                try:
                    yield parse_article(record)
                except CorpusError:
                    continue  # dirty feeds: skip, same policy as file ingestion
            total = int(payload.get("total_pages", page))
            if page >= total:
                return
            page += 1

    def _get_page(self, query: ArticleQuery, page: int) -> dict:
        params: dict = {"page": page, "page_size": self.config.page_size}
        if query.categories:
            params["categories"] = ",".join(query.categories)
        if query.concepts:
            params["concepts"] = ",".join(query.concepts)
        if query.window is not None:
            params["from"] = query.window.start.strftime("%Y-%m-%dT%H:%M:%SZ")
            params["to"] = query.window.end.strftime("%Y-%m-%dT%H:%M:%SZ")

        delay = self.config.backoff_base
        last_error: Exception | None = None
        for attempt in range(self.config.max_attempts):
            if attempt > 0:
                time.sleep(delay)
                delay *= 2
            try:
                resp = self._client.get(
                    self.config.endpoint,
                    params=params,
                    headers={"Authorization": f"Bearer {self.config.api_key}"},
                )
            except httpx.TransportError as exc:
                last_error = NetworkError(str(exc))
                continue
            if resp.status_code in (401, 403):
                raise AuthError(f"authentication rejected (HTTP {resp.status_code})")
            if resp.status_code == 429:
                last_error = RateLimited("rate limited (HTTP 429)")
                continue
            if resp.status_code >= 500:
                last_error = NetworkError(f"server error (HTTP {resp.status_code})")
                continue
            try:
                return resp.json()
            except ValueError as exc:
                raise NetworkError(f"malformed response body: {exc}") from exc
        assert last_error is not None
        raise last_error


@dataclass
class FixtureNewsClient:
    """In-memory client serving a fixed article list; mirrors the filter
    semantics of the HTTP backend."""

    articles: list[Article] = field(default_factory=list)

    def fetch(self, query: ArticleQuery) -> Iterator[Article]:
        for art in self.articles:
            if query.matches(art):
                yield art
