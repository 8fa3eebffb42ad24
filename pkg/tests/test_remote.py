import json
from datetime import datetime, timezone

import httpx
import pytest

from newsbarriers.corpus import TimeWindow
from newsbarriers.remote import (
    ArticleQuery,
    AuthError,
    ClientConfig,
    FixtureNewsClient,
    HttpNewsClient,
    RateLimited,
)
from .conftest import make_article


def page_payload(page, total_pages, count=5):
    return {
        "articles": [
            {
                "id": f"p{page}-a{i}",
                "title": "t",
                "body": "b",
                "source_name": "s",
                "published_at": "2023-11-05T00:00:00Z",
                "concepts": [],
                "categories": ["Israel-Hamas War"],
            }
            for i in range(count)
        ],
        "total_pages": total_pages,
    }


def make_client(handler):
    config = ClientConfig(
        endpoint="https://feed.test/api", api_key="k", page_size=5, backoff_base=0.0
    )
    return HttpNewsClient(config, transport=httpx.MockTransport(handler))


def test_two_pages_of_five_streams_ten():
    def handler(request):
        page = int(request.url.params["page"])
        return httpx.Response(200, json=page_payload(page, total_pages=2))

    articles = list(make_client(handler).fetch(ArticleQuery()))
    assert len(articles) == 10
    assert articles[0].id == "p1-a0"


def test_rate_limited_after_three_attempts():
    calls = []

    def handler(request):
        calls.append(1)
        return httpx.Response(429)

    with pytest.raises(RateLimited):
        list(make_client(handler).fetch(ArticleQuery()))
    assert len(calls) == 3


def test_auth_error_not_retried():
    calls = []

    def handler(request):
        calls.append(1)
        return httpx.Response(401)

    with pytest.raises(AuthError):
        list(make_client(handler).fetch(ArticleQuery()))
    assert len(calls) == 1


def test_transient_then_success():
    calls = []

    def handler(request):
        calls.append(1)
        if len(calls) == 1:
            return httpx.Response(500)
        return httpx.Response(200, json=page_payload(1, total_pages=1))

    articles = list(make_client(handler).fetch(ArticleQuery()))
    assert len(articles) == 5
    assert len(calls) == 2


def test_query_params_forwarded():
    seen = {}

    def handler(request):
        seen.update(dict(request.url.params))
        return httpx.Response(200, json=page_payload(1, total_pages=1, count=0))

    window = TimeWindow(
        datetime(2023, 11, 1, tzinfo=timezone.utc),
        datetime(2023, 12, 1, tzinfo=timezone.utc),
    )
    query = ArticleQuery(categories=["Israel-Hamas War"], window=window)
    list(make_client(handler).fetch(query))
    assert seen["categories"] == "Israel-Hamas War"
    assert seen["from"] == "2023-11-01T00:00:00Z"


def test_fixture_client_category_filter():
    import dataclasses

    arts = [
        dataclasses.replace(make_article("a1"), categories=("Israel-Hamas War",)),
        make_article("a2"),
    ]
    client = FixtureNewsClient(articles=arts)
    got = list(client.fetch(ArticleQuery(categories=["Israel-Hamas War"])))
    assert [a.id for a in got] == ["a1"]
