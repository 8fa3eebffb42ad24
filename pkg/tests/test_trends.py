import random
from datetime import datetime, timezone

import pytest

from newsbarriers.barriers import UNKNOWN, BarrierKind
from newsbarriers.corpus import Corpus, TimeWindow
from newsbarriers.trends import bin_axis, compute_trends, day_axis, month_window
from .conftest import make_article


def window(d1, d2):
    return TimeWindow(
        datetime(2023, 11, d1, tzinfo=timezone.utc),
        datetime(2023, 11, d2, tzinfo=timezone.utc),
    )


class TestAxes:
    def test_day_axis_november(self):
        axis = day_axis(month_window(2023, 11))
        assert len(axis) == 30
        assert axis[0] == "2023-11-01"
        assert axis[-1] == "2023-11-30"

    def test_hour_axis(self):
        axis = bin_axis(window(1, 2), "hour")
        assert len(axis) == 24
        assert axis[0] == "2023-11-01T00:00Z"

    def test_week_axis_monday_aligned(self):
        axis = bin_axis(month_window(2023, 11), "week")
        # 2023-11-01 is a Wednesday; its week starts Monday 2023-10-30
        assert axis[0] == "2023-10-30"
        assert len(axis) == 5

    def test_unknown_bin_size(self):
        with pytest.raises(ValueError):
            bin_axis(window(1, 2), "fortnight")


def corpus_of(articles):
    return Corpus.from_articles("e", articles)


class TestComputeTrends:
    def test_known_sources_bucketed_by_day(self, barriers_db):
        c = corpus_of([
            make_article("a", hours=1, source="Haaretz"),
            make_article("b", hours=3, source="Haaretz"),
            make_article("c", hours=26, source="RT"),
        ])
        t = compute_trends(c, barriers_db, BarrierKind.GEOGRAPHIC, window(1, 4))
        assert t.series["Israel"] == (2, 0, 0)
        assert t.series["Russia"] == (0, 1, 0)

    def test_unknown_is_its_own_series(self, barriers_db):
        c = corpus_of([make_article("a", hours=1, source="Mystery Daily")])
        t = compute_trends(c, barriers_db, BarrierKind.GEOGRAPHIC, window(1, 2))
        assert t.series[UNKNOWN] == (1,)

    def test_conservation(self, barriers_db):
        rng = random.Random(17)
        sources = ["Haaretz", "RT", "BBC News", "CNN", "Nobody Knows"]
        c = corpus_of([
            make_article(f"a{i}", hours=rng.uniform(0, 29 * 24), source=rng.choice(sources))
            for i in range(200)
        ])
        w = month_window(2023, 11)
        for kind in BarrierKind:
            t = compute_trends(c, barriers_db, kind, w)
            assert sum(sum(vec) for vec in t.series.values()) == len(c)

    def test_articles_outside_window_excluded(self, barriers_db):
        c = corpus_of([
            make_article("in", hours=1, source="CNN"),
            make_article("out", hours=24 * 20, source="CNN"),
        ])
        t = compute_trends(c, barriers_db, BarrierKind.GEOGRAPHIC, window(1, 3))
        assert sum(sum(vec) for vec in t.series.values()) == 1

    def test_cumulative_is_prefix_sum(self, barriers_db):
        c = corpus_of([
            make_article(f"a{i}", hours=h, source="CNN")
            for i, h in enumerate([1, 2, 26, 50, 51])
        ])
        w = window(1, 4)
        plain = compute_trends(c, barriers_db, BarrierKind.GEOGRAPHIC, w)
        cum = compute_trends(c, barriers_db, BarrierKind.GEOGRAPHIC, w, cumulative=True)
        for label, vec in plain.series.items():
            expected = []
            running = 0
            for v in vec:
                running += v
                expected.append(running)
            assert cum.series[label] == tuple(expected)
        assert cum.series["United States"] == (2, 3, 5)

    def test_rebinning_preserves_totals(self, barriers_db):
        rng = random.Random(23)
        c = corpus_of([
            make_article(f"a{i}", hours=rng.uniform(0, 6 * 24), source="BBC News")
            for i in range(50)
        ])
        w = window(1, 8)
        totals = {
            bin_size: sum(
                sum(vec)
                for vec in compute_trends(
                    c, barriers_db, BarrierKind.GEOGRAPHIC, w, bin_size=bin_size
                ).series.values()
            )
            for bin_size in ("hour", "day", "week")
        }
        assert totals["hour"] == totals["day"] == totals["week"] == 50

    def test_empty_corpus(self, barriers_db):
        c = corpus_of([])
        t = compute_trends(c, barriers_db, BarrierKind.GEOGRAPHIC, window(1, 3))
        assert t.series == {}
        assert len(t.bins) == 2
