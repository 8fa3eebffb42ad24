"""Per-barrier time-binned article counts for line/area charts."""
from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from typing import Mapping

from .barriers import BarrierKind, BarriersDb, assign_barrier
from .corpus import Corpus, TimeWindow

BIN_SIZES = ("hour", "day", "week")


def _floor_to_bin(ts: datetime, bin_size: str) -> datetime:
    if bin_size == "hour":
        return ts.replace(minute=0, second=0, microsecond=0)
    day = ts.replace(hour=0, minute=0, second=0, microsecond=0)
    if bin_size == "day":
        return day
    if bin_size == "week":  # ISO weeks, Monday start
        return day - timedelta(days=day.weekday())
    raise ValueError(f"unknown bin size {bin_size!r}; expected one of {BIN_SIZES}")


def _bin_label(ts: datetime, bin_size: str) -> str:
    if bin_size == "hour":
        return ts.strftime("%Y-%m-%dT%H:00Z")
    return ts.strftime("%Y-%m-%d")


def bin_axis(window: TimeWindow, bin_size: str = "day") -> tuple[str, ...]:
    """Labels of every bucket touched by the half-open window, in order."""
    step = {"hour": timedelta(hours=1), "day": timedelta(days=1), "week": timedelta(days=7)}[
        bin_size if bin_size in BIN_SIZES else "day"
    ]
    if bin_size not in BIN_SIZES:
        raise ValueError(f"unknown bin size {bin_size!r}; expected one of {BIN_SIZES}")
    cur = _floor_to_bin(window.start, bin_size)
    labels = []
    while cur < window.end:
        labels.append(_bin_label(cur, bin_size))
        cur += step
    return tuple(labels)


def day_axis(window: TimeWindow) -> tuple[str, ...]:
    """ISO dates of every UTC calendar day touched by the window."""
    return bin_axis(window, "day")


@dataclass(frozen=True)
class TrendSeries:
    kind: BarrierKind
    bins: tuple[str, ...]  # ordered bucket labels (ISO dates for day bins)
    series: Mapping[str, tuple[int, ...]]  # barrier label -> per-bin counts
    cumulative: bool


def compute_trends(
    corpus: Corpus,
    db: BarriersDb,
    kind: BarrierKind,
    window: TimeWindow,
    bin_size: str = "day",
    cumulative: bool = False,
) -> TrendSeries:
    """Bucketed counts per barrier label; Unknown forms its own series so the
    conservation invariant (sum of counts = articles in window) holds."""
    bins = bin_axis(window, bin_size)
    index = {d: i for i, d in enumerate(bins)}
    series: dict[str, list[int]] = {}
    for art in corpus:
        if not window.contains(art.published_at):
            continue
        label = assign_barrier(art, kind, db)
        vec = series.setdefault(label, [0] * len(bins))
        vec[index[_bin_label(_floor_to_bin(art.published_at, bin_size), bin_size)]] += 1

    if cumulative:
        for vec in series.values():
            for i in range(1, len(vec)):
                vec[i] += vec[i - 1]

    return TrendSeries(
        kind=kind,
        bins=bins,
        series={label: tuple(vec) for label, vec in sorted(series.items())},
        cumulative=cumulative,
    )


def month_window(year: int, month: int) -> TimeWindow:
    """Convenience: the calendar month as a half-open UTC window."""
    start = datetime(year, month, 1, tzinfo=timezone.utc)
    if month == 12:
        end = datetime(year + 1, 1, 1, tzinfo=timezone.utc)
    else:
        end = datetime(year, month + 1, 1, tzinfo=timezone.utc)
    return TimeWindow(start=start, end=end)
