"""Lexicon-based sentiment: article-opening extraction, rule-driven compound
scoring, three-way classification, and per-barrier daily heatmaps."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from .barriers import BarrierKind, BarriersDb, assign_barrier
from .corpus import Corpus, TimeWindow
from .trends import day_axis


class SentimentError(Exception):
    pass


class SentimentClass(str, Enum):
    NEGATIVE = "negative"
    NEUTRAL = "neutral"
    POSITIVE = "positive"


@dataclass(frozen=True)
class SentimentRules:
    negation_window: int = 3
    negation_factor: float = -0.74
    intensifier_increment: float = 0.293
    normalization_alpha: float = 15.0

    def __post_init__(self):
        if self.negation_window < 1:
            raise SentimentError("negation_window must be >= 1")
        if self.normalization_alpha <= 0:
            raise SentimentError("normalization_alpha must be > 0")


@dataclass(frozen=True)
class Lexicon:
    valences: Mapping[str, float]  # lowercase token -> signed valence
    intensifiers: frozenset[str]
    negations: frozenset[str]

    def __post_init__(self):
        overlap = set(self.valences) & self.intensifiers
        if overlap:
            raise SentimentError(
                f"tokens cannot be both valenced and intensifiers: {sorted(overlap)[:5]}"
            )


def _read_lines(path: Path) -> list[str]:
    return [ln.strip() for ln in path.read_text(encoding="utf-8").splitlines() if ln.strip()]


def load_lexicon(
    lexicon_path: str | Path | None = None,
    intensifiers_path: str | Path | None = None,
    negations_path: str | Path | None = None,
) -> Lexicon:
    """Load the TSV lexicon (token<TAB>valence) plus single-column intensifier
    and negation files. Defaults to the bundled micro-lexicon."""
    data = resources.files("newsbarriers.data")

    def _path(given, name):
        return Path(given) if given is not None else Path(str(data.joinpath(name)))

    valences = {}
    for line in _read_lines(_path(lexicon_path, "micro_lexicon.tsv")):
        token, _, raw = line.partition("\t")
        if not raw:
            raise SentimentError(f"lexicon line missing valence: {line!r}")
        valences[token.strip().lower()] = float(raw)

    intensifiers = frozenset(
        t.lower() for t in _read_lines(_path(intensifiers_path, "intensifiers.txt"))
    )
    negations = frozenset(
        t.lower() for t in _read_lines(_path(negations_path, "negations.txt"))
    )
    return Lexicon(valences=valences, intensifiers=intensifiers, negations=negations)


# Sentence-final punctuation directly after these does not end a sentence.
_ABBREVIATIONS = {
    "mr", "mrs", "ms", "dr", "prof", "gen", "col", "sgt", "st", "jr", "sr",
    "vs", "etc", "inc", "ltd", "corp", "gov", "sen", "rep", "u.s", "u.k",
    "e.g", "i.e", "approx", "no", "fig",
}

_SENTENCE_END = re.compile(r"([.!?])(\s+)")


def first_sentences(text: str, n: int = 5) -> str:
    """First min(n, count) sentences, splitting on . ! ? followed by
    whitespace unless the previous word is a known abbreviation."""
    if n <= 0 or not text.strip():
        return ""
    sentences = []
    start = 0
    for match in _SENTENCE_END.finditer(text):
        candidate = text[start:match.end(1)]
        last_word = candidate.rstrip(".!?").rsplit(None, 1)[-1].lower() if candidate.strip() else ""
        if match.group(1) == "." and last_word in _ABBREVIATIONS:
            continue
        sentences.append(candidate.strip())
        start = match.end()
        if len(sentences) == n:
            return " ".join(sentences)
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return " ".join(sentences[:n])


_TOKEN = re.compile(r"[A-Za-z']+")


def compound_score(text: str, lexicon: Lexicon, rules: SentimentRules | None = None) -> float:
    """Sum token valences after negation flips and intensifier increments
    within the preceding window, then normalize x -> x / sqrt(x^2 + alpha)."""
    if rules is None:
        rules = SentimentRules()
    tokens = [t.lower() for t in _TOKEN.findall(text)]
    total = 0.0
    for i, token in enumerate(tokens):
        valence = lexicon.valences.get(token)
        if valence is None or valence == 0.0:
            continue
        window = tokens[max(0, i - rules.negation_window):i]
        for prev in window:
            if prev in lexicon.intensifiers:
                valence += math.copysign(rules.intensifier_increment, valence)
        if any(prev in lexicon.negations for prev in window):
            valence *= rules.negation_factor
        total += valence
    score = total / math.sqrt(total * total + rules.normalization_alpha)
    return max(-1.0, min(1.0, score))


def classify(compound: float) -> SentimentClass:
    """Three-way thresholds: below -0.1 negative, above 0.1 positive,
    the closed interval [-0.1, 0.1] neutral."""
    if compound < -0.1:
        return SentimentClass.NEGATIVE
    if compound > 0.1:
        return SentimentClass.POSITIVE
    return SentimentClass.NEUTRAL


@dataclass(frozen=True)
class SentimentRecord:
    article_id: str
    compound: float
    label: SentimentClass


def score_article(body: str, title: str, lexicon: Lexicon, rules: SentimentRules | None = None) -> float:
    """Score the opening of the body (first five sentences); empty bodies
    fall back to the title."""
    text = first_sentences(body, 5) if body.strip() else title
    return compound_score(text, lexicon, rules)


@dataclass(frozen=True)
class SentimentHeatmap:
    kind: BarrierKind
    days: tuple[str, ...]
    labels: tuple[str, ...]
    cells: tuple[tuple[float | None, ...], ...]  # rows = days; None = no articles


def sentiment_heatmap(
    corpus: Corpus,
    db: BarriersDb,
    kind: BarrierKind,
    window: TimeWindow,
    lexicon: Lexicon | None = None,
    rules: SentimentRules | None = None,
) -> SentimentHeatmap:
    """Cell (day, label) = mean compound score of that day's articles with
    that barrier label; cells with no articles are absent (None), which is
    distinct from a 0.0 mean."""
    if lexicon is None:
        lexicon = load_lexicon()
    days = day_axis(window)
    day_index = {d: i for i, d in enumerate(days)}

    sums: dict[tuple[int, str], list[float]] = {}
    labels_seen: set[str] = set()
    for art in corpus:
        if not window.contains(art.published_at):
            continue
        label = assign_barrier(art, kind, db)
        labels_seen.add(label)
        score = score_article(art.body, art.title, lexicon, rules)
        sums.setdefault((day_index[art.published_at.strftime("%Y-%m-%d")], label), []).append(score)

    labels = tuple(sorted(labels_seen))
    cells = tuple(
        tuple(
            (sum(vals) / len(vals)) if (vals := sums.get((di, label))) else None
            for label in labels
        )
        for di in range(len(days))
    )
    return SentimentHeatmap(kind=kind, days=days, labels=labels, cells=cells)
