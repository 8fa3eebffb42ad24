"""Request validation and dispatch shared by the CLI and the HTTP service,
so both surfaces produce identical AnalysisDocuments for identical params."""
from __future__ import annotations

from dataclasses import dataclass, field
from datetime import timedelta

from . import documents
from .barriers import BarrierKind, BarriersDb
from .corpus import Corpus, CorpusError, TimeWindow, parse_timestamp, slice_window
from .propagation import PropagationConfig, PropagationError, VectorMode, build_graph, girvan_newman
from .sentiment import Lexicon, SentimentRules, load_lexicon, sentiment_heatmap
from .topics import KOutOfRange, TooFewDocs, build_topic_model, temporal_topics
from .trends import BIN_SIZES, compute_trends

ANALYSES = ("propagation", "trends", "sentiment", "topics")


class ValidationError(Exception):
    pass


class AnalysisError(Exception):
    pass


class UnknownEvent(ValidationError):
    pass


@dataclass(frozen=True)
class AnalysisRequest:
    event_tag: str
    analysis: str
    barrier: BarrierKind
    window: TimeWindow
    tau: float = 0.5
    max_lag_days: float | None = 7.0
    mode: str = "concepts"
    k: int = 10
    m: int = 10
    cumulative: bool = False
    bin_size: str = "day"
    label: str | None = None  # topics: restrict to one barrier label

    def normalized(self) -> dict:
        """Stable dict used for cache keys and config echoes."""
        return {
            "event": self.event_tag,
            "analysis": self.analysis,
            "barrier": self.barrier.value,
            "from": self.window.start.strftime("%Y-%m-%dT%H:%M:%SZ"),
            "to": self.window.end.strftime("%Y-%m-%dT%H:%M:%SZ"),
            "tau": self.tau,
            "max_lag_days": self.max_lag_days,
            "mode": self.mode,
            "k": self.k,
            "m": self.m,
            "cumulative": self.cumulative,
            "bin": self.bin_size,
            "label": self.label,
        }


def parse_request(params: dict) -> AnalysisRequest:
    """Build a validated request from string-valued query params / CLI flags."""
    try:
        analysis = params["analysis"]
        if analysis not in ANALYSES:
            raise ValidationError(f"unknown analysis {analysis!r}")
        try:
            barrier = BarrierKind(params.get("barrier", "geographic"))
        except ValueError as exc:
            raise ValidationError(f"unknown barrier kind: {params.get('barrier')!r}") from exc
        try:
            window = TimeWindow(
                start=parse_timestamp(params["from"]),
                end=parse_timestamp(params["to"]),
            )
        except (CorpusError, ValueError) as exc:
            raise ValidationError(f"bad window: {exc}") from exc

        tau = float(params.get("tau", 0.5))
        if not 0.0 <= tau <= 1.0:
            raise ValidationError(f"tau must be in [0, 1], got {tau}")
        raw_lag = params.get("max_lag", "7")
        max_lag_days = None if raw_lag in (None, "", "none") else float(raw_lag)
        if max_lag_days is not None and max_lag_days <= 0:
            raise ValidationError("max_lag must be positive")
        mode = params.get("mode", "concepts")
        if mode not in ("concepts", "tfidf"):
            raise ValidationError(f"unknown vector mode {mode!r}")
        k = int(params.get("k", 10))
        m = int(params.get("m", 10))
        if k < 1:
            raise ValidationError("k must be >= 1")
        if m < 1:
            raise ValidationError("m must be >= 1")
        bin_size = params.get("bin", "day")
        if bin_size not in BIN_SIZES:
            raise ValidationError(f"bin must be one of {BIN_SIZES}")
        cumulative = str(params.get("cumulative", "false")).lower() in ("1", "true", "yes")
        label = params.get("label") or None
    except KeyError as exc:
        raise ValidationError(f"missing required parameter: {exc.args[0]}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(str(exc)) from exc

    return AnalysisRequest(
        event_tag=params["event"],
        analysis=analysis,
        barrier=barrier,
        window=window,
        tau=tau,
        max_lag_days=max_lag_days,
        mode=mode,
        k=k,
        m=m,
        cumulative=cumulative,
        bin_size=bin_size,
        label=label,
    )


@dataclass(frozen=True)
class Snapshot:
    """Immutable service state: loaded corpora plus the barriers database."""

    corpora: dict[str, Corpus] = field(default_factory=dict)
    db: BarriersDb = field(default_factory=BarriersDb)
    lexicon: Lexicon | None = None
    rules: SentimentRules = field(default_factory=SentimentRules)

    def corpus(self, event_tag: str) -> Corpus:
        if event_tag not in self.corpora:
            raise UnknownEvent(f"unknown event {event_tag!r}")
        return self.corpora[event_tag]


def run_analysis(snapshot: Snapshot, request: AnalysisRequest) -> dict:
    """Dispatch one validated request; returns the AnalysisDocument dict
    with a config echo under "request"."""
    corpus = snapshot.corpus(request.event_tag)
    windowed = slice_window(corpus, request.window)

    try:
        if request.analysis == "propagation":
            config = PropagationConfig(
                tau=request.tau,
                max_lag=(
                    timedelta(days=request.max_lag_days)
                    if request.max_lag_days is not None
                    else None
                ),
                mode=VectorMode.TFIDF if request.mode == "tfidf" else VectorMode.CONCEPT_WEIGHTS,
            )
            graph = build_graph(windowed, snapshot.db, request.barrier, config)
            if graph.nodes:
                partition = girvan_newman(graph)
            else:
                from .propagation import CommunityPartition
                partition = CommunityPartition(communities=(), modularity=0.0)
            doc = documents.propagation_document(graph, partition)
        elif request.analysis == "trends":
            series = compute_trends(
                windowed, snapshot.db, request.barrier, request.window,
                bin_size=request.bin_size, cumulative=request.cumulative,
            )
            doc = documents.trends_document(series)
        elif request.analysis == "sentiment":
            lexicon = snapshot.lexicon if snapshot.lexicon is not None else load_lexicon()
            heatmap = sentiment_heatmap(
                windowed, snapshot.db, request.barrier, request.window,
                lexicon=lexicon, rules=snapshot.rules,
            )
            doc = documents.heatmap_document(heatmap)
        elif request.analysis == "topics":
            modeled = windowed
            if request.label is not None:
                from .barriers import assign_barrier
                modeled = Corpus(
                    event_tag=windowed.event_tag,
                    articles=tuple(
                        a for a in windowed
                        if assign_barrier(a, request.barrier, snapshot.db) == request.label
                    ),
                )
            model = build_topic_model(modeled, k=request.k, m=request.m)
            assignment = {
                member: topic.id for topic in model.topics for member in topic.members
            }
            temporal = temporal_topics(assignment, modeled, request.window)
            doc = documents.topics_document(model, temporal)
        else:
            raise ValidationError(f"unknown analysis {request.analysis!r}")
    except (KOutOfRange, TooFewDocs, PropagationError) as exc:
        raise ValidationError(str(exc)) from exc
    except ValidationError:
        raise
    except Exception as exc:
        raise AnalysisError(f"{request.analysis} failed: {exc}") from exc

    doc["request"] = request.normalized()
    return doc
