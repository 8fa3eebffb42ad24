"""AnalysisDocument construction and canonical serialization.

Every analysis result is a plain JSON-able dict serialized with sorted keys
and compact separators, so identical inputs yield identical bytes across the
CLI, the API, and the cache.
"""
from __future__ import annotations

import json

from .propagation import CommunityPartition, PropagationGraph, export_propagation
from .sentiment import SentimentHeatmap
from .topics import TemporalTopicSeries, TopicModel
from .trends import TrendSeries


def canonical_json(document: dict) -> bytes:
    return json.dumps(
        document, sort_keys=True, separators=(",", ":"), ensure_ascii=False
    ).encode("utf-8")


def propagation_document(graph: PropagationGraph, partition: CommunityPartition) -> dict:
    doc = export_propagation(graph, partition)
    doc["analysis"] = "propagation"
    return doc


def trends_document(series: TrendSeries) -> dict:
    return {
        "analysis": "trends",
        "kind": series.kind.value,
        "bins": list(series.bins),
        "series": {label: list(counts) for label, counts in series.series.items()},
        "cumulative": series.cumulative,
    }


def heatmap_document(heatmap: SentimentHeatmap) -> dict:
    return {
        "analysis": "sentiment",
        "kind": heatmap.kind.value,
        "days": list(heatmap.days),
        "labels": list(heatmap.labels),
        "cells": [
            [None if v is None else round(v, 9) for v in row] for row in heatmap.cells
        ],
    }


def topics_document(model: TopicModel, temporal: TemporalTopicSeries | None = None) -> dict:
    doc = {
        "analysis": "topics",
        "k": model.k,
        "m": model.m,
        "topics": [
            {
                "id": t.id,
                "size": len(t.members),
                "members": list(t.members),
                "terms": [[term, round(score, 9)] for term, score in t.terms],
                "coherence": round(t.coherence, 9),
            }
            for t in model.topics
        ],
        "mean_coherence": round(model.mean_coherence, 9),
        "diversity": round(model.diversity, 9),
        "dendrogram": {
            "leaf_count": model.dendrogram.leaf_count,
            "merges": [
                [left, right, round(height, 9), size]
                for left, right, height, size in model.dendrogram.merges
            ],
        },
    }
    if temporal is not None:
        doc["temporal"] = {
            "days": list(temporal.days),
            "counts": {str(tid): list(vec) for tid, vec in sorted(temporal.counts.items())},
        }
    return doc
