"""Time-respecting article-similarity graphs and community detection by
iterative removal of high-betweenness edges."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from enum import Enum
from typing import Mapping, Sequence

from .barriers import BarrierKind, BarriersDb, assign_barrier
from .corpus import Corpus, parse_timestamp
from .topics import load_stopwords, preprocess


class PropagationError(Exception):
    pass


class TooManyNodes(PropagationError):
    pass


class EmptyGraph(PropagationError):
    pass


class VectorMode(str, Enum):
    CONCEPT_WEIGHTS = "concepts"
    TFIDF = "tfidf"


@dataclass(frozen=True)
class DocVector:
    weights: Mapping[str, float]
    mode: VectorMode


def cosine(u: DocVector, v: DocVector) -> float:
    """dot(u, v) / (|u| |v|); 0.0 when either vector has zero norm."""
    nu = math.sqrt(sum(w * w for w in u.weights.values()))
    nv = math.sqrt(sum(w * w for w in v.weights.values()))
    if nu == 0 or nv == 0:
        return 0.0
    small, large = (u.weights, v.weights) if len(u.weights) <= len(v.weights) else (v.weights, u.weights)
    dot = sum(w * large[t] for t, w in small.items() if t in large)
    return dot / (nu * nv)


@dataclass(frozen=True)
class PropagationConfig:
    tau: float = 0.5
    max_lag: timedelta | None = timedelta(days=7)
    mode: VectorMode = VectorMode.CONCEPT_WEIGHTS
    max_nodes: int = 2000

    def __post_init__(self):
        if not 0.0 <= self.tau <= 1.0:
            raise PropagationError(f"tau must be in [0, 1], got {self.tau}")


@dataclass(frozen=True)
class GraphNode:
    id: str
    published_at: datetime
    label: str  # barrier label


@dataclass(frozen=True)
class PropagationGraph:
    """Feed-forward similarity graph: edges point from earlier to later
    publications, so a topological order by (published_at, id) always exists."""

    nodes: tuple[GraphNode, ...]
    edges: tuple[tuple[str, str, float], ...]  # (src, dst, weight), weight >= tau
    config: PropagationConfig = field(default_factory=PropagationConfig)


def _vectorize(corpus: Corpus, mode: VectorMode) -> list[DocVector]:
    if mode is VectorMode.CONCEPT_WEIGHTS:
        return [
            DocVector(weights={label: w for label, w in art.concepts if w > 0}, mode=mode)
            for art in corpus
        ]
    stopwords = load_stopwords()
    docs = [preprocess(a.id, a.body or a.title, stopwords) for a in corpus]
    n = len(docs)
    df: dict[str, int] = {}
    for doc in docs:
        for term in set(doc.tokens):
            df[term] = df.get(term, 0) + 1
    vectors = []
    for doc in docs:
        counts: dict[str, float] = {}
        for term in doc.tokens:
            counts[term] = counts.get(term, 0.0) + 1.0
        weights = {
            term: count * (math.log((1 + n) / (1 + df[term])) + 1.0)
            for term, count in counts.items()
        }
        vectors.append(DocVector(weights=weights, mode=mode))
    return vectors


def build_graph(
    corpus: Corpus,
    db: BarriersDb,
    kind: BarrierKind,
    config: PropagationConfig | None = None,
) -> PropagationGraph:
    """Edge (i -> j) for each ordered article pair within max_lag whose
    cosine similarity reaches tau. An inverted index over vector supports
    prunes pairs that cannot share any term."""
    if config is None:
        config = PropagationConfig()
    articles = list(corpus)
    if len(articles) > config.max_nodes:
        raise TooManyNodes(f"{len(articles)} articles exceed max_nodes={config.max_nodes}")

    mode = config.mode
    if mode is VectorMode.CONCEPT_WEIGHTS and not any(a.concepts for a in articles):
        mode = VectorMode.TFIDF  # fall back when the feed carries no concepts
    vectors = _vectorize(corpus, mode)

    nodes = tuple(
        GraphNode(id=a.id, published_at=a.published_at, label=assign_barrier(a, kind, db))
        for a in articles
    )

    postings: dict[str, list[int]] = {}
    edges = []
    for j, art in enumerate(articles):
        candidates: set[int] = set()
        for term in vectors[j].weights:
            candidates.update(postings.get(term, ()))
        for i in sorted(candidates):
            if config.max_lag is not None and art.published_at - articles[i].published_at > config.max_lag:
                continue
            sim = cosine(vectors[i], vectors[j])
            if sim >= config.tau and sim > 0:
                edges.append((articles[i].id, art.id, sim))
        for term in vectors[j].weights:
            postings.setdefault(term, []).append(j)

    return PropagationGraph(nodes=nodes, edges=tuple(edges), config=config)


# ---------------------------------------------------------------------------
# community detection (undirected projection, unit edge weights)

Edge = tuple[str, str]


def _undirected_edges(edges: Sequence[tuple[str, str, float]]) -> list[Edge]:
    seen = set()
    out = []
    for src, dst, _w in edges:
        key = (min(src, dst), max(src, dst))
        if key not in seen and src != dst:
            seen.add(key)
            out.append(key)
    return sorted(out)


def _adjacency(node_ids: Sequence[str], edges: Sequence[Edge]) -> dict[str, list[str]]:
    adj: dict[str, list[str]] = {n: [] for n in node_ids}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def edge_betweenness(node_ids: Sequence[str], edges: Sequence[Edge]) -> dict[Edge, float]:
    """Brandes accumulation over unweighted shortest paths; each unordered
    node pair contributes once, with fractional credit under path ties."""
    adj = _adjacency(node_ids, edges)
    betweenness: dict[Edge, float] = {e: 0.0 for e in edges}
    for source in node_ids:
        stack: list[str] = []
        preds: dict[str, list[str]] = {n: [] for n in node_ids}
        sigma = {n: 0.0 for n in node_ids}
        dist = {n: -1 for n in node_ids}
        sigma[source] = 1.0
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = {n: 0.0 for n in node_ids}
        while stack:
            w = stack.pop()
            for v in preds[w]:
                credit = sigma[v] / sigma[w] * (1.0 + delta[w])
                betweenness[(min(v, w), max(v, w))] += credit
                delta[v] += credit
    return {e: b / 2.0 for e, b in betweenness.items()}  # each pair counted once


def _components(node_ids: Sequence[str], edges: Sequence[Edge]) -> list[set[str]]:
    adj = _adjacency(node_ids, edges)
    seen: set[str] = set()
    comps = []
    for start in node_ids:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def modularity(
    node_ids: Sequence[str],
    edges: Sequence[Edge],
    communities: Sequence[set[str]],
) -> float:
    """Newman-Girvan modularity with unit edge weights."""
    m = len(edges)
    if m == 0:
        return 0.0
    community_of = {}
    for idx, comp in enumerate(communities):
        for node in comp:
            community_of[node] = idx
    degree: dict[str, int] = {n: 0 for n in node_ids}
    intra = [0] * len(communities)
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
        if community_of[u] == community_of[v]:
            intra[community_of[u]] += 1
    q = 0.0
    for idx, comp in enumerate(communities):
        d_c = sum(degree[n] for n in comp)
        q += intra[idx] / m - (d_c / (2 * m)) ** 2
    return q


@dataclass(frozen=True)
class CommunityPartition:
    communities: tuple[frozenset[str], ...]
    modularity: float


def girvan_newman(
    graph: PropagationGraph,
    target_count: int | None = None,
) -> CommunityPartition:
    """Iteratively remove the max-betweenness edge (ties by smallest endpoint
    pair) and track components. Returns the max-modularity partition, or the
    first partition reaching target_count components when given.

    Shortest paths never cross components, so betweenness is computed per
    component and only the component containing the removed edge is
    recomputed after each removal.
    """
    if not graph.nodes:
        raise EmptyGraph("cannot detect communities in an empty graph")
    node_ids = sorted(n.id for n in graph.nodes)
    original_edges = _undirected_edges(graph.edges)

    # (sorted member ids, remaining edges, cached betweenness) per component
    comps: list[tuple[list[str], list[Edge], dict[Edge, float]]] = [
        (members, edges, edge_betweenness(members, edges))
        for members, edges in _split(node_ids, original_edges)
    ]

    def partition() -> list[set[str]]:
        return [set(members) for members, _, _ in comps]

    best_partition = partition()
    best_q = modularity(node_ids, original_edges, best_partition)
    if target_count is not None and len(best_partition) >= target_count:
        return _freeze(best_partition, best_q)

    while any(edges for _, edges, _ in comps):
        # deterministic tie-break: among max scores pick lexicographically smallest pair
        max_score = max(
            score for _, _, scores in comps for score in scores.values()
        )
        top_edge, comp_idx = min(
            (edge, idx)
            for idx, (_, _, scores) in enumerate(comps)
            for edge, score in scores.items()
            if score == max_score
        )
        members, edges, _ = comps[comp_idx]
        edges.remove(top_edge)
        comps[comp_idx:comp_idx + 1] = [
            (sub_members, sub_edges, edge_betweenness(sub_members, sub_edges))
            for sub_members, sub_edges in _split(members, edges)
        ]
        parts = partition()
        q = modularity(node_ids, original_edges, parts)
        if target_count is not None:
            if len(parts) >= target_count:
                return _freeze(parts, q)
        elif q > best_q:
            best_q = q
            best_partition = parts

    if target_count is not None:
        parts = partition()
        return _freeze(parts, modularity(node_ids, original_edges, parts))
    return _freeze(best_partition, best_q)


def _split(node_ids: Sequence[str], edges: Sequence[Edge]) -> list[tuple[list[str], list[Edge]]]:
    """Connected components with their incident edges."""
    comps = _components(node_ids, edges)
    out = []
    for comp in sorted(comps, key=min):
        comp_edges = [e for e in edges if e[0] in comp]
        out.append((sorted(comp), comp_edges))
    return out


def _freeze(parts: list[set[str]], q: float) -> CommunityPartition:
    ordered = sorted(parts, key=lambda c: min(c))
    return CommunityPartition(communities=tuple(frozenset(c) for c in ordered), modularity=q)


# ---------------------------------------------------------------------------
# serialization

def export_propagation(graph: PropagationGraph, partition: CommunityPartition) -> dict:
    """Serializable document: nodes with community ids, weighted edges,
    modularity, and a config echo."""
    community_of: dict[str, int] = {}
    for idx, comp in enumerate(partition.communities):
        for node_id in comp:
            community_of[node_id] = idx
    return {
        "nodes": [
            {
                "id": n.id,
                "published_at": n.published_at.strftime("%Y-%m-%dT%H:%M:%SZ"),
                "label": n.label,
                "community": community_of.get(n.id),
            }
            for n in graph.nodes
        ],
        "edges": [
            {"src": src, "dst": dst, "weight": round(weight, 9)}
            for src, dst, weight in graph.edges
        ],
        "communities": [sorted(c) for c in partition.communities],
        "modularity": round(partition.modularity, 9),
        "config": {
            "tau": graph.config.tau,
            "max_lag_seconds": (
                graph.config.max_lag.total_seconds() if graph.config.max_lag else None
            ),
            "mode": graph.config.mode.value,
            "max_nodes": graph.config.max_nodes,
        },
    }


def parse_propagation(doc: dict) -> tuple[PropagationGraph, CommunityPartition]:
    cfg = doc.get("config", {})
    lag = cfg.get("max_lag_seconds")
    config = PropagationConfig(
        tau=cfg.get("tau", 0.5),
        max_lag=timedelta(seconds=lag) if lag is not None else None,
        mode=VectorMode(cfg.get("mode", "concepts")),
        max_nodes=cfg.get("max_nodes", 2000),
    )
    nodes = tuple(
        GraphNode(
            id=n["id"],
            published_at=parse_timestamp(n["published_at"]),
            label=n["label"],
        )
        for n in doc["nodes"]
    )
    edges = tuple((e["src"], e["dst"], float(e["weight"])) for e in doc["edges"])
    partition = CommunityPartition(
        communities=tuple(frozenset(c) for c in doc["communities"]),
        modularity=float(doc["modularity"]),
    )
    return PropagationGraph(nodes=nodes, edges=edges, config=config), partition
