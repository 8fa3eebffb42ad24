"""Hierarchical topic modeling: preprocessing, TF-IDF, Ward clustering via
Lance-Williams updates, dendrogram cuts, class-based term ranking, NPMI
coherence, topic diversity, and temporal topic frequency."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .corpus import Corpus, TimeWindow
from .trends import day_axis

logger = logging.getLogger(__name__)


class TopicsError(Exception):
    pass


class EmptyVocabulary(TopicsError):
    pass


class TooFewDocs(TopicsError):
    pass


class KOutOfRange(TopicsError):
    pass


@dataclass(frozen=True)
class TokenizedDoc:
    doc_id: str
    tokens: tuple[str, ...]


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Bundled stopword list by default; one term per line, UTF-8."""
    if path is None:
        text = resources.files("newsbarriers.data").joinpath("stopwords.txt").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


def preprocess(doc_id: str, text: str, stopwords: frozenset[str]) -> TokenizedDoc:
    """Lowercase, split on non-alphanumeric boundaries, drop short tokens,
    pure numbers, and stopwords."""
    tokens = []
    word = []
    for ch in text.lower():
        if ch.isalnum():
            word.append(ch)
        elif word:
            tokens.append("".join(word))
            word = []
    if word:
        tokens.append("".join(word))
    kept = tuple(
        t for t in tokens
        if len(t) >= 2 and not t.isdigit() and t not in stopwords
    )
    return TokenizedDoc(doc_id=doc_id, tokens=kept)


@dataclass(frozen=True)
class TfIdfMatrix:
    vocabulary: Mapping[str, int]
    rows: np.ndarray  # dense (n_docs, n_terms), rows L2-normalized
    doc_ids: tuple[str, ...]


def tfidf(docs: Sequence[TokenizedDoc], min_df: int = 2) -> TfIdfMatrix:
    """Smoothed TF-IDF: tf = raw count, idf = ln((1+N)/(1+df)) + 1,
    rows L2-normalized. Terms below min_df are dropped."""
    if not docs:
        raise TooFewDocs("need at least one document")
    n = len(docs)
    df: dict[str, int] = {}
    for doc in docs:
        for term in set(doc.tokens):
            df[term] = df.get(term, 0) + 1
    vocab = {t: i for i, t in enumerate(sorted(t for t, c in df.items() if c >= min_df))}
    if not vocab:
        raise EmptyVocabulary(f"no term meets min_df={min_df} over {n} docs")

    idf = np.empty(len(vocab))
    for term, col in vocab.items():
        idf[col] = math.log((1 + n) / (1 + df[term])) + 1.0

    rows = np.zeros((n, len(vocab)))
    for i, doc in enumerate(docs):
        for term in doc.tokens:
            col = vocab.get(term)
            if col is not None:
                rows[i, col] += 1.0
        rows[i] *= idf
        norm = np.linalg.norm(rows[i])
        if norm > 0:
            rows[i] /= norm
    return TfIdfMatrix(vocabulary=vocab, rows=rows, doc_ids=tuple(d.doc_id for d in docs))


@dataclass(frozen=True)
class Dendrogram:
    """Merge history: (left id, right id, height, merged size) per step.
    Leaves are 0..n-1; merge i creates cluster id n+i."""

    merges: tuple[tuple[int, int, float, int], ...]
    leaf_count: int

    def __post_init__(self):
        if len(self.merges) != self.leaf_count - 1:
            raise TopicsError("dendrogram must contain exactly n-1 merges")


def ward_cluster(matrix: TfIdfMatrix) -> Dendrogram:
    """Agglomerative Ward clustering over the matrix rows.

    Runs Lance-Williams updates on squared Euclidean distances (rows are
    L2-normalized, so squared Euclidean = 2 - 2*cosine). Heights follow the
    convention that two singletons merge at their Euclidean distance. Ties
    break on the smallest (id, id) pair.
    """
    X = matrix.rows
    n = len(X)
    if n < 2:
        raise TooFewDocs("ward clustering needs at least 2 documents")

    # d2[i][j] holds the Ward distance squared (= 2 * SSE increase of merging)
    sq = ((X[:, None, :] - X[None, :, :]) ** 2).sum(axis=2)
    d2: dict[int, dict[int, float]] = {
        i: {j: float(sq[i, j]) for j in range(n) if j != i} for i in range(n)
    }
    sizes = {i: 1 for i in range(n)}
    active = set(range(n))
    merges = []
    next_id = n
    for _step in range(n - 1):
        best = None
        for i in sorted(active):
            for j in sorted(active):
                if j <= i:
                    continue
                cand = (d2[i][j], i, j)
                if best is None or cand < best:
                    best = cand
        dist2, i, j = best
        height = math.sqrt(max(dist2, 0.0))
        ni, nj = sizes[i], sizes[j]
        merged_size = ni + nj
        merges.append((i, j, height, merged_size))

        new_d: dict[int, float] = {}
        for k in active:
            if k in (i, j):
                continue
            nk = sizes[k]
            new_d[k] = (
                (ni + nk) * d2[i][k] + (nj + nk) * d2[j][k] - nk * dist2
            ) / (ni + nj + nk)
        active.discard(i)
        active.discard(j)
        for k in list(d2):
            d2[k].pop(i, None)
            d2[k].pop(j, None)
        del d2[i], d2[j]
        d2[next_id] = new_d
        for k, v in new_d.items():
            d2[k][next_id] = v
        sizes[next_id] = merged_size
        active.add(next_id)
        next_id += 1

    return Dendrogram(merges=tuple(merges), leaf_count=n)


def cut(dendrogram: Dendrogram, k: int) -> list[int]:
    """Undo the last k-1 merges; returns a cluster index per leaf.

    Cluster indices are compact 0..k-1, ordered by smallest leaf index.
    """
    n = dendrogram.leaf_count
    if k < 1 or k > n:
        raise KOutOfRange(f"k={k} out of range for {n} documents")

    parent = list(range(n + len(dendrogram.merges)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for step, (left, right, _h, _s) in enumerate(dendrogram.merges[: n - k]):
        new_id = n + step
        parent[find(left)] = new_id
        parent[find(right)] = new_id

    roots: dict[int, int] = {}
    labels = []
    for leaf in range(n):
        r = find(leaf)
        if r not in roots:
            roots[r] = len(roots)
        labels.append(roots[r])
    return labels


def topic_terms(
    assignment: Sequence[int],
    docs: Sequence[TokenizedDoc],
    m: int = 10,
) -> dict[int, list[tuple[str, float]]]:
    """Class-based term ranking: score(t, c) = tf(t, c) * ln(1 + A / f(t))
    with A the mean class token count and f(t) the corpus-wide count of t.
    Top m per class; ties break alphabetically."""
    if len(assignment) != len(docs):
        raise TopicsError("assignment must cover all documents")

    class_counts: dict[int, dict[str, int]] = {}
    total_counts: dict[str, int] = {}
    for cls, doc in zip(assignment, docs):
        counts = class_counts.setdefault(cls, {})
        for term in doc.tokens:
            counts[term] = counts.get(term, 0) + 1
            total_counts[term] = total_counts.get(term, 0) + 1

    if not class_counts:
        return {}
    mean_class_tokens = sum(sum(c.values()) for c in class_counts.values()) / len(class_counts)

    ranked: dict[int, list[tuple[str, float]]] = {}
    for cls, counts in class_counts.items():
        scored = [
            (term, count * math.log(1 + mean_class_tokens / total_counts[term]))
            for term, count in counts.items()
        ]
        scored.sort(key=lambda pair: (-pair[1], pair[0]))
        ranked[cls] = scored[:m]
    return ranked


def npmi_coherence(
    terms: Sequence[str],
    docs: Sequence[TokenizedDoc],
    epsilon: float = 1e-12,
) -> float:
    """Mean NPMI over ordered term pairs, probabilities by boolean document
    occurrence. Terms occurring in zero documents are excluded with a warning."""
    if len(terms) < 2:
        raise TopicsError("coherence needs at least 2 ranked terms")
    n = len(docs)
    doc_sets = [set(d.tokens) for d in docs]

    occur = {}
    usable = []
    for t in terms:
        hits = frozenset(i for i, s in enumerate(doc_sets) if t in s)
        if not hits:
            logger.warning("degenerate term %r occurs in zero documents; excluded", t)
            continue
        occur[t] = hits
        usable.append(t)
    if len(usable) < 2:
        raise TopicsError("fewer than 2 usable terms for coherence")

    scores = []
    for a_idx in range(len(usable)):
        for b_idx in range(a_idx + 1, len(usable)):
            wa, wb = usable[a_idx], usable[b_idx]
            p_a = len(occur[wa]) / n
            p_b = len(occur[wb]) / n
            p_ab = len(occur[wa] & occur[wb]) / n
            if p_ab >= 1.0:  # pair in every document: the 0/0 limit is +1
                scores.append(1.0)
                continue
            pmi = math.log((p_ab + epsilon) / (p_a * p_b))
            denom = -math.log(p_ab + epsilon)
            scores.append(pmi / denom)
    return float(np.mean(scores))


@dataclass(frozen=True)
class Topic:
    id: int
    members: tuple[str, ...]  # article ids
    terms: tuple[tuple[str, float], ...]
    coherence: float


@dataclass(frozen=True)
class TopicModel:
    topics: tuple[Topic, ...]
    mean_coherence: float
    diversity: float
    k: int
    m: int
    dendrogram: Dendrogram


def topic_diversity(term_lists: Sequence[Sequence[str]]) -> float:
    """Fraction of unique terms across all topics' top-m lists."""
    total = sum(len(lst) for lst in term_lists)
    if total == 0:
        return 1.0
    unique = set()
    for lst in term_lists:
        unique.update(lst)
    return len(unique) / total


def build_topic_model(
    corpus: Corpus,
    k: int = 10,
    m: int = 10,
    stopwords: frozenset[str] | None = None,
    min_df: int = 2,
) -> TopicModel:
    """Full pipeline: preprocess -> TF-IDF -> Ward -> cut -> rank -> score.

    Deterministic: identical corpus and parameters give identical models.
    Topic ids are ordered by earliest member article time.
    """
    if stopwords is None:
        stopwords = load_stopwords()
    docs = [preprocess(a.id, a.body or a.title, stopwords) for a in corpus]
    if len(docs) < 2:
        raise TooFewDocs("topic modeling needs at least 2 articles")
    if k > len(docs):
        raise KOutOfRange(f"k={k} exceeds corpus size {len(docs)}")

    matrix = tfidf(docs, min_df=min_df)
    dendro = ward_cluster(matrix)
    raw_assignment = cut(dendro, k)

    # order topic ids by earliest member publication time
    first_seen: dict[int, tuple] = {}
    by_id = {a.id: a for a in corpus}
    for cls, doc in zip(raw_assignment, docs):
        key = by_id[doc.doc_id].sort_key()
        if cls not in first_seen or key < first_seen[cls]:
            first_seen[cls] = key
    order = sorted(first_seen, key=lambda cls: first_seen[cls])
    remap = {cls: i for i, cls in enumerate(order)}
    assignment = [remap[cls] for cls in raw_assignment]

    ranked = topic_terms(assignment, docs, m=m)
    topics = []
    for topic_id in range(k):
        members = tuple(
            doc.doc_id for cls, doc in zip(assignment, docs) if cls == topic_id
        )
        terms = tuple(ranked.get(topic_id, []))
        term_names = [t for t, _ in terms]
        try:
            coh = npmi_coherence(term_names, docs) if len(term_names) >= 2 else 0.0
        except TopicsError:
            coh = 0.0
        topics.append(Topic(id=topic_id, members=members, terms=terms, coherence=coh))

    diversity = topic_diversity([[t for t, _ in topic.terms] for topic in topics])
    mean_coherence = float(np.mean([t.coherence for t in topics])) if topics else 0.0
    return TopicModel(
        topics=tuple(topics),
        mean_coherence=mean_coherence,
        diversity=diversity,
        k=k,
        m=m,
        dendrogram=dendro,
    )


@dataclass(frozen=True)
class TemporalTopicSeries:
    days: tuple[str, ...]
    counts: Mapping[int, tuple[int, ...]]  # topic id -> per-day counts


def temporal_topics(
    assignment: Mapping[str, int],
    corpus: Corpus,
    window: TimeWindow,
) -> TemporalTopicSeries:
    """Daily article counts per topic over the window."""
    days = day_axis(window)
    index = {d: i for i, d in enumerate(days)}
    counts: dict[int, list[int]] = {}
    for art in corpus:
        if not window.contains(art.published_at):
            continue
        topic_id = assignment.get(art.id)
        if topic_id is None:
            continue
        vec = counts.setdefault(topic_id, [0] * len(days))
        vec[index[art.published_at.strftime("%Y-%m-%d")]] += 1
    return TemporalTopicSeries(
        days=days,
        counts={tid: tuple(vec) for tid, vec in counts.items()},
    )
