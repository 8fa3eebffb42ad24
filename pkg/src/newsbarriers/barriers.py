"""Barriers database: publisher metadata, country prosperity vectors,
k-means economic clustering, and article -> barrier-label assignment."""
from __future__ import annotations

import csv
import logging
import warnings
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .corpus import Article

logger = logging.getLogger(__name__)

UNKNOWN = "Unknown"
PROSPERITY_DIMS = 12


class BarriersError(Exception):
    pass


class DimensionMismatch(BarriersError):
    pass


class KTooLarge(BarriersError):
    pass


class EmptyInput(BarriersError):
    pass


class HeaderMismatch(BarriersError):
    pass


class BarrierKind(str, Enum):
    GEOGRAPHIC = "geographic"
    ECONOMIC = "economic"
    POLITICAL = "political"


@dataclass(frozen=True)
class ProsperityVector:
    """A country's 12-dimensional economic profile."""

    country: str
    dims: tuple[float, ...]

    def __post_init__(self):
        if len(self.dims) != PROSPERITY_DIMS:
            raise DimensionMismatch(
                f"{self.country}: expected {PROSPERITY_DIMS} dimensions, got {len(self.dims)}"
            )
        if not all(np.isfinite(self.dims)):
            raise BarriersError(f"{self.country}: non-finite prosperity value")


@dataclass(frozen=True)
class PublisherProfile:
    source_name: str
    hq_country: str = UNKNOWN
    political_alignment: str = UNKNOWN

    def __post_init__(self):
        if not self.source_name:
            raise BarriersError("publisher source_name must be non-empty")


def euclidean_distance(a: ProsperityVector, b: ProsperityVector) -> float:
    """Economic disparity between two countries."""
    return float(np.linalg.norm(np.asarray(a.dims) - np.asarray(b.dims)))


@dataclass(frozen=True)
class EconomicClusterMap:
    """Country -> economic class (C1..Ck) with the centroids that produced it."""

    k: int
    assignment: Mapping[str, str]
    centroids: tuple[tuple[float, ...], ...] = ()
    seed: int = 0
    inertia: float = 0.0

    def class_of(self, country: str) -> str:
        return self.assignment.get(_canonical(country), UNKNOWN)


def kmeans(
    vectors: Sequence[ProsperityVector],
    k: int,
    seed: int = 0,
    max_iter: int = 100,
) -> EconomicClusterMap:
    """Lloyd's algorithm with seeded k-means++ initialization.

    Deterministic for fixed (vectors, k, seed, max_iter). Empty clusters are
    repaired by reseeding the centroid to the point farthest from its
    currently assigned centroid.
    """
    if not vectors:
        raise EmptyInput("no prosperity vectors to cluster")
    if k < 1 or k > len(vectors):
        raise KTooLarge(f"k={k} out of range for {len(vectors)} vectors")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")

    X = np.array([v.dims for v in vectors], dtype=float)
    n = len(X)
    rng = np.random.default_rng(seed)
    centroids = _kmeanspp_init(X, k, rng)

    labels: np.ndarray | None = None
    prev_inertia = np.inf
    for _it in range(max_iter):
        dists = np.linalg.norm(X[:, None, :] - centroids[None, :, :], axis=2)
        new_labels = dists.argmin(axis=1)

        # repair empty clusters before accepting the assignment
        for c in range(k):
            if not np.any(new_labels == c):
                per_point = dists[np.arange(n), new_labels]
                far = int(per_point.argmax())
                centroids[c] = X[far]
                dists = np.linalg.norm(X[:, None, :] - centroids[None, :, :], axis=2)
                new_labels = dists.argmin(axis=1)

        inertia = float((dists[np.arange(n), new_labels] ** 2).sum())
        assert inertia <= prev_inertia + 1e-9, "k-means inertia must not increase"
        prev_inertia = inertia
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for c in range(k):
            centroids[c] = X[labels == c].mean(axis=0)

    dists = np.linalg.norm(X[:, None, :] - centroids[None, :, :], axis=2)
    labels = dists.argmin(axis=1)
    inertia = float((dists[np.arange(n), labels] ** 2).sum())

    assignment = {
        _canonical(vectors[i].country): f"C{labels[i] + 1}" for i in range(n)
    }
    return EconomicClusterMap(
        k=k,
        assignment=assignment,
        centroids=tuple(tuple(row) for row in centroids),
        seed=seed,
        inertia=inertia,
    )


def _kmeanspp_init(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(X)
    centroids = np.empty((k, X.shape[1]))
    first = rng.integers(n)
    centroids[0] = X[first]
    closest_sq = ((X - centroids[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = closest_sq.sum()
        if total <= 0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=closest_sq / total))
        centroids[c] = X[idx]
        closest_sq = np.minimum(closest_sq, ((X - centroids[c]) ** 2).sum(axis=1))
    return centroids


# Table 1 names countries in full; chart labels use ISO codes. Both resolve.
_COUNTRY_ALIASES = {
    "usa": "united states",
    "us": "united states",
    "united states of america": "united states",
    "uk": "united kingdom",
    "gb": "united kingdom",
    "great britain": "united kingdom",
    "ru": "russia",
    "russian federation": "russia",
    "ua": "ukraine",
    "il": "israel",
    "cn": "china",
    "in": "india",
    "ca": "canada",
    "au": "australia",
    "ae": "united arab emirates",
    "uae": "united arab emirates",
    "ie": "ireland",
    "za": "south africa",
    "sa": "saudi arabia",
    "ch": "switzerland",
    "nz": "new zealand",
    "pk": "pakistan",
    "br": "brazil",
    "zw": "zimbabwe",
    "zm": "zambia",
    "vn": "vietnam",
    "jm": "jamaica",
    "dz": "algeria",
    "czechia": "czech republic",
}


def _canonical(country: str) -> str:
    name = " ".join(country.strip().lower().split())
    return _COUNTRY_ALIASES.get(name, name)


@dataclass
class BarriersDb:
    """Read-only joinable lookups: publisher -> hq/alignment, country -> class."""

    publishers: dict[str, PublisherProfile] = field(default_factory=dict)
    clusters: EconomicClusterMap | None = None
    prosperity: dict[str, ProsperityVector] = field(default_factory=dict)

    def profile(self, source_name: str) -> PublisherProfile | None:
        return self.publishers.get(source_name.strip().lower())

    def economic_class(self, country: str) -> str:
        if self.clusters is None:
            return UNKNOWN
        return self.clusters.class_of(country)


def assign_barrier(article: Article, kind: BarrierKind, db: BarriersDb) -> str:
    """Barrier label for an article via its publisher; missing links yield
    Unknown, never an error."""
    profile = db.profile(article.source_name)
    if profile is None:
        return UNKNOWN
    if kind is BarrierKind.GEOGRAPHIC:
        return profile.hq_country or UNKNOWN
    if kind is BarrierKind.POLITICAL:
        return profile.political_alignment or UNKNOWN
    if kind is BarrierKind.ECONOMIC:
        if profile.hq_country == UNKNOWN:
            return UNKNOWN
        return db.economic_class(profile.hq_country)
    return UNKNOWN


PUBLISHERS_HEADER = ["source_name", "hq_country", "political_alignment"]
CLUSTERS_HEADER = ["country", "class"]


def _read_csv(path: str | Path, expected_header: list[str]) -> list[dict]:
    path = Path(path)
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != expected_header:
                raise HeaderMismatch(
                    f"{path}: expected header {expected_header}, got {reader.fieldnames}"
                )
            return list(reader)
    except OSError as exc:
        raise BarriersError(f"cannot read {path}: {exc}") from exc


def load_cluster_fixture(path: str | Path) -> EconomicClusterMap:
    """Load a pre-computed country -> class table (no centroids)."""
    rows = _read_csv(path, CLUSTERS_HEADER)
    assignment: dict[str, str] = {}
    classes: set[str] = set()
    for row in rows:
        assignment[_canonical(row["country"])] = row["class"]
        classes.add(row["class"])
    k = len(classes)
    return EconomicClusterMap(k=k, assignment=assignment)


def load_prosperity(path: str | Path) -> dict[str, ProsperityVector]:
    expected = ["country"] + [f"d{i}" for i in range(1, PROSPERITY_DIMS + 1)]
    rows = _read_csv(path, expected)
    out = {}
    for row in rows:
        vec = ProsperityVector(
            country=row["country"],
            dims=tuple(float(row[f"d{i}"]) for i in range(1, PROSPERITY_DIMS + 1)),
        )
        out[_canonical(row["country"])] = vec
    return out


def load_barriers_db(
    publishers_path: str | Path,
    clusters_path: str | Path,
    prosperity_path: str | Path | None = None,
) -> BarriersDb:
    publishers: dict[str, PublisherProfile] = {}
    for row in _read_csv(publishers_path, PUBLISHERS_HEADER):
        key = row["source_name"].strip().lower()
        if key in publishers:
            warnings.warn(f"duplicate publisher row for {row['source_name']!r}; last row wins")
        publishers[key] = PublisherProfile(
            source_name=row["source_name"].strip(),
            hq_country=row["hq_country"].strip() or UNKNOWN,
            political_alignment=row["political_alignment"].strip() or UNKNOWN,
        )

    clusters = load_cluster_fixture(clusters_path)
    prosperity = load_prosperity(prosperity_path) if prosperity_path else {}
    return BarriersDb(publishers=publishers, clusters=clusters, prosperity=prosperity)


def zscore(vectors: Sequence[ProsperityVector]) -> list[ProsperityVector]:
    """Optional per-dimension standardization; off by default because raw
    Euclidean distances are the documented behavior."""
    X = np.array([v.dims for v in vectors], dtype=float)
    std = X.std(axis=0)
    std[std == 0] = 1.0
    Z = (X - X.mean(axis=0)) / std
    return [
        ProsperityVector(country=v.country, dims=tuple(Z[i]))
        for i, v in enumerate(vectors)
    ]
