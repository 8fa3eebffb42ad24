"""Render AnalysisDocuments to matplotlib figures plus CSV tables.

Each render_* function takes a document dict (as produced by the analyses)
and writes <stem>.png and <stem>.csv next to each other.
"""
from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render(document: dict, stem: str | Path) -> list[Path]:
    """Dispatch on document["analysis"]; returns the written paths."""
    analysis = document.get("analysis")
    renderers = {
        "propagation": render_propagation,
        "trends": render_trends,
        "sentiment": render_heatmap,
        "topics": render_topics,
    }
    if analysis not in renderers:
        raise ValueError(f"cannot render document of analysis {analysis!r}")
    return renderers[analysis](document, Path(stem))


def render_trends(document: dict, stem: Path) -> list[Path]:
    bins = document["bins"]
    series = document["series"]

    csv_path = stem.with_suffix(".csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        labels = sorted(series)
        writer.writerow(["bin"] + labels)
        for i, b in enumerate(bins):
            writer.writerow([b] + [series[label][i] for label in labels])

    fig, ax = plt.subplots(figsize=(10, 5))
    x = np.arange(len(bins))
    for label in sorted(series):
        ax.plot(x, series[label], label=label, linewidth=1.2)
    ax.set_xticks(x[:: max(1, len(bins) // 12)])
    ax.set_xticklabels(bins[:: max(1, len(bins) // 12)], rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("articles" + (" (cumulative)" if document.get("cumulative") else ""))
    ax.set_title(f"News trends by {document['kind']} barrier")
    if len(series) <= 20:
        ax.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    png_path = stem.with_suffix(".png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def render_heatmap(document: dict, stem: Path) -> list[Path]:
    days = document["days"]
    labels = document["labels"]
    cells = document["cells"]

    csv_path = stem.with_suffix(".csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["day"] + list(labels))
        for day, row in zip(days, cells):
            writer.writerow([day] + ["" if v is None else v for v in row])

    matrix = np.array(
        [[np.nan if v is None else v for v in row] for row in cells], dtype=float
    )
    fig, ax = plt.subplots(figsize=(max(6, 0.4 * len(labels)), max(4, 0.25 * len(days))))
    cmap = plt.get_cmap("RdBu").copy()
    cmap.set_bad(color="#cccccc")  # absent cells: gray, distinct from 0
    masked = np.ma.masked_invalid(matrix)
    im = ax.imshow(masked, cmap=cmap, vmin=-1, vmax=1, aspect="auto")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=90, fontsize=7)
    ax.set_yticks(range(len(days)))
    ax.set_yticklabels(days, fontsize=7)
    ax.set_title(f"Mean sentiment by {document['kind']} barrier")
    fig.colorbar(im, ax=ax, label="compound score")
    fig.tight_layout()
    png_path = stem.with_suffix(".png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def render_topics(document: dict, stem: Path) -> list[Path]:
    topics = document["topics"]

    csv_path = stem.with_suffix(".csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["topic", "size", "coherence", "rank", "term", "score"])
        for topic in topics:
            for rank, (term, score) in enumerate(topic["terms"], start=1):
                writer.writerow(
                    [topic["id"], topic["size"], topic["coherence"], rank, term, score]
                )

    shown = topics[: min(len(topics), 12)]
    cols = 3
    rows = (len(shown) + cols - 1) // cols
    fig, axes = plt.subplots(rows, cols, figsize=(4 * cols, 2.5 * rows), squeeze=False)
    for ax in axes.flat:
        ax.axis("off")
    for ax, topic in zip(axes.flat, shown):
        terms = [t for t, _ in topic["terms"]][::-1]
        scores = [s for _, s in topic["terms"]][::-1]
        ax.axis("on")
        ax.barh(range(len(terms)), scores, color="#4878b0")
        ax.set_yticks(range(len(terms)))
        ax.set_yticklabels(terms, fontsize=7)
        ax.set_title(f"topic {topic['id']} (n={topic['size']})", fontsize=9)
    fig.suptitle(f"Top terms per topic (k={document['k']})")
    fig.tight_layout()
    png_path = stem.with_suffix(".png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)

    written = [csv_path, png_path]
    temporal = document.get("temporal")
    if temporal and temporal["counts"]:
        tfig, tax = plt.subplots(figsize=(10, 4))
        days = temporal["days"]
        x = np.arange(len(days))
        order = sorted(temporal["counts"], key=int)
        stacks = np.array([temporal["counts"][tid] for tid in order])
        tax.stackplot(x, stacks, labels=[f"topic {tid}" for tid in order])
        tax.set_xticks(x[:: max(1, len(days) // 12)])
        tax.set_xticklabels(days[:: max(1, len(days) // 12)], rotation=45, ha="right", fontsize=8)
        tax.set_ylabel("articles")
        tax.set_title("Topic frequency over time")
        if len(order) <= 15:
            tax.legend(fontsize=7, ncol=3)
        tfig.tight_layout()
        temporal_png = stem.parent / f"{stem.name}_temporal.png"
        tfig.savefig(temporal_png, dpi=150)
        plt.close(tfig)
        written.append(temporal_png)
    return written


def render_propagation(document: dict, stem: Path) -> list[Path]:
    nodes = document["nodes"]
    edges = document["edges"]

    csv_path = stem.with_suffix(".csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["src", "dst", "weight"])
        for edge in edges:
            writer.writerow([edge["src"], edge["dst"], edge["weight"]])

    nodes_csv = stem.parent / f"{stem.name}_nodes.csv"
    with open(nodes_csv, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "published_at", "label", "community"])
        for node in nodes:
            writer.writerow(
                [node["id"], node["published_at"], node["label"], node["community"]]
            )

    positions = _spring_layout(
        [n["id"] for n in nodes], [(e["src"], e["dst"]) for e in edges]
    )
    fig, ax = plt.subplots(figsize=(8, 8))
    for edge in edges:
        x0, y0 = positions[edge["src"]]
        x1, y1 = positions[edge["dst"]]
        ax.plot([x0, x1], [y0, y1], color="#999999", linewidth=0.5, zorder=1)
    communities = sorted({n["community"] for n in nodes if n["community"] is not None})
    cmap = plt.get_cmap("tab20")
    for node in nodes:
        x, y = positions[node["id"]]
        color = (
            cmap(communities.index(node["community"]) % 20)
            if node["community"] is not None
            else "#444444"
        )
        ax.scatter([x], [y], color=[color], s=30, zorder=2)
    ax.set_title(
        f"Propagation network ({len(nodes)} articles, "
        f"{len(edges)} links, Q={document['modularity']:.3f})"
    )
    ax.axis("off")
    fig.tight_layout()
    png_path = stem.with_suffix(".png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, nodes_csv, png_path]


def _spring_layout(
    node_ids: list[str],
    edges: list[tuple[str, str]],
    iterations: int = 50,
    seed: int = 7,
) -> dict[str, tuple[float, float]]:
    """Small deterministic Fruchterman-Reingold layout; rendering only,
    never part of any analysis result."""
    n = len(node_ids)
    if n == 0:
        return {}
    rng = np.random.default_rng(seed)
    pos = rng.uniform(-1, 1, size=(n, 2))
    index = {node: i for i, node in enumerate(node_ids)}
    k = 1.0 / np.sqrt(n)
    temperature = 0.1
    for _ in range(iterations):
        disp = np.zeros_like(pos)
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.linalg.norm(delta, axis=2) + 1e-9
        repulse = (k * k / dist)[:, :, None] * delta / dist[:, :, None]
        disp += repulse.sum(axis=1)
        for u, v in edges:
            i, j = index[u], index[v]
            d = pos[i] - pos[j]
            norm = np.linalg.norm(d) + 1e-9
            attract = d / norm * (norm * norm / k)
            disp[i] -= attract
            disp[j] += attract
        lengths = np.linalg.norm(disp, axis=1) + 1e-9
        pos += disp / lengths[:, None] * np.minimum(lengths, temperature)[:, None]
        temperature *= 0.95
    return {node: (float(pos[i, 0]), float(pos[i, 1])) for node, i in index.items()}
