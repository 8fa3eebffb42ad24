"""News-barrier analytics: corpora, barrier metadata, and four analyses
(propagation networks, trends, sentiment heatmaps, hierarchical topics)."""

__version__ = "0.1.0"
