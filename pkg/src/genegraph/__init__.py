"""genegraph: two-level gene-cluster / gene-interaction graph engine.

Parses cluster, interaction and disease association tables; builds the
cluster-overlap and per-cluster gene graphs with server-computed geometry
and styling; lays them out deterministically; scores disease enrichment;
answers highlight queries; and serves it all as JSON over HTTP or the CLI.
"""

__version__ = "0.1.0"

from .ingest import (
    ClusterDataset,
    DiseaseDataset,
    Gene,
    InteractionDataset,
    parse_cluster_table,
    parse_disease_table,
    parse_interaction_table,
)

__all__ = [
    "ClusterDataset",
    "DiseaseDataset",
    "Gene",
    "InteractionDataset",
    "parse_cluster_table",
    "parse_disease_table",
    "parse_interaction_table",
    "__version__",
]
