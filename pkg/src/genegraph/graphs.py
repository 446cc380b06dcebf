"""The two graph levels: cluster-overlap graph and per-cluster gene graph.

Both builders are pure functions of immutable datasets and return styled,
layout-ready snapshots: ellipse geometry and overlap-scaled edges for the
cluster level, pie-chart nodes and score-scaled edges for the gene level.
"""

import math
from dataclasses import dataclass

from .colors import cluster_base_color
from .errors import BadParameter, EmptyDataset, UnknownCluster
from .ingest import ClusterDataset, InteractionDataset

DEFAULT_MIN_WIDTH = 1.0
DEFAULT_MAX_WIDTH = 8.0
DEFAULT_ELLIPSE_SCALE = 8.0  # minor radius per sqrt(gene)
DEFAULT_NODE_SCALE = 15.0  # gene node radius per sqrt(association)
DEFAULT_MEMBERSHIP_TAU = 0.0  # soft membership threshold for counting
ECCENTRICITY_CAP = 4.0  # major radius never exceeds cap * minor radius
RADIUS_EXPONENT = 0.5  # node area, not diameter, tracks gene count


@dataclass(frozen=True)
class EllipseGeometry:
    minor_radius: float
    major_radius: float
    base_color: str


@dataclass(frozen=True)
class ClusterNode:
    cluster: int
    name: str
    gene_count: int
    mean_association: float
    geometry: EllipseGeometry


@dataclass(frozen=True)
class ClusterEdge:
    a: int
    b: int
    overlap: int
    width: float
    intensity: float


@dataclass(frozen=True)
class ClusterGraph:
    nodes: tuple[ClusterNode, ...]
    edges: tuple[ClusterEdge, ...]


@dataclass(frozen=True)
class PieSlice:
    cluster: int
    fraction: float


@dataclass(frozen=True)
class GeneNode:
    gene: int
    name: str
    radius: float
    pie: tuple[PieSlice, ...]


@dataclass(frozen=True)
class GeneEdge:
    a: int
    b: int
    score: float
    width: float
    intensity: float


@dataclass(frozen=True)
class GeneGraph:
    selected_cluster: int
    nodes: tuple[GeneNode, ...]
    edges: tuple[GeneEdge, ...]

    def gene_ids(self) -> set[int]:
        return {n.gene for n in self.nodes}


def edge_style(
    value: float,
    value_max: float,
    w_min: float = DEFAULT_MIN_WIDTH,
    w_max: float = DEFAULT_MAX_WIDTH,
) -> tuple[float, float]:
    """Width and intensity for an edge, monotone in value/value_max."""
    intensity = value / value_max
    return w_min + (w_max - w_min) * intensity, intensity


def mean_association(ds: ClusterDataset, cluster: int, tau: float = DEFAULT_MEMBERSHIP_TAU) -> float:
    """Arithmetic mean of the stored association scores within one cluster."""
    if not ds.has_cluster(cluster):
        raise UnknownCluster(f"no cluster with id {cluster}")
    values = [
        ds.memberships[g.id][cluster]
        for g in ds.genes
        if ds.memberships.get(g.id, {}).get(cluster, 0.0) > tau
    ]
    if not values:
        raise UnknownCluster(f"cluster {cluster} has no members")
    return sum(values) / len(values)


def node_geometry(
    gene_count: int,
    mean_assoc: float,
    scale: float = DEFAULT_ELLIPSE_SCALE,
    *,
    seed: int = 0,
    cluster_index: int = 0,
) -> EllipseGeometry:
    """Ellipse for a cluster node.

    The minor radius grows with sqrt(gene_count) so node area tracks cluster
    size; the major radius is the minor radius divided by the mean
    association (capped), so fully-associated clusters are circles and weakly
    associated ones stretch out.
    """
    if gene_count < 1:
        raise BadParameter(f"gene_count must be >= 1, got {gene_count}")
    if not 0.0 < mean_assoc <= 1.0:
        raise BadParameter(f"mean association must be in (0, 1], got {mean_assoc}")
    if scale <= 0.0:
        raise BadParameter(f"scale must be positive, got {scale}")
    minor = scale * gene_count**RADIUS_EXPONENT
    major = min(max(minor / mean_assoc, minor), ECCENTRICITY_CAP * minor)
    return EllipseGeometry(minor, major, cluster_base_color(seed, cluster_index))


def build_cluster_graph(
    ds: ClusterDataset,
    min_overlap: int = 1,
    *,
    seed: int = 0,
    ellipse_scale: float = DEFAULT_ELLIPSE_SCALE,
    w_min: float = DEFAULT_MIN_WIDTH,
    w_max: float = DEFAULT_MAX_WIDTH,
    tau: float = DEFAULT_MEMBERSHIP_TAU,
) -> ClusterGraph:
    """Cluster-overlap graph: one node per non-empty cluster, an edge for
    every unordered pair sharing at least min_overlap genes."""
    if min_overlap < 1:
        raise BadParameter(f"min_overlap must be >= 1, got {min_overlap}")
    if not ds.genes:
        raise EmptyDataset("cluster dataset has no genes")

    member_sets: dict[int, set[int]] = {}
    nodes: list[ClusterNode] = []
    for cluster_id, name in enumerate(ds.clusters):
        members = ds.members(cluster_id, tau)
        if not members:
            continue
        member_sets[cluster_id] = set(members)
        mean = mean_association(ds, cluster_id, tau)
        nodes.append(
            ClusterNode(
                cluster=cluster_id,
                name=name,
                gene_count=len(members),
                mean_association=mean,
                geometry=node_geometry(
                    len(members), mean, ellipse_scale, seed=seed, cluster_index=cluster_id
                ),
            )
        )

    ids = [n.cluster for n in nodes]
    overlaps: list[tuple[int, int, int]] = []
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            shared = len(member_sets[a] & member_sets[b])
            if shared >= min_overlap:
                overlaps.append((a, b, shared))

    edges: list[ClusterEdge] = []
    if overlaps:
        overlap_max = max(shared for _, _, shared in overlaps)
        for a, b, shared in overlaps:
            width, intensity = edge_style(shared, overlap_max, w_min, w_max)
            edges.append(ClusterEdge(a, b, shared, width, intensity))
    return ClusterGraph(tuple(nodes), tuple(edges))


def build_gene_graph(
    ds: ClusterDataset,
    interactions: InteractionDataset | None,
    cluster: int,
    *,
    node_scale: float = DEFAULT_NODE_SCALE,
    w_min: float = DEFAULT_MIN_WIDTH,
    w_max: float = DEFAULT_MAX_WIDTH,
    tau: float = DEFAULT_MEMBERSHIP_TAU,
) -> GeneGraph:
    """Gene view of one cluster: member genes as pie nodes plus the
    interaction edges whose endpoints both belong to the cluster."""
    if not ds.has_cluster(cluster):
        raise UnknownCluster(f"no cluster with id {cluster}")
    members = ds.members(cluster, tau)
    if not members:
        raise UnknownCluster(f"cluster {cluster} has no members")
    member_set = set(members)

    nodes: list[GeneNode] = []
    names = {g.id: g.name for g in ds.genes}
    for gene_id in members:
        stored = ds.memberships[gene_id]
        total = sum(stored.values())
        pie = tuple(
            PieSlice(c, stored[c] / total) for c in sorted(stored)
        )
        radius = node_scale * math.sqrt(stored[cluster])
        nodes.append(GeneNode(gene_id, names[gene_id], radius, pie))

    edges: list[GeneEdge] = []
    if interactions is not None:
        for e in interactions.edges:
            if e.source in member_set and e.target in member_set:
                width, intensity = edge_style(e.score, 1.0, w_min, w_max)
                edges.append(GeneEdge(e.source, e.target, e.score, width, intensity))
    return GeneGraph(cluster, tuple(nodes), tuple(edges))
