"""Disease-mode overlay: EASE enrichment per cluster, p-value colors per gene.

The enrichment p-value is the one-tailed Fisher exact upper tail of the
hypergeometric null, made conservative by discounting the observed overlap
by one gene (the EASE modification): clusters sharing a single gene with the
disease set score 1.0. Computation is exact up to float rounding, done in
log-space from tabulated log-factorials.
"""

import math
from dataclasses import dataclass
from typing import Mapping

from .colors import NEUTRAL_GENE_COLOR, pvalue_color
from .errors import BadParameter, UnknownDisease
from .graphs import DEFAULT_MEMBERSHIP_TAU, GeneGraph
from .ingest import ClusterDataset, DiseaseDataset

DEFAULT_DIM_OPACITY = 0.25  # clusters with no disease genes
DEFAULT_COLOR_SCALE = 8.0  # -log10(p) saturating at genome-wide-ish 1e-8

RED_BELOW = 0.05
ORANGE_BELOW = 0.1

_lnfact = [0.0, 0.0]


def _ln_factorial(n: int) -> float:
    while len(_lnfact) <= n:
        _lnfact.append(math.lgamma(len(_lnfact) + 1.0))
    return _lnfact[n]


def _ln_comb(n: int, k: int) -> float:
    return _ln_factorial(n) - _ln_factorial(k) - _ln_factorial(n - k)


def _check_counts(N: int, K: int, n: int, k: int) -> None:
    if not 0 <= K <= N:
        raise BadParameter(f"need 0 <= K <= N, got K={K}, N={N}")
    if not 0 <= n <= N:
        raise BadParameter(f"need 0 <= n <= N, got n={n}, N={N}")
    if not 0 <= k <= min(n, K):
        raise BadParameter(f"need 0 <= k <= min(n, K), got k={k}")


def hypergeom_upper_tail(N: int, K: int, n: int, k: int) -> float:
    """P(X >= k) for X ~ Hypergeometric(N, K, n).

    Drawing n items from a population of N containing K marked ones, the
    probability of seeing at least k marked. Exact total function over the
    valid bounds; k at or below the guaranteed minimum returns exactly 1.
    """
    _check_counts(N, K, n, k)
    support_lo = max(0, n - (N - K))
    support_hi = min(n, K)
    if k <= support_lo:
        return 1.0
    ln_denom = _ln_comb(N, n)
    total = 0.0
    for i in range(k, support_hi + 1):
        total += math.exp(_ln_comb(K, i) + _ln_comb(N - K, n - i) - ln_denom)
    return min(total, 1.0)


def ease_score(N: int, K: int, n: int, k: int) -> float:
    """Conservative one-tailed Fisher exact p: the upper tail evaluated at
    max(k - 1, 0), so singleton overlaps are never significant."""
    _check_counts(N, K, n, k)
    return hypergeom_upper_tail(N, K, n, max(k - 1, 0))


def classify_color(p: float) -> str:
    """Significance class for a cluster: red below 0.05, orange below 0.1,
    white otherwise. Boundary values fall to the less significant class."""
    if not 0.0 <= p <= 1.0:
        raise BadParameter(f"p-value {p} outside [0, 1]")
    if p < RED_BELOW:
        return "red"
    if p < ORANGE_BELOW:
        return "orange"
    return "white"


@dataclass(frozen=True)
class DiseaseGeneMap:
    disease: str  # label as given in the query
    gene_p: Mapping[str, float]  # display name -> best (minimum) p


def build_disease_gene_map(ds: DiseaseDataset, disease: str) -> DiseaseGeneMap:
    """Per-gene best p-value over one disease's study records. Disease labels
    compare case-insensitively after trimming."""
    wanted = disease.strip().lower()
    gene_p: dict[str, float] = {}
    for rec in ds.records:
        if rec.disease.strip().lower() != wanted:
            continue
        prev = gene_p.get(rec.gene_name)
        if prev is None or rec.p_value < prev:
            gene_p[rec.gene_name] = rec.p_value
    if not gene_p:
        raise UnknownDisease(f"no records for disease {disease!r}")
    return DiseaseGeneMap(disease.strip(), gene_p)


@dataclass(frozen=True)
class EnrichmentResult:
    cluster: int
    population: int  # N: genes in the cluster dataset
    pop_hits: int  # K: of those, genes named in the disease map
    cluster_size: int  # n
    cluster_hits: int  # k
    ease_p: float
    color_class: str
    opacity: float


def cluster_overlay(
    ds: ClusterDataset,
    dmap: DiseaseGeneMap,
    *,
    dim_value: float = DEFAULT_DIM_OPACITY,
    tau: float = DEFAULT_MEMBERSHIP_TAU,
) -> tuple[EnrichmentResult, ...]:
    """One EnrichmentResult per cluster; clusters without any disease gene
    are dimmed to dim_value, all others keep full opacity."""
    N = len(ds.genes)
    hit_ids = {g.id for g in ds.genes if g.name in dmap.gene_p}
    K = len(hit_ids)
    results = []
    for cluster_id in range(len(ds.clusters)):
        members = ds.members(cluster_id, tau)
        n = len(members)
        k = sum(1 for gid in members if gid in hit_ids)
        p = ease_score(N, K, n, k)
        results.append(
            EnrichmentResult(
                cluster=cluster_id,
                population=N,
                pop_hits=K,
                cluster_size=n,
                cluster_hits=k,
                ease_p=p,
                color_class=classify_color(p),
                opacity=dim_value if k == 0 else 1.0,
            )
        )
    return tuple(results)


@dataclass(frozen=True)
class GeneOverlayEntry:
    gene: int
    p: float | None
    color: str


def gene_overlay(
    gg: GeneGraph,
    dmap: DiseaseGeneMap,
    *,
    scale: float = DEFAULT_COLOR_SCALE,
) -> tuple[GeneOverlayEntry, ...]:
    """Per-gene p-value coloring for one gene view; genes outside the
    disease map stay neutral grey."""
    out = []
    for node in gg.nodes:
        p = dmap.gene_p.get(node.name)
        if p is None:
            out.append(GeneOverlayEntry(node.gene, None, NEUTRAL_GENE_COLOR))
        else:
            out.append(GeneOverlayEntry(node.gene, p, pvalue_color(p, scale)))
    return tuple(out)
