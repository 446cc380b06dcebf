"""Assembles the JSON view payloads served over HTTP and written by the CLI.

Both surfaces call these builders with the same inputs and serialize with
jsonio, which is what makes CLI/service parity a byte-level guarantee
rather than a convention.
"""

from dataclasses import replace

from . import enrichment, graphs, highlight
from .errors import BadParameter
from .ingest import ClusterDataset, DiseaseDataset, InteractionDataset
from .layout import LayoutParams, layout_graph

DEFAULT_LAYOUT = LayoutParams()


def _layout_block(state, seed: int) -> dict:
    return {"seed": seed, "iterations": state.iteration, "converged": state.converged}


def cluster_view_payload(
    ds: ClusterDataset,
    *,
    min_overlap: int = 1,
    seed: int = 0,
    layout_params: LayoutParams = DEFAULT_LAYOUT,
) -> dict:
    graph = graphs.build_cluster_graph(ds, min_overlap, seed=seed)
    params = replace(layout_params, seed=seed)
    index = {node.cluster: i for i, node in enumerate(graph.nodes)}
    edges = [(index[e.a], index[e.b], e.intensity) for e in graph.edges]
    state = layout_graph(len(graph.nodes), edges, params)

    nodes = []
    for i, node in enumerate(graph.nodes):
        nodes.append(
            {
                "id": node.cluster,
                "name": node.name,
                "gene_count": node.gene_count,
                "mean_association": node.mean_association,
                "x": float(state.positions[i, 0]),
                "y": float(state.positions[i, 1]),
                "minor_radius": node.geometry.minor_radius,
                "major_radius": node.geometry.major_radius,
                "color": node.geometry.base_color,
            }
        )
    return {
        "nodes": nodes,
        "edges": [
            {"a": e.a, "b": e.b, "overlap": e.overlap, "width": e.width, "intensity": e.intensity}
            for e in graph.edges
        ],
        "layout": _layout_block(state, seed),
    }


def gene_view_payload(
    ds: ClusterDataset,
    interactions: InteractionDataset,
    cluster_id: int,
    *,
    seed: int = 0,
    layout_params: LayoutParams = DEFAULT_LAYOUT,
) -> dict:
    graph = graphs.build_gene_graph(ds, interactions, cluster_id)
    params = replace(layout_params, seed=seed)
    index = {node.gene: i for i, node in enumerate(graph.nodes)}
    edges = [(index[e.a], index[e.b], e.score) for e in graph.edges]
    state = layout_graph(len(graph.nodes), edges, params)

    nodes = []
    for i, node in enumerate(graph.nodes):
        nodes.append(
            {
                "id": node.gene,
                "name": node.name,
                "x": float(state.positions[i, 0]),
                "y": float(state.positions[i, 1]),
                "radius": node.radius,
                "pie": [{"cluster": s.cluster, "fraction": s.fraction} for s in node.pie],
            }
        )
    return {
        "cluster": cluster_id,
        "nodes": nodes,
        "edges": [
            {"a": e.a, "b": e.b, "score": e.score, "width": e.width, "intensity": e.intensity}
            for e in graph.edges
        ],
        "layout": _layout_block(state, seed),
    }


def diseases_payload(ds: DiseaseDataset) -> list:
    """Distinct disease labels with record counts, most-studied first."""
    counts: dict[str, int] = {}
    labels: dict[str, str] = {}  # folded -> first verbatim form
    for rec in ds.records:
        folded = rec.disease.strip().lower()
        counts[folded] = counts.get(folded, 0) + 1
        labels.setdefault(folded, rec.disease.strip())
    ordered = sorted(labels, key=lambda f: (-counts[f], labels[f]))
    return [{"disease": labels[f], "record_count": counts[f]} for f in ordered]


def cluster_overlay_payload(
    ds: ClusterDataset,
    diseases: DiseaseDataset,
    disease: str,
    *,
    min_overlap: int = 1,
    dim_value: float = enrichment.DEFAULT_DIM_OPACITY,
) -> dict:
    dmap = enrichment.build_disease_gene_map(diseases, disease)
    results = enrichment.cluster_overlay(ds, dmap, dim_value=dim_value)
    by_cluster = {r.cluster: r for r in results}
    graph = graphs.build_cluster_graph(ds, min_overlap)
    # an edge is dimmed only when every cluster it touches is dimmed
    edges = []
    for e in graph.edges:
        dimmed = by_cluster[e.a].cluster_hits == 0 and by_cluster[e.b].cluster_hits == 0
        edges.append({"a": e.a, "b": e.b, "opacity": dim_value if dimmed else 1.0})
    first = results[0] if results else None
    return {
        "disease": dmap.disease,
        "population": {
            "N": first.population if first else 0,
            "K": first.pop_hits if first else 0,
        },
        "clusters": [
            {
                "id": r.cluster,
                "ease_p": r.ease_p,
                "color_class": r.color_class,
                "opacity": r.opacity,
                "k": r.cluster_hits,
                "n": r.cluster_size,
            }
            for r in results
        ],
        "edges": edges,
    }


def gene_overlay_payload(
    ds: ClusterDataset,
    interactions: InteractionDataset,
    diseases: DiseaseDataset,
    disease: str,
    cluster_id: int,
) -> dict:
    dmap = enrichment.build_disease_gene_map(diseases, disease)
    graph = graphs.build_gene_graph(ds, interactions, cluster_id)
    genes = []
    for entry in enrichment.gene_overlay(graph, dmap):
        item = {"id": entry.gene}
        if entry.p is not None:
            item["p"] = entry.p
        item["color"] = entry.color
        genes.append(item)
    return {"disease": dmap.disease, "cluster": cluster_id, "genes": genes}


def highlight_payload(
    ds: ClusterDataset,
    interactions: InteractionDataset,
    cluster_id: int,
    origin: int,
    mode: str,
    parameter,
) -> dict:
    graph = graphs.build_gene_graph(ds, interactions, cluster_id)
    if mode == highlight.MODE_LEVELS:
        result = highlight.highlight_levels(graph, origin, _as_int(parameter, "levels"))
    elif mode == highlight.MODE_THRESHOLD:
        result = highlight.highlight_threshold(graph, origin, _as_float(parameter, "threshold"))
    elif mode == highlight.MODE_TOP_N:
        result = highlight.highlight_top_n(graph, origin, _as_int(parameter, "top_n"))
    else:
        raise BadParameter(f"unknown highlight mode {mode!r}")
    return {
        "origin": result.origin,
        "mode": result.mode,
        "parameter": result.parameter,
        "nodes": [{"id": gid, "level": level} for gid, level in result.nodes],
        "edges": [{"a": a, "b": b, "score": score} for a, b, score in result.edges],
    }


def _as_float(value, what: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise BadParameter(f"{what} parameter must be a number, got {value!r}")


def _as_int(value, what: str) -> int:
    as_float = _as_float(value, what)
    if as_float != int(as_float):
        raise BadParameter(f"{what} parameter must be an integer, got {value!r}")
    return int(as_float)
