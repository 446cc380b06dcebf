"""Highlight queries over one gene view: hop levels, score threshold, top-n.

All three return the same shape: the selected genes with their hop level
from the origin, plus the edges of the induced subgraph (every edge whose
endpoints are both selected). Results are fully deterministic, including
edge order; the top-n tie-break on equal scores picks the lexicographically
smallest (min id, max id) pair.
"""

from collections import deque
from dataclasses import dataclass

from .errors import BadParameter, UnknownGene
from .graphs import GeneGraph

MODE_LEVELS = "levels"
MODE_THRESHOLD = "threshold"
MODE_TOP_N = "top_n"


@dataclass(frozen=True)
class HighlightResult:
    origin: int
    mode: str
    parameter: float | int
    nodes: tuple[tuple[int, int], ...]  # (gene id, level), origin at level 0
    edges: tuple[tuple[int, int, float], ...]  # (a, b, score)


def _check_origin(gg: GeneGraph, origin: int) -> None:
    if origin not in gg.gene_ids():
        raise UnknownGene(f"gene {origin} is not in the selected cluster")


def _adjacency(edges) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {}
    for a, b, _ in edges:
        if a == b:
            continue
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    return adj


def _bfs_levels(adj: dict[int, set[int]], origin: int, max_level: float) -> dict[int, int]:
    levels = {origin: 0}
    queue = deque([origin])
    while queue:
        node = queue.popleft()
        depth = levels[node]
        if depth >= max_level:
            continue
        for nxt in sorted(adj.get(node, ())):
            if nxt not in levels:
                levels[nxt] = depth + 1
                queue.append(nxt)
    return levels


def _induced(gg: GeneGraph, selected: set[int]):
    return tuple(
        (e.a, e.b, e.score)
        for e in gg.edges
        if e.a in selected and e.b in selected
    )


def _sorted_nodes(levels: dict[int, int]):
    return tuple(sorted(levels.items(), key=lambda kv: (kv[1], kv[0])))


def highlight_levels(gg: GeneGraph, origin: int, levels: int) -> HighlightResult:
    """Genes within `levels` hops of the origin: direct neighbors are level
    1, their neighbors level 2, and so on."""
    _check_origin(gg, origin)
    if levels < 1:
        raise BadParameter(f"level count must be >= 1, got {levels}")
    adj = _adjacency((e.a, e.b, e.score) for e in gg.edges)
    found = _bfs_levels(adj, origin, levels)
    return HighlightResult(
        origin, MODE_LEVELS, levels, _sorted_nodes(found), _induced(gg, set(found))
    )


def highlight_threshold(gg: GeneGraph, origin: int, theta: float) -> HighlightResult:
    """Connected component of the origin using only edges scoring >= theta,
    annotated with hop levels inside the filtered subgraph."""
    _check_origin(gg, origin)
    if not 0.0 <= theta <= 1.0:
        raise BadParameter(f"threshold must be in [0, 1], got {theta}")
    kept = [(e.a, e.b, e.score) for e in gg.edges if e.score >= theta]
    adj = _adjacency(kept)
    found = _bfs_levels(adj, origin, float("inf"))
    selected = set(found)
    edges = tuple(e for e in kept if e[0] in selected and e[1] in selected)
    return HighlightResult(origin, MODE_THRESHOLD, theta, _sorted_nodes(found), edges)


def highlight_top_n(gg: GeneGraph, origin: int, n: int) -> HighlightResult:
    """Greedy frontier growth from the origin: n times, follow the
    highest-scoring edge that leaves the selected set; stops early when the
    component is exhausted."""
    _check_origin(gg, origin)
    if n < 1:
        raise BadParameter(f"n must be >= 1, got {n}")
    levels = {origin: 0}
    chosen: list[tuple[int, int, float]] = []
    for _ in range(n):
        best = None
        best_key = None
        for e in gg.edges:
            a_in, b_in = e.a in levels, e.b in levels
            if a_in == b_in:
                continue
            inside, outside = (e.a, e.b) if a_in else (e.b, e.a)
            pair = (min(e.a, e.b), max(e.a, e.b))
            # maximize score, then prefer the smaller id pair
            key = (-e.score, pair)
            if best_key is None or key < best_key:
                best_key = key
                best = (e, inside, outside)
        if best is None:
            break
        edge, inside, outside = best
        levels[outside] = levels[inside] + 1
        chosen.append((edge.a, edge.b, edge.score))
    nodes = tuple(sorted(levels.items(), key=lambda kv: (kv[1], kv[0])))
    return HighlightResult(origin, MODE_TOP_N, n, nodes, tuple(chosen))
