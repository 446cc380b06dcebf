import random

import pytest

from genegraph import errors, graphs, ingest
from genegraph.highlight import (
    highlight_levels,
    highlight_threshold,
    highlight_top_n,
)

from .oracles import greedy_top_n_trace, hop_distances, threshold_component


def gene_graph(gene_ids, edges):
    memberships = {g: {0: 0.5} for g in gene_ids}
    genes = tuple(ingest.Gene(g, f"G{g}") for g in gene_ids)
    ds = ingest.ClusterDataset(genes, ("C0",), memberships, ingest.SOFT)
    ia = ingest.InteractionDataset(
        tuple(ingest.InteractionEdge(a, b, s) for a, b, s in edges)
    )
    return graphs.build_gene_graph(ds, ia, 0)


def random_gene_graph(rng, max_nodes=50):
    n = rng.randint(2, max_nodes)
    ids = list(range(1, n + 1))
    edges = []
    seen = set()
    for _ in range(rng.randint(1, 3 * n)):
        a, b = rng.choice(ids), rng.choice(ids)
        if a == b or (min(a, b), max(a, b)) in seen:
            continue
        seen.add((min(a, b), max(a, b)))
        edges.append((a, b, round(rng.uniform(0.0, 1.0), 3)))
    return gene_graph(ids, edges)


class TestLevels:
    def test_two_level_path(self):
        gg = gene_graph([1, 2, 3], [(1, 2, 0.5), (2, 3, 0.5)])
        result = highlight_levels(gg, 1, 2)
        assert dict(result.nodes) == {1: 0, 2: 1, 3: 2}

    def test_isolated_origin(self):
        gg = gene_graph([1, 2], [])
        result = highlight_levels(gg, 1, 3)
        assert result.nodes == ((1, 0),)
        assert result.edges == ()

    def test_triangle_keeps_within_level_edges(self):
        gg = gene_graph([1, 2, 3], [(1, 2, 0.5), (2, 3, 0.6), (1, 3, 0.7)])
        result = highlight_levels(gg, 1, 1)
        assert dict(result.nodes) == {1: 0, 2: 1, 3: 1}
        assert len(result.edges) == 3  # 2-3 connects two selected nodes

    def test_level_bound_respected(self):
        gg = gene_graph([1, 2, 3, 4], [(1, 2, 0.5), (2, 3, 0.5), (3, 4, 0.5)])
        result = highlight_levels(gg, 1, 2)
        assert 4 not in dict(result.nodes)

    def test_levels_match_hop_distances(self):
        rng = random.Random(77)
        for _ in range(40):
            gg = random_gene_graph(rng, max_nodes=25)
            ids = sorted(gg.gene_ids())
            origin = rng.choice(ids)
            dist = hop_distances(ids, [(e.a, e.b, e.score) for e in gg.edges])[origin]
            bound = rng.randint(1, len(ids))
            result = highlight_levels(gg, origin, bound)
            expected = {g: int(d) for g, d in dist.items() if d <= bound}
            assert dict(result.nodes) == expected

    def test_unknown_origin(self):
        gg = gene_graph([1], [])
        with pytest.raises(errors.UnknownGene):
            highlight_levels(gg, 99, 1)

    def test_bad_level(self):
        gg = gene_graph([1], [])
        with pytest.raises(errors.BadParameter):
            highlight_levels(gg, 1, 0)


class TestThreshold:
    def test_filters_weak_edges(self):
        gg = gene_graph([1, 2, 3], [(1, 2, 0.9), (2, 3, 0.3)])
        result = highlight_threshold(gg, 1, 0.5)
        assert dict(result.nodes) == {1: 0, 2: 1}
        assert result.edges == ((1, 2, 0.9),)

    def test_zero_threshold_is_whole_component(self):
        gg = gene_graph([1, 2, 3, 4], [(1, 2, 0.1), (2, 3, 0.2)])
        result = highlight_threshold(gg, 1, 0.0)
        assert set(dict(result.nodes)) == {1, 2, 3}

    def test_threshold_one_keeps_unit_scores(self):
        gg = gene_graph([1, 2, 3], [(1, 2, 1.0), (2, 3, 0.999)])
        result = highlight_threshold(gg, 1, 1.0)
        assert set(dict(result.nodes)) == {1, 2}

    def test_inclusive_comparison(self):
        gg = gene_graph([1, 2], [(1, 2, 0.5)])
        assert dict(highlight_threshold(gg, 1, 0.5).nodes) == {1: 0, 2: 1}

    def test_out_of_range_theta(self):
        gg = gene_graph([1], [])
        with pytest.raises(errors.BadParameter):
            highlight_threshold(gg, 1, 1.0000001)

    def test_matches_component_oracle(self):
        rng = random.Random(123)
        for _ in range(40):
            gg = random_gene_graph(rng, max_nodes=25)
            ids = sorted(gg.gene_ids())
            origin = rng.choice(ids)
            theta = round(rng.random(), 2)
            result = highlight_threshold(gg, origin, theta)
            expected = threshold_component(
                ids, [(e.a, e.b, e.score) for e in gg.edges], origin, theta
            )
            assert set(dict(result.nodes)) == expected


class TestTopN:
    def test_star_takes_best_two(self):
        gg = gene_graph(
            [1, 2, 3, 4],
            [(1, 2, 0.9), (1, 3, 0.7), (1, 4, 0.4)],
        )
        result = highlight_top_n(gg, 1, 2)
        assert set(dict(result.nodes)) == {1, 2, 3}
        assert [s for _, _, s in result.edges] == [0.9, 0.7]

    def test_n_beyond_component_stops_early(self):
        gg = gene_graph([1, 2, 3, 9], [(1, 2, 0.5), (2, 3, 0.5)])
        result = highlight_top_n(gg, 1, 10)
        assert set(dict(result.nodes)) == {1, 2, 3}
        assert len(result.edges) == 2

    def test_tie_breaks_on_smaller_pair(self):
        gg = gene_graph([5, 6, 7], [(5, 7, 0.5), (5, 6, 0.5)])
        result = highlight_top_n(gg, 5, 1)
        assert result.edges == ((5, 6, 0.5),)

    def test_matches_greedy_oracle(self):
        rng = random.Random(321)
        for _ in range(40):
            gg = random_gene_graph(rng, max_nodes=20)
            ids = sorted(gg.gene_ids())
            origin = rng.choice(ids)
            n = rng.randint(1, 8)
            result = highlight_top_n(gg, origin, n)
            edges = [(e.a, e.b, e.score) for e in gg.edges]
            selected, chosen = greedy_top_n_trace(edges, origin, n)
            assert set(dict(result.nodes)) == selected
            assert list(result.edges) == chosen

    def test_bad_n(self):
        gg = gene_graph([1], [])
        with pytest.raises(errors.BadParameter):
            highlight_top_n(gg, 1, 0)


class TestInvariants:
    def test_monotone_growth(self):
        rng = random.Random(55)
        for _ in range(20):
            gg = random_gene_graph(rng, max_nodes=20)
            ids = sorted(gg.gene_ids())
            origin = rng.choice(ids)
            by_level = [
                set(dict(highlight_levels(gg, origin, bound).nodes))
                for bound in (1, 2, 4, 8)
            ]
            for small, large in zip(by_level, by_level[1:]):
                assert small <= large
            thetas = [0.8, 0.5, 0.2, 0.0]
            by_theta = [
                set(dict(highlight_threshold(gg, origin, t).nodes)) for t in thetas
            ]
            for tight, loose in zip(by_theta, by_theta[1:]):
                assert tight <= loose
            by_n = [set(dict(highlight_top_n(gg, origin, n).nodes)) for n in (1, 2, 5, 9)]
            for small, large in zip(by_n, by_n[1:]):
                assert small <= large

    def test_closure_and_determinism(self):
        rng = random.Random(654)
        for _ in range(20):
            gg = random_gene_graph(rng, max_nodes=15)
            ids = sorted(gg.gene_ids())
            origin = rng.choice(ids)
            for build in (
                lambda: highlight_levels(gg, origin, 2),
                lambda: highlight_threshold(gg, origin, 0.4),
                lambda: highlight_top_n(gg, origin, 3),
            ):
                first = build()
                again = build()
                assert first == again
                nodes = set(dict(first.nodes))
                for a, b, _ in first.edges:
                    assert a in nodes and b in nodes
