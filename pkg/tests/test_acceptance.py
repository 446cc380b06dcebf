"""Acceptance suite: one test per contract criterion, each printing a
PASS/FAIL line (run with -s to see them). Tolerances and time budgets are
asserted exactly as stated; the oracles live in tests/oracles.py and share
no code with the paths they check.
"""

import math
import random
import time
from contextlib import contextmanager

import numpy as np
import pytest
from fastapi.testclient import TestClient

from genegraph import errors, graphs, ingest
from genegraph.cli import main as cli_main
from genegraph.enrichment import classify_color, ease_score, hypergeom_upper_tail
from genegraph.highlight import highlight_levels, highlight_threshold, highlight_top_n
from genegraph.layout import LayoutParams, init_layout, layout_graph, run_until_converged
from genegraph.service import create_app

from . import oracles
from .conftest import (
    DISEASE_TEXT,
    INTERACTION_TEXT,
    SOFT_CLUSTER_TEXT,
    TRIO_CLUSTER_TEXT,
    TRIO_DISEASE_TEXT,
    TRIO_INTERACTION_TEXT,
    make_session,
)


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"\nACCEPTANCE {name}: FAIL")
        raise
    print(f"\nACCEPTANCE {name}: PASS")


# --- 1. format fidelity -----------------------------------------------------

FUZZ_POOL = list("\t,\"'\n01.eE-+xyz é") + ["NaN", "inf", "1e999", "-3", "1.7"]


def _mutate(rng: random.Random, text: str) -> str:
    out = text
    for _ in range(rng.randint(1, 4)):
        op = rng.randrange(7)
        if not out:
            return out
        if op == 0:  # delete a char
            i = rng.randrange(len(out))
            out = out[:i] + out[i + 1 :]
        elif op == 1:  # insert a token
            i = rng.randrange(len(out) + 1)
            out = out[:i] + rng.choice(FUZZ_POOL) + out[i:]
        elif op == 2:  # duplicate a line
            lines = out.splitlines()
            lines.insert(rng.randrange(len(lines) + 1), rng.choice(lines))
            out = "\n".join(lines)
        elif op == 3:  # drop a line
            lines = out.splitlines()
            del lines[rng.randrange(len(lines))]
            out = "\n".join(lines)
        elif op == 4:  # swap delimiters
            out = out.translate(str.maketrans({",": "\t", "\t": ","}))
        elif op == 5:  # truncate
            out = out[: rng.randrange(len(out))]
        else:  # replace a field with garbage
            lines = out.split("\n")
            i = rng.randrange(len(lines))
            cells = lines[i].split("," if "," in lines[i] else "\t")
            cells[rng.randrange(len(cells))] = rng.choice(FUZZ_POOL)
            lines[i] = ",".join(cells)
            out = "\n".join(lines)
    return out


def test_format_fidelity():
    with criterion("format fidelity"):
        started = time.perf_counter()

        ds = ingest.parse_cluster_table(SOFT_CLUSTER_TEXT)
        assert [(g.id, g.name) for g in ds.genes] == [
            (873, "CBR1"), (2026, "ENO2"), (2665, "GDI2")
        ]
        assert ds.kind == ingest.SOFT
        assert ds.memberships[873] == {0: 0.2, 1: 0.4, 2: 0.9}
        assert ds.memberships[2026] == {0: 0.6, 1: 0.6, 2: 0.2}
        assert ds.memberships[2665] == {0: 0.1, 1: 0.2, 2: 0.1}

        ia = ingest.parse_interaction_table(INTERACTION_TEXT)
        assert [(e.source, e.target, e.score) for e in ia.edges] == [
            (216, 216, 0.75), (3679, 1134, 0.73), (55607, 71, 0.65)
        ]
        assert ia.self_loops == ((2, 216),)

        dd = ingest.parse_disease_table(DISEASE_TEXT)
        assert [(r.disease, r.gene_name, r.p_value) for r in dd.records] == [
            ("depressive disorder", "CBX4", 2e-7),
            ("depressive disorder", "PDZD2", 3e-7),
            ("depressive disorder", "CTC-497E21.5", 7e-7),
        ]

        rng = random.Random(0xF0221)
        bases = [
            (SOFT_CLUSTER_TEXT, ingest.parse_cluster_table),
            (INTERACTION_TEXT, ingest.parse_interaction_table),
            (DISEASE_TEXT, ingest.parse_disease_table),
        ]
        for i in range(1000):
            text, parse = bases[i % 3]
            mutated = _mutate(rng, text)
            try:
                parse(mutated)
            except errors.ParseError as exc:
                assert exc.code != "PARSE_ERROR"  # concrete typed subclass
                assert exc.row is not None  # located
            # any other exception propagates and fails the criterion

        elapsed = time.perf_counter() - started
        assert elapsed < 10.0, f"fuzz run took {elapsed:.1f}s"


# --- 2. hard-cluster rule ---------------------------------------------------


def test_hard_cluster_rule():
    with criterion("hard-cluster rule"):
        rng = random.Random(0x44A5D)
        for _ in range(100):
            n_clusters = rng.randint(1, 8)
            n_genes = rng.randint(1, 50)
            header = "\t".join(
                ["geneEntrezId", "geneName"] + [f"C{i}" for i in range(n_clusters)]
            )
            lines = [header]
            expected_counts = {}
            for gid in range(1, n_genes + 1):
                cells = [rng.choice(["0", "1", ""]) for _ in range(n_clusters)]
                expected_counts[gid] = cells.count("1")
                lines.append("\t".join([str(gid), f"G{gid}", *cells]))
            ds = ingest.parse_cluster_table("\n".join(lines) + "\n")
            assert ds.kind == ingest.HARD
            for gid, ones in expected_counts.items():
                stored = ds.memberships[gid]
                assert len(stored) == ones
                if ones:
                    for value in stored.values():
                        assert value == 1.0 / ones
                    assert abs(sum(stored.values()) - 1.0) <= 1e-12


# --- 3. enrichment exactness ------------------------------------------------


def test_enrichment_exactness():
    with criterion("enrichment exactness"):
        started = time.perf_counter()
        for N in range(0, 41):
            for K in range(0, N + 1):
                for n in range(0, N + 1):
                    exact = oracles.upper_tail_suffix_floats(N, K, n)
                    for k in range(min(n, K) + 1):
                        got = hypergeom_upper_tail(N, K, n, k)
                        want = exact[k]
                        assert abs(got - want) <= 1e-12 * want, (N, K, n, k)
                        assert ease_score(N, K, n, k) == (
                            hypergeom_upper_tail(N, K, n, max(k - 1, 0))
                        )
        elapsed = time.perf_counter() - started
        assert elapsed < 60.0, f"grid took {elapsed:.1f}s"

        assert classify_color(0.03) == "red"
        assert classify_color(0.07) == "orange"
        assert classify_color(0.5) == "white"


# --- 4. highlight correctness -----------------------------------------------


def _random_gene_graph(rng: random.Random):
    n = rng.randint(2, 50)
    ids = list(range(1, n + 1))
    memberships = {g: {0: 0.5} for g in ids}
    genes = tuple(ingest.Gene(g, f"G{g}") for g in ids)
    ds = ingest.ClusterDataset(genes, ("C0",), memberships, ingest.SOFT)
    seen = set()
    edges = []
    for _ in range(rng.randint(1, 2 * n)):
        a, b = rng.choice(ids), rng.choice(ids)
        key = (min(a, b), max(a, b))
        if a == b or key in seen:
            continue
        seen.add(key)
        edges.append(ingest.InteractionEdge(a, b, round(rng.uniform(0, 1), 3)))
    return graphs.build_gene_graph(ds, ingest.InteractionDataset(tuple(edges)), 0)


def test_highlight_correctness():
    with criterion("highlight correctness"):
        rng = random.Random(0xA1)
        for _ in range(200):
            gg = _random_gene_graph(rng)
            ids = sorted(gg.gene_ids())
            edges = [(e.a, e.b, e.score) for e in gg.edges]
            origin = rng.choice(ids)
            dist = oracles.hop_distances(ids, edges)[origin]

            bound = rng.randint(1, len(ids))
            levels = dict(highlight_levels(gg, origin, bound).nodes)
            assert levels == {
                g: int(d) for g, d in dist.items() if d <= bound
            }

            theta = round(rng.random(), 2)
            got = set(dict(highlight_threshold(gg, origin, theta).nodes))
            assert got == oracles.threshold_component(ids, edges, origin, theta)

            n = rng.randint(1, 10)
            result = highlight_top_n(gg, origin, n)
            selected, chosen = oracles.greedy_top_n_trace(edges, origin, n)
            assert set(dict(result.nodes)) == selected
            assert list(result.edges) == chosen

        # the documented two-level example: path a-b-c from a
        gg = _path_graph()
        result = highlight_levels(gg, 101, 2)
        assert dict(result.nodes) == {101: 0, 102: 1, 103: 2}


def _path_graph():
    ids = [101, 102, 103]
    memberships = {g: {0: 1.0} for g in ids}
    genes = tuple(ingest.Gene(g, chr(ord("a") + i)) for i, g in enumerate(ids))
    ds = ingest.ClusterDataset(genes, ("C0",), memberships, ingest.SOFT)
    ia = ingest.InteractionDataset(
        (ingest.InteractionEdge(101, 102, 0.9), ingest.InteractionEdge(102, 103, 0.8))
    )
    return graphs.build_gene_graph(ds, ia, 0)


# --- 5. layout determinism and physics ---------------------------------------


def test_layout_determinism_and_physics():
    with criterion("layout determinism and physics"):
        started = time.perf_counter()

        rng = random.Random(0x1A)
        edges = []
        seen = set()
        while len(edges) < 45:
            a, b = rng.randrange(30), rng.randrange(30)
            if a == b or (min(a, b), max(a, b)) in seen:
                continue
            seen.add((min(a, b), max(a, b)))
            edges.append((a, b, rng.uniform(0.1, 1.0)))
        params = LayoutParams(seed=0xBEEF, max_iters=600)
        runs = [layout_graph(30, edges, params) for _ in range(10)]
        for other in runs[1:]:
            assert np.array_equal(runs[0].positions, other.positions)
            assert runs[0].iteration == other.iteration

        two = LayoutParams(seed=11, gravity=0.0, epsilon=1e-3, max_iters=1000)
        state = run_until_converged(init_layout(2, two), [(0, 1, 1.0)], two)
        assert state.converged
        expected = oracles.equilibrium_separation(
            two.repulsion, two.stiffness, two.rest_length
        )
        actual = math.dist(state.positions[0], state.positions[1])
        assert abs(actual - expected) / expected < 0.01

        big_edges = []
        seen = set()
        while len(big_edges) < 300:
            a, b = rng.randrange(200), rng.randrange(200)
            if a == b or (min(a, b), max(a, b)) in seen:
                continue
            seen.add((min(a, b), max(a, b)))
            big_edges.append((a, b, rng.uniform(0.1, 1.0)))
        forced = LayoutParams(seed=77, epsilon=0.0, max_iters=10_000)
        state = run_until_converged(init_layout(200, forced), big_edges, forced)
        assert state.iteration == 10_000 and not state.converged
        assert np.all(np.isfinite(state.positions))

        elapsed = time.perf_counter() - started
        assert elapsed < 30.0, f"layout criterion took {elapsed:.1f}s"


# --- 6. geometry rules --------------------------------------------------------


def test_geometry_rules():
    with criterion("geometry rules"):
        rng = random.Random(0x6E0)
        for i in range(1000):
            count = rng.randint(1, 2000)
            assoc = 1.0 if i % 10 == 0 else rng.uniform(1e-6, 1.0)
            geo = graphs.node_geometry(count, assoc, 8.0)
            assert geo.major_radius >= geo.minor_radius > 0
            if assoc == 1.0:
                assert geo.major_radius == geo.minor_radius  # circle
            else:
                assert geo.major_radius > geo.minor_radius
            # monotone: lower association never yields a shorter major axis
            other = rng.uniform(1e-6, 1.0)
            lo, hi = sorted((assoc, other))
            geo_lo = graphs.node_geometry(count, lo, 8.0)
            geo_hi = graphs.node_geometry(count, hi, 8.0)
            assert geo_lo.major_radius >= geo_hi.major_radius


# --- 7. service contract -------------------------------------------------------


def test_service_contract(tmp_path):
    with criterion("service contract"):
        seed = 4242
        paths = {}
        for kind, text in (("cluster", TRIO_CLUSTER_TEXT),
                           ("interaction", TRIO_INTERACTION_TEXT),
                           ("disease", TRIO_DISEASE_TEXT)):
            p = tmp_path / f"{kind}.csv"
            p.write_text(text, encoding="utf-8")
            paths[kind] = str(p)

        def cli_bytes(name, argv):
            out = tmp_path / name
            assert cli_main(argv + ["--out", str(out)]) == 0
            return out.read_bytes()

        golden = {
            "cluster-view": cli_bytes("cv.json", [
                "layout", "--cluster", paths["cluster"], "--seed", str(seed)]),
            "gene-view": cli_bytes("gv.json", [
                "layout", "--cluster", paths["cluster"],
                "--interactions", paths["interaction"],
                "--cluster-id", "1", "--seed", str(seed)]),
            "overlay": cli_bytes("ov.json", [
                "overlay", "--cluster", paths["cluster"],
                "--diseases", paths["disease"], "--disease", "crohn's disease"]),
            "hl-levels": cli_bytes("h1.json", [
                "highlight", "--cluster", paths["cluster"],
                "--interactions", paths["interaction"], "--cluster-id", "1",
                "--origin", "7", "--mode", "levels", "--parameter", "2"]),
            "hl-threshold": cli_bytes("h2.json", [
                "highlight", "--cluster", paths["cluster"],
                "--interactions", paths["interaction"], "--cluster-id", "1",
                "--origin", "7", "--mode", "threshold", "--parameter", "0.5"]),
            "hl-top-n": cli_bytes("h3.json", [
                "highlight", "--cluster", paths["cluster"],
                "--interactions", paths["interaction"], "--cluster-id", "1",
                "--origin", "7", "--mode", "top_n", "--parameter", "3"]),
        }

        with TestClient(create_app()) as client:
            sid = make_session(client, seed=seed, datasets={
                "cluster": TRIO_CLUSTER_TEXT,
                "interaction": TRIO_INTERACTION_TEXT,
                "disease": TRIO_DISEASE_TEXT,
            })
            got = {
                "cluster-view": client.get(f"/sessions/{sid}/cluster-view").content,
                "gene-view": client.get(f"/sessions/{sid}/clusters/1/gene-view").content,
                "overlay": client.get(
                    f"/sessions/{sid}/overlay",
                    params={"disease": "crohn's disease"}).content,
                "hl-levels": client.get(
                    f"/sessions/{sid}/highlight",
                    params={"cluster_id": 1, "origin": 7,
                            "mode": "levels", "parameter": 2}).content,
                "hl-threshold": client.get(
                    f"/sessions/{sid}/highlight",
                    params={"cluster_id": 1, "origin": 7,
                            "mode": "threshold", "parameter": 0.5}).content,
                "hl-top-n": client.get(
                    f"/sessions/{sid}/highlight",
                    params={"cluster_id": 1, "origin": 7,
                            "mode": "top_n", "parameter": 3}).content,
            }
            for name in golden:
                assert got[name] == golden[name], f"{name} differs from CLI golden"

            snap = str(tmp_path / "session.json")
            assert client.post(
                f"/sessions/{sid}/snapshot", json={"path": snap}
            ).status_code == 200
            sid2 = client.post("/snapshots:load", json={"path": snap}).json()["session_id"]
            refetched = {
                "cluster-view": client.get(f"/sessions/{sid2}/cluster-view").content,
                "gene-view": client.get(f"/sessions/{sid2}/clusters/1/gene-view").content,
                "overlay": client.get(
                    f"/sessions/{sid2}/overlay",
                    params={"disease": "crohn's disease"}).content,
            }
            for name, body in refetched.items():
                assert body == got[name], f"{name} differs after snapshot reload"


# --- 8. disease-mode dimming ----------------------------------------------------


def test_disease_mode_dimming():
    with criterion("disease-mode dimming"):
        from genegraph.enrichment import DiseaseGeneMap, cluster_overlay

        rng = random.Random(0xD13)
        for _ in range(50):
            n_clusters = rng.randint(1, 6)
            n_genes = rng.randint(1, 40)
            memberships = {}
            for gid in range(1, n_genes + 1):
                row = {c: 0.5 for c in range(n_clusters) if rng.random() < 0.4}
                memberships[gid] = row
            genes = tuple(ingest.Gene(g, f"G{g}") for g in range(1, n_genes + 1))
            ds = ingest.ClusterDataset(
                genes, tuple(f"C{i}" for i in range(n_clusters)),
                memberships, ingest.SOFT,
            )
            hit_names = {
                f"G{gid}" for gid in range(1, n_genes + 1) if rng.random() < 0.3
            }
            dmap = DiseaseGeneMap("d", {name: 1e-4 for name in hit_names} or {"NONE": 0.5})
            for r in cluster_overlay(ds, dmap, dim_value=0.25):
                if r.cluster_hits == 0:
                    assert r.opacity == 0.25
                else:
                    assert r.opacity == 1.0
