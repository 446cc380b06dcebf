"""Command-line entry point.

Subcommands: serve, validate, layout, overlay, highlight, enrich. The JSON
emitting commands (layout, overlay, highlight) run the exact code paths the
HTTP service uses, so their output is byte-identical to the corresponding
endpoint payload given the same inputs and seed.

Exit codes: 0 success, 1 validation or domain error, 2 usage error.
"""

import argparse
import sys
import time
import uuid

from . import ingest, views
from .colors import splitmix64
from .errors import EngineError
from .jsonio import to_json_bytes
from .service import ServiceConfig, create_app


def _add_common_out(parser):
    parser.add_argument("--out", help="output path (default: standard output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genegraph",
        description="Gene cluster / interaction graph engine and service",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse dataset files and report errors")
    p.add_argument("--cluster", help="gene cluster table")
    p.add_argument("--interactions", help="gene-gene interaction table")
    p.add_argument("--diseases", help="gene-disease association table")

    p = sub.add_parser("layout", help="emit a cluster-view or gene-view JSON payload")
    p.add_argument("--cluster", required=True)
    p.add_argument("--interactions")
    p.add_argument("--cluster-id", type=int, help="emit the gene view of this cluster")
    p.add_argument("--seed", type=int)
    p.add_argument("--min-overlap", type=int, default=1)
    _add_common_out(p)

    p = sub.add_parser("overlay", help="emit a disease overlay JSON payload")
    p.add_argument("--cluster", required=True)
    p.add_argument("--diseases", required=True)
    p.add_argument("--disease", required=True)
    p.add_argument("--interactions", help="required with --cluster-id")
    p.add_argument("--cluster-id", type=int, help="per-gene overlay for this cluster")
    p.add_argument("--min-overlap", type=int, default=1)
    _add_common_out(p)

    p = sub.add_parser("highlight", help="emit a highlight JSON payload")
    p.add_argument("--cluster", required=True)
    p.add_argument("--interactions", required=True)
    p.add_argument("--cluster-id", type=int, required=True)
    p.add_argument("--origin", type=int, required=True)
    p.add_argument("--mode", choices=("levels", "threshold", "top_n"), required=True)
    p.add_argument("--parameter", required=True)
    _add_common_out(p)

    p = sub.add_parser("enrich", help="print the enrichment table for one disease")
    p.add_argument("--cluster", required=True)
    p.add_argument("--diseases", required=True)
    p.add_argument("--disease", required=True)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--listen", default=None, help="host:port (default 127.0.0.1:8080)")
    p.add_argument("--static-dir", default=None, help="directory with the UI bundle")
    p.add_argument("--body-limit", type=int, default=None, help="max upload bytes")

    return parser


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise EngineError(f"cannot read {path}: {exc}")


def _emit(payload, out_path: str | None) -> None:
    body = to_json_bytes(payload)
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(body)
    else:
        sys.stdout.buffer.write(body + b"\n")


def _draw_seed() -> int:
    return splitmix64(time.time_ns() ^ uuid.uuid4().int & (2**64 - 1))


def cmd_validate(args) -> int:
    jobs = [
        ("cluster", args.cluster, ingest.parse_cluster_table,
         lambda ds: f"{len(ds.genes)} genes, {len(ds.clusters)} clusters, {ds.kind}"),
        ("interactions", args.interactions, ingest.parse_interaction_table,
         lambda ds: f"{len(ds.edges)} edges"
                    + (f", {len(ds.self_loops)} self-loop(s)" if ds.self_loops else "")),
        ("diseases", args.diseases, ingest.parse_disease_table,
         lambda ds: f"{len(ds.records)} records"),
    ]
    if not any(path for _, path, _, _ in jobs):
        print("error: no dataset files given", file=sys.stderr)
        return 2
    failed = False
    for kind, path, parse, describe in jobs:
        if not path:
            continue
        try:
            dataset = parse(_read(path))
        except EngineError as exc:
            print(f"FAIL {kind} {path}: {exc.code}: {exc}")
            failed = True
            continue
        print(f"OK   {kind} {path}: {describe(dataset)}")
    return 1 if failed else 0


def cmd_layout(args) -> int:
    ds = ingest.parse_cluster_table(_read(args.cluster))
    seed = args.seed
    if seed is None:
        seed = _draw_seed()
        print(f"seed: {seed}", file=sys.stderr)
    if args.cluster_id is None:
        payload = views.cluster_view_payload(
            ds, min_overlap=args.min_overlap, seed=seed
        )
    else:
        if not args.interactions:
            print("error: --cluster-id requires --interactions", file=sys.stderr)
            return 2
        ia = ingest.parse_interaction_table(_read(args.interactions))
        payload = views.gene_view_payload(ds, ia, args.cluster_id, seed=seed)
    _emit(payload, args.out)
    return 0


def cmd_overlay(args) -> int:
    ds = ingest.parse_cluster_table(_read(args.cluster))
    dds = ingest.parse_disease_table(_read(args.diseases))
    if args.cluster_id is None:
        payload = views.cluster_overlay_payload(
            ds, dds, args.disease, min_overlap=args.min_overlap
        )
    else:
        if not args.interactions:
            print("error: --cluster-id requires --interactions", file=sys.stderr)
            return 2
        ia = ingest.parse_interaction_table(_read(args.interactions))
        payload = views.gene_overlay_payload(ds, ia, dds, args.disease, args.cluster_id)
    _emit(payload, args.out)
    return 0


def cmd_highlight(args) -> int:
    ds = ingest.parse_cluster_table(_read(args.cluster))
    ia = ingest.parse_interaction_table(_read(args.interactions))
    payload = views.highlight_payload(
        ds, ia, args.cluster_id, args.origin, args.mode, args.parameter
    )
    _emit(payload, args.out)
    return 0


def cmd_enrich(args) -> int:
    from . import enrichment

    ds = ingest.parse_cluster_table(_read(args.cluster))
    dds = ingest.parse_disease_table(_read(args.diseases))
    dmap = enrichment.build_disease_gene_map(dds, args.disease)
    results = enrichment.cluster_overlay(ds, dmap)
    named = [(ds.clusters[r.cluster], r) for r in results]
    named.sort(key=lambda item: (item[1].ease_p, item[0]))
    print("cluster\tn\tk\tease_p\tcolor_class")
    for name, r in named:
        print(f"{name}\t{r.cluster_size}\t{r.cluster_hits}\t{r.ease_p:.12g}\t{r.color_class}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    overrides = {}
    if args.listen:
        overrides["listen"] = args.listen
    cfg = ServiceConfig.from_env(**overrides)
    if args.static_dir:
        cfg.static_dir = args.static_dir
    if args.body_limit is not None:
        cfg.body_limit = args.body_limit
    app = create_app(cfg)
    uvicorn.run(app, host=cfg.host, port=cfg.port, log_level="info")
    return 0


_COMMANDS = {
    "validate": cmd_validate,
    "layout": cmd_layout,
    "overlay": cmd_overlay,
    "highlight": cmd_highlight,
    "enrich": cmd_enrich,
    "serve": cmd_serve,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except EngineError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
