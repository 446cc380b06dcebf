"""HTTP + JSON facade over the engine.

Routes
    POST /sessions                         create a session (optional {"seed": n})
    POST /sessions/{id}/datasets/{kind}    upload raw tabular text (cluster|interaction|disease)
    GET  /sessions/{id}/cluster-view       ?min_overlap=&seed=
    GET  /sessions/{id}/clusters/{cid}/gene-view   ?seed=
    GET  /sessions/{id}/diseases
    GET  /sessions/{id}/overlay            ?disease=&cluster_id=&min_overlap=
    GET  /sessions/{id}/highlight          ?cluster_id=&origin=&mode=&parameter=
    POST /sessions/{id}/snapshot           {"path": ...}
    POST /snapshots:load                   {"path": ...}

Sessions are in-memory. Each one serializes access through a lock: uploads
swap in a new immutable dataset snapshot and drop the payload cache, reads
compute (or reuse) byte-exact cached payloads, so concurrent readers never
observe a mix of old and new data and identical requests share one
computation.
"""

import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, field, replace

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles

from . import ingest, views
from .colors import splitmix64
from .errors import (
    BadEncoding,
    BadParameter,
    CorruptSnapshot,
    EngineError,
    NotLoaded,
    PayloadTooLarge,
    SnapshotIOError,
    UnknownSession,
    VersionMismatch,
)
from .jsonio import to_json_bytes
from .layout import LayoutParams

SNAPSHOT_VERSION = 1
DATASET_KINDS = ("cluster", "interaction", "disease")


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    body_limit: int = 64 * 1024 * 1024
    static_dir: str | None = None
    cors_origins: tuple[str, ...] = ("*",)
    layout: LayoutParams = field(default_factory=LayoutParams)
    dim_value: float = 0.25
    default_min_overlap: int = 1

    @classmethod
    def from_env(cls, **overrides) -> "ServiceConfig":
        env = os.environ
        listen = overrides.pop("listen", env.get("GENEGRAPH_LISTEN"))
        cfg = cls(**overrides)
        if listen:
            host, _, port = listen.rpartition(":")
            cfg.host, cfg.port = host or "127.0.0.1", int(port)
        if "GENEGRAPH_BODY_LIMIT" in env:
            cfg.body_limit = int(env["GENEGRAPH_BODY_LIMIT"])
        if "GENEGRAPH_STATIC_DIR" in env and cfg.static_dir is None:
            cfg.static_dir = env["GENEGRAPH_STATIC_DIR"]
        if "GENEGRAPH_CORS_ORIGIN" in env:
            cfg.cors_origins = tuple(env["GENEGRAPH_CORS_ORIGIN"].split(","))
        if "GENEGRAPH_LAYOUT" in env:
            # JSON object of LayoutParams field overrides, e.g.
            # '{"rest_length": 90, "max_iters": 4000}'
            try:
                fields = json.loads(env["GENEGRAPH_LAYOUT"])
                cfg.layout = replace(cfg.layout, **fields)
            except (json.JSONDecodeError, TypeError, ValueError) as exc:
                raise BadParameter(f"invalid GENEGRAPH_LAYOUT: {exc}")
        return cfg


class Session:
    def __init__(self, seed: int):
        self.id = uuid.uuid4().hex
        self.layout_seed = seed
        self.cluster_ds: ingest.ClusterDataset | None = None
        self.interaction_ds: ingest.InteractionDataset | None = None
        self.disease_ds: ingest.DiseaseDataset | None = None
        self.raw_texts: dict[str, str] = {}  # kind -> uploaded body, for snapshots
        self.created_at = time.time()
        self.last_access = self.created_at
        self.lock = threading.RLock()
        self._cache: dict[tuple, bytes] = {}

    def touch(self):
        self.last_access = time.time()

    def invalidate(self):
        self._cache.clear()

    def cached(self, key: tuple, build) -> bytes:
        """Byte-exact payload memoization; callers hold self.lock."""
        if key not in self._cache:
            self._cache[key] = to_json_bytes(build())
        return self._cache[key]

    def require_cluster(self) -> ingest.ClusterDataset:
        if self.cluster_ds is None:
            raise NotLoaded("no cluster dataset loaded")
        return self.cluster_ds

    def require_interactions(self) -> ingest.InteractionDataset:
        if self.interaction_ds is None:
            raise NotLoaded("no interaction dataset loaded")
        return self.interaction_ds

    def require_diseases(self) -> ingest.DiseaseDataset:
        if self.disease_ds is None:
            raise NotLoaded("no disease dataset loaded")
        return self.disease_ds


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, seed: int | None = None) -> Session:
        if seed is None:
            # derived from wall clock + a fresh uuid, recorded for replay
            seed = splitmix64(time.time_ns() ^ uuid.uuid4().int & (2**64 - 1))
        session = Session(seed)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSession(f"no session {session_id!r}")
        session.touch()
        return session


def _parse_int(value: str | None, name: str, default: int | None = None,
               minimum: int | None = None, maximum: int | None = None) -> int | None:
    if value is None:
        return default
    try:
        out = int(value)
    except ValueError:
        raise BadParameter(f"{name} must be an integer, got {value!r}")
    if minimum is not None and out < minimum:
        raise BadParameter(f"{name} must be >= {minimum}, got {out}")
    if maximum is not None and out > maximum:
        raise BadParameter(f"{name} must be <= {maximum}, got {out}")
    return out


def _require(value: str | None, name: str) -> str:
    if value is None or value == "":
        raise BadParameter(f"query parameter {name!r} is required")
    return value


def parse_dataset(kind: str, text: str):
    if kind == "cluster":
        return ingest.parse_cluster_table(text)
    if kind == "interaction":
        return ingest.parse_interaction_table(text)
    if kind == "disease":
        return ingest.parse_disease_table(text)
    raise BadParameter(f"unknown dataset kind {kind!r}; expected one of {DATASET_KINDS}")


def upload_report(session: Session, kind: str) -> dict:
    if kind == "cluster":
        ds = session.cluster_ds
        return {
            "rows": len(ds.genes),
            "kind": ds.kind,
            "clusters": len(ds.clusters),
            "warnings": [],
        }
    if kind == "interaction":
        ds = session.interaction_ds
        warnings = [
            f"self-loop on gene {gid} (row {row})" for row, gid in ds.self_loops
        ]
        if session.cluster_ds is not None:
            known = {g.id for g in session.cluster_ds.genes}
            missing = sorted(ds.gene_ids() - known)
            if missing:
                warnings.append(
                    f"{len(missing)} interaction gene(s) absent from the cluster "
                    f"dataset (first: {missing[0]})"
                )
        return {"rows": len(ds.edges), "warnings": warnings}
    ds = session.disease_ds
    warnings = []
    if session.cluster_ds is not None:
        known = {g.name for g in session.cluster_ds.genes}
        unmatched = {r.gene_name for r in ds.records} - known
        if unmatched:
            warnings.append(
                f"{len(unmatched)} disease gene name(s) not present in the "
                "cluster dataset"
            )
    return {"rows": len(ds.records), "warnings": warnings}


def snapshot_dict(session: Session) -> dict:
    return {
        "format": "genegraph-snapshot",
        "format_version": SNAPSHOT_VERSION,
        "layout_seed": session.layout_seed,
        "datasets": {kind: session.raw_texts.get(kind) for kind in DATASET_KINDS},
    }


def save_snapshot(session: Session, path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(snapshot_dict(session), fh)
    except OSError as exc:
        raise SnapshotIOError(f"cannot write snapshot: {exc}")


def load_snapshot(store: SessionStore, path: str) -> Session:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise SnapshotIOError(f"cannot read snapshot: {exc}")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CorruptSnapshot(f"snapshot is not valid JSON: {exc}")
    if not isinstance(doc, dict) or doc.get("format") != "genegraph-snapshot":
        raise CorruptSnapshot("not a genegraph snapshot file")
    version = doc.get("format_version")
    if version != SNAPSHOT_VERSION:
        raise VersionMismatch(
            f"snapshot format version {version!r} is not supported "
            f"(expected {SNAPSHOT_VERSION})"
        )
    seed = doc.get("layout_seed")
    datasets = doc.get("datasets")
    if not isinstance(seed, int) or not isinstance(datasets, dict):
        raise CorruptSnapshot("snapshot is missing layout_seed or datasets")
    session = store.create(seed)
    try:
        for kind in DATASET_KINDS:
            text = datasets.get(kind)
            if text is None:
                continue
            dataset = parse_dataset(kind, text)
            _install(session, kind, text, dataset)
    except EngineError as exc:
        raise CorruptSnapshot(f"snapshot dataset does not parse: {exc}")
    return session


def _install(session: Session, kind: str, text: str, dataset) -> None:
    if kind == "cluster":
        session.cluster_ds = dataset
    elif kind == "interaction":
        session.interaction_ds = dataset
    else:
        session.disease_ds = dataset
    session.raw_texts[kind] = text
    session.invalidate()


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    cfg = config or ServiceConfig()
    store = SessionStore()
    app = FastAPI(title="genegraph", docs_url=None, redoc_url=None)
    app.state.store = store
    app.state.config = cfg

    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cfg.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(EngineError)
    async def engine_error_handler(_request, exc: EngineError):
        return Response(
            content=to_json_bytes(exc.payload()),
            status_code=exc.http_status,
            media_type="application/json",
        )

    def json_response(payload) -> Response:
        return Response(content=to_json_bytes(payload), media_type="application/json")

    def raw_response(body: bytes) -> Response:
        return Response(content=body, media_type="application/json")

    @app.post("/sessions")
    async def create_session(request: Request):
        body = await request.body()
        seed = None
        if body.strip():
            try:
                doc = json.loads(body)
            except json.JSONDecodeError:
                raise BadParameter("session body must be JSON")
            if not isinstance(doc, dict):
                raise BadParameter("session body must be a JSON object")
            if doc.get("seed") is not None:
                seed = doc["seed"]
                if not isinstance(seed, int) or not 0 <= seed < 2**64:
                    raise BadParameter("seed must be a 64-bit unsigned integer")
        session = store.create(seed)
        return json_response({"session_id": session.id, "layout_seed": session.layout_seed})

    @app.post("/sessions/{session_id}/datasets/{kind}")
    async def upload_dataset(session_id: str, kind: str, request: Request):
        session = store.get(session_id)
        if kind not in DATASET_KINDS:
            raise BadParameter(
                f"unknown dataset kind {kind!r}; expected one of {DATASET_KINDS}"
            )
        body = await request.body()
        if len(body) > cfg.body_limit:
            raise PayloadTooLarge(
                f"dataset of {len(body)} bytes exceeds the {cfg.body_limit} byte limit"
            )
        try:
            text = body.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise BadEncoding(f"dataset body is not valid UTF-8: {exc}")
        dataset = parse_dataset(kind, text)
        with session.lock:
            _install(session, kind, text, dataset)
            report = upload_report(session, kind)
        return json_response(report)

    @app.get("/sessions/{session_id}/cluster-view")
    async def cluster_view(session_id: str, min_overlap: str | None = None,
                           seed: str | None = None):
        session = store.get(session_id)
        overlap = _parse_int(min_overlap, "min_overlap",
                             default=cfg.default_min_overlap, minimum=1)
        seed_val = _parse_int(seed, "seed", default=session.layout_seed,
                              minimum=0, maximum=2**64 - 1)
        with session.lock:
            ds = session.require_cluster()
            body = session.cached(
                ("cluster-view", overlap, seed_val),
                lambda: views.cluster_view_payload(
                    ds, min_overlap=overlap, seed=seed_val, layout_params=cfg.layout
                ),
            )
        return raw_response(body)

    @app.get("/sessions/{session_id}/clusters/{cluster_id}/gene-view")
    async def gene_view(session_id: str, cluster_id: str, seed: str | None = None):
        session = store.get(session_id)
        cid = _parse_int(cluster_id, "cluster_id")
        seed_val = _parse_int(seed, "seed", default=session.layout_seed,
                              minimum=0, maximum=2**64 - 1)
        with session.lock:
            ds = session.require_cluster()
            ia = session.require_interactions()
            body = session.cached(
                ("gene-view", cid, seed_val),
                lambda: views.gene_view_payload(
                    ds, ia, cid, seed=seed_val, layout_params=cfg.layout
                ),
            )
        return raw_response(body)

    @app.get("/sessions/{session_id}/diseases")
    async def diseases(session_id: str):
        session = store.get(session_id)
        with session.lock:
            ds = session.require_diseases()
            body = session.cached(("diseases",), lambda: views.diseases_payload(ds))
        return raw_response(body)

    @app.get("/sessions/{session_id}/overlay")
    async def overlay(session_id: str, disease: str | None = None,
                      cluster_id: str | None = None, min_overlap: str | None = None):
        session = store.get(session_id)
        label = _require(disease, "disease")
        with session.lock:
            ds = session.require_cluster()
            dds = session.require_diseases()
            if cluster_id is None:
                overlap = _parse_int(min_overlap, "min_overlap",
                                     default=cfg.default_min_overlap, minimum=1)
                body = session.cached(
                    ("overlay", label.strip().lower(), overlap),
                    lambda: views.cluster_overlay_payload(
                        ds, dds, label, min_overlap=overlap, dim_value=cfg.dim_value
                    ),
                )
            else:
                cid = _parse_int(cluster_id, "cluster_id")
                ia = session.require_interactions()
                body = session.cached(
                    ("gene-overlay", label.strip().lower(), cid),
                    lambda: views.gene_overlay_payload(ds, ia, dds, label, cid),
                )
        return raw_response(body)

    @app.get("/sessions/{session_id}/highlight")
    async def highlight(session_id: str, cluster_id: str | None = None,
                        origin: str | None = None, mode: str | None = None,
                        parameter: str | None = None):
        session = store.get(session_id)
        cid = _parse_int(_require(cluster_id, "cluster_id"), "cluster_id")
        origin_gene = _parse_int(_require(origin, "origin"), "origin")
        mode_val = _require(mode, "mode")
        param_val = _require(parameter, "parameter")
        with session.lock:
            ds = session.require_cluster()
            ia = session.require_interactions()
            body = session.cached(
                ("highlight", cid, origin_gene, mode_val, param_val),
                lambda: views.highlight_payload(
                    ds, ia, cid, origin_gene, mode_val, param_val
                ),
            )
        return raw_response(body)

    @app.post("/sessions/{session_id}/snapshot")
    async def snapshot(session_id: str, request: Request):
        session = store.get(session_id)
        doc = await _json_body(request)
        path = doc.get("path")
        if not isinstance(path, str) or not path:
            raise BadParameter("snapshot body must contain a non-empty 'path'")
        with session.lock:
            save_snapshot(session, path)
        return json_response({"path": path, "format_version": SNAPSHOT_VERSION})

    @app.post("/snapshots:load")
    async def snapshot_load(request: Request):
        doc = await _json_body(request)
        path = doc.get("path")
        if not isinstance(path, str) or not path:
            raise BadParameter("load body must contain a non-empty 'path'")
        session = load_snapshot(store, path)
        return json_response({"session_id": session.id, "layout_seed": session.layout_seed})

    async def _json_body(request: Request) -> dict:
        body = await request.body()
        try:
            doc = json.loads(body) if body.strip() else {}
        except json.JSONDecodeError:
            raise BadParameter("request body must be JSON")
        if not isinstance(doc, dict):
            raise BadParameter("request body must be a JSON object")
        return doc

    if cfg.static_dir:
        app.mount("/", StaticFiles(directory=cfg.static_dir, html=True), name="ui")

    return app
