"""Local HTTP service exposing the engine as a JSON API under /api.

One network is live per service instance; uploads replace it atomically
(a single reference swap), so concurrent readers always observe a
complete network.  Statistics are cached per loaded network and the
metrics payload is emitted through the same stable formatter as the
CLI, making the two byte-identical.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Literal, Optional

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import __version__
from .ingest import ValidationReport, parse_csv, parse_json, serialize_json, stable_dumps
from .layout import (
    MissingCoordinatesError,
    StackParams,
    layout_layer_graph,
    layout_geographic,
    layout_union,
    project_stack,
    stack_planes,
)
from .meta import WIRE_MODES, build_meta
from .metrics import DEFAULT_BIN_COUNT, compute_bundle
from .model import NetworkSnapshot, UnknownLayerError
from .session import (
    AttributeFilter,
    Filters,
    SessionCorruptError,
    SessionState,
    SessionVersionError,
    apply_filters,
    compare_layers,
    load_session,
    save_session,
)

DEFAULT_PORT = 8787
PORT_ENV_VAR = "MIRA_PORT"


class StackParamsModel(BaseModel):
    scale: float = 1.0
    compression: float = 0.5
    layer_gap: float = 1.0
    shear_x: Optional[float] = None
    shear_y: Optional[float] = None

    def to_params(self) -> StackParams:
        return StackParams(
            scale=self.scale,
            compression=self.compression,
            layer_gap=self.layer_gap,
            shear_x=self.shear_x,
            shear_y=self.shear_y,
        )


class AttributeFilterModel(BaseModel):
    target: Literal["node", "layer", "state"]
    key: str
    op: Literal["eq", "ne", "lt", "le", "gt", "ge", "contains"]
    value: float | str


class FiltersModel(BaseModel):
    min_weight_intra: float = 0.0
    min_weight_inter: float = 0.0
    visible_layers: Optional[list[str]] = None
    node_query: str = ""
    show_interlayer: bool = False
    attribute_filters: list[AttributeFilterModel] = Field(default_factory=list)

    def to_filters(self) -> Filters:
        return Filters(
            min_weight_intra=self.min_weight_intra,
            min_weight_inter=self.min_weight_inter,
            visible_layers=None if self.visible_layers is None else tuple(self.visible_layers),
            node_query=self.node_query,
            show_interlayer=self.show_interlayer,
            attribute_filters=tuple(
                AttributeFilter(target=f.target, key=f.key, op=f.op, value=f.value)
                for f in self.attribute_filters
            ),
        )


class LayoutStateModel(BaseModel):
    seed: int = 0
    layer_graph_seed: int = 0
    layer_graph_mode: Literal["force", "geographic"] = "force"
    stack: StackParamsModel = Field(default_factory=StackParamsModel)


class ViewStateModel(BaseModel):
    active_mode: Literal["network", "map", "layer", "grid", "meta", "dashboard", "data"] = "network"
    filters: FiltersModel = Field(default_factory=FiltersModel)
    selection: Optional[dict[str, Any]] = None
    layout: LayoutStateModel = Field(default_factory=LayoutStateModel)
    meta_mode: Literal["union", "count", "sum"] = "union"

    def to_session(self, snapshot: NetworkSnapshot) -> SessionState:
        return SessionState(
            snapshot=snapshot,
            active_mode=self.active_mode,
            filters=self.filters.to_filters(),
            selection=self.selection,
            layout_seed=self.layout.seed,
            layer_graph_seed=self.layout.layer_graph_seed,
            layer_graph_mode=self.layout.layer_graph_mode,
            stack_params=self.layout.stack.to_params(),
            meta_mode=self.meta_mode,
        )


class LoadedNetwork:
    """One live network with its session state and lazy caches."""

    def __init__(self, snapshot: NetworkSnapshot, report: ValidationReport, session: SessionState | None = None):
        self.snapshot = snapshot
        self.report = report
        self.session = session or SessionState(snapshot=snapshot)
        self._metrics_cache: dict[int, bytes] = {}

    def metrics_bytes(self, bins: int) -> bytes:
        cached = self._metrics_cache.get(bins)
        if cached is None:
            cached = stable_dumps(compute_bundle(self.snapshot, bins).to_json_dict())
            self._metrics_cache[bins] = cached
        return cached


class EngineHub:
    """Holder for the current network; replaced by reference swap, so a
    request handler sees one consistent LoadedNetwork throughout."""

    def __init__(self) -> None:
        self._current: LoadedNetwork | None = None

    def swap(self, loaded: LoadedNetwork) -> None:
        self._current = loaded

    def current(self) -> LoadedNetwork | None:
        return self._current


def _error(status: int, code: str, message: str, **extra: Any) -> JSONResponse:
    payload: dict[str, Any] = {"error": {"code": code, "message": message, **extra}}
    return JSONResponse(payload, status_code=status)


def _no_network() -> JSONResponse:
    return _error(404, "no-network", "no network loaded; POST /api/network first")


def stable_response(obj: Any) -> Response:
    return Response(content=stable_dumps(obj), media_type="application/json")


def create_app(static_root: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="multilayer network engine", version=__version__, docs_url=None, redoc_url=None)
    hub = EngineHub()
    app.state.hub = hub

    @app.get("/api/health")
    def health() -> dict[str, str]:
        return {"status": "ok", "version": __version__}

    @app.post("/api/network")
    async def upload_network(request: Request) -> Response:
        body = await request.body()
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("text/csv"):
            snapshot, report = parse_csv(body)
        else:
            snapshot, report = parse_json(body)
        if snapshot is None:
            return JSONResponse(report.to_json_dict(), status_code=422)
        hub.swap(LoadedNetwork(snapshot, report))
        return stable_response(report.to_json_dict())

    @app.get("/api/network")
    def get_network() -> Response:
        loaded = hub.current()
        if loaded is None:
            return _no_network()
        return Response(content=serialize_json(loaded.snapshot), media_type="application/json")

    @app.get("/api/metrics")
    def metrics(bins: int = DEFAULT_BIN_COUNT) -> Response:
        loaded = hub.current()
        if loaded is None:
            return _no_network()
        if bins < 1:
            return _error(422, "invalid-parameter", "bins must be >= 1")
        return Response(content=loaded.metrics_bytes(bins), media_type="application/json")

    @app.get("/api/meta")
    def meta(mode: str = "union") -> Response:
        loaded = hub.current()
        if loaded is None:
            return _no_network()
        if mode not in WIRE_MODES:
            return _error(422, "invalid-parameter", f"mode must be one of {sorted(WIRE_MODES)}")
        return stable_response(build_meta(loaded.snapshot, mode).to_json_dict())

    @app.get("/api/layout/stack")
    def layout_stack(
        seed: int = 0,
        scale: float = 1.0,
        compression: float = 0.5,
        layer_gap: float = 1.0,
        shear_x: Optional[float] = None,
        shear_y: Optional[float] = None,
    ) -> Response:
        loaded = hub.current()
        if loaded is None:
            return _no_network()
        params = StackParams(scale=scale, compression=compression, layer_gap=layer_gap, shear_x=shear_x, shear_y=shear_y)
        union = layout_union(loaded.snapshot, seed)
        projection = project_stack(stack_planes(loaded.snapshot, union), params)
        return stable_response({"union": union.to_json_dict(), "projection": projection.to_json_dict()})

    @app.get("/api/layout/layers")
    def layout_layers(mode: str = "force", seed: int = 0) -> Response:
        loaded = hub.current()
        if loaded is None:
            return _no_network()
        if mode in ("geo", "geographic"):
            try:
                result = layout_geographic(loaded.snapshot)
            except MissingCoordinatesError as exc:
                return _error(422, "missing-coordinates", str(exc), layers=list(exc.layer_ids))
        elif mode == "force":
            result = layout_layer_graph(loaded.snapshot, seed)
        else:
            return _error(422, "invalid-parameter", "mode must be 'force' or 'geo'")
        return stable_response(result.to_json_dict())

    @app.get("/api/compare")
    def compare(a: str, b: str) -> Response:
        loaded = hub.current()
        if loaded is None:
            return _no_network()
        try:
            payload = compare_layers(loaded.snapshot, a, b)
        except UnknownLayerError as exc:
            return _error(404, "unknown-layer", str(exc))
        return stable_response(payload)

    @app.post("/api/view")
    def post_view(view: ViewStateModel) -> Response:
        loaded = hub.current()
        if loaded is None:
            return _no_network()
        session = view.to_session(loaded.snapshot)
        loaded.session = session
        filtered = apply_filters(loaded.snapshot, session)
        return stable_response(filtered.to_json_dict())

    @app.get("/api/session")
    def get_session() -> Response:
        loaded = hub.current()
        if loaded is None:
            return _no_network()
        return Response(content=save_session(loaded.session), media_type="application/json")

    @app.post("/api/session")
    async def post_session(request: Request) -> Response:
        body = await request.body()
        try:
            session = load_session(body)
        except SessionVersionError as exc:
            return _error(422, "version-mismatch", str(exc))
        except SessionCorruptError as exc:
            return _error(422, "corrupt-payload", str(exc))
        report = ValidationReport()
        report.directed = session.snapshot.directed
        report.directed_interlayer = session.snapshot.directed_interlayer
        hub.swap(LoadedNetwork(session.snapshot, report, session))
        filtered = apply_filters(session.snapshot, session)
        return stable_response({"restored": True, "view_state": session.view_state_dict(), "view": filtered.to_json_dict()})

    @app.get("/api/export")
    def export_view() -> Response:
        """Draw-ready JSON of the current view (elements plus coordinates);
        rasterization happens client-side where pixels exist."""
        loaded = hub.current()
        if loaded is None:
            return _no_network()
        session = loaded.session
        filtered = apply_filters(loaded.snapshot, session)
        union = layout_union(loaded.snapshot, session.layout_seed)
        projection = project_stack(stack_planes(loaded.snapshot, union), session.stack_params)
        return stable_response(
            {
                "view_state": session.view_state_dict(),
                "view": filtered.to_json_dict(),
                "union": union.to_json_dict(),
                "projection": projection.to_json_dict(),
            }
        )

    root = Path(static_root) if static_root else None
    if root is not None and root.is_dir():
        app.mount("/", StaticFiles(directory=root, html=True), name="static")
    else:

        @app.get("/")
        def landing() -> dict[str, str]:
            return {"service": "multilayer network engine", "api": "/api", "version": __version__}

    return app
