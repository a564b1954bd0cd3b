"""Stateless HTTP evaluation service.

Endpoints:
  POST /evaluate  -> evaluation results (and base64 PPM images on request)
  GET  /examples  -> bundled layout names (and documents on ?include=text)
  GET  /schema    -> layout schema (JSON Schema)
  GET  /healthz   -> "ok"

Layout validation problems map to 400 with the offending field path,
planner infeasibility to 422, everything else to 500.  Responses are
deterministic for identical request bodies.
"""

from __future__ import annotations

import base64

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from . import layouts as bundled
from . import schema as schema_mod
from .config import settings_from_overrides
from .errors import ConfigError, EndpointSamplingError, LayoutError, PlanInfeasibleError
from .pipeline import evaluate_modes, result_to_dict
from .render import ColorScale, render_field, render_trajectories
from .room import parse_layout

# interactive bounds; larger jobs belong on the CLI
MAX_GRID_CELLS = 500 * 500
MAX_TOTAL_SCENARIOS = 200

FIELD_ORDER = ("floor", "light", "support", "door", "baseline", "final")


def _error(status: int, kind: str, message: str, field: str | None = None) -> JSONResponse:
    body = {"error": kind, "detail": message}
    if field is not None:
        body["field"] = field
    return JSONResponse(body, status_code=status)


def create_app() -> FastAPI:
    app = FastAPI(title="fallrisk", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"])

    @app.get("/healthz")
    def healthz() -> PlainTextResponse:
        return PlainTextResponse("ok")

    @app.get("/examples")
    def examples(include: str = "") -> JSONResponse:
        names = bundled.available()
        body: dict = {"examples": names}
        if include == "text":
            body["documents"] = {name: bundled.text(name) for name in names}
        return JSONResponse(body)

    @app.get("/schema")
    def schema() -> JSONResponse:
        return JSONResponse(schema_mod.layout_schema())

    @app.post("/evaluate")
    async def evaluate(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "validation", "request body is not valid JSON")
        if not isinstance(body, dict):
            return _error(400, "validation", "request body must be an object")
        known = {"layout", "layout_text", "example", "mode", "seed", "config",
                 "aggregation", "include_images", "cell_pixels"}
        for key in body:
            if key not in known:
                return _error(400, "validation", f"unknown request field {key!r}",
                              field=key)

        sources = [k for k in ("layout", "layout_text", "example") if k in body]
        if len(sources) != 1:
            return _error(400, "validation",
                          "provide exactly one of layout, layout_text, example")
        mode = body.get("mode", "day")
        if mode not in ("day", "night", "both"):
            return _error(400, "validation",
                          "mode must be day, night or both", field="mode")
        seed = body.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
            return _error(400, "validation",
                          "seed must be a non-negative integer", field="seed")
        aggregation = body.get("aggregation", "mean")
        if aggregation not in ("mean", "max"):
            return _error(400, "validation",
                          "aggregation must be mean or max", field="aggregation")

        try:
            if "example" in body:
                name = body["example"]
                if name not in bundled.available():
                    return _error(400, "validation",
                                  f"unknown example {name!r}", field="example")
                layout = bundled.load(name)
            elif "layout_text" in body:
                layout = parse_layout(str(body["layout_text"]))
            else:
                layout = parse_layout(body["layout"])
            settings = settings_from_overrides(body.get("config"))
        except LayoutError as exc:
            return _error(400, "validation", str(exc), field=exc.field)
        except ConfigError as exc:
            return _error(400, "validation", str(exc), field=exc.field)

        raster = layout.raster
        if raster.cell_count > MAX_GRID_CELLS:
            return _error(400, "validation",
                          f"grid of {raster.cell_count} cells exceeds the "
                          f"service bound of {MAX_GRID_CELLS}; use the CLI")
        from .pipeline import default_scenarios
        total = sum(s.frequency for s in default_scenarios(layout))
        if total > MAX_TOTAL_SCENARIOS:
            return _error(400, "validation",
                          f"{total} scenario samples exceed the service bound "
                          f"of {MAX_TOTAL_SCENARIOS}; use the CLI")

        modes = ("day", "night") if mode == "both" else (mode,)
        try:
            results = evaluate_modes(layout, settings, modes=modes, seed=seed,
                                     aggregation=aggregation)
        except PlanInfeasibleError as exc:
            return _error(422, "infeasible", str(exc))
        except EndpointSamplingError as exc:
            return _error(422, "infeasible", str(exc))

        body_out: dict = {"results": {m: result_to_dict(results[m]) for m in modes}}
        if body.get("include_images"):
            cell_pixels = int(body.get("cell_pixels", 8))
            scale = ColorScale()
            images: dict = {}
            for m in modes:
                result = results[m]
                fields = dict(result.base.factor_fields())
                fields["baseline"] = result.base.baseline
                fields["final"] = result.final
                images[m] = {
                    label: base64.b64encode(
                        render_field(fields[label], layout, scale, cell_pixels)
                    ).decode("ascii")
                    for label in FIELD_ORDER
                }
                images[m]["trajectories"] = base64.b64encode(
                    render_trajectories(result, scale, cell_pixels)).decode("ascii")
            body_out["images"] = images
        return JSONResponse(body_out)

    return app


app = create_app()
