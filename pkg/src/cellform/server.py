"""HTTP service behind the designer UI: solution, instance, and scoring.

The instance is loaded once at startup and never mutated; scoring is a
pure function of the posted assignment, so concurrent requests need no
synchronization. All what-if state lives in the client.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles

from .clustering import ClusterConfig, run_pipeline
from .export import (
    AssignmentError,
    build_solution_export,
    instance_block,
    metrics_block,
    score_assignment,
)
from .instance import Instance
from .metrics import score


def create_app(
    inst: Instance,
    cfg: ClusterConfig | None = None,
    ui_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="cellform", docs_url=None, redoc_url=None)
    result = run_pipeline(inst, cfg or ClusterConfig())
    solution_doc = build_solution_export(result, score(inst, result.solution))

    @app.get("/api/solution")
    def get_solution():
        return solution_doc

    @app.get("/api/instance")
    def get_instance():
        return instance_block(inst)

    @app.post("/api/score")
    def post_score(body: dict):
        machine_cell = body.get("machine_cell")
        part_family = body.get("part_family")
        if not isinstance(machine_cell, dict) or not isinstance(part_family, dict):
            raise HTTPException(
                status_code=422,
                detail="body must carry machine_cell and part_family objects",
            )
        try:
            report = score_assignment(inst, machine_cell, part_family)
        except AssignmentError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return metrics_block(report)

    if ui_dir:
        directory = Path(ui_dir)
        if not directory.is_dir():
            raise FileNotFoundError(f"UI directory not found: {directory}")
        app.mount("/", StaticFiles(directory=directory, html=True), name="ui")
    else:
        @app.get("/")
        def index():
            return {
                "service": "cellform",
                "endpoints": ["/api/solution", "/api/instance", "/api/score"],
            }

    return app
