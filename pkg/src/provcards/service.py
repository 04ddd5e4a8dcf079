"""HTTP API over a workspace, plus static hosting for the web UI."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles

from .model import event_to_dict
from .segmenter import SegmentationParams
from .workspace import Workspace

MIN_SEGMENTS = 1
MAX_SEGMENTS = 50


def _params_from_query(segments: str | None) -> SegmentationParams:
    """Slider value -> params; out-of-range clamps, non-integers are 400."""
    if segments is None:
        return SegmentationParams()
    try:
        k = int(segments)
    except ValueError:
        raise HTTPException(
            status_code=400,
            detail=f"segments must be an integer, got {segments!r}",
        )
    k = max(MIN_SEGMENTS, min(MAX_SEGMENTS, k))
    return SegmentationParams(max_segments=k)


def create_app(workspace: Workspace) -> FastAPI:
    app = FastAPI(title="Session summary service", docs_url=None, redoc_url=None)

    @app.get("/api/health")
    def health() -> dict[str, object]:
        return {
            "status": "ok",
            "sessions": len(workspace.sessions),
            "degraded": workspace.degraded,
        }

    @app.get("/api/sessions")
    def sessions() -> dict[str, object]:
        return {
            "sessions": [
                {"id": sid, "n_events": len(workspace.sessions[sid].events)}
                for sid in sorted(workspace.sessions)
            ]
        }

    @app.get("/api/sessions/{session_id}/summary")
    def summary(session_id: str, segments: str | None = None) -> dict[str, object]:
        params = _params_from_query(segments)
        try:
            response = workspace.run_pipeline(session_id, params)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return response.to_dict()

    @app.get("/api/sessions/{session_id}/segments/{index}/events")
    def segment_events(
        session_id: str, index: int, segments: str | None = None
    ) -> dict[str, object]:
        params = _params_from_query(segments)
        try:
            response = workspace.run_pipeline(session_id, params)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        if not 0 <= index < len(response.segments):
            raise HTTPException(
                status_code=404,
                detail=f"segment {index} out of range for {len(response.segments)} segments",
            )
        session = workspace.sessions[session_id]
        order = {ev.seq: ev for ev in session.events}
        segment = response.segments[index]
        return {
            "session_id": session_id,
            "segment_index": index,
            "t_start": segment.t_start,
            "t_end": segment.t_end,
            "events": [event_to_dict(order[s]) for s in segment.member_event_seqs],
        }

    static_dir = Path(str(resources.files("provcards").joinpath("static")))
    if static_dir.is_dir() and (static_dir / "index.html").exists():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app


def serve(workspace: Workspace, port: int = 8000, host: str = "127.0.0.1") -> None:
    """Run the API (blocking) for the given workspace."""
    import uvicorn

    uvicorn.run(create_app(workspace), host=host, port=port, log_level="info")
