"""
CNMF Toolkit - FastAPI Application

HTTP front end for fits and form checks. Start with `cnmf serve`.
"""

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from . import __version__, config
from .api.routes import router

app = FastAPI(
    title="CNMF Toolkit",
    description="Convolutive NMF solvers (MU, HALS, ANLS) with synthetic data and form checks",
    version=__version__,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(router)


@app.get("/")
async def root():
    return {
        "name": "CNMF Toolkit",
        "version": __version__,
        "docs": "/docs",
        "endpoints": {
            "algorithms": "GET /api/algorithms",
            "start_run": "POST /api/runs",
            "list_runs": "GET /api/runs",
            "get_run": "GET /api/runs/{run_id}",
            "get_trace": "GET /api/runs/{run_id}/trace",
            "check_forms": "POST /api/check-forms",
        },
    }


if __name__ == "__main__":
    import uvicorn

    config.setup_logging()
    uvicorn.run(app, host=config.API_HOST, port=config.API_PORT)
