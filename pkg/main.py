"""FastAPI app entry point for Swapnet."""

from fastapi import FastAPI

from api.synthesis import router as synthesis_router
from config import SERVICE_NAME, SERVICE_VERSION

app = FastAPI(
    title=SERVICE_NAME,
    description="Reversible logic synthesis by bit-string swapping",
    version=SERVICE_VERSION,
)

app.include_router(synthesis_router, prefix="/circuits", tags=["Circuits"])


@app.get("/")
def root() -> dict:
    """Root endpoint returning service info."""
    return {"name": SERVICE_NAME, "version": SERVICE_VERSION, "status": "running"}


@app.get("/health")
def health() -> dict:
    """Health check endpoint."""
    return {"healthy": True}
