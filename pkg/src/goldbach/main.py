"""
Main application entry point for the Goldbach sieve toolkit service.

This module builds the FastAPI application, maps the toolkit's exceptions to
HTTP statuses and runs the service under uvicorn.
"""

import logging
import time
from contextlib import asynccontextmanager

import uvicorn
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .api import router
from .config import API_HOST, API_PORT, DB_PATH, DEBUG, MODULUS_CAP, SYMMETRY_MODULUS_CAP
from .database import initialize_database
from .errors import CapacityError, GoldbachError

# Configure logging
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Create the record tables and report the capacity limits in force."""
    logger.info(f"Sieve limit N <= {MODULUS_CAP}, symmetry limit N <= {SYMMETRY_MODULUS_CAP}")
    if not initialize_database():
        logger.error(f"Record store at {DB_PATH} is unavailable; /api/records will be empty")
    yield
    logger.info("Goldbach Sieve API stopped")


app = FastAPI(
    title="Goldbach Sieve API",
    description="Dihedral sieves, their affine symmetry groups and scan records",
    version="1.0.0",
    lifespan=lifespan,
)


@app.exception_handler(CapacityError)
async def capacity_exceeded(request: Request, exc: CapacityError) -> JSONResponse:
    """A request whose N is over a hard limit gives 413."""
    logger.error(f"Capacity exceeded for {request.url.path}: {exc}")
    return JSONResponse(status_code=413, content={"detail": str(exc)})


@app.exception_handler(GoldbachError)
@app.exception_handler(ValueError)
async def invalid_input(request: Request, exc: Exception) -> JSONResponse:
    """Odd N, bad criterion parameters and other rejected input give 400."""
    logger.error(f"Invalid request for {request.url.path}: {exc}")
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.middleware("http")
async def time_computation(request: Request, call_next):
    """Log each request and attach its computation time as X-Compute-Seconds."""
    started = time.perf_counter()
    response = await call_next(request)
    elapsed = time.perf_counter() - started
    response.headers["X-Compute-Seconds"] = f"{elapsed:.4f}"
    logger.info(f"{request.method} {request.url.path} -> {response.status_code} in {elapsed:.4f}s")
    return response


app.include_router(router, prefix="/api")


@app.get("/")
async def root():
    """Greeting for clients probing the service root; the toolkit lives under /api."""
    return {"message": "Welcome to the Goldbach Sieve API"}


def serve(host: str = API_HOST, port: int = API_PORT) -> None:
    """Run the API under uvicorn, reloading on change when DEBUG is set."""
    logger.info(f"Serving the Goldbach Sieve API on {host}:{port} (debug={DEBUG})")
    uvicorn.run("src.goldbach.main:app", host=host, port=port, reload=DEBUG)


if __name__ == "__main__":
    serve()
