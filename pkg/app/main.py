from contextlib import asynccontextmanager
import logging

from fastapi import FastAPI, Request, status
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from app.config import settings
from app.exceptions import (
    ClassificationError,
    ComputationTimeout,
    ConfigError,
    InvalidInputError,
    MustafinError,
    PolynomialSyntaxError,
    ValidationFailure,
)
from app.routers import runs_router
from app.utils.logging import configure_logging

logger = logging.getLogger(__name__)

# exception type -> HTTP status; first match wins
ERROR_STATUS = (
    ((ConfigError, InvalidInputError, PolynomialSyntaxError), status.HTTP_422_UNPROCESSABLE_ENTITY),
    ((ValidationFailure, ClassificationError), status.HTTP_409_CONFLICT),
    ((ComputationTimeout,), status.HTTP_504_GATEWAY_TIMEOUT),
)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan context manager."""
    configure_logging("DEBUG" if settings.debug else "INFO")
    logger.info(f"Starting {settings.app_name}...")
    logger.info(f"Debug mode: {settings.debug}, Groebner engine: {settings.groebner_method}")
    yield
    logger.info("Shutting down...")


app = FastAPI(
    title=settings.app_name,
    description="Special fibers of Mustafin degenerations of flag varieties",
    version="1.0.0",
    lifespan=lifespan,
    debug=settings.debug,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(runs_router, prefix="/api/v1", tags=["Runs"])


@app.exception_handler(MustafinError)
async def engine_error_handler(request: Request, exc: MustafinError) -> JSONResponse:
    code = next((c for types, c in ERROR_STATUS if isinstance(exc, types)), status.HTTP_500_INTERNAL_SERVER_ERROR)
    logger.error(f"{request.url.path} failed with {type(exc).__name__}: {exc}")
    return JSONResponse(status_code=code, content={"detail": str(exc), "error": type(exc).__name__})


@app.get("/")
async def root():
    """Root endpoint."""
    return {"message": f"Welcome to {settings.app_name}", "version": "1.0.0"}


@app.get("/health")
async def health_check():
    """Health check endpoint."""
    return {"status": "healthy", "service": settings.app_name}
