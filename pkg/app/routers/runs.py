from typing import Optional

from fastapi import APIRouter
from pydantic import BaseModel, Field

from app.dependencies import SettingsDep
from app.exceptions import InvalidInputError
from app.schemas.reports import RunReport
from app.services.pipeline_service import COMMANDS, GOLDEN_CASES, run
from app.utils.config_parser import parse_config

router = APIRouter()


class RunRequest(BaseModel):
    config: str = Field(..., description="Run configuration in the line-oriented file format")
    seed: Optional[int] = Field(None, ge=0)
    radius: Optional[int] = Field(None, ge=0)
    max_candidates: Optional[int] = Field(None, ge=0)


@router.post("/runs/{command}", response_model=RunReport)
def run_command(command: str, request: RunRequest, settings: SettingsDep) -> RunReport:
    """Run one pipeline command on a posted configuration."""
    if command not in COMMANDS or command == "verify":
        raise InvalidInputError(f"unknown command {command!r}; use /verify/{{case}} for golden cases")
    config = parse_config(request.config)
    updates = {
        k: v
        for k, v in {"seed": request.seed, "radius": request.radius, "max_candidates": request.max_candidates}.items()
        if v is not None
    }
    config = config.model_copy(update=updates)
    if config.timeout_secs is None and settings.timeout_secs is not None:
        config = config.model_copy(update={"timeout_secs": settings.timeout_secs})
    return run(command, config)


@router.get("/verify/{case}", response_model=RunReport)
def verify_case(case: str, settings: SettingsDep) -> RunReport:
    """Run a golden verification case."""
    if case not in GOLDEN_CASES:
        raise InvalidInputError(f"unknown verify case {case!r}")
    return run("verify", case=case, seed=settings.seed, timeout_secs=settings.timeout_secs)
