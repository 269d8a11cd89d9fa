"""Request and response models for the HTTP service."""

from typing import Any, List, Optional

from pydantic import BaseModel, Field


class EvalRequest(BaseModel):
    expression: str
    precision: int = Field(default=9, ge=1, le=17)


class EvalResponse(BaseModel):
    sort: str
    value: Any
    text: str


class ErrorBody(BaseModel):
    kind: str
    message: str
    line: Optional[int] = None
    col: Optional[int] = None


class ErrorResponse(BaseModel):
    error: ErrorBody


class CheckRequest(BaseModel):
    seed: int = 42
    max_dim: int = Field(default=6, ge=1)
    trials: int = Field(default=200, ge=1)
    only: Optional[List[str]] = None


class CheckRowModel(BaseModel):
    name: str
    passed: int = Field(alias="pass")
    failed: int = Field(alias="fail")
    max_residual: float
    first_fail_seed: Optional[int]

    model_config = {"populate_by_name": True}


class CheckResponse(BaseModel):
    all_pass: bool
    checks: List[CheckRowModel]


class CheckInfo(BaseModel):
    name: str
    dim_lo: int
    dim_hi: int
    trials: int


class ConvertRequest(BaseModel):
    document: Any


class ConvertResponse(BaseModel):
    document: Any


class HealthResponse(BaseModel):
    status: str
