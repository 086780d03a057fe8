"""Pydantic request/response models for the verification service.

Requests are fully validated here; response payloads carry the versioned
report dicts produced by the pipeline (mathematical values as decimal
strings), plus the status and the exit code a CLI client should use.
"""

from __future__ import annotations

from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator


class ConstructRequest(BaseModel):
    g: int = Field(ge=1, description="genus")
    p: int = Field(ge=2, description="prime")
    n: int = Field(default=2, ge=0, description="theta/period truncation level")
    m: Optional[int] = Field(default=None, ge=1, description="torsion level (default p)")
    precision: Optional[int] = Field(
        default=None, ge=1, description="p-adic working precision (default m*(2g+2))"
    )


class IgpRequest(BaseModel):
    g: int = Field(ge=1)
    p: int = Field(ge=3, description="odd prime")
    n: int = Field(default=2, ge=0)


class TableCheckRequest(BaseModel):
    rows: str = Field(default="fast", description='"fast", "all", or comma-separated row ids')
    budget: Optional[int] = Field(default=None, ge=1)
    seed: int = 0


class GoldbachRequest(BaseModel):
    n: int = Field(ge=4)
    double: bool = False


class ExcludedRequest(BaseModel):
    g_max: int = Field(ge=1, le=10000)


class TypeCheckRequest(BaseModel):
    f: Union[str, List[int]] = Field(description="polynomial (string or coefficients, lowest first)")
    p: int = Field(ge=2)
    t: int = Field(ge=1)
    blocks: List[int]
    precision: Optional[int] = Field(default=None, ge=2)


class SpecItem(BaseModel):
    prime: int = Field(ge=2)
    kind: Literal["type", "semistable"] = "type"
    t: Optional[int] = Field(default=None, ge=1)
    blocks: Optional[List[int]] = None

    @field_validator("blocks")
    @classmethod
    def _blocks_nonempty(cls, v, info):
        if v is not None and not v:
            raise ValueError("blocks must be nonempty when given")
        return v


class ConstructPolyRequest(BaseModel):
    degree: int = Field(ge=1)
    specs: List[SpecItem]


class FrobeniusRequest(BaseModel):
    f: Union[str, List[int]]
    ell: int = Field(ge=3)
    genus: int = Field(ge=1)
    budget: Optional[int] = Field(default=None, ge=1)
    p: Optional[int] = Field(default=None, ge=2)
    seed: int = 0


class ReportResponse(BaseModel):
    """Envelope for every verification endpoint."""

    schema_version: str
    status: str
    exit_code: int
    report: Dict


class HealthResponse(BaseModel):
    status: str
    schema_version: str
    version: str
