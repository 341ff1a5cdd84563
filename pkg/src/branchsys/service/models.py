"""Request and response models for the HTTP service.

These mirror the JSON file formats exactly, so a request body is the same
document a CLI user would keep on disk. Exact values stay strings end to
end; the wire never sees a float except inside pretty-rendered output,
which the service does not produce.
"""

from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

RationalText = Union[str, int]


class ScalarModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    a: RationalText
    b: RationalText = "0"


ScalarLike = Union[ScalarModel, RationalText]


class EdgeModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    id: str
    src: str
    dst: str


class GraphModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    vertices: list[str]
    edges: list[EdgeModel]


class ConfigModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    d: int = 2
    theta: dict[str, ScalarLike] = Field(default_factory=dict)


class IntervalModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    lo: ScalarLike
    hi: ScalarLike


class BranchModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    src: IntervalModel
    slope: RationalText
    offset: ScalarLike


class SystemModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    d: int
    graph: GraphModel
    R: dict[str, list[IntervalModel]]
    D: dict[str, list[IntervalModel]]
    maps: dict[str, list[BranchModel]]
    thetas: dict[str, ScalarLike] = Field(default_factory=dict)
    notes: list[str] = Field(default_factory=list)


class AnalyzeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    graph: GraphModel


class BuildRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    graph: GraphModel
    config: Optional[ConfigModel] = None


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    system: Optional[SystemModel] = None
    graph: Optional[GraphModel] = None
    config: Optional[ConfigModel] = None
    mode: Literal["cstar", "algebraic"] = "cstar"


class FaithfulRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    graph: GraphModel
    config: Optional[ConfigModel] = None
    max_power: int = Field(default=10, ge=1)


class ConverseRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    graph: GraphModel
    variant: Literal["cstar", "leavitt"]


class ReproduceRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    name: Literal["example-irrational-loop", "converse-cstar", "converse-leavitt"]
    max_power: int = Field(default=10, ge=1)


class ReportResponse(BaseModel):
    """Envelope pairing a report with the exit code it implies, so HTTP
    clients see the same deterministic status the CLI returns."""

    exit_code: int
    report: dict[str, Any]


class HealthResponse(BaseModel):
    status: Literal["ok"]
    version: str
