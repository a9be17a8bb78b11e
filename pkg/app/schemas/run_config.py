from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.algebra.matrices import valuation
from app.algebra.syntax import parse_laurent
from app.models.building import ApartmentVertex, Configuration, LatticeBasis, Vertex
from app.models.flags import FlagType


class LatticeSpec(BaseModel):
    """One lattice line: diagonal exponents or a matrix of Laurent entries in t."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["diag", "matrix"]
    exponents: Optional[list[int]] = Field(None, description="Exponents a with basis diag(t^a)")
    entries: Optional[list[list[str]]] = Field(None, description="Matrix entries, row by row")

    @model_validator(mode="after")
    def check_payload(self) -> "LatticeSpec":
        if self.kind == "diag" and not self.exponents:
            raise ValueError("diag lattice needs exponents")
        if self.kind == "matrix" and not self.entries:
            raise ValueError("matrix lattice needs entries")
        return self

    @property
    def dim(self) -> int:
        return len(self.exponents) if self.kind == "diag" else len(self.entries)

    def to_vertex(self) -> Vertex:
        if self.kind == "diag":
            return ApartmentVertex(self.exponents)
        basis = LatticeBasis.from_laurent_rows([[parse_laurent(x) for x in row] for row in self.entries])
        return _as_apartment(basis) or Vertex(basis)


def _as_apartment(basis: LatticeBasis) -> Optional[ApartmentVertex]:
    """Diagonal bases with monomial entries c·t^a are apartment vertices."""
    exponents = []
    for i, row in enumerate(basis.rows):
        for j, x in enumerate(row):
            if i != j and x:
                return None
        entry = row[i]
        if len(entry.numer) != 1 or len(entry.denom) != 1:
            return None
        exponents.append(valuation(entry))
    return ApartmentVertex(exponents)


class RunConfig(BaseModel):
    """A parsed run: flag type, vertex configuration and run options."""

    model_config = ConfigDict(validate_assignment=True)

    d: int = Field(..., ge=2, description="Dimension of the vector space")
    ranks: list[int] = Field(..., min_length=1, description="Flag type ranks k_1 < … < k_r")
    lattices: list[LatticeSpec] = Field(..., min_length=1)
    seed: Optional[int] = Field(None, ge=0)
    radius: Optional[int] = Field(None, ge=0)
    order: Literal["degrevlex", "lex"] = "degrevlex"
    output: Literal["text", "json"] = "text"
    max_candidates: Optional[int] = Field(None, ge=0)
    timeout_secs: Optional[float] = Field(None, gt=0)
    trials: int = Field(4, ge=1)

    @model_validator(mode="after")
    def check_dimensions(self) -> "RunConfig":
        for i, lattice in enumerate(self.lattices, start=1):
            if lattice.dim != self.d:
                raise ValueError(f"lattice {i} has dimension {lattice.dim}, expected d = {self.d}")
        return self

    def flag_type(self) -> FlagType:
        return FlagType(self.d, tuple(self.ranks))

    def configuration(self) -> Configuration:
        return Configuration([lattice.to_vertex() for lattice in self.lattices])
