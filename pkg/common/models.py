"""
Common models shared across all apps.

Used by:
- CLI: parses code, certificate and word files; prints reports
- Analysis: produces AnalysisReport and BoundReport
- Decoding: produces DecodeTranscript
- Oracle: produces MinDistanceReport
"""

import json
from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class _FileModel(BaseModel):
    """Input files reject unknown keys."""

    model_config = ConfigDict(extra="forbid")


# ============================================================================
# Input files
# ============================================================================


class CodeDefinitionFile(_FileModel):
    """A quasi-cyclic code given by its Gröbner-basis generator matrix."""

    p: int = Field(..., description="Characteristic of the base field")
    r: Optional[int] = Field(default=None, description="Extension degree; defaults to ord_m(p)")
    m: int = Field(..., description="Co-index; order of alpha")
    modulus: Optional[List[int]] = Field(
        default=None, description="Ascending coefficients of the monic defining polynomial"
    )
    alpha: Optional[List[int]] = Field(
        default=None, description="Power-basis coordinates of alpha; derived when omitted"
    )
    ell: int = Field(..., description="Index (number of components)")
    generators: List[List[List[int]]] = Field(
        ..., description="ell x ell array of ascending coefficient lists"
    )

    @model_validator(mode="after")
    def _check_shape(self) -> "CodeDefinitionFile":
        if self.ell < 1:
            raise ValueError("ell must be positive")
        if len(self.generators) != self.ell or any(len(row) != self.ell for row in self.generators):
            raise ValueError(f"generators must be a {self.ell} x {self.ell} array")
        return self


class CertificateFile(_FileModel):
    """Parameters (f, z, delta, nu) of a bound certificate, optionally with its witness."""

    f: int = Field(..., description="Starting exponent")
    z: int = Field(..., description="Step, a unit modulo m")
    delta: int = Field(..., description="Run length parameter (> 2)")
    nu: int = Field(..., description="Second-axis extent (>= 0)")
    witness: Optional[List[List[int]]] = Field(
        default=None, description="Coordinates of each witness entry v_t in the power basis"
    )


class WordFile(_FileModel):
    """A message, codeword or received word."""

    components: Optional[List[List[int]]] = Field(
        default=None, description="ell ascending coefficient lists"
    )
    flat: Optional[List[int]] = Field(
        default=None, description="Interleaved c_{0,0} .. c_{l-1,0}, c_{0,1}, ..."
    )

    @model_validator(mode="after")
    def _at_least_one(self) -> "WordFile":
        if self.components is None and self.flat is None:
            raise ValueError("one of 'components' or 'flat' is required")
        return self


# ============================================================================
# Analysis reports
# ============================================================================


class EigenvalueRow(BaseModel):
    """One eigenvalue alpha^exponent with its multiplicities."""

    exponent: int = Field(description="e with lambda = alpha^e")
    algebraic_mult: int = Field(description="Root order in det G(X)")
    geometric_mult: int = Field(description="Dimension of the eigenspace")


class CertificateReport(BaseModel):
    """A verified bound certificate."""

    f: int
    z: int
    delta: int
    nu: int
    exponents: List[int] = Field(description="The exponent set D, sorted")
    intersection_dim: int = Field(description="Dimension of the eigenspace intersection")
    dec: Union[int, str] = Field(description="Eigencode distance or 'inf'")
    dec_exact: bool = Field(default=True, description="False when enumeration was skipped")
    dstar: int = Field(description="min(delta + nu, dec)")
    witness: Optional[List[str]] = Field(default=None, description="Independent eigenvector")


class BoundRow(BaseModel):
    """Best certificate at one fixed nu."""

    nu: int
    dstar: Optional[int] = Field(default=None, description="None when no certificate exists")
    certificate: Optional[CertificateReport] = None


class AnalysisReport(BaseModel):
    """Output of `analyze`."""

    p: int
    r: int
    m: int
    ell: int
    length: int
    dimension: int
    eigenvalues: List[EigenvalueRow]
    bounds: List[BoundRow]
    dstar: int
    certificate: CertificateReport


class BoundReport(BaseModel):
    """Output of `bound`."""

    length: int
    dimension: int
    certificate: CertificateReport
    spot_check_samples: int


# ============================================================================
# Decoding and oracle reports
# ============================================================================


class PositionSymbols(BaseModel):
    """Recovered error at one burst position."""

    position: int
    value: str = Field(description="E_j in GF(p^r)")
    symbols: List[int] = Field(description="e_{j,t} for t in [0, ell)")


class DecodeTranscript(BaseModel):
    """Output of `decode`."""

    status: str = Field(description="SUCCESS or FAILURE")
    reason: Optional[str] = None
    detail: Optional[str] = None
    swapped: bool = Field(default=False, description="Certificate axes were interchanged")
    f: int
    z: int
    delta: int
    nu: int
    tau: int = Field(description="Guaranteed correction radius in burst positions")
    syndromes: List[List[str]] = Field(default_factory=list)
    locator: List[str] = Field(default_factory=list, description="Lambda_0 .. Lambda_eps")
    positions: List[int] = Field(default_factory=list)
    errors: List[PositionSymbols] = Field(default_factory=list)
    symbol_errors: int = 0
    codeword: Optional[List[List[int]]] = None


class CodewordFile(BaseModel):
    """Output of `encode`; readable back as a WordFile."""

    components: List[List[int]]
    flat: List[int]


class MinDistanceReport(BaseModel):
    """Output of `mindist`."""

    method: str
    distance: int
    guaranteed: bool = Field(description="False for sampled upper bounds")
    codewords_examined: int
    advisory: Optional[str] = None


def render(report: BaseModel, indent: int = 2) -> str:
    """Serialize a report with its declared key order."""
    return json.dumps(report.model_dump(), indent=indent)
