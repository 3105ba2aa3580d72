"""Request/response models for the compute service.

Complex numbers travel as {re, im} pairs; floats are plain JSON numbers
(NaN/Inf are rejected at validation time, so responses never carry them).
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ComplexValue(BaseModel):
    re: float
    im: float


class AmplitudeRow(BaseModel):
    l: int
    n_a: int
    n_b: int
    re: float
    im: float


class AcsRequest(BaseModel):
    """Build one coherent state, labeled by tau or by sphere angles."""

    two_j: int = Field(ge=0)
    tau_re: float | None = Field(default=None, allow_inf_nan=False)
    tau_im: float | None = Field(default=None, allow_inf_nan=False)
    theta: float | None = Field(default=None, allow_inf_nan=False)
    phi: float | None = Field(default=None, allow_inf_nan=False)

    @model_validator(mode="after")
    def _one_label(self):
        has_tau = self.tau_re is not None or self.tau_im is not None
        has_angles = self.theta is not None or self.phi is not None
        if has_tau and has_angles:
            raise ValueError("give either tau components or angles, not both")
        if has_tau and (self.tau_re is None or self.tau_im is None):
            raise ValueError("tau needs both tau_re and tau_im")
        if has_angles and (self.theta is None or self.phi is None):
            raise ValueError("angles need both theta and phi")
        if not has_tau and not has_angles:
            raise ValueError("give tau components or angles")
        return self


class AcsResponse(BaseModel):
    command: Literal["acs"] = "acs"
    two_j: int
    tau: ComplexValue
    amplitudes: list[AmplitudeRow]


class RamanRequestBase(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    w1: float = Field(gt=0, allow_inf_nan=False)
    w2: float = Field(gt=0, allow_inf_nan=False)
    lam: float = Field(alias="lambda", allow_inf_nan=False)


class SpectrumRequest(RamanRequestBase):
    two_j: int = Field(ge=0)


class SpectrumRow(BaseModel):
    n: int
    closed_form_eigenvalue: float
    oracle_eigenvalue: float
    abs_diff: float


class SpectrumResponse(BaseModel):
    command: Literal["spectrum"] = "spectrum"
    w1: float
    w2: float
    lam: float
    two_j: int
    tau_plus: ComplexValue
    tau_minus: ComplexValue
    e_plus: float
    e_minus: float
    a: float
    b: float
    rows: list[SpectrumRow]


class StatePayload(BaseModel):
    """A previously emitted state, re-submitted for verification."""

    two_j: int = Field(ge=0)
    amplitudes: list[AmplitudeRow]


class ResidualRequest(RamanRequestBase):
    branch: Literal["plus", "minus"]
    two_j: int | None = Field(default=None, ge=0)
    state: StatePayload | None = None

    @model_validator(mode="after")
    def _one_source(self):
        if (self.two_j is None) == (self.state is None):
            raise ValueError("give exactly one of two_j or a state payload")
        return self


class ResidualResponse(BaseModel):
    command: Literal["residual"] = "residual"
    w1: float
    w2: float
    lam: float
    two_j: int
    branch: Literal["plus", "minus"]
    tau: ComplexValue
    energy: float
    residual: float
    r1: float
    r2: float
    r3: float


class CompletenessRequest(BaseModel):
    two_j: int = Field(ge=0)
    full: bool = False
    n_max: int | None = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _n_max_needs_full(self):
        if self.n_max is not None and not self.full:
            raise ValueError("n_max only applies to the full-space check")
        if self.full and self.n_max is not None and self.n_max > self.two_j:
            raise ValueError("n_max must not exceed two_j")
        return self


class CompletenessResponse(BaseModel):
    command: Literal["completeness"] = "completeness"
    two_j: int
    full: bool
    n_max: int | None
    max_abs_deviation: float
    theta_count: int
    phi_count: int


class ThermoRequest(RamanRequestBase):
    beta_min: float = Field(gt=0, allow_inf_nan=False)
    beta_max: float = Field(gt=0, allow_inf_nan=False)
    steps: int = Field(ge=1)

    @model_validator(mode="after")
    def _ordered_range(self):
        if self.beta_max < self.beta_min:
            raise ValueError("beta_max must be >= beta_min")
        return self


class ThermoRow(BaseModel):
    beta: float
    z_plus: float
    z_minus: float
    z: float
    u: float
    u_oracle: float
    rel_err: float


class ThermoResponse(BaseModel):
    command: Literal["thermo"] = "thermo"
    w1: float
    w2: float
    lam: float
    a: float
    b: float
    rows: list[ThermoRow]


class ErrorBody(BaseModel):
    """Uniform error payload: code is the error class name."""

    code: str
    message: str
