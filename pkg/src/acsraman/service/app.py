"""FastAPI service exposing the library's computations as stateless endpoints.

Error contract: domain errors (inputs outside the physical domain) come
back as HTTP 400, numerical failures as HTTP 500, malformed requests as
HTTP 422; all three carry a JSON body {code, message} where code is the
error class name.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import DomainError, NumericalError
from ..fock import BlockVector
from ..quadrature import identity_resolution_full, identity_resolution_j
from ..raman import (
    Branch,
    RamanParams,
    block_spectrum_oracle,
    branch_tau,
    eigen_residual_of,
    energy,
    normal_modes,
    spectrum_closed,
    tau_pm,
)
from ..states import (
    ACSAngles,
    ACSLabel,
    build_acs,
    relation_residuals,
    tau_from_angles,
)
from ..thermo import ThermoParams, spectral_sum_oracle, total_partition
from .models import (
    AcsRequest,
    AcsResponse,
    AmplitudeRow,
    CompletenessRequest,
    CompletenessResponse,
    ComplexValue,
    ResidualRequest,
    ResidualResponse,
    SpectrumRequest,
    SpectrumResponse,
    SpectrumRow,
    ThermoRequest,
    ThermoResponse,
    ThermoRow,
)


def _amplitude_rows(two_j: int, amps: np.ndarray) -> list[AmplitudeRow]:
    return [
        AmplitudeRow(l=l, n_a=two_j - l, n_b=l, re=amp.real, im=amp.imag)
        for l, amp in enumerate(amps)
    ]


def _block_vector(payload) -> BlockVector:
    amps = np.zeros(payload.two_j + 1, dtype=complex)
    for row in payload.amplitudes:
        if not (0 <= row.l <= payload.two_j):
            raise ValueError(f"amplitude index l={row.l} outside block 2j={payload.two_j}")
        amps[row.l] = complex(row.re, row.im)
    return BlockVector(payload.two_j, amps)


def run_acs(req: AcsRequest) -> AcsResponse:
    if req.theta is not None:
        tau = tau_from_angles(ACSAngles(req.theta, req.phi))
    else:
        tau = complex(req.tau_re, req.tau_im)
    v = build_acs(ACSLabel(req.two_j, tau))
    return AcsResponse(
        two_j=req.two_j,
        tau=ComplexValue(re=tau.real, im=tau.imag),
        amplitudes=_amplitude_rows(req.two_j, v.amps),
    )


def run_spectrum(req: SpectrumRequest) -> SpectrumResponse:
    p = RamanParams(req.w1, req.w2, req.lam)
    tp, tm = tau_pm(p)
    nm = normal_modes(p)
    closed = spectrum_closed(p, req.two_j)
    oracle = block_spectrum_oracle(p, req.two_j)
    rows = [
        SpectrumRow(
            n=n,
            closed_form_eigenvalue=float(c),
            oracle_eigenvalue=float(o),
            abs_diff=abs(float(c) - float(o)),
        )
        for n, (c, o) in enumerate(zip(closed, oracle))
    ]
    return SpectrumResponse(
        w1=req.w1,
        w2=req.w2,
        lam=req.lam,
        two_j=req.two_j,
        tau_plus=ComplexValue(re=tp.real, im=tp.imag),
        tau_minus=ComplexValue(re=tm.real, im=tm.imag),
        e_plus=energy(p, req.two_j, Branch.PLUS),
        e_minus=energy(p, req.two_j, Branch.MINUS),
        a=nm.A,
        b=nm.B,
        rows=rows,
    )


def run_residual(req: ResidualRequest) -> ResidualResponse:
    p = RamanParams(req.w1, req.w2, req.lam)
    branch = Branch(req.branch)
    tau = branch_tau(p, branch)
    if req.state is not None:
        v = _block_vector(req.state)
    else:
        v = build_acs(ACSLabel(req.two_j, tau))
    r1, r2, r3 = relation_residuals(v, tau)
    return ResidualResponse(
        w1=req.w1,
        w2=req.w2,
        lam=req.lam,
        two_j=v.two_j,
        branch=req.branch,
        tau=ComplexValue(re=tau.real, im=tau.imag),
        energy=energy(p, v.two_j, branch),
        residual=eigen_residual_of(p, v, branch),
        r1=r1,
        r2=r2,
        r3=r3,
    )


def run_completeness(req: CompletenessRequest) -> CompletenessResponse:
    if req.full:
        n_max = req.two_j if req.n_max is None else req.n_max
        report = identity_resolution_full(req.two_j, n_max)
    else:
        report = identity_resolution_j(req.two_j)
    return CompletenessResponse(
        two_j=req.two_j,
        full=req.full,
        n_max=report.n_max,
        max_abs_deviation=report.max_abs_deviation,
        theta_count=report.theta_count,
        phi_count=report.phi_count,
    )


def run_thermo(req: ThermoRequest) -> ThermoResponse:
    p = RamanParams(req.w1, req.w2, req.lam)
    nm = normal_modes(p)
    rows = []
    for beta in np.linspace(req.beta_min, req.beta_max, req.steps):
        t = ThermoParams(float(beta))
        result = total_partition(p, t)
        _, u_oracle = spectral_sum_oracle(p, t)
        u = result.internal_energy
        rel_err = abs(u - u_oracle) / max(abs(u), abs(u_oracle), 1e-300)
        rows.append(
            ThermoRow(
                beta=t.beta,
                z_plus=result.z_plus,
                z_minus=result.z_minus,
                z=result.z_total,
                u=u,
                u_oracle=u_oracle,
                rel_err=rel_err,
            )
        )
    return ThermoResponse(
        w1=req.w1, w2=req.w2, lam=req.lam, a=nm.A, b=nm.B, rows=rows
    )


def create_app() -> FastAPI:
    app = FastAPI(title="acsraman", version=__version__)

    @app.exception_handler(DomainError)
    async def _domain_error(request, exc: DomainError):
        return JSONResponse(
            status_code=400,
            content={"code": type(exc).__name__, "message": str(exc)},
        )

    @app.exception_handler(NumericalError)
    async def _numerical_error(request, exc: NumericalError):
        return JSONResponse(
            status_code=500,
            content={"code": type(exc).__name__, "message": str(exc)},
        )

    @app.exception_handler(ValueError)
    async def _value_error(request, exc: ValueError):
        return JSONResponse(
            status_code=422,
            content={"code": "InvalidParameters", "message": str(exc)},
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request, exc: RequestValidationError):
        detail = "; ".join(
            f"{'.'.join(str(part) for part in err['loc'])}: {err['msg']}"
            for err in exc.errors()
        )
        return JSONResponse(
            status_code=422,
            content={"code": "InvalidParameters", "message": detail},
        )

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/acs", response_model=AcsResponse)
    def acs(req: AcsRequest):
        return run_acs(req)

    @app.post("/spectrum", response_model=SpectrumResponse)
    def spectrum(req: SpectrumRequest):
        return run_spectrum(req)

    @app.post("/residual", response_model=ResidualResponse)
    def residual(req: ResidualRequest):
        return run_residual(req)

    @app.post("/completeness", response_model=CompletenessResponse)
    def completeness(req: CompletenessRequest):
        return run_completeness(req)

    @app.post("/thermo", response_model=ThermoResponse)
    def thermo(req: ThermoRequest):
        return run_thermo(req)

    return app


app = create_app()
