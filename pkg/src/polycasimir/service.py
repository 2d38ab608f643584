"""Request/response models and handlers for every operation the package exposes.

The handlers are plain functions over pydantic request models; the FastAPI app
from :func:`create_app` and the command-line front end are both thin clients
of the same handlers, so HTTP and CLI results cannot drift apart.
"""

from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel, Field

from . import extensions, regularization, report, spectra
from .specfun import BudgetError, ConvergenceError, DomainError, PoleError, bessel_j_zeros_row

__all__ = [
    "ZerosRequest", "SpectrumRequest", "CompareRequest", "RegimesRequest",
    "CircleEnergyRequest", "SquareEnergyRequest", "PolygonEnergyRequest",
    "RdScaleRequest", "CylinderRequest", "InflateRequest", "ReconcileRequest",
    "handle_zeros", "handle_spectrum", "handle_compare", "handle_regimes",
    "handle_circle_energy", "handle_square_energy", "handle_polygon_energy",
    "handle_rd_scale", "handle_cylinder", "handle_inflate", "handle_reconcile",
    "create_app",
]

Source = Literal["formula", "paper_constants"]


class ZerosRequest(BaseModel):
    order: int = Field(0, ge=0, description="Bessel J order m")
    count: int = Field(10, ge=1, le=1_000_000)


class SpectrumRequest(BaseModel):
    domain: Literal["disk", "square", "polygon"] = "disk"
    sides: int = Field(4, ge=3, description="polygon side count N")
    grid: Optional[int] = Field(None, ge=1, description="G for a G x G index grid")
    count: Optional[int] = Field(None, ge=1, description="K lowest modes (disk/polygon)")
    radius: float = Field(1.0, gt=0.0)
    order: int = Field(4, ge=2, le=4, description="1/N series truncation order")
    threads: Optional[int] = Field(None, ge=1)


class CompareRequest(BaseModel):
    grid: int = Field(100, ge=2)
    sides: int = Field(4, ge=3)
    pairing: Literal["rank", "index"] = "rank"
    radius: float = Field(1.0, gt=0.0)
    order: int = Field(4, ge=2, le=4)
    threads: Optional[int] = Field(None, ge=1)


class RegimesRequest(BaseModel):
    sides: int = Field(4, ge=3)


class CircleEnergyRequest(BaseModel):
    radius: float = Field(1.0, gt=0.0)
    source: Source = "paper_constants"


class SquareEnergyRequest(BaseModel):
    length: float = Field(1.0, gt=0.0, description="side length a")
    with_terms: bool = False
    epsilon: Optional[float] = Field(None, gt=0.0, le=1e-2,
                                     description="run the s -> -1/2 limit check")


class PolygonEnergyRequest(BaseModel):
    sides: int = Field(4, ge=3)
    radius: float = Field(1.0, gt=0.0)
    source: Source = "paper_constants"
    order: int = Field(4, ge=2, le=4)


class RdScaleRequest(BaseModel):
    dims: int = Field(3, ge=0, description="flat dimension count D")
    sides: int = Field(4, ge=3)
    s: float


class CylinderRequest(BaseModel):
    sides: int = Field(4, ge=3)
    count: int = Field(10, ge=1, description="transverse modes kept")
    length: float = Field(1.0, gt=0.0, description="axial half-length a")
    method: Literal["exact", "asymptotic", "both"] = "exact"
    tm_index: Optional[int] = Field(None, ge=1,
                                    description="axial index k for one TM mode")


class InflateRequest(BaseModel):
    delta_r: float
    eigenvalue: Optional[float] = Field(None, gt=0.0)
    simplified: bool = False


class ReconcileRequest(BaseModel):
    pass


def handle_zeros(req: ZerosRequest) -> dict:
    zeros = bessel_j_zeros_row(req.order, req.count)
    return {"order": req.order, "zeros": [float(z) for z in zeros]}


def handle_spectrum(req: SpectrumRequest) -> spectra.Spectrum:
    if req.domain == "square":
        if req.grid is None:
            raise DomainError("square spectra are grid-truncated; pass grid")
        return spectra.square_frequencies(a=req.radius, grid=req.grid)
    base = spectra.disk_frequencies(a=req.radius, grid=req.grid, count=req.count,
                                    threads=req.threads)
    if req.domain == "disk":
        return base
    return spectra.polygon_frequencies(req.sides, base, order=req.order)


def handle_compare(req: CompareRequest) -> report.ComparisonGrid:
    return report.compare_grid(req.grid, N=req.sides, pairing=req.pairing,
                               a=req.radius, threads=req.threads, order=req.order)


def handle_regimes(req: RegimesRequest) -> list[report.RegimeReport]:
    return report.regime_table(req.sides)


def handle_circle_energy(req: CircleEnergyRequest) -> regularization.LaurentEnergy:
    return regularization.circle_casimir_energy(a=req.radius, source=req.source)


def handle_square_energy(req: SquareEnergyRequest) -> dict:
    out: dict = {"energy": regularization.square_casimir_energy(a=req.length)}
    if req.with_terms:
        out["terms"] = regularization.square_energy_terms(a=req.length)
    if req.epsilon is not None:
        check = regularization.square_energy_epsilon_check(a=req.length, eps=req.epsilon)
        out["epsilon_check"] = check
        out["epsilon_gap"] = abs(check - out["energy"])
    return out


def handle_polygon_energy(req: PolygonEnergyRequest) -> regularization.LaurentEnergy:
    return regularization.polygon_casimir_energy(req.sides, a=req.radius,
                                                 source=req.source, order=req.order)


def handle_rd_scale(req: RdScaleRequest) -> dict:
    scale = extensions.rd_polygon_scale(extensions.ProductSpaceSpec(
        D=req.dims, N=req.sides, s=req.s))
    return {"dims": req.dims, "sides": req.sides, "s": req.s, "scale": scale}


def handle_cylinder(req: CylinderRequest) -> dict:
    cfg = extensions.CylinderConfig(a=req.length, N=req.sides,
                                    mode_truncation=req.count)
    out: dict = {"sides": req.sides, "count": req.count, "length": req.length}
    if req.tm_index is not None:
        out["tm_mode"] = extensions.resonator_tm_mode(req.tm_index, (0, 1), cfg)
        return out
    if req.method in ("exact", "both"):
        out["exact"] = extensions.cylinder_energy_exact(cfg)
    if req.method in ("asymptotic", "both"):
        out["asymptotic"] = extensions.cylinder_energy_asymptotic(cfg)
    if req.method == "both":
        out["ratio_minus_one"] = out["exact"] / out["asymptotic"] - 1.0
    return out


def handle_inflate(req: InflateRequest) -> dict:
    out: dict = {
        "delta_r": req.delta_r,
        "energy_factor": spectra.inflate_energy_factor(req.delta_r,
                                                       simplified=req.simplified),
    }
    if req.eigenvalue is not None:
        out["eigenvalue"] = spectra.inflate_disk(req.eigenvalue, req.delta_r)
    return out


def handle_reconcile(req: ReconcileRequest) -> list[dict]:
    return regularization.reconciliation()


def create_app() -> FastAPI:
    app = FastAPI(title="polycasimir", version="0.1.0")

    @app.exception_handler(DomainError)
    @app.exception_handler(PoleError)
    async def _domain_error(request: Request, exc: Exception):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(ConvergenceError)
    @app.exception_handler(BudgetError)
    async def _numeric_error(request: Request, exc: Exception):
        return JSONResponse(status_code=500, content={"detail": str(exc)})

    def _dataset(obj) -> Response:
        return Response(content=report.emit(obj, "json"),
                        media_type="application/json")

    @app.post("/v1/zeros")
    def zeros(req: ZerosRequest) -> dict:
        return handle_zeros(req)

    @app.post("/v1/spectrum")
    def spectrum(req: SpectrumRequest) -> Response:
        return _dataset(handle_spectrum(req))

    @app.post("/v1/compare")
    def compare(req: CompareRequest) -> Response:
        return _dataset(handle_compare(req))

    @app.post("/v1/regimes")
    def regimes(req: RegimesRequest) -> Response:
        return _dataset(handle_regimes(req))

    @app.post("/v1/energy/circle")
    def circle_energy(req: CircleEnergyRequest) -> Response:
        return _dataset(handle_circle_energy(req))

    @app.post("/v1/energy/square")
    def square_energy(req: SquareEnergyRequest) -> dict:
        return handle_square_energy(req)

    @app.post("/v1/energy/polygon")
    def polygon_energy(req: PolygonEnergyRequest) -> Response:
        return _dataset(handle_polygon_energy(req))

    @app.post("/v1/rd-scale")
    def rd_scale(req: RdScaleRequest) -> dict:
        return handle_rd_scale(req)

    @app.post("/v1/cylinder")
    def cylinder(req: CylinderRequest) -> dict:
        return handle_cylinder(req)

    @app.post("/v1/inflate")
    def inflate(req: InflateRequest) -> dict:
        return handle_inflate(req)

    @app.post("/v1/reconcile")
    def reconcile(req: ReconcileRequest) -> Response:
        return _dataset(handle_reconcile(req))

    return app
