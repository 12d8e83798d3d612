"""HTTP service exposing the laboratory over JSON.

Requests are validated by pydantic models; responses are plain dicts passed
through serialize.canonical so every numeric field is stable to 9
significant digits. Domain errors map to structured HTTP errors:

* InputError family and InvalidSigmaError and ExistenceUnknownError -> 400
  with detail {category, message, ...}
* ConstructionError -> 409 with a retry suggestion
* malformed request bodies -> 422 (FastAPI's own validation)
"""
import math

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, model_validator

from . import hyp
from .angles import AngleSchedule, AngleTolerances, angle_numeric
from .errors import (BlockgeoError, ConstructionError, ExistenceUnknownError,
                     InputError, InvalidSigmaError)
from .geodesics import (GeodesicSegment, SigmaProfile, pulled_back_segment,
                        sigma_constant_one, sigma_midpoint_pinned,
                        sigma_oscillatory, sigma_prescribed, sigma_segment,
                        standard_segment, validate_sigma)
from .model import BASE, MU, MU1, MU2, distance, validate_point
from .serialize import canonical
from .triangles import (VERTEX_ORDER, TriangleSpec, curvature_probe,
                        synthesize, synthesize_family)

VERSION = "0.1.0"

NAMED_SEGMENTS = {
    "alpha-mu": (BASE, MU),
    "alpha-mu1": (BASE, MU1),
    "mu1-reference": (MU1, MU2),
}


class ConfigModel(BaseModel):
    """Modulus configuration: exactly one of k or the side length l."""
    k: float | None = None
    l: float | None = None

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.k is None) == (self.l is None):
            raise ValueError("provide exactly one of k or l")
        return self

    def resolve(self) -> float:
        if self.k is not None:
            return hyp.require_modulus(self.k)
        return hyp.modulus_from_length(self.l)


class SigmaSpecModel(BaseModel):
    family: str = Field(pattern="^(constant-one|prescribed|oscillatory|midpoint-pinned)$")
    d0: float | None = None
    dk: float | None = None


class SegmentSpecModel(BaseModel):
    type: str = Field(
        pattern="^(standard|sigma|pulled-back|alpha-mu|alpha-mu1|mu1-reference)$")
    p: tuple[float, float] | None = None
    q: tuple[float, float] | None = None
    sigma: SigmaSpecModel | None = None


class ScheduleModel(BaseModel):
    r0: float = 1e-2
    ratio: float = 0.5
    steps: int = 30

    def to_core(self) -> AngleSchedule:
        return AngleSchedule(r0=self.r0, ratio=self.ratio, steps=self.steps)


class ToleranceModel(BaseModel):
    convergence: float = 1e-5
    oscillation: float = 1e-2
    window: int = 5

    def to_core(self) -> AngleTolerances:
        return AngleTolerances(convergence=self.convergence,
                               oscillation=self.oscillation,
                               window=self.window)


class DistanceRequest(BaseModel):
    config: ConfigModel
    p: tuple[float, float]
    q: tuple[float, float]


class AngleRequest(BaseModel):
    config: ConfigModel
    seg_a: SegmentSpecModel
    seg_b: SegmentSpecModel
    vertex: tuple[float, float] | None = None
    schedule: ScheduleModel = ScheduleModel()
    tolerances: ToleranceModel = ToleranceModel()
    degrees: bool = False
    include_diagnostics: bool = False


class TriangleRequest(BaseModel):
    config: ConfigModel
    thetas: tuple[float, float, float]
    family_size: int = 1
    family_seed: int | str = 0
    schedule: ScheduleModel = ScheduleModel()
    tolerances: ToleranceModel = ToleranceModel()


class ProbeRequest(BaseModel):
    config: ConfigModel


class SweepRequest(BaseModel):
    ks: tuple[float, ...] = (0.3, 0.5, 0.7)
    vertex: str = Field(default="mu", pattern="^(base|mu|mu1)$")
    thetas: tuple[float, ...] = (0.0, math.pi / 3, math.pi / 2,
                                 2 * math.pi / 3, math.pi)
    schedule: ScheduleModel = ScheduleModel()
    tolerances: ToleranceModel = ToleranceModel()


class SigmaValidateRequest(BaseModel):
    config: ConfigModel
    sigma: SigmaSpecModel
    samples: int = 10_000


def build_sigma(spec: SigmaSpecModel, k: float) -> SigmaProfile:
    if spec.family == "constant-one":
        return sigma_constant_one(k)
    if spec.family == "midpoint-pinned":
        return sigma_midpoint_pinned(k)
    if spec.family == "oscillatory":
        return sigma_oscillatory(k)
    if spec.d0 is None or spec.dk is None:
        raise InputError("prescribed profiles need both d0 and dk")
    return sigma_prescribed(spec.d0, spec.dk, k)


def build_segment(spec: SegmentSpecModel, k: float) -> GeodesicSegment:
    if spec.type in NAMED_SEGMENTS:
        p, q = NAMED_SEGMENTS[spec.type]
        return standard_segment(p, q, k)
    if spec.type == "standard":
        if spec.p is None or spec.q is None:
            raise InputError("standard segments need both p and q")
        return standard_segment(spec.p, spec.q, k)
    if spec.sigma is None:
        raise InputError(f"{spec.type} segments need a sigma spec")
    sigma = build_sigma(spec.sigma, k)
    if spec.type == "sigma":
        return sigma_segment(sigma, k)
    return pulled_back_segment(sigma, k)


def _angle_result_payload(res, degrees: bool, include_diagnostics: bool) -> dict:
    out = {
        "verdict": res.verdict,
        "theta": res.theta,
        "limit_value": res.limit_value,
        "oscillation_band": res.oscillation_band,
        "steps_used": res.steps_used,
        "clamped": res.clamped,
    }
    if degrees:
        out["theta_degrees"] = (None if res.theta is None
                                else math.degrees(res.theta))
    if include_diagnostics:
        out["diagnostics"] = [list(pair) for pair in res.diagnostics]
    return out


def _triangle_payload(report) -> dict:
    angles = {}
    for name in VERTEX_ORDER:
        va = report.angles[name]
        angles[name] = {
            "vertex": list(va.vertex),
            "target": va.target,
            "closed": va.closed,
            "numeric": _angle_result_payload(va.numeric, False, False),
            "abs_deviation": va.deviation,
        }
    beta = report.sides["beta"].sigma
    return {
        "family_index": report.family_index,
        "vertices": {name: list(pt) for name, pt in report.vertices.items()},
        "side_lengths": list(report.side_lengths),
        "angles": angles,
        "angle_sum_numeric": report.angle_sum_numeric,
        "angle_sum_closed": report.angle_sum_closed,
        "max_angle_deviation": report.max_angle_deviation,
        "beta_sigma": {"family": beta.family, "d0": beta.d0, "dk": beta.dk,
                       "params": beta.params},
    }


def create_app() -> FastAPI:
    app = FastAPI(title="blockgeo",
                  description="two-block coefficient model laboratory",
                  version=VERSION)

    @app.exception_handler(BlockgeoError)
    async def _domain_error(request, exc):
        if isinstance(exc, ConstructionError):
            detail = {"category": "construction", "message": str(exc),
                      "suggestion": exc.suggestion}
            return JSONResponse(status_code=409, content={"detail": detail})
        if isinstance(exc, InvalidSigmaError):
            detail = {"category": "sigma", "message": str(exc)}
            if exc.t is not None:
                detail["t"] = canonical(exc.t)
            return JSONResponse(status_code=400, content={"detail": detail})
        if isinstance(exc, ExistenceUnknownError):
            detail = {"category": "existence", "message": str(exc)}
            return JSONResponse(status_code=400, content={"detail": detail})
        detail = {"category": "input", "message": str(exc)}
        return JSONResponse(status_code=400, content={"detail": detail})

    @app.get("/health")
    async def health():
        return {"status": "ok", "version": VERSION}

    @app.post("/distance")
    async def post_distance(req: DistanceRequest):
        k = req.config.resolve()
        p = validate_point(req.p, k)
        q = validate_point(req.q, k)
        return canonical({
            "k": k,
            "l": hyp.length_from_modulus(k),
            "p": list(p),
            "q": list(q),
            "distance": distance(p, q, k),
        })

    @app.post("/angle")
    async def post_angle(req: AngleRequest):
        k = req.config.resolve()
        seg_a = build_segment(req.seg_a, k)
        seg_b = build_segment(req.seg_b, k)
        res = angle_numeric(seg_a, seg_b, req.vertex,
                            schedule=req.schedule.to_core(),
                            tolerances=req.tolerances.to_core())
        payload = {"k": k, "seg_a": seg_a.kind, "seg_b": seg_b.kind}
        payload.update(_angle_result_payload(res, req.degrees,
                                             req.include_diagnostics))
        return canonical(payload)

    @app.post("/triangle")
    async def post_triangle(req: TriangleRequest):
        k = req.config.resolve()
        spec = TriangleSpec(l=hyp.length_from_modulus(k),
                            thetas=tuple(req.thetas),
                            family_seed=req.family_seed)
        if req.family_size == 1:
            reports = [synthesize(spec, schedule=req.schedule.to_core(),
                                  tolerances=req.tolerances.to_core())]
        else:
            reports = synthesize_family(spec, req.family_size,
                                        schedule=req.schedule.to_core(),
                                        tolerances=req.tolerances.to_core())
        return canonical({
            "k": k,
            "l": spec.l,
            "members": [_triangle_payload(r) for r in reports],
        })

    @app.post("/probe")
    async def post_probe(req: ProbeRequest):
        probe = curvature_probe(req.config.resolve())
        return canonical({
            "k": probe.k,
            "l": probe.l,
            "t_apex": probe.t_apex,
            "sigma_at_apex": probe.sigma_at_apex,
            "midpoint_beta": list(probe.midpoint_beta),
            "midpoint_alpha": list(probe.midpoint_alpha),
            "midpoint_arclengths": list(probe.midpoint_arclengths),
            "m": probe.m,
            "base": probe.base,
            "ratio_base_over_m": probe.ratio_base_over_m,
            "ratio_base_over_2m": probe.ratio_base_over_2m,
            "negative_curvature_violated": probe.negative_curvature_violated,
        })

    @app.post("/sweep")
    async def post_sweep(req: SweepRequest):
        rows = []
        schedule = req.schedule.to_core()
        tolerances = req.tolerances.to_core()
        for k in req.ks:
            k = hyp.require_modulus(k)
            for theta in req.thetas:
                rows.append(_sweep_row(k, req.vertex, float(theta),
                                       schedule, tolerances))
        return canonical({"vertex": req.vertex, "rows": rows})

    @app.post("/sigma/validate")
    async def post_sigma_validate(req: SigmaValidateRequest):
        k = req.config.resolve()
        sigma = build_sigma(req.sigma, k)
        rep = validate_sigma(sigma, k, samples=req.samples)
        return canonical({
            "k": k,
            "family": sigma.family,
            "d0": sigma.d0,
            "dk": sigma.dk,
            "ok": rep.ok,
            "bounds_ok": rep.bounds_ok,
            "endpoints_ok": rep.endpoints_ok,
            "lipschitz_ok": rep.lipschitz_ok,
            "strict_near_zero": rep.strict_near_zero,
            "strict_near_k": rep.strict_near_k,
            "max_upper_violation": rep.max_upper_violation,
            "max_lower_violation": rep.max_lower_violation,
            "worst_t": rep.worst_t,
            "max_phi_slope": rep.max_phi_slope,
            "endpoint_gap": rep.endpoint_gap,
            "samples": rep.samples,
        })

    return app


def _sweep_row(k: float, vertex: str, theta: float,
               schedule: AngleSchedule, tolerances: AngleTolerances) -> dict:
    """One sweep measurement: invert the closed form at the chosen vertex,
    construct the curves, and measure back numerically."""
    from .triangles import _slope_at_k_for, _slope_at_zero_for

    if vertex == "mu":
        sigma = sigma_prescribed(_slope_at_zero_for(theta, k), 0.0, k)
        seg_a = sigma_segment(sigma, k)
        seg_b = standard_segment(BASE, MU, k)
        at = MU
    elif vertex == "mu1":
        sigma = sigma_prescribed(0.0, _slope_at_k_for(theta, k), k)
        seg_a = sigma_segment(sigma, k)
        seg_b = standard_segment(MU1, MU2, k)
        at = MU1
    else:
        sigma = sigma_prescribed(_slope_at_zero_for(theta, k),
                                 1.0 / k, k)
        seg_a = pulled_back_segment(sigma, k)
        seg_b = standard_segment(BASE, MU, k)
        at = BASE
    res = angle_numeric(seg_a, seg_b, at, schedule=schedule,
                        tolerances=tolerances)
    return {
        "k": k,
        "vertex": vertex,
        "theta_target": theta,
        "theta_closed": theta,
        "theta_numeric": res.theta,
        "verdict": res.verdict,
        "abs_deviation": None if res.theta is None else abs(res.theta - theta),
    }
