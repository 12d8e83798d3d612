"""Numerical laboratory for an exactly computable two-block model:
explicit geodesic segments, chord-ratio angles with existence verdicts,
and triangle synthesis with prescribed corner data.
"""
from .angles import (AngleResult, AngleSchedule, AngleTolerances,
                     DerivativeProbe, angle_at_mu1_closed, angle_at_mu_closed,
                     angle_base_standard, angle_numeric, derivative_probe)
from .errors import (BlockgeoError, ConstructionError, DegenerateSegmentError,
                     ExistenceUnknownError, InputError, InvalidSigmaError)
from .extrapolate import limit_at_zero
from .geodesics import (GeodesicSegment, SigmaProfile, SigmaValidation,
                        chart_image, corridor_apex, corridor_lower,
                        corridor_upper, max_slope_at_k, max_slope_at_zero,
                        pulled_back_segment, sigma_constant_one,
                        sigma_midpoint_pinned, sigma_oscillatory,
                        sigma_pointwise_gap, sigma_prescribed, sigma_segment,
                        standard_segment, validate_sigma)
from .hyp import (arclength_from_param, hyp_dist, length_from_modulus,
                  mobius_diff, modulus_from_length, param_from_arclength)
from .model import (BASE, MU, MU1, MU2, VariationSlope, allowable_chart,
                    distance, h_functional, validate_point, variation_slope)
from .service import create_app
from .triangles import (CurvatureProbe, TriangleReport, TriangleSpec,
                        VertexAngle, curvature_probe, synthesize,
                        synthesize_family)

__version__ = "0.1.0"

__all__ = [
    "AngleResult", "AngleSchedule", "AngleTolerances", "BASE",
    "BlockgeoError", "ConstructionError", "CurvatureProbe",
    "DegenerateSegmentError", "DerivativeProbe", "ExistenceUnknownError",
    "GeodesicSegment", "InputError", "InvalidSigmaError", "MU", "MU1", "MU2",
    "SigmaProfile", "SigmaValidation", "TriangleReport", "TriangleSpec",
    "VariationSlope", "VertexAngle", "allowable_chart",
    "angle_at_mu1_closed", "angle_at_mu_closed", "angle_base_standard",
    "angle_numeric", "arclength_from_param", "chart_image", "corridor_apex",
    "corridor_lower", "corridor_upper", "create_app", "curvature_probe",
    "derivative_probe", "distance", "h_functional", "hyp_dist",
    "length_from_modulus", "limit_at_zero", "max_slope_at_k",
    "max_slope_at_zero", "mobius_diff", "modulus_from_length",
    "param_from_arclength", "pulled_back_segment", "sigma_constant_one",
    "sigma_midpoint_pinned", "sigma_oscillatory", "sigma_pointwise_gap",
    "sigma_prescribed", "sigma_segment", "standard_segment", "synthesize",
    "synthesize_family", "validate_point", "validate_sigma",
    "variation_slope",
]
