"""Exterior harmonic extension toolkit: distance bounds, boundary diagnostics,
and certified power-series field evaluation around analytic plane curves."""

from ._harmext import (
    BoundaryData,
    CurveModel,
    HarmextError,
    boundary_trace,
    collar_width,
    compatibility,
    compute_profile,
    curve_jet,
    dirichlet_defect,
    extend,
    frame_at,
    hilbert_transform,
    local_distance,
    min_radius_of_curvature,
    neumann_correction,
    run_job_json,
)

__all__ = [
    "BoundaryData",
    "CurveModel",
    "HarmextError",
    "boundary_trace",
    "collar_width",
    "compatibility",
    "compute_profile",
    "curve_jet",
    "dirichlet_defect",
    "extend",
    "frame_at",
    "hilbert_transform",
    "local_distance",
    "min_radius_of_curvature",
    "neumann_correction",
    "run_job_json",
]
