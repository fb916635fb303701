"""Forced components, residual factor, numeric bounds and irreducibility."""
from ..bounds import (
    expected_jumping_degree,
    feasibility_check,
    h_bound,
    j_min,
    min_support,
    predicted_multiplicity,
)
from .components import (
    ComponentFinding,
    FactorizationReport,
    InvariantBreach,
    actual_h,
    analyze,
    curve_multiplicity,
    detect_fixed_components,
    multiplicity_at_point,
    residual,
    verify_h_bounds,
)
from .irreducibility import Verdict, irreducibility_probe, restrict_to_line

__all__ = [
    "expected_jumping_degree", "feasibility_check", "h_bound", "j_min", "min_support",
    "predicted_multiplicity", "ComponentFinding", "FactorizationReport", "InvariantBreach",
    "actual_h", "analyze", "curve_multiplicity", "detect_fixed_components",
    "multiplicity_at_point", "residual", "verify_h_bounds", "Verdict",
    "irreducibility_probe", "restrict_to_line",
]
