"""Exact computations in Marcinkiewicz and Lorentz spaces of step functions."""
from .exact import INFINITY, Interval, Radical, format_number, parse_number
from .gauge import (
    ConditionReport,
    PiecewiseLinearGauge,
    PowerGauge,
    big_psi_eval,
    big_psi_head_integral,
    classify,
    doubling_profile,
    eval_gauge,
    gauge_derivative,
    linear,
    min_linear,
)
from .norms import (
    DiscreteFunction,
    NormValue,
    lorentz_norm,
    marcinkiewicz_norm,
    natural_norm,
    norm_on_measure,
    unit_ball_member,
    weak_lp_norm,
    weak_lp_quasinorm,
)
from .step import (
    PiecewiseLinearConcave,
    StepFunction,
    TransportMap,
    add,
    apply_transport,
    constant,
    dilate,
    distribution,
    head_integral,
    head_integral_profile,
    indicator,
    rearrange,
    scale,
    submajorizes,
    transport_to_rearrangement,
    zero,
)
from .textio import dump_function, dump_gauge, parse_function, parse_gauge, read_function, read_gauge

__all__ = [
    "INFINITY", "Interval", "Radical", "format_number", "parse_number",
    "ConditionReport", "PiecewiseLinearGauge", "PowerGauge", "big_psi_eval", "big_psi_head_integral",
    "classify", "doubling_profile", "eval_gauge", "gauge_derivative", "linear", "min_linear",
    "DiscreteFunction", "NormValue", "lorentz_norm", "marcinkiewicz_norm", "natural_norm",
    "norm_on_measure", "unit_ball_member", "weak_lp_norm", "weak_lp_quasinorm",
    "PiecewiseLinearConcave", "StepFunction", "TransportMap", "add", "apply_transport", "constant", "dilate",
    "distribution", "head_integral", "head_integral_profile", "indicator", "rearrange", "scale",
    "submajorizes", "transport_to_rearrangement", "zero",
    "dump_function", "dump_gauge", "parse_function", "parse_gauge", "read_function", "read_gauge",
]
