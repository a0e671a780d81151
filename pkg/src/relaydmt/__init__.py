"""Diversity-multiplexing tradeoff toolkit for the half-duplex
single-relay network with a two-antenna destination."""

from .core import (
    EQ_TOL,
    STRATEGIES,
    ChannelExponents,
    DomainError,
    NetworkParams,
    Schedule,
    TradeoffCurve,
    cut_exponents,
    d_blind_closed,
    d_closed,
    d_mimo_2x2,
    equalized_cut_exponent,
    f_global,
    in_outage,
    r_star,
    s_exponent,
)
from .optimize import (
    InternalSolverError,
    OptimizerConfig,
    ScheduleResult,
    compute_curve,
    d_blind_numeric,
    d_global_numeric,
    d_local_numeric,
    local_schedule_table,
    min_s_over_outage,
)

__version__ = "0.1.0"

__all__ = [
    "EQ_TOL",
    "STRATEGIES",
    "ChannelExponents",
    "DomainError",
    "InternalSolverError",
    "NetworkParams",
    "OptimizerConfig",
    "Schedule",
    "ScheduleResult",
    "TradeoffCurve",
    "compute_curve",
    "cut_exponents",
    "d_blind_closed",
    "d_blind_numeric",
    "d_closed",
    "d_global_numeric",
    "d_local_numeric",
    "d_mimo_2x2",
    "equalized_cut_exponent",
    "f_global",
    "in_outage",
    "local_schedule_table",
    "min_s_over_outage",
    "r_star",
    "s_exponent",
    "__version__",
]
