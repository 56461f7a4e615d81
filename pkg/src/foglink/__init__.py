"""Energy model for camera-class devices offloading analytics over an OFDM uplink.

Answers "at what workload complexity does offloading beat local compute?"
with a link budget, a clipping-aware class B amplifier model solved at its
SINR-optimal operating point, per-component transmitter power models, and
a seeded Monte-Carlo verifier for the amplifier closed forms.
"""

from .chain import (
    DeploymentParams,
    PowerBreakdown,
    RadioParams,
    breakeven_theta,
    coding_power,
    dac_power,
    duty_cycled_breakdown,
    local_power,
    offload_power,
    ofdm_power,
)
from .config import default_params, dump_defaults, load_config
from .errors import (
    BracketError,
    ConfigError,
    ConvergenceError,
    DomainError,
    FoglinkError,
    InfeasibleLinkError,
    NumericError,
)
from .link import (
    ChannelState,
    LinkGeometry,
    MIN_DISTANCE_KM,
    build_channel,
    noise_dbm,
    operating_point,
    path_gain_db,
    required_p_max,
    required_sinr,
)
from .mc import CHUNK_SAMPLES, McConfig, McEstimate, run_mc, soft_limit
from .numerics import RootSolveReport, erf, erfc, solve_bisection, solve_newton
from .pa import (
    PaOperatingPoint,
    bussgang_alpha,
    optimal_ibo,
    optimal_ibo_residual,
    pa_consumed_power,
    sinr_approx_db,
    sinr_of_ibo,
    snr_max_for_sinr_db,
)
from .units import db_to_linear, dbm_to_watts, linear_to_db, watts_to_dbm

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # numerics
    "RootSolveReport", "erf", "erfc", "solve_newton", "solve_bisection",
    # pa
    "PaOperatingPoint", "bussgang_alpha", "sinr_of_ibo", "optimal_ibo",
    "optimal_ibo_residual", "sinr_approx_db", "snr_max_for_sinr_db",
    "pa_consumed_power",
    # link
    "LinkGeometry", "ChannelState", "MIN_DISTANCE_KM", "path_gain_db",
    "noise_dbm", "required_sinr", "required_p_max", "build_channel",
    "operating_point",
    # chain
    "RadioParams", "DeploymentParams", "PowerBreakdown", "local_power",
    "coding_power", "ofdm_power", "dac_power", "duty_cycled_breakdown",
    "offload_power", "breakeven_theta",
    # mc
    "McConfig", "McEstimate", "CHUNK_SAMPLES", "soft_limit", "run_mc",
    # config
    "default_params", "load_config", "dump_defaults",
    # units
    "db_to_linear", "linear_to_db", "dbm_to_watts", "watts_to_dbm",
    # errors
    "FoglinkError", "DomainError", "BracketError", "ConvergenceError",
    "InfeasibleLinkError", "ConfigError", "NumericError",
]
