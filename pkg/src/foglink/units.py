"""dB and dBm conversion helpers.

All internal math in this package runs on linear-scale quantities (watts,
power ratios); these helpers are used only at API and I/O boundaries.
"""

import math


def db_to_linear(value_db: float) -> float:
    """Power ratio from its decibel representation."""
    return 10.0 ** (value_db / 10.0)


def linear_to_db(ratio: float) -> float:
    """Decibel representation of a positive power ratio."""
    return 10.0 * math.log10(ratio)


def dbm_to_watts(value_dbm: float) -> float:
    """Watts from a dBm level."""
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


def watts_to_dbm(power_w: float) -> float:
    """dBm level of a positive power in watts."""
    return 10.0 * math.log10(power_w * 1e3)
