"""Soft-limiter power amplifier model.

A memoryless clipper driven by a complex-Gaussian (OFDM-like) input admits
closed forms for the Bussgang gain, the self-distortion power, the SINR at
the receiver, and the mean supply power of a class B amplifier stage.  This
module provides those closed forms plus the solve for the input back-off
(IBO) that maximizes SINR.

All quantities here are linear-scale ratios or watts; only functions whose
name carries ``_db`` accept or return decibels.
"""

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .numerics import erfc, solve_newton

__all__ = [
    "PaOperatingPoint",
    "bussgang_alpha",
    "sinr_of_ibo",
    "optimal_ibo_residual",
    "optimal_ibo",
    "sinr_approx_db",
    "snr_max_for_sinr_db",
    "pa_consumed_power",
]

_SQRT_PI = math.sqrt(math.pi)

# Search bracket for the optimal back-off, in linear IBO.  Wide enough to
# cover SNR ceilings from -10 dB up to 100 dB with margin.
IBO_BRACKET = (1e-8, 1e3)

# Above this SNR ceiling the optimal back-off exceeds ~35 (linear) and the
# Bussgang gain is no longer distinguishable from 1.0 in double precision,
# so no valid operating point can be represented.
MAX_SNR_CEILING = 1e16

# Approximation of the maximum achievable SINR in dB as an affine function
# of the SNR ceiling in dB.
SINR_APPROX_SLOPE = 0.84
SINR_APPROX_OFFSET_DB = -2.23


@dataclass(frozen=True)
class PaOperatingPoint:
    """A solved amplifier operating point.

    ``ibo_linear`` is the ratio of clipping power to mean input power,
    ``alpha`` the Bussgang gain, ``sinr_linear`` the achieved SINR and
    ``snr_max_linear`` the no-distortion SNR ceiling.  ``p_max_w`` and
    ``sigma2_w`` stay ``None`` until a link budget sizes the absolute
    power levels; when both are set they must be consistent with the
    back-off ratio.
    """

    ibo_linear: float
    alpha: float
    sinr_linear: float
    snr_max_linear: float
    p_max_w: Optional[float] = None
    sigma2_w: Optional[float] = None

    def __post_init__(self):
        if not self.ibo_linear > 0.0:
            raise DomainError(f"ibo_linear must be positive, got {self.ibo_linear!r}")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if not 0.0 < self.sinr_linear < self.snr_max_linear:
            raise DomainError(
                f"sinr_linear must lie in (0, snr_max_linear), got "
                f"{self.sinr_linear!r} with ceiling {self.snr_max_linear!r}"
            )
        if (self.p_max_w is None) != (self.sigma2_w is None):
            raise DomainError("p_max_w and sigma2_w must be set together")
        if self.p_max_w is not None:
            if self.p_max_w < 0.0 or not self.sigma2_w > 0.0:
                raise DomainError(
                    f"need p_max_w >= 0 and sigma2_w > 0, got "
                    f"{self.p_max_w!r}, {self.sigma2_w!r}"
                )
            if abs(self.p_max_w - self.ibo_linear * self.sigma2_w) > 1e-12 * self.p_max_w:
                raise DomainError(
                    f"inconsistent powers: p_max_w = {self.p_max_w!r} but "
                    f"ibo_linear * sigma2_w = {self.ibo_linear * self.sigma2_w!r}"
                )


def bussgang_alpha(ibo_linear: float) -> float:
    """Bussgang gain of the soft limiter for complex-Gaussian input.

        alpha = 1 - exp(-IBO) + 0.5 * sqrt(pi * IBO) * erfc(sqrt(IBO))

    Strictly increasing in the back-off; tends to 1 as clipping vanishes
    (saturating to exactly 1.0 in floats once IBO exceeds the mid-thirties)
    and falls off like 0.5 * sqrt(pi * IBO) under heavy clipping.
    """
    if not (math.isfinite(ibo_linear) and ibo_linear > 0.0):
        raise DomainError(f"ibo_linear must be positive and finite, got {ibo_linear!r}")
    root = math.sqrt(ibo_linear)
    return 1.0 - math.exp(-ibo_linear) + 0.5 * _SQRT_PI * root * erfc(root)


def sinr_of_ibo(ibo_linear: float, snr_max_linear: float) -> float:
    """Receiver SINR at a given back-off and SNR ceiling.

        SINR = alpha^2 / (1 - alpha^2 - exp(-IBO) + IBO / SNR_MAX)

    The denominator is the normalized clipping-distortion power plus the
    thermal-noise share; the numerator is the surviving useful power.
    """
    if not (math.isfinite(snr_max_linear) and snr_max_linear > 0.0):
        raise DomainError(
            f"snr_max_linear must be positive and finite, got {snr_max_linear!r}"
        )
    alpha = bussgang_alpha(ibo_linear)
    denom = 1.0 - alpha * alpha - math.exp(-ibo_linear) + ibo_linear / snr_max_linear
    sinr = alpha * alpha / denom
    if not (math.isfinite(sinr) and sinr > 0.0):
        raise DomainError(
            f"SINR degenerated to {sinr!r} at ibo = {ibo_linear!r}, "
            f"snr_max = {snr_max_linear!r}"
        )
    return sinr


def optimal_ibo_residual(ibo_linear: float, snr_max_linear: float) -> float:
    """Stationarity gap of the SINR curve at a given back-off.

    Returns (sqrt(pi)/2) * erfc(sqrt(IBO)) - sqrt(IBO) / SNR_MAX, which is
    positive below the SINR-optimal back-off, negative above it, and zero
    at the optimum.
    """
    if not ibo_linear > 0.0:
        raise DomainError(f"ibo_linear must be positive, got {ibo_linear!r}")
    z = math.sqrt(ibo_linear)
    return 0.5 * _SQRT_PI * erfc(z) - z / snr_max_linear


def optimal_ibo(snr_max_linear: float) -> PaOperatingPoint:
    """Back-off that maximizes SINR for a given SNR ceiling.

    Solves the stationarity condition in z = sqrt(IBO) with a guarded
    Newton iteration (the condition is strictly decreasing in z, so the
    root is unique).  The returned operating point carries the optimal
    back-off, the Bussgang gain and the achieved SINR; absolute power
    levels are left unset.
    """
    if not (math.isfinite(snr_max_linear) and snr_max_linear > 0.0):
        raise DomainError(
            f"snr_max_linear must be positive and finite, got {snr_max_linear!r}"
        )
    if snr_max_linear > MAX_SNR_CEILING:
        raise DomainError(
            f"snr_max_linear = {snr_max_linear!r} exceeds {MAX_SNR_CEILING:g}, "
            f"where the Bussgang gain saturates to 1.0 in double precision"
        )
    s = snr_max_linear
    z_lo, z_hi = math.sqrt(IBO_BRACKET[0]), math.sqrt(IBO_BRACKET[1])

    def gap(z: float) -> float:
        return 0.5 * _SQRT_PI * erfc(z) - z / s

    def dgap(z: float) -> float:
        return -math.exp(-z * z) - 1.0 / s

    # d(gap)/dz at the root flattens toward -1/s for large s, so start near
    # the asymptotic root location to keep the iteration count low.
    z0 = max(0.5, math.sqrt(math.log(s))) if s > math.e else 0.5
    z0 = min(max(z0, z_lo), z_hi)
    report = solve_newton(gap, dgap, z0, tol=1e-13, max_iter=200, bracket=(z_lo, z_hi))
    z = report.root
    ibo = z * z
    return PaOperatingPoint(
        ibo_linear=ibo,
        alpha=bussgang_alpha(ibo),
        sinr_linear=sinr_of_ibo(ibo, s),
        snr_max_linear=s,
    )


def sinr_approx_db(snr_max_db: float) -> float:
    """Affine dB approximation of the maximum achievable SINR.

    Returns 0.84 * snr_max_db - 2.23.  Used when sizing the clipping
    power from a rate requirement; the exact solve stays available via
    :func:`optimal_ibo` for verification.
    """
    if not math.isfinite(snr_max_db):
        raise DomainError(f"snr_max_db must be finite, got {snr_max_db!r}")
    return SINR_APPROX_SLOPE * snr_max_db + SINR_APPROX_OFFSET_DB


def snr_max_for_sinr_db(sinr_db: float) -> float:
    """Inverse of :func:`sinr_approx_db`: the dB SNR ceiling that makes the
    affine approximation deliver ``sinr_db``."""
    if not math.isfinite(sinr_db):
        raise DomainError(f"sinr_db must be finite, got {sinr_db!r}")
    return (sinr_db - SINR_APPROX_OFFSET_DB) / SINR_APPROX_SLOPE


def pa_consumed_power(p_max_w: float, ibo_linear: float) -> float:
    """Mean supply power of a class B stage clipping at ``p_max_w``.

        P = (2 * P_MAX / sqrt(pi * IBO)) * erf(sqrt(IBO))

    This averages the instantaneous class B draw (4/pi) * sqrt(p * P_MAX)
    over the Rayleigh amplitude distribution of the clipped signal.  Linear
    in ``p_max_w`` at fixed back-off.
    """
    if not (math.isfinite(p_max_w) and p_max_w >= 0.0):
        raise DomainError(f"p_max_w must be non-negative, got {p_max_w!r}")
    if not (math.isfinite(ibo_linear) and ibo_linear > 0.0):
        raise DomainError(f"ibo_linear must be positive, got {ibo_linear!r}")
    root = math.sqrt(ibo_linear)
    # factored so the scaling in p_max_w is exact in floating point
    return p_max_w * (2.0 * math.erf(root) / (_SQRT_PI * root))
