"""Seeded Monte-Carlo verification of the analytic amplifier model.

Draws complex-Gaussian samples, pushes them through the soft limiter and
estimates the Bussgang gain, the clipping-distortion power, the empirical
SINR and the mean class B supply power, each with a standard error, for
direct comparison against the closed forms in :mod:`foglink.pa`.

Determinism contract: results are a pure function of (seed, config).
Samples are generated in fixed-size chunks, each from its own jump-ahead
Philox substream (``Philox(key=seed).jumped(chunk_index)``), and chunk
partial sums are combined in chunk order.  The chunk layout never depends
on how the work might be scheduled, so any parallel execution over chunks
reproduces the sequential result bit for bit.  Uniform deviates become
complex-Gaussian samples via the Box-Muller transform
``sqrt(-sigma2 * log(1 - u1)) * exp(2j * pi * u2)``; this choice is fixed
because reproducibility per seed is promised within a build.
"""

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import _kernels
from .errors import DomainError, NumericError

__all__ = ["CHUNK_SAMPLES", "McConfig", "McEstimate", "soft_limit", "run_mc"]

# Fixed chunk size; part of the reproducibility contract, not a tuning knob.
CHUNK_SAMPLES = 1 << 20

_FOUR_OVER_PI = 4.0 / math.pi

# Tolerance floor for the cross-moment imaginary part.  The limiter
# preserves phase, so Im(y * conj(x)) is pure rounding residue; a biased
# residue must still not be flagged as a statistical failure.
_IMAG_FLOOR_FACTOR = 1e-12


@dataclass(frozen=True)
class McConfig:
    """Inputs of one Monte-Carlo run.

    ``sigma2_w`` is the mean input power, ``p_max_w`` the clipping power.
    ``snr_max_linear``, when given, adds the implied receiver noise so an
    empirical SINR can be formed.
    """

    sigma2_w: float
    p_max_w: float
    n_samples: int
    seed: int
    snr_max_linear: Optional[float] = None

    def __post_init__(self):
        if not self.sigma2_w > 0.0:
            raise DomainError(f"sigma2_w must be positive, got {self.sigma2_w!r}")
        if not self.p_max_w > 0.0:
            raise DomainError(f"p_max_w must be positive, got {self.p_max_w!r}")
        if not (isinstance(self.n_samples, int) and self.n_samples >= 1):
            raise DomainError(f"n_samples must be an integer >= 1, got {self.n_samples!r}")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2 ** 64):
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.snr_max_linear is not None and not self.snr_max_linear > 0.0:
            raise DomainError(
                f"snr_max_linear must be positive when given, got {self.snr_max_linear!r}"
            )


@dataclass(frozen=True)
class McEstimate:
    """Estimates with standard errors from one Monte-Carlo run.

    ``alpha_imag_hat`` is the imaginary part of the cross-moment (a
    self-check, approximately zero) and ``input_amp_hat`` the mean input
    amplitude (Rayleigh diagnostic).  Standard errors are first-order
    (sample standard deviation over sqrt(n)); they are NaN for n = 1.
    """

    alpha_hat: float
    distortion_power_hat: float
    pa_power_hat: float
    sinr_hat: Optional[float]
    stderr_alpha: float
    stderr_distortion: float
    stderr_pa: float
    alpha_imag_hat: float
    stderr_alpha_imag: float
    input_amp_hat: float
    stderr_input_amp: float
    n_samples: int
    seed: int


def soft_limit(
    sample: Union[complex, np.ndarray], p_max_w: float
) -> Union[complex, np.ndarray]:
    """Soft limiter: pass below the clip amplitude, clamp magnitude above.

    Samples with |x| < sqrt(p_max_w) are returned unchanged; larger ones
    are scaled to magnitude sqrt(p_max_w) with their phase preserved.
    Accepts a scalar or a numpy array.
    """
    if not p_max_w > 0.0:
        raise DomainError(f"p_max_w must be positive, got {p_max_w!r}")
    clip = math.sqrt(p_max_w)
    if isinstance(sample, np.ndarray):
        mag = np.abs(sample)
        scale = np.ones_like(mag)
        over = mag >= clip
        scale[over] = clip / mag[over]
        return sample * scale
    mag = abs(sample)
    if mag < clip:
        return sample
    return sample * (clip / mag)


def _chunk_layout(n_samples: int):
    """Yield (chunk_index, chunk_size) pairs covering n_samples."""
    full, rest = divmod(n_samples, CHUNK_SAMPLES)
    for index in range(full):
        yield index, CHUNK_SAMPLES
    if rest:
        yield full, rest


def _chunk_sums(seed: int, chunk_index: int, count: int, sigma2: float, p_max: float) -> np.ndarray:
    """Moment sums of one chunk, from its own jump-ahead Philox substream."""
    rng = np.random.Generator(np.random.Philox(key=seed).jumped(chunk_index))
    u1 = rng.random(count)
    u2 = rng.random(count)
    return _kernels.moment_sums(u1, u2, sigma2, p_max)


def _mean_and_stderr(total: float, total_sq: float, n: int):
    mean = total / n
    if n < 2:
        return mean, float("nan")
    # clamp: the difference of large sums can round slightly negative
    var = max(total_sq - total * total / n, 0.0) / (n - 1)
    return mean, math.sqrt(var / n)


def run_mc(config: McConfig) -> McEstimate:
    """Run the Monte-Carlo estimators for one configuration.

    Estimators (x input sample, y clipped sample, n sample count):
      alpha_hat       = mean(Re(y * conj(x))) / sigma2
      distortion      = mean(|y - alpha_hat * x|^2), expanded in moments so
                        a single pass suffices
      pa_power_hat    = mean((4/pi) * sqrt(|y|^2 * p_max))
      sinr_hat        = alpha_hat^2 * sigma2 / (distortion + p_max/snr_max)

    Raises NumericError if accumulations go non-finite or the cross-moment
    imaginary part fails its self-check.
    """
    sums = np.zeros(_kernels.N_SUMS)
    for index, count in _chunk_layout(config.n_samples):
        sums += _chunk_sums(config.seed, index, count, config.sigma2_w, config.p_max_w)
    if not np.all(np.isfinite(sums)):
        raise NumericError(f"non-finite accumulation for config {config!r}")

    n = config.n_samples
    sigma2 = config.sigma2_w
    (s_cre, s_cim, s_a, s_b, s_ampy, s_ampx,
     s_cre2, s_a2, s_b2, s_ac, s_ab, s_bc, s_cim2) = sums

    mean_cre, stderr_cre = _mean_and_stderr(s_cre, s_cre2, n)
    alpha_hat = mean_cre / sigma2
    stderr_alpha = stderr_cre / sigma2

    mean_cim, stderr_cim = _mean_and_stderr(s_cim, s_cim2, n)
    alpha_imag_hat = mean_cim / sigma2
    stderr_alpha_imag = stderr_cim / sigma2
    if n >= 2:
        imag_tol = 3.0 * stderr_cim + _IMAG_FLOOR_FACTOR * sigma2
        if abs(mean_cim) > imag_tol:
            raise NumericError(
                f"cross-moment imaginary part {mean_cim!r} exceeds its "
                f"self-check tolerance {imag_tol!r} (config {config!r})"
            )

    a_hat = alpha_hat
    mean_a = s_a / n
    mean_b = s_b / n
    distortion = mean_a - 2.0 * a_hat * mean_cre + a_hat * a_hat * mean_b
    # second moment of the per-sample distortion, expanded with plug-in alpha
    mean_d2 = (
        s_a2
        - 4.0 * a_hat * s_ac
        + 2.0 * a_hat * a_hat * s_ab
        + 4.0 * a_hat * a_hat * s_cre2
        - 4.0 * a_hat ** 3 * s_bc
        + a_hat ** 4 * s_b2
    ) / n
    if n < 2:
        stderr_distortion = float("nan")
    else:
        var_d = max(mean_d2 - distortion * distortion, 0.0) * n / (n - 1)
        stderr_distortion = math.sqrt(var_d / n)

    pa_scale = _FOUR_OVER_PI * math.sqrt(config.p_max_w)
    mean_ampy, stderr_ampy = _mean_and_stderr(s_ampy, s_a, n)
    pa_power_hat = pa_scale * mean_ampy
    stderr_pa = pa_scale * stderr_ampy

    input_amp_hat, stderr_input_amp = _mean_and_stderr(s_ampx, s_b, n)

    sinr_hat = None
    if config.snr_max_linear is not None:
        noise_w = config.p_max_w / config.snr_max_linear
        sinr_hat = alpha_hat * alpha_hat * sigma2 / (distortion + noise_w)

    return McEstimate(
        alpha_hat=alpha_hat,
        distortion_power_hat=distortion,
        pa_power_hat=pa_power_hat,
        sinr_hat=sinr_hat,
        stderr_alpha=stderr_alpha,
        stderr_distortion=stderr_distortion,
        stderr_pa=stderr_pa,
        alpha_imag_hat=alpha_imag_hat,
        stderr_alpha_imag=stderr_alpha_imag,
        input_amp_hat=input_amp_hat,
        stderr_input_amp=stderr_input_amp,
        n_samples=n,
        seed=config.seed,
    )
