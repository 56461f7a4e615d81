"""Hot moment-accumulation kernels for the Monte-Carlo verifier.

Two interchangeable implementations of the same kernel: a numba ``@njit``
loop and a vectorized numpy fallback.  The numba path is used when numba
imports cleanly and the ``FOGLINK_NO_NUMBA`` environment variable is not
set; ``benchmarks/bench_mc_kernel.py`` compares the two.

The kernel maps two arrays of Philox uniforms to complex-Gaussian samples
(Box-Muller: radius sqrt(-sigma2*log(1-u1)), phase 2*pi*u2), pushes them
through the soft limiter clipping at sqrt(p_max), and accumulates the
13 moment sums listed below.  Per-path results are bit-reproducible; the
two paths agree to roundoff (summation order differs).

Sum layout (x = input sample, y = clipped sample, c = y * conj(x)):
  0: sum Re(c)        1: sum Im(c)        2: sum |y|^2      3: sum |x|^2
  4: sum |y|          5: sum |x|          6: sum Re(c)^2    7: sum |y|^4
  8: sum |x|^4        9: sum |y|^2 Re(c) 10: sum |y|^2|x|^2 11: sum |x|^2 Re(c)
 12: sum Im(c)^2
"""

import math
import os

import numpy as np

N_SUMS = 13
_TWO_PI = 2.0 * math.pi


def moment_sums_numpy(u1: np.ndarray, u2: np.ndarray, sigma2: float, p_max: float) -> np.ndarray:
    """Vectorized numpy implementation of the moment kernel."""
    r = np.sqrt(-sigma2 * np.log1p(-u1))
    angle = _TWO_PI * u2
    xr = r * np.cos(angle)
    xi = r * np.sin(angle)
    clip = math.sqrt(p_max)
    scale = np.ones_like(r)
    clipped = r >= clip
    scale[clipped] = clip / r[clipped]
    yr = xr * scale
    yi = xi * scale
    c_re = yr * xr + yi * xi
    c_im = yi * xr - yr * xi
    a = yr * yr + yi * yi
    b = xr * xr + xi * xi
    out = np.empty(N_SUMS)
    out[0] = c_re.sum()
    out[1] = c_im.sum()
    out[2] = a.sum()
    out[3] = b.sum()
    out[4] = np.sqrt(a).sum()
    out[5] = np.sqrt(b).sum()
    out[6] = (c_re * c_re).sum()
    out[7] = (a * a).sum()
    out[8] = (b * b).sum()
    out[9] = (a * c_re).sum()
    out[10] = (a * b).sum()
    out[11] = (b * c_re).sum()
    out[12] = (c_im * c_im).sum()
    return out


def _moment_sums_loop(u1, u2, sigma2, p_max):  # pragma: no cover - compiled
    clip = math.sqrt(p_max)
    s0 = s1 = s2 = s3 = s4 = s5 = 0.0
    s6 = s7 = s8 = s9 = s10 = s11 = s12 = 0.0
    for k in range(u1.shape[0]):
        r = math.sqrt(-sigma2 * math.log1p(-u1[k]))
        angle = _TWO_PI * u2[k]
        xr = r * math.cos(angle)
        xi = r * math.sin(angle)
        if r >= clip:
            scale = clip / r
        else:
            scale = 1.0
        yr = xr * scale
        yi = xi * scale
        c_re = yr * xr + yi * xi
        c_im = yi * xr - yr * xi
        a = yr * yr + yi * yi
        b = xr * xr + xi * xi
        s0 += c_re
        s1 += c_im
        s2 += a
        s3 += b
        s4 += math.sqrt(a)
        s5 += math.sqrt(b)
        s6 += c_re * c_re
        s7 += a * a
        s8 += b * b
        s9 += a * c_re
        s10 += a * b
        s11 += b * c_re
        s12 += c_im * c_im
    out = np.empty(N_SUMS)
    out[0] = s0
    out[1] = s1
    out[2] = s2
    out[3] = s3
    out[4] = s4
    out[5] = s5
    out[6] = s6
    out[7] = s7
    out[8] = s8
    out[9] = s9
    out[10] = s10
    out[11] = s11
    out[12] = s12
    return out


def _numba_disabled_by_env() -> bool:
    return os.environ.get("FOGLINK_NO_NUMBA", "").strip().lower() in {
        "1", "true", "yes", "on",
    }


moment_sums_numba = None
if not _numba_disabled_by_env():
    try:
        import numba
    except ImportError:
        numba = None
    if numba is not None:
        moment_sums_numba = numba.njit(cache=True)(_moment_sums_loop)

if moment_sums_numba is not None:
    moment_sums = moment_sums_numba
    BACKEND = "numba"
else:
    moment_sums = moment_sums_numpy
    BACKEND = "numpy"


def active_backend() -> str:
    """Name of the kernel implementation selected at import time."""
    return BACKEND
