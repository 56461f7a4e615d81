"""Baseline parameters and flat JSON config loading.

A config file is a single flat JSON object; any subset of the keys below
may appear and missing keys take the baseline defaults.  Units are fixed
per key (Hz, W, km, A, F, V, bits per second); nothing is dB-scaled here.
"""

import json
from typing import Optional, Tuple

from .chain import DeploymentParams, RadioParams
from .errors import ConfigError, DomainError

__all__ = [
    "RADIO_DEFAULTS",
    "DEPLOY_DEFAULTS",
    "BANDWIDTH_PROFILES",
    "default_params",
    "load_config",
    "dump_defaults",
]

# Coherent (sample rate, useful bandwidth, transform size) triples for the
# two supported channelizations.
BANDWIDTH_PROFILES = {
    "9mhz": {"sample_rate_hz": 15.36e6, "bandwidth_hz": 9e6, "n_ofdm": 1024},
    "18mhz": {"sample_rate_hz": 30.72e6, "bandwidth_hz": 18e6, "n_ofdm": 2048},
}

RADIO_DEFAULTS = {
    "sample_rate_hz": 30.72e6,
    "bandwidth_hz": 18e6,
    "n_ofdm": 2048,
    "delta_f_hz": 15e3,
    "gamma_mod_flops_per_w": 120e9,
    "dac_bits": 10,
    "v_dd": 3.0,
    "i_0_a": 5e-6,
    "c_p_f": 1e-12,
    "p_lo_w": 0.0675,
    "p_mix_w": 0.021,
    "psi_w_per_bps": 1e-10,
    "beta": 0.4,
}

DEPLOY_DEFAULTS = {
    "cameras": 1,
    "distance_km": 0.02,
    "carrier_hz": 3.5e9,
    "rate_bps": 6e6,
    "p_video_w": 0.242,
    "gamma_flops_per_w": 5e9,
    "theta_flop_per_bit": 320.0,
}

_INT_KEYS = {"n_ofdm", "dac_bits", "cameras"}


def _build(values: dict) -> Tuple[RadioParams, DeploymentParams]:
    radio_kwargs = {k: values[k] for k in RADIO_DEFAULTS}
    deploy_kwargs = {k: values[k] for k in DEPLOY_DEFAULTS}
    try:
        return RadioParams(**radio_kwargs), DeploymentParams(**deploy_kwargs)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def default_params(profile: Optional[str] = None) -> Tuple[RadioParams, DeploymentParams]:
    """Baseline parameters, optionally switched to a bandwidth profile."""
    values = {**RADIO_DEFAULTS, **DEPLOY_DEFAULTS}
    if profile is not None:
        values.update(_profile_values(profile))
    return _build(values)


def _profile_values(profile: str) -> dict:
    try:
        return BANDWIDTH_PROFILES[profile]
    except KeyError:
        raise ConfigError(
            f"unknown bandwidth profile {profile!r}; "
            f"choose from {sorted(BANDWIDTH_PROFILES)}"
        ) from None


def _coerce(key: str, value) -> object:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"key {key!r} must be a number, got {value!r}")
    if key in _INT_KEYS:
        if float(value) != int(value):
            raise ConfigError(f"key {key!r} must be an integer, got {value!r}")
        return int(value)
    return float(value)


def load_config(
    path: str, overrides: Optional[dict] = None
) -> Tuple[RadioParams, DeploymentParams]:
    """Load parameters from a flat JSON file on top of the defaults.

    ``overrides`` (e.g. from command-line flags) are applied after the
    file, so flags win.  Unknown keys and invariant violations raise
    ConfigError naming the offending key; parse errors carry the line.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    if text.strip():
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}:{exc.lineno}: {exc.msg}") from exc
    else:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a flat JSON object of key/value pairs")
    values = {**RADIO_DEFAULTS, **DEPLOY_DEFAULTS}
    for source in (data, overrides or {}):
        for key, raw in source.items():
            if key not in values:
                raise ConfigError(f"unknown config key {key!r}")
            values[key] = _coerce(key, raw)
    return _build(values)


def dump_defaults() -> str:
    """Baseline parameters as editable JSON text."""
    return json.dumps({**RADIO_DEFAULTS, **DEPLOY_DEFAULTS}, indent=2, sort_keys=True)
