"""Command-line interface: scenario sweeps, verification, CSV emission.

Every subcommand is deterministic given its flags (and seed, where one
applies): repeated invocations emit byte-identical CSV.  Numeric cells are
rendered with 9 significant digits; results go to stdout unless ``--out``
names a file.
"""

import argparse
import math
import sys
from dataclasses import dataclass, replace
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import pa
from .chain import (
    DeploymentParams,
    RadioParams,
    breakeven_theta,
    local_power,
    offload_power,
)
from .config import (
    BANDWIDTH_PROFILES,
    default_params,
    dump_defaults,
    load_config,
)
from .errors import DomainError, FoglinkError, InfeasibleLinkError, NumericError
from .link import LinkGeometry, build_channel, operating_point, required_sinr
from .mc import McConfig, run_mc
from .units import db_to_linear, linear_to_db, watts_to_dbm

SWEEP_VARIABLES = ("snr_max_db", "bandwidth_hz", "distance_km", "theta")

# Four curves shown in the distance sweeps: both channelizations at one
# and at ten cameras.
FIGURE_COMBOS = tuple(
    (profile, cameras) for profile in ("9mhz", "18mhz") for cameras in (1, 10)
)
FIGURE_CAMERA_COUNTS = (1, 10)


@dataclass(frozen=True)
class SweepSpec:
    """A one-dimensional scenario sweep.

    ``steps == 1`` with ``start == stop`` is the degenerate single-point
    sweep; otherwise at least two points and an increasing range are
    required.  ``fixed`` carries scenario overrides held constant during
    the sweep and must not mention the swept variable itself.
    """

    variable: str
    start: float
    stop: float
    steps: int
    log_spaced: bool = False
    fixed: Optional[Mapping[str, float]] = None

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise DomainError(
                f"unknown sweep variable {self.variable!r}; "
                f"choose from {SWEEP_VARIABLES}"
            )
        if self.steps == 1:
            if self.start != self.stop:
                raise DomainError(
                    f"single-step sweep needs start == stop, got "
                    f"[{self.start!r}, {self.stop!r}]"
                )
        elif self.steps >= 2:
            if not self.start < self.stop:
                raise DomainError(
                    f"sweep range must be increasing, got "
                    f"[{self.start!r}, {self.stop!r}]"
                )
        else:
            raise DomainError(f"steps must be >= 1, got {self.steps!r}")
        if self.log_spaced and not self.start > 0.0:
            raise DomainError(f"log-spaced sweep needs start > 0, got {self.start!r}")
        if self.fixed and self.variable in self.fixed:
            raise DomainError(
                f"swept variable {self.variable!r} may not appear in fixed overrides"
            )

    def values(self) -> np.ndarray:
        if self.log_spaced:
            return np.geomspace(self.start, self.stop, self.steps)
        return np.linspace(self.start, self.stop, self.steps)


# ---------------------------------------------------------------------------
# sweep evaluation


def _scenario_context(exc: FoglinkError, **scenario) -> FoglinkError:
    detail = ", ".join(f"{k}={v!r}" for k, v in scenario.items())
    return type(exc)(f"{exc} [scenario: {detail}]")


def sweep_fig3(
    start_db: float = -10.0, stop_db: float = 50.0, steps: int = 601
) -> Tuple[List[Dict], float]:
    """Optimal back-off and SINR versus the SNR ceiling, exact and approximate.

    Returns the rows plus the maximum absolute gap between the exact and
    the affine-approximated SINR over the sweep.
    """
    spec = SweepSpec("snr_max_db", start_db, stop_db, steps)
    rows = []
    max_gap = 0.0
    for x in spec.values():
        x = float(x)
        try:
            point = pa.optimal_ibo(db_to_linear(x))
        except FoglinkError as exc:
            raise _scenario_context(exc, snr_max_db=x) from exc
        exact_db = linear_to_db(point.sinr_linear)
        approx_db = pa.sinr_approx_db(x)
        max_gap = max(max_gap, abs(exact_db - approx_db))
        rows.append(
            {
                "snr_max_db": x,
                "ibo_db_optimal": linear_to_db(point.ibo_linear),
                "sinr_db_exact": exact_db,
                "sinr_db_approx": approx_db,
            }
        )
    return rows, max_gap


def sweep_fig4(
    radio: RadioParams,
    deploy: DeploymentParams,
    start_hz: float = 1e6,
    stop_hz: float = 20e6,
    steps: int = 39,
) -> List[Dict]:
    """Required SINR and the resulting optimal back-off versus bandwidth.

    Grid points where a camera count cannot meet the rate at all (rate
    exponent overflow, or an SNR ceiling beyond the resolvable range) are
    omitted rather than aborting the sweep, so narrow bandwidths still
    show the feasible curve.
    """
    spec = SweepSpec("bandwidth_hz", start_hz, stop_hz, steps)
    rows = []
    for b in spec.values():
        b = float(b)
        for cameras in FIGURE_CAMERA_COUNTS:
            geometry = LinkGeometry(
                distance_km=deploy.distance_km,
                carrier_hz=deploy.carrier_hz,
                bandwidth_hz=b,
                cameras=cameras,
                rate_bps=deploy.rate_bps,
                beta=radio.beta,
            )
            try:
                sinr_db = linear_to_db(required_sinr(geometry))
            except InfeasibleLinkError:
                continue
            snr_max = db_to_linear(pa.snr_max_for_sinr_db(sinr_db))
            if snr_max > pa.MAX_SNR_CEILING:
                continue
            try:
                point = pa.optimal_ibo(snr_max)
            except FoglinkError as exc:
                raise _scenario_context(exc, bandwidth_hz=b, cameras=cameras) from exc
            rows.append(
                {
                    "bandwidth_hz": b,
                    "cameras": cameras,
                    "sinr_db": sinr_db,
                    "ibo_db": linear_to_db(point.ibo_linear),
                }
            )
    return rows


def _combo_params(
    radio: RadioParams, deploy: DeploymentParams, profile: str, cameras: int
) -> Tuple[RadioParams, DeploymentParams]:
    return (
        replace(radio, **BANDWIDTH_PROFILES[profile]),
        replace(deploy, cameras=cameras),
    )


def sweep_fig5(
    radio: RadioParams,
    deploy: DeploymentParams,
    start_km: float = 0.01,
    stop_km: float = 2.0,
    steps: int = 50,
) -> List[Dict]:
    """Offload power and its per-component shares versus distance."""
    spec = SweepSpec("distance_km", start_km, stop_km, steps, log_spaced=True)
    rows = []
    for d in spec.values():
        d = float(d)
        for profile, cameras in FIGURE_COMBOS:
            combo_radio, combo_deploy = _combo_params(radio, deploy, profile, cameras)
            combo_deploy = replace(combo_deploy, distance_km=d)
            try:
                down = offload_power(combo_radio, combo_deploy)
            except FoglinkError as exc:
                raise _scenario_context(
                    exc, distance_km=d, bandwidth_profile=profile, cameras=cameras
                ) from exc
            rows.append(
                {
                    "distance_km": d,
                    "bandwidth_hz": combo_radio.bandwidth_hz,
                    "cameras": cameras,
                    "total_dbm": watts_to_dbm(down.total_w),
                    "video_dbm": watts_to_dbm(down.video_w),
                    "cod_dbm": watts_to_dbm(down.cod_w),
                    "ofdm_dbm": watts_to_dbm(down.ofdm_w),
                    "dac_dbm": watts_to_dbm(down.dac_w),
                    "lo_dbm": watts_to_dbm(down.lo_w),
                    "mix_dbm": watts_to_dbm(down.mix_w),
                    "pa_dbm": watts_to_dbm(down.pa_w),
                }
            )
    return rows


def sweep_fig6(
    radio: RadioParams,
    deploy: DeploymentParams,
    start_km: float = 0.01,
    stop_km: float = 2.0,
    steps: int = 50,
) -> List[Dict]:
    """Breakeven workload complexity versus distance."""
    spec = SweepSpec("distance_km", start_km, stop_km, steps, log_spaced=True)
    rows = []
    for d in spec.values():
        d = float(d)
        for profile, cameras in FIGURE_COMBOS:
            combo_radio, combo_deploy = _combo_params(radio, deploy, profile, cameras)
            combo_deploy = replace(combo_deploy, distance_km=d)
            try:
                theta_star = breakeven_theta(combo_radio, combo_deploy)
            except FoglinkError as exc:
                raise _scenario_context(
                    exc, distance_km=d, bandwidth_profile=profile, cameras=cameras
                ) from exc
            rows.append(
                {
                    "distance_km": d,
                    "bandwidth_hz": combo_radio.bandwidth_hz,
                    "cameras": cameras,
                    "theta_star": theta_star,
                }
            )
    return rows


def link_power_row(radio: RadioParams, deploy: DeploymentParams) -> Dict:
    """Full diagnostic row for one scenario: channel, operating point, powers."""
    geometry = LinkGeometry(
        distance_km=deploy.distance_km,
        carrier_hz=deploy.carrier_hz,
        bandwidth_hz=radio.bandwidth_hz,
        cameras=deploy.cameras,
        rate_bps=deploy.rate_bps,
        beta=radio.beta,
    )
    channel = build_channel(geometry)
    point = operating_point(geometry, channel)
    down = offload_power(radio, deploy)
    return {
        "distance_km": deploy.distance_km,
        "carrier_hz": deploy.carrier_hz,
        "bandwidth_hz": radio.bandwidth_hz,
        "cameras": deploy.cameras,
        "rate_bps": deploy.rate_bps,
        "path_gain_db": channel.path_gain_db,
        "noise_dbm": channel.noise_dbm,
        "p_max_w": channel.p_max_w,
        "snr_max_db": linear_to_db(point.snr_max_linear),
        "ibo_db": linear_to_db(point.ibo_linear),
        "sinr_db": linear_to_db(point.sinr_linear),
        "alpha": point.alpha,
        "sigma2_w": point.sigma2_w,
        "video_w": down.video_w,
        "cod_w": down.cod_w,
        "ofdm_w": down.ofdm_w,
        "dac_w": down.dac_w,
        "lo_w": down.lo_w,
        "mix_w": down.mix_w,
        "pa_w": down.pa_w,
        "total_w": down.total_w,
        "total_dbm": watts_to_dbm(down.total_w),
    }


def breakeven_rows(
    radio: RadioParams,
    deploy: DeploymentParams,
    theta_sweep: Optional[Tuple[float, float, int]] = None,
) -> Tuple[List[str], List[Dict]]:
    """Breakeven summary, or a workload sweep when a theta range is given."""
    down = offload_power(radio, deploy)
    if theta_sweep is None:
        columns = [
            "distance_km", "bandwidth_hz", "cameras",
            "offload_total_w", "offload_total_dbm", "theta_star",
        ]
        row = {
            "distance_km": deploy.distance_km,
            "bandwidth_hz": radio.bandwidth_hz,
            "cameras": deploy.cameras,
            "offload_total_w": down.total_w,
            "offload_total_dbm": watts_to_dbm(down.total_w),
            "theta_star": deploy.gamma_flops_per_w * down.total_w / deploy.rate_bps,
        }
        return columns, [row]
    start, stop, steps = theta_sweep
    spec = SweepSpec("theta", start, stop, steps)
    columns = ["theta", "local_w", "offload_total_w", "local_minus_offload_w"]
    rows = []
    for theta in spec.values():
        theta = float(theta)
        local = local_power(theta, deploy.rate_bps, deploy.gamma_flops_per_w)
        rows.append(
            {
                "theta": theta,
                "local_w": local,
                "offload_total_w": down.total_w,
                "local_minus_offload_w": local - down.total_w,
            }
        )
    return columns, rows


def mc_verify(
    ibo_db_values: Sequence[float],
    n_samples: int,
    seed: int,
    snr_max_db: float = 20.0,
) -> Tuple[List[Dict], List[str]]:
    """Compare Monte-Carlo estimates against the closed forms per back-off.

    Runs at unit mean input power (sigma2 = 1 W, p_max = IBO).  A row
    passes when alpha, distortion power, amplifier power and SINR each land
    within max(3 standard errors, 1 percent) of the analytic value.
    Returns the rows and a list of human-readable failure descriptions.
    """
    snr_max = db_to_linear(snr_max_db)
    sigma2 = 1.0
    rows = []
    failures = []
    for ibo_db in ibo_db_values:
        ibo = db_to_linear(ibo_db)
        estimate = run_mc(
            McConfig(
                sigma2_w=sigma2,
                p_max_w=ibo * sigma2,
                n_samples=n_samples,
                seed=seed,
                snr_max_linear=snr_max,
            )
        )
        alpha = pa.bussgang_alpha(ibo)
        distortion = sigma2 * (1.0 - alpha * alpha - math.exp(-ibo))
        pa_w = pa.pa_consumed_power(ibo * sigma2, ibo)
        sinr = pa.sinr_of_ibo(ibo, snr_max)
        noise_w = ibo * sigma2 / snr_max
        # first-order spread of the SINR estimate from its ingredients
        sinr_spread = sinr * math.hypot(
            2.0 * estimate.stderr_alpha / alpha,
            estimate.stderr_distortion / (distortion + noise_w),
        )
        checks = (
            ("alpha", alpha, estimate.alpha_hat, estimate.stderr_alpha),
            ("distortion_w", distortion, estimate.distortion_power_hat,
             estimate.stderr_distortion),
            ("pa_w", pa_w, estimate.pa_power_hat, estimate.stderr_pa),
            ("sinr", sinr, estimate.sinr_hat, sinr_spread),
        )
        row_ok = True
        for name, analytic, measured, stderr in checks:
            tolerance = max(3.0 * stderr, 0.01 * abs(analytic))
            agrees = (
                math.isfinite(measured)
                and math.isfinite(tolerance)
                and abs(measured - analytic) <= tolerance
            )
            if not agrees:
                row_ok = False
                failures.append(
                    f"ibo_db={ibo_db:g}: {name} estimate {measured!r} deviates "
                    f"from analytic {analytic!r} by more than {tolerance!r}"
                )
        rows.append(
            {
                "ibo_db": ibo_db,
                "alpha_analytic": alpha,
                "alpha_hat": estimate.alpha_hat,
                "stderr_alpha": estimate.stderr_alpha,
                "distortion_w_analytic": distortion,
                "distortion_w_hat": estimate.distortion_power_hat,
                "stderr_distortion": estimate.stderr_distortion,
                "pa_w_analytic": pa_w,
                "pa_w_hat": estimate.pa_power_hat,
                "stderr_pa": estimate.stderr_pa,
                "sinr_analytic": sinr,
                "sinr_hat": estimate.sinr_hat,
                "status": "pass" if row_ok else "fail",
            }
        )
    return rows, failures


# ---------------------------------------------------------------------------
# CSV rendering


def _format_cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        raise NumericError(f"boolean cell {value!r} has no CSV rendering")
    number = float(value)
    if not math.isfinite(number):
        raise NumericError(f"non-finite value {value!r} in CSV output")
    return f"{number:.9g}"


def render_csv(columns: Sequence[str], rows: Sequence[Mapping], trailer: Sequence[str] = ()) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_format_cell(row[c]) for c in columns))
    lines.extend(trailer)
    return "\n".join(lines) + "\n"


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


# ---------------------------------------------------------------------------
# argument parsing


def _load_params(args, allow_profile=True, allow_scenario=True):
    overrides = {}
    if allow_scenario:
        if getattr(args, "cameras", None) is not None:
            overrides["cameras"] = args.cameras
        if getattr(args, "distance_km", None) is not None:
            overrides["distance_km"] = args.distance_km
    profile = getattr(args, "bandwidth_profile", None) if allow_profile else None
    if profile is not None:
        overrides.update(BANDWIDTH_PROFILES[profile])
    if args.config is not None:
        return load_config(args.config, overrides)
    if overrides:
        values = dict(overrides)
        base_radio, base_deploy = default_params()
        radio_updates = {k: v for k, v in values.items() if hasattr(base_radio, k)}
        deploy_updates = {k: v for k, v in values.items() if hasattr(base_deploy, k)}
        return replace(base_radio, **radio_updates), replace(base_deploy, **deploy_updates)
    return default_params()


def _add_common(parser, config=True):
    if config:
        parser.add_argument("--config", metavar="PATH",
                            help="flat JSON parameter file (defaults otherwise)")
    parser.add_argument("--out", metavar="PATH",
                        help="write CSV here instead of stdout")


def _add_scenario(parser):
    parser.add_argument("--bandwidth-profile", choices=sorted(BANDWIDTH_PROFILES),
                        help="switch the sample-rate/bandwidth/transform triple")
    parser.add_argument("--cameras", type=int, help="number of cameras sharing the band")
    parser.add_argument("--distance-km", type=float, help="link distance in km")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="foglink",
        description="Energy model for offloading camera analytics over an OFDM uplink.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fig3", help="optimal back-off and SINR vs SNR ceiling")
    _add_common(p, config=False)
    p.add_argument("--db-from", type=float, default=-10.0)
    p.add_argument("--db-to", type=float, default=50.0)
    p.add_argument("--steps", type=int, default=601)

    p = sub.add_parser("fig4", help="required SINR and back-off vs bandwidth")
    _add_common(p)
    p.add_argument("--b-from-hz", type=float, default=1e6)
    p.add_argument("--b-to-hz", type=float, default=20e6)
    p.add_argument("--steps", type=int, default=39)

    for name, help_text in (
        ("fig5", "offload power and components vs distance"),
        ("fig6", "breakeven workload complexity vs distance"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        p.add_argument("--d-from-km", type=float, default=0.01)
        p.add_argument("--d-to-km", type=float, default=2.0)
        p.add_argument("--steps", type=int, default=50)

    p = sub.add_parser("breakeven", help="breakeven complexity for one scenario")
    _add_common(p)
    _add_scenario(p)
    p.add_argument("--theta-from", type=float, help="sweep workload complexity from here")
    p.add_argument("--theta-to", type=float, help="sweep workload complexity to here")
    p.add_argument("--steps", type=int, default=50)

    p = sub.add_parser("link-power", help="channel, operating point and power budget")
    _add_common(p)
    _add_scenario(p)

    p = sub.add_parser("mc-verify", help="Monte-Carlo check of the amplifier model")
    _add_common(p, config=False)
    p.add_argument("--ibo-db", default="-3,0,3,6",
                   help="comma-separated back-off list in dB")
    p.add_argument("--samples", type=int, default=10_000_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--snr-max-db", type=float, default=20.0,
                   help="SNR ceiling used for the empirical SINR")

    p = sub.add_parser("print-defaults", help="emit the baseline parameters as JSON")
    p.add_argument("--out", metavar="PATH")

    return parser


FIG3_COLUMNS = ["snr_max_db", "ibo_db_optimal", "sinr_db_exact", "sinr_db_approx"]
FIG4_COLUMNS = ["bandwidth_hz", "cameras", "sinr_db", "ibo_db"]
FIG5_COLUMNS = [
    "distance_km", "bandwidth_hz", "cameras", "total_dbm", "video_dbm",
    "cod_dbm", "ofdm_dbm", "dac_dbm", "lo_dbm", "mix_dbm", "pa_dbm",
]
FIG6_COLUMNS = ["distance_km", "bandwidth_hz", "cameras", "theta_star"]
LINK_POWER_COLUMNS = [
    "distance_km", "carrier_hz", "bandwidth_hz", "cameras", "rate_bps",
    "path_gain_db", "noise_dbm", "p_max_w", "snr_max_db", "ibo_db", "sinr_db",
    "alpha", "sigma2_w", "video_w", "cod_w", "ofdm_w", "dac_w", "lo_w",
    "mix_w", "pa_w", "total_w", "total_dbm",
]
MC_VERIFY_COLUMNS = [
    "ibo_db", "alpha_analytic", "alpha_hat", "stderr_alpha",
    "distortion_w_analytic", "distortion_w_hat", "stderr_distortion",
    "pa_w_analytic", "pa_w_hat", "stderr_pa",
    "sinr_analytic", "sinr_hat", "status",
]


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "fig3":
            rows, max_gap = sweep_fig3(args.db_from, args.db_to, args.steps)
            trailer = [f"# max_abs_approx_error_db,{max_gap:.9g}"]
            _emit(render_csv(FIG3_COLUMNS, rows, trailer), args.out)
        elif args.command == "fig4":
            radio, deploy = _load_params(args, allow_profile=False, allow_scenario=False)
            rows = sweep_fig4(radio, deploy, args.b_from_hz, args.b_to_hz, args.steps)
            _emit(render_csv(FIG4_COLUMNS, rows), args.out)
        elif args.command == "fig5":
            radio, deploy = _load_params(args, allow_profile=False, allow_scenario=False)
            rows = sweep_fig5(radio, deploy, args.d_from_km, args.d_to_km, args.steps)
            _emit(render_csv(FIG5_COLUMNS, rows), args.out)
        elif args.command == "fig6":
            radio, deploy = _load_params(args, allow_profile=False, allow_scenario=False)
            rows = sweep_fig6(radio, deploy, args.d_from_km, args.d_to_km, args.steps)
            _emit(render_csv(FIG6_COLUMNS, rows), args.out)
        elif args.command == "breakeven":
            radio, deploy = _load_params(args)
            theta_sweep = None
            if args.theta_from is not None or args.theta_to is not None:
                if args.theta_from is None or args.theta_to is None:
                    raise DomainError("--theta-from and --theta-to must be given together")
                theta_sweep = (args.theta_from, args.theta_to, args.steps)
            columns, rows = breakeven_rows(radio, deploy, theta_sweep)
            _emit(render_csv(columns, rows), args.out)
        elif args.command == "link-power":
            radio, deploy = _load_params(args)
            _emit(render_csv(LINK_POWER_COLUMNS, [link_power_row(radio, deploy)]), args.out)
        elif args.command == "mc-verify":
            try:
                ibo_list = [float(part) for part in args.ibo_db.split(",") if part.strip()]
            except ValueError:
                raise DomainError(f"--ibo-db must be a comma-separated float list, "
                                  f"got {args.ibo_db!r}") from None
            if not ibo_list:
                raise DomainError("--ibo-db produced an empty back-off list")
            rows, failures = mc_verify(ibo_list, args.samples, args.seed, args.snr_max_db)
            _emit(render_csv(MC_VERIFY_COLUMNS, rows), args.out)
            if failures:
                for failure in failures:
                    print(f"mc-verify: {failure}", file=sys.stderr)
                return 1
        elif args.command == "print-defaults":
            _emit(dump_defaults() + "\n", args.out)
    except FoglinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
