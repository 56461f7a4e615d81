"""Component power models, the offload aggregate, breakeven complexity."""

import math
from dataclasses import replace

import numpy as np
import pytest

from foglink import (
    DomainError,
    InfeasibleLinkError,
    PowerBreakdown,
    RadioParams,
    breakeven_theta,
    coding_power,
    dac_power,
    default_params,
    duty_cycled_breakdown,
    local_power,
    offload_power,
    ofdm_power,
    watts_to_dbm,
)
from foglink.config import BANDWIDTH_PROFILES

RADIO, DEPLOY = default_params()


def scenario(profile="18mhz", cameras=1, distance_km=0.02):
    radio = replace(RADIO, **BANDWIDTH_PROFILES[profile])
    deploy = replace(DEPLOY, cameras=cameras, distance_km=distance_km)
    return radio, deploy


class TestLocalPower:
    def test_zero_workload(self):
        assert local_power(0.0, 6e6, 5e9) == 0.0

    def test_breakeven_scale_workload(self):
        assert abs(local_power(320.0, 6e6, 5e9) - 0.384) <= 1e-15
        assert abs(watts_to_dbm(local_power(320.0, 6e6, 5e9)) - 25.84) < 0.01

    def test_heavier_workload(self):
        assert abs(local_power(1000.0, 6e6, 5e9) - 1.2) <= 1e-15

    def test_domain(self):
        with pytest.raises(DomainError):
            local_power(-1.0, 6e6, 5e9)
        with pytest.raises(DomainError):
            local_power(320.0, 0.0, 5e9)
        with pytest.raises(DomainError):
            local_power(320.0, 6e6, 0.0)


class TestCodingPower:
    def test_zero_rate(self):
        assert coding_power(0.0, 1e-10) == 0.0

    def test_video_rate(self):
        assert abs(coding_power(6e6, 1e-10) - 6e-4) <= 1e-18

    def test_gigabit(self):
        # 0.1 W per Gbps by unit definition
        assert abs(coding_power(1e9, 1e-10) - 0.1) <= 1e-15


class TestOfdmPower:
    def test_1024_transform(self):
        oracle = (4 * 1024 * 10 - 6 * 1024 + 8) * 15e3 / 120e9
        assert ofdm_power(1024, 15e3, 120e9) == oracle
        assert abs(oracle - 4.353e-3) < 1e-6

    def test_2048_transform(self):
        oracle = (4 * 2048 * 11 - 6 * 2048 + 8) * 15e3 / 120e9
        assert ofdm_power(2048, 15e3, 120e9) == oracle
        assert abs(oracle - 9.729e-3) < 1e-6

    def test_smallest_transform(self):
        # 4N log2 N - 6N + 8 collapses to 4 at N = 2
        assert ofdm_power(2, 15e3, 120e9) == 4.0 * 15e3 / 120e9

    @pytest.mark.parametrize("bad", [1000, 3, 0, 1, -2048])
    def test_rejects_non_power_of_two(self, bad):
        with pytest.raises(DomainError):
            ofdm_power(bad, 15e3, 120e9)


class TestDacPower:
    def test_wideband_sampling(self):
        oracle = 3.0 * 5e-6 * 1023 + 0.5 * 10 * 1e-12 * 30.72e6 * 9.0
        value = dac_power(10, 3.0, 5e-6, 1e-12, 30.72e6)
        assert value == oracle
        assert abs(value - 16.7274e-3) < 1e-7

    def test_narrowband_sampling(self):
        value = dac_power(10, 3.0, 5e-6, 1e-12, 15.36e6)
        assert abs(value - 16.0362e-3) < 1e-7

    def test_single_bit_static_only(self):
        assert math.isclose(dac_power(1, 3.0, 5e-6, 0.0, 30.72e6), 15e-6,
                            rel_tol=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            dac_power(0, 3.0, 5e-6, 1e-12, 30.72e6)
        with pytest.raises(DomainError):
            dac_power(10, 3.0, 5e-6, -1e-12, 30.72e6)


class TestOffloadPower:
    @pytest.mark.parametrize("profile,cameras", [("9mhz", 1), ("9mhz", 10),
                                                 ("18mhz", 1), ("18mhz", 10)])
    def test_short_link_totals_near_26_dbm(self, profile, cameras):
        down = offload_power(*scenario(profile, cameras))
        assert abs(watts_to_dbm(down.total_w) - 26.0) < 1.0

    def test_video_share_not_duty_cycled(self):
        down = offload_power(*scenario("18mhz", 10))
        assert down.video_w == 0.242
        assert abs(watts_to_dbm(down.video_w) - 23.84) < 0.01

    def test_lo_and_coding_not_duty_cycled(self):
        one = offload_power(*scenario("18mhz", 1))
        ten = offload_power(*scenario("18mhz", 10))
        assert one.lo_w == ten.lo_w == 0.0675
        assert one.cod_w == ten.cod_w

    def test_duty_cycled_components_scale(self):
        one = offload_power(*scenario("18mhz", 1))
        ten = offload_power(*scenario("18mhz", 10))
        assert abs(ten.ofdm_w - one.ofdm_w / 10.0) <= 1e-15
        assert abs(ten.dac_w - one.dac_w / 10.0) <= 1e-15
        assert abs(ten.mix_w - one.mix_w / 10.0) <= 1e-15

    def test_total_non_decreasing_in_distance(self):
        radio, deploy = scenario()
        previous = 0.0
        for d in np.geomspace(0.01, 2.0, 40):
            total = offload_power(radio, replace(deploy, distance_km=float(d))).total_w
            assert total >= previous
            previous = total

    def test_additivity(self):
        for profile in ("9mhz", "18mhz"):
            for cameras in (1, 3, 10):
                down = offload_power(*scenario(profile, cameras))
                parts = (down.video_w + down.cod_w + down.ofdm_w + down.dac_w
                         + down.lo_w + down.mix_w + down.pa_w)
                assert abs(parts - down.total_w) <= 1e-12 * down.total_w

    def test_huge_fleet_is_infeasible(self):
        # a million cameras sharing 18 MHz would need SINR 2^833333; the
        # rate guard fires long before the duty-cycle savings matter
        radio, deploy = scenario("18mhz", 10 ** 6)
        with pytest.raises(InfeasibleLinkError):
            offload_power(radio, deploy)

    def test_duty_cycle_limit_keeps_constant_terms(self):
        # with the radio terms fixed, an enormous fleet leaves only the
        # always-on components: video coder, redundancy coding, oscillator
        down = duty_cycled_breakdown(
            video_w=0.242, cod_w=6e-4, ofdm_w=9.729e-3, dac_w=16.7274e-3,
            lo_w=0.0675, mix_w=0.021, pa_w=0.35, cameras=10 ** 6,
        )
        constant = 0.242 + 6e-4 + 0.0675
        assert abs(down.total_w - constant) <= 1e-5 * constant


class TestBreakevenTheta:
    @pytest.mark.parametrize(
        "profile,cameras,distance,reported",
        [
            ("18mhz", 1, 0.02, 320.0),
            ("18mhz", 10, 0.02, 267.0),
            ("9mhz", 1, 1.0, 620.0),
            ("18mhz", 1, 1.0, 530.0),
        ],
    )
    def test_reported_operating_points(self, profile, cameras, distance, reported):
        value = breakeven_theta(*scenario(profile, cameras, distance))
        assert abs(value - reported) / reported <= 0.05

    def test_round_trip_with_local_power(self):
        for profile in ("9mhz", "18mhz"):
            for cameras in (1, 4, 10):
                radio, deploy = scenario(profile, cameras, 0.3)
                theta = breakeven_theta(radio, deploy)
                local = local_power(theta, deploy.rate_bps, deploy.gamma_flops_per_w)
                total = offload_power(radio, deploy).total_w
                assert abs(local - total) <= 1e-9 * total

    def test_fleet_sharing_helps_only_near_the_node(self):
        for d in (0.02, 0.05, 0.1):
            one = breakeven_theta(*scenario("18mhz", 1, d))
            ten = breakeven_theta(*scenario("18mhz", 10, d))
            assert ten < one
        far_one = breakeven_theta(*scenario("18mhz", 1, 1.0))
        far_ten = breakeven_theta(*scenario("18mhz", 10, 1.0))
        assert far_ten > far_one


class TestParamValidation:
    def test_radio_transform_size_tied_to_sampling(self):
        with pytest.raises(DomainError, match="n_ofdm"):
            replace(RADIO, n_ofdm=1024)

    def test_radio_rejects_slow_sampling(self):
        with pytest.raises(DomainError, match="sample_rate_hz"):
            RadioParams(
                sample_rate_hz=15.36e6, bandwidth_hz=18e6, n_ofdm=1024,
                delta_f_hz=15e3, gamma_mod_flops_per_w=120e9, dac_bits=10,
                v_dd=3.0, i_0_a=5e-6, c_p_f=1e-12, p_lo_w=0.0675,
                p_mix_w=0.021, psi_w_per_bps=1e-10, beta=0.4,
            )

    def test_radio_rejects_non_power_of_two_transform(self):
        with pytest.raises(DomainError, match="power of two"):
            RadioParams(
                sample_rate_hz=9e6, bandwidth_hz=6e6, n_ofdm=600, delta_f_hz=15e3,
                gamma_mod_flops_per_w=120e9, dac_bits=10, v_dd=3.0, i_0_a=5e-6,
                c_p_f=1e-12, p_lo_w=0.0675, p_mix_w=0.021, psi_w_per_bps=1e-10,
                beta=0.4,
            )

    def test_deploy_rejects_zero_rate(self):
        with pytest.raises(DomainError):
            replace(DEPLOY, rate_bps=0.0)

    def test_breakdown_rejects_negative_component(self):
        with pytest.raises(DomainError):
            PowerBreakdown(video_w=-0.1, cod_w=0.0, ofdm_w=0.0, dac_w=0.0,
                           lo_w=0.0, mix_w=0.0, pa_w=0.0, total_w=-0.1)

    def test_breakdown_rejects_wrong_total(self):
        with pytest.raises(DomainError):
            PowerBreakdown(video_w=0.1, cod_w=0.1, ofdm_w=0.0, dac_w=0.0,
                           lo_w=0.0, mix_w=0.0, pa_w=0.0, total_w=0.3)
