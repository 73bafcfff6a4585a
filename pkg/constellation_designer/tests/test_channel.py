"""
Unit tests for the channel module.

Tests cover:
- Nakagami-m gain moments and complex noise variance
- Frame transmission lengths, padding and perfect CSI
- Uncoded transmission and detection
- Monte-Carlo BER against the closed-form Rayleigh BPSK error rate
- Stopping rule, determinism, energy scale and worker independence
- Simulated BER below the bound and non-increasing in SNR
"""

import math

import numpy as np
import pytest

from constellation_designer.adapt.mcs import get_mcs
from constellation_designer.bound.transfer import evaluate_bound
from constellation_designer.channel.fading import complex_noise, nakagami_gain
from constellation_designer.channel.link import (
    detect_uncoded,
    transmit_frame,
    transmit_uncoded,
    trellis_for_mcs,
)
from constellation_designer.channel.simulate import frame_errors, simulate_ber
from constellation_designer.core.constellation import Constellation, qam_constellation
from constellation_designer.core.errors import CodecError, ConfigurationError
from constellation_designer.core.models import AWGN, ChannelContext, DecoderConfig, StopRule
from constellation_designer.utils.rng import stream


class TestFading:
    """Test cases for gains and noise."""

    @pytest.mark.parametrize("m", [1, 2, 4])
    def test_gain_moments(self, m):
        ctx = ChannelContext(m=m, omega=1.5, n0=1.0)
        power = nakagami_gain(ctx, stream(1, m), size=200_000) ** 2
        assert power.mean() == pytest.approx(1.5, rel=0.02)
        # E[h^4] = Omega^2 (m + 1) / m for Nakagami-m
        assert (power ** 2).mean() == pytest.approx(1.5 ** 2 * (m + 1) / m, rel=0.05)

    def test_gains_are_nonnegative(self):
        ctx = ChannelContext(m=1, n0=1.0)
        assert np.all(nakagami_gain(ctx, stream(2), size=1000) >= 0)

    def test_awgn_gain_is_constant(self):
        ctx = ChannelContext(m=AWGN, omega=4.0, n0=1.0)
        assert np.all(nakagami_gain(ctx, stream(3), size=10) == 2.0)
        assert nakagami_gain(ctx, stream(3)) == 2.0

    def test_noise_variance_per_dimension(self):
        noise = complex_noise(0.2, stream(4), 200_000)
        assert noise.real.var() == pytest.approx(0.1, rel=0.02)
        assert noise.imag.var() == pytest.approx(0.1, rel=0.02)
        assert abs(noise.mean()) < 0.01


class TestLink:
    """Test cases for frame transmission."""

    def test_rate_half_frame_lengths(self, mcs1, qam16):
        ctx = ChannelContext.from_snr_db(m=2, snr_db=10.0)
        frame = transmit_frame(np.zeros(920, dtype=np.uint8), mcs1, qam16, ctx, stream(1))
        assert frame.padding_bits == 2
        assert frame.coded_bits.size == 922 * 2
        assert frame.n_symbols == 461
        assert frame.gains.shape == frame.received.shape == (461,)

    def test_punctured_frame_lengths(self, mcs2, qam16):
        ctx = ChannelContext.from_snr_db(m=2, snr_db=10.0)
        frame = transmit_frame(np.ones(920, dtype=np.uint8), mcs2, qam16, ctx, stream(1))
        assert frame.padding_bits == 4
        assert frame.coded_bits.size == 924 * 2 * 4 // 6
        assert frame.n_symbols == 308
        assert frame.n_info == 920

    def test_noiseless_frame_is_faded_symbols(self, mcs1, qam16):
        ctx = ChannelContext.from_snr_db(m=1, snr_db=10.0)
        frame = transmit_frame([1, 0, 1, 1], mcs1, qam16, ctx, stream(2), add_noise=False)
        assert np.allclose(frame.received, frame.gains * frame.symbols)

    def test_constellation_must_match_scheme(self, mcs1):
        ctx = ChannelContext.from_snr_db(m=1, snr_db=10.0)
        with pytest.raises(CodecError):
            transmit_frame([1, 0], mcs1, qam_constellation(64), ctx, stream(2))

    def test_uncoded_round_trip(self, qam16):
        ctx = ChannelContext.from_snr_db(m=1, snr_db=10.0)
        bits = stream(5).integers(0, 2, 64)
        frame = transmit_uncoded(bits, qam16, ctx, stream(6), add_noise=False)
        assert frame.n_symbols == 16
        assert detect_uncoded(frame, qam16).tolist() == bits.tolist()

    def test_uncoded_needs_whole_symbols(self, qam16):
        ctx = ChannelContext.from_snr_db(m=1, snr_db=10.0)
        with pytest.raises(ConfigurationError):
            transmit_uncoded([1, 0, 1], qam16, ctx, stream(6))


class TestSimulateBer:
    """Test cases for Monte-Carlo BER estimation."""

    def test_uncoded_bpsk_rayleigh_matches_closed_form(self):
        ctx = ChannelContext.from_snr_db(m=1, snr_db=10.0)
        estimate = simulate_ber(
            None, qam_constellation(2), ctx,
            n_b=1000, stop=StopRule(min_errors=3000, max_frames=500), seed=11, uncoded=True,
        )
        expected = 0.5 * (1.0 - math.sqrt(10.0 / 11.0))
        assert expected == pytest.approx(0.02327, abs=1e-5)
        assert abs(estimate.ber - expected) <= 3 * estimate.std_error

    def test_stops_at_error_target(self, mcs1, qam16):
        ctx = ChannelContext.from_snr_db(m=1, snr_db=2.0)
        estimate = simulate_ber(
            mcs1, qam16, ctx, n_b=100, stop=StopRule(min_errors=20, max_frames=50), seed=1
        )
        assert estimate.bit_errors >= 20
        assert estimate.frames < 50
        assert estimate.bits_simulated == estimate.frames * 100

    def test_stops_at_frame_cap(self, mcs1, qam16):
        ctx = ChannelContext.from_snr_db(m=AWGN, snr_db=40.0)
        estimate = simulate_ber(
            mcs1, qam16, ctx, n_b=100, stop=StopRule(min_errors=5, max_frames=3), seed=1
        )
        assert estimate.frames == 3
        assert estimate.bit_errors == 0

    def test_reproducible(self, mcs2, qam16):
        ctx = ChannelContext.from_snr_db(m=2, snr_db=8.0)
        stop = StopRule(min_errors=30, max_frames=10)
        a = simulate_ber(mcs2, qam16, ctx, n_b=120, stop=stop, seed=4)
        b = simulate_ber(mcs2, qam16, ctx, n_b=120, stop=stop, seed=4)
        assert a == b

    def test_frame_draws_depend_only_on_index(self, mcs1, trellis1, qam16):
        ctx = ChannelContext.from_snr_db(m=1, snr_db=6.0)
        args = dict(seed=3, mcs=mcs1, constellation=qam16, ctx=ctx, n_b=80, trellis=trellis1, decoder=None)
        assert frame_errors(5, **args) == frame_errors(5, **args)

    def test_traceback_window_accepted(self, mcs1, qam16):
        ctx = ChannelContext.from_snr_db(m=AWGN, snr_db=30.0)
        estimate = simulate_ber(
            mcs1, qam16, ctx, n_b=100, stop=StopRule(min_errors=1, max_frames=2), seed=2,
            decoder=DecoderConfig(traceback_window=5),
        )
        assert estimate.bit_errors == 0

    def test_coded_mode_needs_scheme(self, qam16):
        ctx = ChannelContext.from_snr_db(m=1, snr_db=6.0)
        with pytest.raises(ConfigurationError):
            simulate_ber(None, qam16, ctx, n_b=10)

    def test_frame_size_must_be_positive(self, mcs1, qam16):
        ctx = ChannelContext.from_snr_db(m=1, snr_db=6.0)
        with pytest.raises(ConfigurationError):
            simulate_ber(mcs1, qam16, ctx, n_b=0)

    @pytest.mark.slow
    def test_workers_do_not_change_result(self, mcs1, qam16):
        ctx = ChannelContext.from_snr_db(m=1, snr_db=8.0)
        stop = StopRule(min_errors=40, max_frames=30)
        serial = simulate_ber(mcs1, qam16, ctx, n_b=200, stop=stop, seed=6, workers=1)
        parallel = simulate_ber(mcs1, qam16, ctx, n_b=200, stop=stop, seed=6, workers=2)
        assert serial == parallel

    def test_invariant_under_energy_scale(self, mcs1, qam16):
        stop = StopRule(min_errors=10_000, max_frames=8)
        base = simulate_ber(
            mcs1, qam16, ChannelContext.from_snr_db(m=2, snr_db=6.0), n_b=150, stop=stop, seed=9
        )
        scaled = simulate_ber(
            mcs1,
            Constellation(2.0 * qam16.points),
            ChannelContext.from_snr_db(m=2, snr_db=6.0, e_s=4.0),
            n_b=150, stop=stop, seed=9,
        )
        assert base.bit_errors > 0
        assert scaled == base


@pytest.mark.slow
class TestAgainstBound:
    """Test cases comparing simulated BER with the analytical bound."""

    SNR_GRID = (8.0, 12.0, 16.0)

    @pytest.fixture(scope="class")
    def curves(self):
        mcs = get_mcs(1)
        qam = qam_constellation(16)
        trellis = trellis_for_mcs(mcs)
        stop = StopRule(min_errors=150, max_frames=250)
        curves = {}
        for m in (1, 2):
            rows = []
            for snr_db in self.SNR_GRID:
                ctx = ChannelContext.from_snr_db(m=m, snr_db=snr_db)
                estimate = simulate_ber(mcs, qam, ctx, n_b=200, stop=stop, seed=21)
                rows.append((snr_db, estimate, evaluate_bound(trellis, qam, ctx)))
            curves[m] = rows
        return curves

    @pytest.mark.parametrize("m", [1, 2])
    def test_simulation_stays_below_bound(self, curves, m):
        compared = 0
        for snr_db, estimate, bound in curves[m]:
            if bound.divergent or bound.p_b_bound > 0.5:
                continue
            assert estimate.ber <= bound.p_b_bound + 3 * estimate.std_error, snr_db
            compared += 1
        assert compared >= 1

    @pytest.mark.parametrize("m", [1, 2])
    def test_simulated_ber_does_not_increase_with_snr(self, curves, m):
        estimates = [estimate for _, estimate, _ in curves[m]]
        for low, high in zip(estimates, estimates[1:]):
            slack = 3 * math.hypot(low.std_error, high.std_error)
            assert high.ber <= low.ber + slack
        assert estimates[-1].ber < estimates[0].ber
