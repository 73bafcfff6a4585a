"""
Unit tests for the codec module.

Tests cover:
- Octal generators and the shift-register encoder
- Puncturing
- Bit-to-symbol mapping
- Supertrellis alignment, transitions and parallel groups
- Viterbi decoding against exhaustive maximum likelihood on 1000 short frames
"""

from functools import lru_cache
from itertools import product

import numpy as np
import pytest

from constellation_designer.codec.encoder import build_encoder, encode, octal_to_int
from constellation_designer.codec.mapping import bits_to_labels, labels_to_bits, map_symbols
from constellation_designer.codec.puncture import keep_mask, puncture
from constellation_designer.codec.trellis import build_supertrellis
from constellation_designer.codec.viterbi import viterbi_decode
from constellation_designer.channel.link import transmit_frame, trellis_for_mcs
from constellation_designer.adapt.mcs import get_mcs
from constellation_designer.core.constellation import qam_constellation
from constellation_designer.core.errors import AlignmentError, CodecError
from constellation_designer.core.models import ChannelContext, DecoderConfig, PuncturePattern
from constellation_designer.utils.rng import stream


class TestEncoder:
    """Test cases for the convolutional encoder."""

    def test_octal_generators(self):
        assert octal_to_int(5) == 0b101
        assert octal_to_int(133) == 0b1011011

    def test_industry_code_dimensions(self):
        enc = build_encoder([133, 171])
        assert enc.constraint_length == 7
        assert enc.num_states == 64
        assert enc.rate_denominator == 2

    @pytest.mark.parametrize("generators", [[], [5, 0], [5, 8]])
    def test_invalid_generators(self, generators):
        with pytest.raises(CodecError):
            build_encoder(generators)

    def test_known_codeword(self):
        enc = build_encoder([5, 7])
        assert encode(enc, [1, 0, 1, 1], terminate=False).tolist() == [1, 1, 0, 1, 0, 0, 1, 0]

    def test_impulse_response_has_free_distance_weight(self):
        enc = build_encoder([5, 7])
        codeword = encode(enc, [1])
        assert codeword.tolist() == [1, 1, 0, 1, 1, 1]
        assert codeword.sum() == 5

    def test_termination_returns_to_zero_state(self):
        enc = build_encoder([5, 7])
        bits = [1, 1, 0, 1, 1]
        state = 0
        for bit in bits + [0] * enc.memory:
            state, _ = enc.step(state, bit)
        assert state == 0
        assert encode(enc, bits).size == (len(bits) + enc.memory) * 2


class TestPuncture:
    """Test cases for puncturing."""

    def test_keep_mask_layout(self, mcs2):
        assert keep_mask(mcs2.puncture, 3).tolist() == [True, False, True, True, False, True]

    def test_puncture_drops_masked_bits(self):
        p = PuncturePattern(mask=[[1, 1, 0], [0, 1, 1]])
        assert puncture([1, 1, 0, 1, 0, 0], p).tolist() == [1, 0, 1, 0]

    def test_puncture_needs_whole_steps(self):
        p = PuncturePattern(mask=[[1, 1, 0], [0, 1, 1]])
        with pytest.raises(CodecError):
            puncture([1, 1, 0], p)


class TestMapping:
    """Test cases for bit-to-symbol mapping."""

    def test_msb_first_labels(self):
        assert bits_to_labels([1, 0, 1, 1, 0, 0, 0, 1], 4).tolist() == [11, 1]
        assert labels_to_bits([11, 1], 4).tolist() == [1, 0, 1, 1, 0, 0, 0, 1]

    def test_partial_symbol_rejected(self):
        with pytest.raises(CodecError):
            bits_to_labels([1, 0, 1], 4)

    def test_map_symbols_picks_labeled_point(self, qam16):
        assert map_symbols([0, 0, 0, 0, 1, 1, 1, 1], qam16).tolist() == [
            qam16.points[0], qam16.points[15]
        ]


class TestSuperTrellis:
    """Test cases for supertrellis construction."""

    @pytest.mark.parametrize(
        "mcs_id, l, groups",
        [(1, 2, 1), (2, 3, 2), (3, 4, 4)],
    )
    def test_catalog_alignment(self, mcs_id, l, groups):
        trellis = trellis_for_mcs(get_mcs(mcs_id))
        assert trellis.l == l
        assert trellis.symbols_per_transition == 1
        assert trellis.max_group_size == groups
        assert trellis.num_transitions == trellis.num_states * 2 ** l

    def test_transition_labels(self, trellis1):
        # state 0, input 1 then 0 emits 11 01
        t = 0 * trellis1.words_per_state + 0b10
        assert trellis1.next_state[t] == 1
        assert trellis1.labels[t, 0] == 0b1101

    def test_incoming_sorted_and_consistent(self, trellis2):
        for state in range(trellis2.num_states):
            members = trellis2.incoming[state]
            assert np.all(trellis2.next_state[members] == state)
            keys = list(zip(trellis2.prev_state[members].tolist(), trellis2.words[members].tolist()))
            assert keys == sorted(keys)

    def test_transition_probabilities_are_stochastic(self, trellis2):
        probs = trellis2.transition_probabilities()
        assert probs.sum(axis=1) == pytest.approx(np.ones(trellis2.num_states))

    def test_frame_padding(self, trellis1, trellis2):
        assert trellis1.frame_padding(920) == 2
        assert trellis2.frame_padding(920) == 4

    def test_odd_bits_per_symbol(self):
        trellis = build_supertrellis(build_encoder([5, 7]), None, 8)
        assert trellis.l == 3
        assert trellis.symbols_per_transition == 2

    def test_alignment_cap(self):
        with pytest.raises(AlignmentError):
            build_supertrellis(build_encoder([5, 7]), None, 16, max_steps=1)

    def test_non_power_of_two_alphabet(self):
        with pytest.raises(CodecError):
            build_supertrellis(build_encoder([5, 7]), None, 12)

    def test_mask_stream_mismatch(self):
        with pytest.raises(CodecError):
            build_supertrellis(build_encoder([5, 7, 7]), PuncturePattern(mask=[[1, 1], [1, 0]]), 16)


@lru_cache(maxsize=None)
def _codebook(mcs_id, n_free):
    """Noiseless symbols of every free-bit pattern, tail appended by transmit_frame."""
    mcs = get_mcs(mcs_id)
    ctx = ChannelContext(m="awgn", n0=1.0)
    patterns = np.array(list(product([0, 1], repeat=n_free)), dtype=np.uint8)
    symbols = np.array([
        transmit_frame(bits, mcs, qam_constellation(16), ctx, stream(0, 0), add_noise=False).symbols
        for bits in patterns
    ])
    return patterns, symbols


def _brute_force_ml(received, gains, mcs, n_info):
    """Minimum-metric codeword over all info and alignment-fill bits."""
    trellis = trellis_for_mcs(mcs)
    n_free = n_info + trellis.frame_padding(n_info) - trellis.encoder.memory
    patterns, symbols = _codebook(mcs.id, n_free)
    metrics = np.sum(np.abs(received[None, :] - gains[None, :] * symbols) ** 2, axis=1)
    return patterns[int(np.argmin(metrics)), :n_info].tolist()


class TestViterbi:
    """Test cases for the soft-decision Viterbi decoder."""

    def test_matches_brute_force_ml(self, qam16):
        draws = stream(2024, 98)
        for i in range(1000):
            mcs = get_mcs(int(draws.integers(1, 3)))
            n_info = int(draws.integers(1, 13))
            m = [1, 2, "awgn"][int(draws.integers(0, 3))]
            ctx = ChannelContext.from_snr_db(m=m, snr_db=float(draws.uniform(0.0, 12.0)))
            rng = stream(2024, 99, i)
            info = rng.integers(0, 2, n_info)
            frame = transmit_frame(info, mcs, qam16, ctx, rng)

            decoded = viterbi_decode(
                frame.received, frame.gains, qam16, trellis_for_mcs(mcs), n_info_bits=n_info
            )
            assert decoded.tolist() == _brute_force_ml(frame.received, frame.gains, mcs, n_info), (
                f"frame {i}: MCS-{mcs.id}, {n_info} bits"
            )

    @pytest.mark.parametrize("tau", [None, 3, 8])
    def test_noiseless_frame_decodes(self, mcs2, trellis2, qam16, tau):
        ctx = ChannelContext(m="awgn", n0=1.0)
        info = stream(5, 1).integers(0, 2, 60)
        frame = transmit_frame(info, mcs2, qam16, ctx, stream(5, 2), add_noise=False)
        decoded = viterbi_decode(
            frame.received, frame.gains, qam16, trellis2,
            config=DecoderConfig(traceback_window=tau), n_info_bits=60,
        )
        assert decoded.tolist() == info.tolist()

    def test_long_window_equals_whole_frame(self, mcs1, trellis1, qam16):
        ctx = ChannelContext.from_snr_db(m=2, snr_db=6.0)
        rng = stream(8, 1)
        info = rng.integers(0, 2, 40)
        frame = transmit_frame(info, mcs1, qam16, ctx, rng)
        whole = viterbi_decode(frame.received, frame.gains, qam16, trellis1, n_info_bits=40)
        lagged = viterbi_decode(
            frame.received, frame.gains, qam16, trellis1,
            config=DecoderConfig(traceback_window=1000), n_info_bits=40,
        )
        assert lagged.tolist() == whole.tolist()

    def test_csi_length_mismatch(self, trellis1, qam16):
        with pytest.raises(CodecError):
            viterbi_decode(np.zeros(4, complex), np.ones(3), qam16, trellis1)

    def test_alphabet_mismatch(self, trellis1):
        with pytest.raises(CodecError):
            viterbi_decode(np.zeros(4, complex), np.ones(4), qam_constellation(64), trellis1)

    def test_empty_frame(self, trellis1, qam16):
        with pytest.raises(CodecError):
            viterbi_decode(np.zeros(0, complex), np.ones(0), qam16, trellis1)
