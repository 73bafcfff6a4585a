"""
Soft-decision Viterbi decoding over a supertrellis with perfect CSI.

The branch metric of a super-transition is the sum of |r_k - h_k s_k|^2 over
its symbols. Decisions are released with a fixed lag of tau super-steps:
after step t the decision for step t - tau is read by tracing back from the
best current state. Whatever is still undecided at the end of the frame is
flushed from the terminating zero state.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from constellation_designer.codec.trellis import SuperTrellis
from constellation_designer.core.constellation import Constellation
from constellation_designer.core.errors import CodecError
from constellation_designer.core.models import DecoderConfig

logger = logging.getLogger(__name__)


def branch_metrics(
    received: np.ndarray,
    csi: np.ndarray,
    constellation: Constellation,
    trellis: SuperTrellis
) -> np.ndarray:
    """
    Squared Euclidean metrics of every transition at every super-step.

    Returns:
        (steps, transitions) array
    """
    spt = trellis.symbols_per_transition
    r = received.reshape(-1, spt)
    h = csi.reshape(-1, spt)
    # (steps, spt, M) per-symbol metrics
    symbol_metrics = np.abs(r[:, :, None] - h[:, :, None] * constellation.points[None, None, :]) ** 2
    metrics = np.zeros((r.shape[0], trellis.num_transitions))
    for k in range(spt):
        metrics += symbol_metrics[:, k, trellis.labels[:, k]]
    return metrics


def _word_bits(word: int, l: int) -> list:
    return [(word >> (l - 1 - pos)) & 1 for pos in range(l)]


def viterbi_decode(
    received: Sequence[complex],
    csi: Sequence[float],
    constellation: Constellation,
    trellis: SuperTrellis,
    config: Optional[DecoderConfig] = None,
    n_info_bits: Optional[int] = None,
    terminated: bool = True
) -> np.ndarray:
    """
    Decode a frame of received samples.

    Args:
        received: Received samples r_i
        csi: Fading gains h_i aligned with the samples
        constellation: Constellation used at the transmitter
        trellis: Supertrellis of the code
        config: Decoder settings (tau); whole-frame traceback when omitted
        n_info_bits: Number of leading decoded bits to return (drops tail/padding)
        terminated: Frame ends in the zero state

    Returns:
        Decoded information bits

    Raises:
        CodecError: On length mismatches, alphabet mismatch or an invalid window
    """
    config = config or DecoderConfig()
    r = np.asarray(received, dtype=np.complex128)
    h = np.asarray(csi, dtype=np.complex128)

    if r.shape != h.shape:
        raise CodecError(f"CSI length {h.size} does not match {r.size} received samples")
    if constellation.M != trellis.modulation_order:
        raise CodecError(
            f"constellation has {constellation.M} points, trellis expects {trellis.modulation_order}"
        )
    spt = trellis.symbols_per_transition
    if r.size == 0 or r.size % spt:
        raise CodecError(f"{r.size} samples do not form whole super-steps of {spt} symbols")
    tau = config.traceback_window
    if tau is not None and tau < 1:
        raise CodecError(f"traceback window must be >= 1, got {tau}")

    metrics = branch_metrics(r, h, constellation, trellis)
    steps = metrics.shape[0]
    n_states = trellis.num_states
    incoming = trellis.incoming
    origin = trellis.prev_state[incoming]

    path_metric = np.full(n_states, np.inf)
    path_metric[0] = 0.0
    rows = np.arange(n_states)

    prev_of = trellis.prev_state.tolist()
    word_of = trellis.words.tolist()
    survivors = []
    decisions = [0] * steps
    released = 0

    for step in range(steps):
        candidates = path_metric[origin] + metrics[step, incoming]
        # argmin keeps the first minimum: ties go to the lower-indexed predecessor
        choice = np.argmin(candidates, axis=1)
        survivors.append(incoming[rows, choice].tolist())
        path_metric = candidates[rows, choice]
        best = path_metric.min()
        if np.isfinite(best):
            path_metric = path_metric - best

        if tau is not None and step >= tau:
            state = int(np.argmin(path_metric))
            for j in range(step, step - tau, -1):
                state = prev_of[survivors[j][state]]
            decisions[step - tau] = word_of[survivors[step - tau][state]]
            released = step - tau + 1

    state = 0 if terminated else int(np.argmin(path_metric))
    for j in range(steps - 1, released - 1, -1):
        t = survivors[j][state]
        decisions[j] = word_of[t]
        state = prev_of[t]

    l = trellis.l
    bits = np.fromiter(
        (bit for word in decisions for bit in _word_bits(word, l)),
        dtype=np.uint8,
        count=steps * l,
    )
    if n_info_bits is not None:
        bits = bits[:n_info_bits]
    return bits
