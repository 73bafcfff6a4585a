"""
Supertrellis construction.

A supertrellis groups l base encoder steps (a whole number of puncturing
periods) so that every super-transition emits complete modulation symbols.
Transitions are indexed ``t = state * 2**l + word`` where ``word`` holds the l
input bits, the first one in time in the MSB.

Example:
    >>> from constellation_designer.codec.encoder import build_encoder
    >>> st = build_supertrellis(build_encoder([5, 7]), None, 16)
    >>> st.l, st.symbols_per_transition, st.max_group_size
    (2, 1, 1)
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from constellation_designer.codec.encoder import Encoder
from constellation_designer.codec.mapping import bits_to_labels
from constellation_designer.codec.puncture import keep_mask
from constellation_designer.config import settings
from constellation_designer.core.errors import AlignmentError, CodecError
from constellation_designer.core.models import PuncturePattern

logger = logging.getLogger(__name__)

# 2^l transitions leave every state; keep the enumeration tractable.
MAX_INFO_BITS_PER_TRANSITION = 16


@dataclass(frozen=True)
class SuperTrellis:
    """
    State machine whose transitions consume l information bits and emit whole symbols.

    Attributes:
        encoder: Base encoder
        pattern: Puncturing pattern (None when unpunctured)
        modulation_order: M
        l: Information bits (base steps) per super-transition
        symbols_per_transition: Complete symbols emitted per super-transition
        prev_state: Origin state of each transition
        next_state: Destination state of each transition
        words: Information word of each transition
        labels: (transitions, symbols_per_transition) symbol labels
        incoming: (num_states, 2^l) transition indices ending in each state,
            ordered by origin state then word
        parallel_groups: (state, next_state) -> transition indices
    """

    encoder: Encoder
    pattern: Optional[PuncturePattern]
    modulation_order: int
    l: int
    symbols_per_transition: int
    prev_state: np.ndarray = field(repr=False)
    next_state: np.ndarray = field(repr=False)
    words: np.ndarray = field(repr=False)
    labels: np.ndarray = field(repr=False)
    incoming: np.ndarray = field(repr=False)
    parallel_groups: Dict[Tuple[int, int], Tuple[int, ...]] = field(repr=False)

    @property
    def num_states(self) -> int:
        return self.encoder.num_states

    @property
    def num_transitions(self) -> int:
        return self.prev_state.size

    @property
    def words_per_state(self) -> int:
        return 1 << self.l

    @property
    def bits_per_symbol(self) -> int:
        return self.modulation_order.bit_length() - 1

    @property
    def max_group_size(self) -> int:
        return max(len(group) for group in self.parallel_groups.values())

    @property
    def id(self) -> str:
        mask = "none" if self.pattern is None else "/".join(
            "".join(str(b) for b in row) for row in self.pattern.mask
        )
        return f"{self.encoder.label}:p={mask}:M={self.modulation_order}:l={self.l}"

    def group_size(self, state: int, next_state: int) -> int:
        return len(self.parallel_groups.get((state, next_state), ()))

    def transition_probabilities(self) -> np.ndarray:
        """num_states x num_states matrix of Pr(u -> u_bar | u) = |group| * 2^-l."""
        probs = np.zeros((self.num_states, self.num_states))
        for (u, u_bar), group in self.parallel_groups.items():
            probs[u, u_bar] = len(group) / self.words_per_state
        return probs

    def frame_steps(self, n_info_bits: int) -> int:
        """Super-steps needed for a terminated frame of `n_info_bits` bits."""
        base_steps = n_info_bits + self.encoder.memory
        return -(-base_steps // self.l)

    def frame_padding(self, n_info_bits: int) -> int:
        """Zero bits appended after the information bits (tail plus alignment fill)."""
        return self.frame_steps(n_info_bits) * self.l - n_info_bits


def find_alignment(
    encoder: Encoder,
    pattern: Optional[PuncturePattern],
    bits_per_symbol: int,
    max_steps: int
) -> int:
    """
    Smallest number of base steps covering whole puncturing periods whose kept
    coded bits are a multiple of `bits_per_symbol`.

    Raises:
        AlignmentError: If no step count up to `max_steps` aligns
    """
    for n in range(1, max_steps + 1):
        if pattern is None:
            kept = n * encoder.rate_denominator
        else:
            if n % pattern.period:
                continue
            kept = (n // pattern.period) * pattern.kept_per_period
        if kept % bits_per_symbol == 0:
            return n
    raise AlignmentError(
        f"no alignment of {encoder.label} with {bits_per_symbol} bits per symbol "
        f"within {max_steps} base steps"
    )


def build_supertrellis(
    encoder: Encoder,
    pattern: Optional[PuncturePattern],
    M: int,
    max_steps: Optional[int] = None
) -> SuperTrellis:
    """
    Build the minimal-period supertrellis of an encoder, puncturing pattern and modulation order.

    Args:
        encoder: Base encoder
        pattern: Puncturing pattern or None
        M: Modulation order
        max_steps: Alignment search cap (defaults to settings.SUPERTRELLIS_MAX_STEPS)

    Returns:
        SuperTrellis with transitions, incoming lists and parallel groups

    Raises:
        CodecError: If M is not a power of two or the mask does not fit the encoder
        AlignmentError: If no alignment exists within the cap
    """
    if M < 2 or M & (M - 1):
        raise CodecError(f"modulation order must be a power of two >= 2, got {M}")
    if pattern is not None and pattern.streams != encoder.rate_denominator:
        raise CodecError(
            f"puncture mask has {pattern.streams} rows, encoder has "
            f"{encoder.rate_denominator} output streams"
        )

    bits_per_symbol = M.bit_length() - 1
    cap = settings.SUPERTRELLIS_MAX_STEPS if max_steps is None else max_steps
    l = find_alignment(encoder, pattern, bits_per_symbol, cap)
    if l > MAX_INFO_BITS_PER_TRANSITION:
        raise AlignmentError(
            f"alignment needs {l} bits per transition, more than {MAX_INFO_BITS_PER_TRANSITION}"
        )

    n_states = encoder.num_states
    n_words = 1 << l
    n_streams = encoder.rate_denominator
    if pattern is None:
        kept = np.ones(l * n_streams, dtype=bool)
    else:
        kept = keep_mask(pattern, l)
    symbols_per_transition = int(kept.sum()) // bits_per_symbol

    n_transitions = n_states * n_words
    prev_state = np.repeat(np.arange(n_states), n_words)
    words = np.tile(np.arange(n_words), n_states)
    next_state = np.empty(n_transitions, dtype=np.int64)
    labels = np.empty((n_transitions, symbols_per_transition), dtype=np.int64)

    for t in range(n_transitions):
        state = int(prev_state[t])
        word = int(words[t])
        coded = []
        for pos in range(l):
            bit = (word >> (l - 1 - pos)) & 1
            state, outputs = encoder.step(state, bit)
            coded.extend(outputs)
        next_state[t] = state
        labels[t] = bits_to_labels(np.asarray(coded)[kept], bits_per_symbol)

    groups: Dict[Tuple[int, int], list] = {}
    for t in range(n_transitions):
        groups.setdefault((int(prev_state[t]), int(next_state[t])), []).append(t)

    # Each destination of a feedforward shift register is reached by exactly 2^l transitions.
    incoming = np.empty((n_states, n_words), dtype=np.int64)
    for s in range(n_states):
        members = np.flatnonzero(next_state == s)
        incoming[s] = members[np.lexsort((words[members], prev_state[members]))]

    for arr in (prev_state, next_state, words, labels, incoming):
        arr.setflags(write=False)

    trellis = SuperTrellis(
        encoder=encoder,
        pattern=pattern,
        modulation_order=M,
        l=l,
        symbols_per_transition=symbols_per_transition,
        prev_state=prev_state,
        next_state=next_state,
        words=words,
        labels=labels,
        incoming=incoming,
        parallel_groups={key: tuple(members) for key, members in groups.items()},
    )
    logger.debug(
        f"Built supertrellis {trellis.id}: {n_states} states, {n_words} words/state, "
        f"{symbols_per_transition} symbol(s)/transition, max parallel group {trellis.max_group_size}"
    )
    return trellis
