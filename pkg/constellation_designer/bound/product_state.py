"""
Product-state matrix of a supertrellis paired with a constellation.

Product state (u, v) tracks the correct path in state u and a competing path
in state v; it is "good" when u == v. The entry for (u, v) -> (u_bar, v_bar) is

    sum over correct a in G(u -> u_bar) of 2^-l
        * sum over competing b in G(v -> v_bar) of I^wt(word_a XOR word_b) * D(a, b)

which is Pr(u -> u_bar | u) = |G| 2^-l times an average over the |G| correct
parallel transitions. D(a, b) multiplies the Chernoff factors of the symbol
positions of the two transitions. Each entry is stored as a value/derivative
pair at I = 1.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from constellation_designer.bound.chernoff import chernoff_matrix
from constellation_designer.bound.dual import Dual
from constellation_designer.codec.trellis import SuperTrellis
from constellation_designer.core.constellation import Constellation
from constellation_designer.core.errors import CodecError
from constellation_designer.core.models import ChannelContext

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PairTerms:
    """
    Flattened contributions of every (correct, competing) transition pair.

    Attributes:
        flat_index: Row-major index of the matrix entry each pair adds to
        weight: 2^-l * D(a, b)
        errors: Information-bit errors wt(word_a XOR word_b)
    """

    flat_index: np.ndarray
    weight: np.ndarray
    errors: np.ndarray


def _popcounts(l: int) -> np.ndarray:
    return np.array([bin(w).count("1") for w in range(1 << l)], dtype=np.int64)


def pair_terms(
    trellis: SuperTrellis,
    constellation: Constellation,
    ctx: ChannelContext
) -> PairTerms:
    """
    Enumerate all transition pairs of the supertrellis.

    Raises:
        CodecError: If the constellation size differs from the trellis alphabet
    """
    if constellation.M != trellis.modulation_order:
        raise CodecError(
            f"constellation has {constellation.M} points, trellis expects {trellis.modulation_order}"
        )

    n_states = trellis.num_states
    d_symbol = chernoff_matrix(constellation.points, ctx)

    d_pair = np.ones((trellis.num_transitions, trellis.num_transitions))
    for k in range(trellis.symbols_per_transition):
        col = trellis.labels[:, k]
        d_pair = d_pair * d_symbol[col[:, None], col[None, :]]

    errors = _popcounts(trellis.l)[trellis.words[:, None] ^ trellis.words[None, :]]
    rows = trellis.prev_state[:, None] * n_states + trellis.prev_state[None, :]
    cols = trellis.next_state[:, None] * n_states + trellis.next_state[None, :]
    dim = n_states * n_states

    return PairTerms(
        flat_index=(rows * dim + cols).ravel(),
        weight=(d_pair / trellis.words_per_state).ravel(),
        errors=errors.ravel(),
    )


@dataclass(frozen=True)
class ProductStateMatrix:
    """
    Square matrix of Duals over ordered product states (u, v), index u * S + v.

    Attributes:
        value: Entry values at I = 1
        deriv: Entry derivatives d/dI at I = 1
        num_states: S, the number of encoder states
        context: Channel context the entries were evaluated in
        constellation_id: Content id of the constellation
        trellis_id: Descriptor of the supertrellis
    """

    value: np.ndarray = field(repr=False)
    deriv: np.ndarray = field(repr=False)
    num_states: int
    context: Optional[ChannelContext] = None
    constellation_id: Optional[str] = None
    trellis_id: Optional[str] = None

    @property
    def dimension(self) -> int:
        return self.num_states * self.num_states

    @property
    def good_indices(self) -> np.ndarray:
        s = np.arange(self.num_states)
        return s * self.num_states + s

    @property
    def bad_indices(self) -> np.ndarray:
        mask = np.ones(self.dimension, dtype=bool)
        mask[self.good_indices] = False
        return np.flatnonzero(mask)

    def index(self, u: int, v: int) -> int:
        return u * self.num_states + v

    def entry(self, row: Tuple[int, int], col: Tuple[int, int]) -> Dual:
        i = self.index(*row)
        j = self.index(*col)
        return Dual(float(self.value[i, j]), float(self.deriv[i, j]))

    def block(self, rows: str, cols: str) -> Tuple[np.ndarray, np.ndarray]:
        """(value, deriv) views of a block, rows/cols in {"G", "B"}."""
        pick = {"G": self.good_indices, "B": self.bad_indices}
        sel = np.ix_(pick[rows], pick[cols])
        return self.value[sel], self.deriv[sel]

    @property
    def gg(self):
        return self.block("G", "G")

    @property
    def gb(self):
        return self.block("G", "B")

    @property
    def bg(self):
        return self.block("B", "G")

    @property
    def bb(self):
        return self.block("B", "B")

    def permuted(self, perm: np.ndarray) -> "ProductStateMatrix":
        """Relabel encoder states u -> perm[u] consistently in both coordinates."""
        perm = np.asarray(perm)
        s = self.num_states
        new_index = (perm[:, None] * s + perm[None, :]).ravel()
        order = np.empty(self.dimension, dtype=np.int64)
        order[new_index] = np.arange(self.dimension)
        sel = np.ix_(order, order)
        return ProductStateMatrix(
            value=self.value[sel],
            deriv=self.deriv[sel],
            num_states=s,
            context=self.context,
            constellation_id=self.constellation_id,
            trellis_id=self.trellis_id,
        )


def build_product_state_matrix(
    trellis: SuperTrellis,
    constellation: Constellation,
    ctx: ChannelContext
) -> ProductStateMatrix:
    """
    Build the product-state matrix with exact I-derivatives.

    Args:
        trellis: Supertrellis of the code and mapping
        constellation: Constellation evaluated
        ctx: Channel context (m, Omega, N0)

    Returns:
        ProductStateMatrix of dimension num_states^2

    Raises:
        CodecError: On alphabet mismatch
    """
    terms = pair_terms(trellis, constellation, ctx)
    dim = trellis.num_states ** 2
    size = dim * dim
    value = np.bincount(terms.flat_index, weights=terms.weight, minlength=size)
    deriv = np.bincount(terms.flat_index, weights=terms.weight * terms.errors, minlength=size)
    return ProductStateMatrix(
        value=value.reshape(dim, dim),
        deriv=deriv.reshape(dim, dim),
        num_states=trellis.num_states,
        context=ctx,
        constellation_id=constellation.id,
        trellis_id=trellis.id,
    )

