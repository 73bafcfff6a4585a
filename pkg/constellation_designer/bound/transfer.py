"""
Generating-function BER upper bound.

    P_b <= (1/l) d/dI [ w^T S_GG 1 + (w^T S_GB) (Id - S_BB)^-1 S_BG 1 ] at I = 1

The derivative is carried exactly as a value/derivative pair, using
d(A^-1) = -A^-1 dA A^-1 on a single LU factorization of Id - S_BB. The start
vector w is all ones over the good states by default; "uniform" (1/S each)
is an opt-in through settings.BOUND_START_WEIGHTING or the start_weighting
argument and scales the bound down by S.
"""

import logging
import math
from typing import Callable, Iterable, List, Literal, Optional

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from constellation_designer.bound.product_state import (
    ProductStateMatrix,
    build_product_state_matrix,
)
from constellation_designer.codec.trellis import SuperTrellis
from constellation_designer.config import settings
from constellation_designer.core.constellation import Constellation
from constellation_designer.core.errors import (
    ConfigurationError,
    ConvergenceError,
    NumericalFailureError,
)
from constellation_designer.core.models import BoundResult, ChannelContext
from constellation_designer.utils.search import bisect_threshold

logger = logging.getLogger(__name__)

StartWeighting = Literal["ones", "uniform"]


def spectral_radius(
    matrix: np.ndarray,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None
) -> float:
    """
    Largest eigenvalue magnitude of a nonnegative square matrix by power iteration.

    Iterates on A + Id, whose Perron root is rho(A) + 1 and which is aperiodic,
    so periodic matrices (permutations, the identity) converge as well.

    Args:
        matrix: Square, entrywise nonnegative matrix
        tol: Relative tolerance between successive estimates
        max_iter: Iteration cap

    Returns:
        Spectral radius

    Raises:
        ConfigurationError: If the matrix is not square or has negative entries
        ConvergenceError: If the tolerance is not met within max_iter iterations

    Example:
        >>> spectral_radius(np.array([[0.5, 0.25], [0.25, 0.5]]))
        0.75
    """
    tol = settings.SPECTRAL_RADIUS_TOL if tol is None else tol
    max_iter = settings.SPECTRAL_RADIUS_MAX_ITER if max_iter is None else max_iter

    a = np.asarray(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ConfigurationError(f"spectral radius needs a square matrix, got shape {a.shape}")
    if a.size == 0:
        return 0.0
    if np.any(a < 0):
        raise ConfigurationError("spectral radius by power iteration needs a nonnegative matrix")

    x = np.full(a.shape[0], 1.0 / a.shape[0])
    estimate = 1.0
    for _ in range(max_iter):
        y = a @ x + x
        new_estimate = y.sum()
        x = y / new_estimate
        if abs(new_estimate - estimate) <= tol * new_estimate:
            return max(new_estimate - 1.0, 0.0)
        estimate = new_estimate

    raise ConvergenceError(
        f"power iteration did not reach relative tolerance {tol} in {max_iter} iterations"
    )


def _start_vector(num_states: int, weighting: StartWeighting) -> np.ndarray:
    if weighting == "uniform":
        return np.full(num_states, 1.0 / num_states)
    if weighting == "ones":
        return np.ones(num_states)
    raise ConfigurationError(f"unknown start weighting {weighting!r}")


def ber_upper_bound(
    psm: ProductStateMatrix,
    l: int,
    start_weighting: Optional[StartWeighting] = None
) -> BoundResult:
    """
    Evaluate the BER upper bound from a product-state matrix.

    Args:
        psm: Product-state matrix with value/derivative entries
        l: Information bits per super-transition
        start_weighting: "ones" or "uniform" (settings.BOUND_START_WEIGHTING when omitted)

    Returns:
        BoundResult; divergent (p_b_bound = inf) when rho(S_BB) >= 1

    Raises:
        ConfigurationError: If l < 1
        NumericalFailureError: If Id - S_BB is singular although rho(S_BB) < 1
    """
    if l < 1:
        raise ConfigurationError(f"bits per super-transition must be >= 1, got {l}")
    weighting = start_weighting or settings.BOUND_START_WEIGHTING
    ctx = psm.context
    meta = dict(
        m=ctx.m if ctx else None,
        snr_db=ctx.snr_db if ctx else None,
        constellation_id=psm.constellation_id,
        trellis_id=psm.trellis_id,
    )

    gg, dgg = psm.gg
    gb, dgb = psm.gb
    bg, dbg = psm.bg
    bb, dbb = psm.bb
    w = _start_vector(psm.num_states, weighting)

    rho = spectral_radius(bb) if bb.size else 0.0
    if rho >= 1.0:
        logger.debug(f"Bound diverges: spectral radius {rho:.6f} >= 1")
        return BoundResult(p_b_bound=math.inf, spectral_radius=rho, divergent=True, **meta)

    deriv = w @ dgg.sum(axis=1)
    if bb.size:
        system = np.eye(bb.shape[0]) - bb
        lu, piv = lu_factor(system, check_finite=True)
        if np.any(np.abs(np.diag(lu)) <= np.finfo(float).eps * np.abs(system).max()):
            raise NumericalFailureError(
                f"Id - S_BB is singular at spectral radius {rho:.6f}"
            )
        b = bg.sum(axis=1)
        db = dbg.sum(axis=1)
        y = lu_solve((lu, piv), b)
        dy = lu_solve((lu, piv), dbb @ y + db)
        row = w @ gb
        drow = w @ dgb
        deriv += drow @ y + row @ dy

    p_b = float(deriv) / l
    if not math.isfinite(p_b):
        raise NumericalFailureError(f"bound evaluated to {p_b} at spectral radius {rho:.6f}")
    return BoundResult(p_b_bound=p_b, spectral_radius=rho, divergent=False, **meta)


def evaluate_bound(
    trellis: SuperTrellis,
    constellation: Constellation,
    ctx: ChannelContext,
    start_weighting: Optional[StartWeighting] = None
) -> BoundResult:
    """Build the product-state matrix and evaluate the bound in one call."""
    psm = build_product_state_matrix(trellis, constellation, ctx)
    return ber_upper_bound(psm, trellis.l, start_weighting)


def bound_curve(
    trellis: SuperTrellis,
    constellation_for: Callable[[float], Constellation],
    m,
    snr_grid_db: Iterable[float],
    omega: Optional[float] = None,
    e_s: float = 1.0
) -> List[BoundResult]:
    """
    Bound on an SNR grid, letting the constellation depend on the grid point.

    Args:
        trellis: Supertrellis
        constellation_for: SNR (dB) -> constellation (fixed or adaptive)
        m: Fading parameter
        snr_grid_db: Average SNR values in dB
    """
    results = []
    for snr_db in snr_grid_db:
        ctx = ChannelContext.from_snr_db(m=m, snr_db=snr_db, omega=omega, e_s=e_s)
        results.append(evaluate_bound(trellis, constellation_for(snr_db), ctx))
    return results


def snr_at_target(
    trellis: SuperTrellis,
    constellation: Constellation,
    m,
    target: float,
    low_db: float = -10.0,
    high_db: float = 60.0,
    resolution_db: float = 1e-3,
    e_s: float = 1.0,
    distance_divisor: Optional[float] = None
) -> Optional[float]:
    """
    Smallest SNR (dB) at which the bound of a fixed constellation reaches `target`.

    The bound is non-increasing in SNR, so bisection applies. Returns None when
    the target is not reached at `high_db`. `distance_divisor` evaluates
    designs made under another Chernoff scaling (see LutStoreInterface.distance_divisor).
    """
    def reaches(snr_db: float) -> bool:
        ctx = ChannelContext.from_snr_db(
            m=m, snr_db=snr_db, e_s=e_s, distance_divisor=distance_divisor
        )
        return evaluate_bound(trellis, constellation, ctx).p_b_bound <= target

    return bisect_threshold(reaches, low_db, high_db, resolution_db)
