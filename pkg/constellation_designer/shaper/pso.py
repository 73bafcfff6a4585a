"""
Particle swarm search over constellation point locations.

A particle's position is the interleaved [re0, im0, re1, im1, ...] vector of
the M points in label order. Each iteration updates every velocity

    v <- w v + r1 c1 (personal best - x) + r2 c2 (global best - x)

moves the particle to the energy-projected x + v and scores it with the
analytical BER bound. Velocities are computed from the previous iteration's
global best, so the fitness evaluations of one iteration are independent and
may run in worker processes. Random scales come from a stream keyed by
(seed, iteration, particle), which makes the result independent of the
number of workers.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import List, Optional, Sequence, Tuple

import numpy as np

from constellation_designer.bound.transfer import evaluate_bound
from constellation_designer.codec.trellis import SuperTrellis
from constellation_designer.config import settings
from constellation_designer.core.constellation import Constellation, qam_constellation
from constellation_designer.core.errors import ConfigurationError, NumericalFailureError
from constellation_designer.core.models import ChannelContext, LutRecord, PsoConfig
from constellation_designer.shaper.energy import project_energy
from constellation_designer.utils.rng import SWARM_INIT_STREAM, SWARM_UPDATE_STREAM, stream

logger = logging.getLogger(__name__)


@dataclass
class Particle:
    """
    One swarm member.

    Attributes:
        position: 2M real vector of the current points
        velocity: 2M real vector
        best_position: Best position this particle has visited
        best_fitness: Bound value at best_position
    """

    position: np.ndarray
    velocity: np.ndarray
    best_position: np.ndarray
    best_fitness: float = math.inf


@dataclass(frozen=True)
class OptimizedConstellation:
    """
    Result of one swarm run.

    Attributes:
        constellation: Best constellation found
        fitness: Its BER bound (inf only if every candidate diverged)
        m: Fading parameter of the design context
        snr_db: Design average SNR in dB
        modulation_order: M
        generators: Encoder generators of the trellis
        puncture: Puncturing mask of the trellis, if any
        trace: Global-best fitness after each iteration
        provenance: "pso:<config hash>:seed=<seed>"
    """

    constellation: Constellation
    fitness: float
    m: object
    snr_db: float
    modulation_order: int
    generators: Tuple[int, ...]
    puncture: Optional[Tuple[Tuple[int, ...], ...]]
    trace: Tuple[float, ...] = field(repr=False)
    provenance: str = ""

    @property
    def converged(self) -> bool:
        return math.isfinite(self.fitness)

    def to_record(self, mcs_id: int, snr_db: Optional[float] = None) -> LutRecord:
        """LUT record of this design; `snr_db` overrides the grid label."""
        return LutRecord(
            m=self.m,
            snr_db=self.snr_db if snr_db is None else snr_db,
            mcs=mcs_id,
            generators=list(self.generators),
            puncture=None if self.puncture is None else [list(row) for row in self.puncture],
            points=self.constellation.to_pairs(),
            bound=self.fitness if self.converged else None,
            provenance=self.provenance,
        )


def _project_position(position: np.ndarray, e_s: float) -> np.ndarray:
    pairs = position.reshape(-1, 2)
    points = project_energy(pairs[:, 0] + 1j * pairs[:, 1], e_s)
    return np.column_stack([points.real, points.imag]).ravel()


def fitness(
    position: np.ndarray,
    ctx: ChannelContext,
    trellis: SuperTrellis
) -> float:
    """
    BER bound of the constellation encoded by `position`.

    The position is projected onto ctx.e_s first. Divergent bounds and
    numerical failures score +inf, so the function never raises for a
    well-formed position.

    Args:
        position: 2M real vector
        ctx: Channel context
        trellis: Supertrellis of the MCS

    Returns:
        Bound value, +inf when it does not exist
    """
    constellation = Constellation.from_position(_project_position(np.asarray(position, dtype=float), ctx.e_s))
    try:
        return evaluate_bound(trellis, constellation, ctx).p_b_bound
    except NumericalFailureError as e:
        logger.debug(f"Candidate {constellation.id} scored +inf: {e}")
        return math.inf


def init_swarm(cfg: PsoConfig, M: int) -> List[Particle]:
    """
    Initial swarm: particle 0 is Gray QAM, the rest are random feasible sets.

    Random coordinates are uniform on [-sqrt(3 E_s), sqrt(3 E_s)] before
    projection, velocities uniform on [-0.1, 0.1] sqrt(E_s).

    Args:
        cfg: Swarm configuration
        M: Modulation order

    Returns:
        cfg.swarm_size particles with unevaluated fitness

    Example:
        >>> swarm = init_swarm(PsoConfig(swarm_size=4, iterations=1, seed=1), 16)
        >>> len(swarm), swarm[0].position.size
        (4, 32)
    """
    e_s = cfg.energy_budget
    span = math.sqrt(3.0 * e_s)
    v_span = 0.1 * math.sqrt(e_s)
    dim = 2 * M
    warm_start = qam_constellation(M, e_s).to_position()

    swarm = []
    for index in range(cfg.swarm_size):
        rng = stream(cfg.seed, SWARM_INIT_STREAM, index)
        if index == 0:
            position = warm_start.copy()
        else:
            position = _project_position(rng.uniform(-span, span, dim), e_s)
        velocity = rng.uniform(-v_span, v_span, dim)
        swarm.append(Particle(position=position, velocity=velocity, best_position=position.copy()))
    return swarm


def _evaluate(
    positions: Sequence[np.ndarray],
    ctx: ChannelContext,
    trellis: SuperTrellis,
    executor: Optional[ProcessPoolExecutor]
) -> List[float]:
    score = partial(fitness, ctx=ctx, trellis=trellis)
    if executor is None:
        return [score(p) for p in positions]
    return list(executor.map(score, positions))


def pso_optimize(
    cfg: PsoConfig,
    ctx: ChannelContext,
    trellis: SuperTrellis,
    M: int,
    seed_constellations: Optional[Sequence[Constellation]] = None,
    workers: Optional[int] = None
) -> OptimizedConstellation:
    """
    Minimize the BER bound over constellations of M points.

    Args:
        cfg: Swarm configuration (energy_budget must equal ctx.e_s)
        ctx: Design channel context
        trellis: Supertrellis of the MCS
        M: Modulation order
        seed_constellations: Extra starting points placed in particles 1, 2, ...
        workers: Processes for fitness evaluation (defaults to settings.WORKERS)

    Returns:
        OptimizedConstellation with the best constellation and the fitness trace

    Raises:
        ConfigurationError: On an M/trellis mismatch, an energy budget that
            differs from the context, or too many seed constellations
    """
    if M != trellis.modulation_order:
        raise ConfigurationError(f"M={M} does not match the trellis alphabet {trellis.modulation_order}")
    if not math.isclose(cfg.energy_budget, ctx.e_s, rel_tol=1e-12):
        raise ConfigurationError(
            f"swarm energy budget {cfg.energy_budget} differs from the channel context e_s={ctx.e_s}"
        )

    swarm = init_swarm(cfg, M)
    for offset, seeded in enumerate(seed_constellations or (), start=1):
        if offset >= len(swarm):
            raise ConfigurationError(
                f"{len(seed_constellations)} seed constellations do not fit a swarm of {len(swarm)}"
            )
        if seeded.M != M:
            raise ConfigurationError(f"seed constellation has {seeded.M} points, expected {M}")
        position = _project_position(seeded.to_position(), cfg.energy_budget)
        swarm[offset].position = position
        swarm[offset].best_position = position.copy()

    workers = settings.WORKERS if workers is None else workers
    executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        initial = _evaluate([p.position for p in swarm], ctx, trellis, executor)
        for particle, value in zip(swarm, initial):
            particle.best_fitness = value

        # argmin keeps the lowest index on ties
        leader = int(np.argmin([p.best_fitness for p in swarm]))
        global_position = swarm[leader].best_position.copy()
        global_fitness = swarm[leader].best_fitness
        logger.debug(f"Initial swarm best {global_fitness:.6e} (particle {leader})")

        trace = []
        for iteration in range(cfg.iterations):
            w = cfg.inertia(iteration)
            velocities = []
            candidates = []
            for index, particle in enumerate(swarm):
                rng = stream(cfg.seed, SWARM_UPDATE_STREAM, iteration, index)
                r1 = rng.random(particle.position.size)
                r2 = rng.random(particle.position.size)
                velocity = (
                    w * particle.velocity
                    + r1 * cfg.c1 * (particle.best_position - particle.position)
                    + r2 * cfg.c2 * (global_position - particle.position)
                )
                velocities.append(velocity)
                candidates.append(_project_position(particle.position + velocity, cfg.energy_budget))

            scores = _evaluate(candidates, ctx, trellis, executor)

            for particle, velocity, candidate, score in zip(swarm, velocities, candidates, scores):
                particle.velocity = velocity
                if score <= particle.best_fitness or not cfg.greedy_acceptance:
                    particle.position = candidate
                if score < particle.best_fitness:
                    particle.best_position = candidate.copy()
                    particle.best_fitness = score

            leader = int(np.argmin([p.best_fitness for p in swarm]))
            if swarm[leader].best_fitness < global_fitness:
                global_position = swarm[leader].best_position.copy()
                global_fitness = swarm[leader].best_fitness
            trace.append(global_fitness)

            if (iteration + 1) % 50 == 0:
                logger.debug(f"Iteration {iteration + 1}/{cfg.iterations}: best {global_fitness:.6e}")
    finally:
        if executor is not None:
            executor.shutdown()

    result = OptimizedConstellation(
        constellation=Constellation.from_position(global_position),
        fitness=global_fitness,
        m=ctx.m,
        snr_db=round(ctx.snr_db, 9),
        modulation_order=M,
        generators=trellis.encoder.generators,
        puncture=None if trellis.pattern is None else trellis.pattern.mask,
        trace=tuple(trace),
        provenance=f"pso:{cfg.digest()}:seed={cfg.seed}",
    )
    if result.converged:
        logger.info(
            f"Swarm finished at m={ctx.m}, {result.snr_db:.2f} dB: bound {global_fitness:.6e} "
            f"after {cfg.iterations} iterations"
        )
    else:
        logger.warning(f"Every candidate bound diverged at m={ctx.m}, {result.snr_db:.2f} dB")
    return result
