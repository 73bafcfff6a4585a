"""
Shaper module: particle swarm design of irregular constellations under an
average-energy budget.
"""

from .energy import mean_energy, project_energy, satisfies_budget
from .pso import OptimizedConstellation, Particle, fitness, init_swarm, pso_optimize

__all__ = [
    "mean_energy",
    "project_energy",
    "satisfies_budget",
    "OptimizedConstellation",
    "Particle",
    "fitness",
    "init_swarm",
    "pso_optimize",
]
