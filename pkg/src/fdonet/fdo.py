"""
Fitness Dependent Optimizer (scout-bee search) with greedy acceptance.

Each bee, in index order, draws from the run generator either

* one ``rng.random()`` scalar (directed move, 0 < fw < 1), or
* ``rng.random(dim)`` (random walk: fw outside (0, 1), or zero fitness),

and maps a draw u to r = 2u - 1 in [-1, 1). The global best is held fixed
for the whole step and refreshed at the end.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Agent, Evaluator, SearchSpace, best_index
from .errors import ConfigError, NumericError

ScoutBee = Agent


@dataclass(frozen=True)
class FdoConfig:
    weight_factor: float = 0.0

    def __post_init__(self):
        if self.weight_factor not in (0, 1):
            raise ConfigError(f"weight factor must be 0 or 1, got {self.weight_factor}")


def fitness_weight(current_fitness: float, global_best_fitness: float, wf: float) -> float:
    if current_fitness < 0 or global_best_fitness < 0:
        raise NumericError(
            f"fitness weight needs non-negative fitness values, got "
            f"current={current_fitness}, best={global_best_fitness}"
        )
    if current_fitness == 0:
        raise NumericError("fitness weight is undefined for zero current fitness")
    return abs(global_best_fitness / current_fitness) - wf


def pace(bee: ScoutBee, global_best: ScoutBee, wf: float, rng) -> np.ndarray:
    x = bee.position
    if bee.fitness != 0:
        fw = fitness_weight(bee.fitness, global_best.fitness, wf)
        if 0.0 < fw < 1.0:
            r = 2.0 * float(rng.random()) - 1.0
            step = (x - global_best.position) * fw
            return -step if r < 0 else step
    r = 2.0 * np.asarray(rng.random(x.shape[0])) - 1.0
    return x * r


def fdo_step(
    population: list[ScoutBee],
    global_best: ScoutBee,
    config: FdoConfig,
    rng,
    space: SearchSpace,
    evaluate: Evaluator,
) -> tuple[list[ScoutBee], ScoutBee]:
    new_population = []
    best = global_best
    for i, bee in enumerate(population):
        candidate = space.clip(bee.position + pace(bee, global_best, config.weight_factor, rng))
        f = evaluate(candidate, i)
        if f < bee.fitness:
            bee = ScoutBee(candidate, f)
            if f < best.fitness:
                best = bee
        new_population.append(bee)
    return new_population, best


class FitnessDependent:
    name = "FDO"
    min_agents = 2

    def __init__(self, config: FdoConfig | None = None):
        self.config = config or FdoConfig()

    def step(self, population, iteration, max_iterations, rng, space, evaluate):
        # greedy acceptance keeps every bee at its own best, so the population
        # minimum is the global best seen so far
        global_best = population[best_index(population)]
        population, _ = fdo_step(population, global_best, self.config, rng, space, evaluate)
        return population
