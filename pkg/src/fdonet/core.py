"""
Shared optimizer machinery: search space, agents, the seeded run loop and
the benchmark objectives used to validate the optimizers.

Random draws
------------
Every run owns exactly one ``numpy.random.Generator`` (PCG64) seeded from
``OptimizerConfig.rng_seed``. Draws happen in this order:

1. population init: ``rng.random((agent_count, dimension))``, row-major,
   i.e. agent by agent, dimension by dimension;
2. each iteration: whatever the strategy's step documents, always
   agent by agent.

Objective evaluation never touches the generator, so agents may be
evaluated in any order without changing results.
"""
from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass
from typing import Callable, Protocol, Sequence

import numpy as np

from .errors import ConfigError, NumericError

Objective = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class SearchSpace:
    dimension: int
    lower_bound: float
    upper_bound: float

    def __post_init__(self):
        if not isinstance(self.dimension, (int, np.integer)) or self.dimension < 1:
            raise ConfigError(f"search space dimension must be >= 1, got {self.dimension!r}")
        if not self.lower_bound < self.upper_bound:
            raise ConfigError(
                f"lower bound {self.lower_bound} must be below upper bound {self.upper_bound}"
            )

    def clip(self, x: np.ndarray) -> np.ndarray:
        return np.clip(x, self.lower_bound, self.upper_bound)

    def contains(self, x: np.ndarray) -> bool:
        x = np.asarray(x)
        return bool(np.all(x >= self.lower_bound) and np.all(x <= self.upper_bound))


@dataclass
class Agent:
    position: np.ndarray
    fitness: float


@dataclass(frozen=True)
class OptimizerConfig:
    agent_count: int = 10
    max_iterations: int = 50
    rng_seed: int = 0

    def __post_init__(self):
        if self.agent_count < 2:
            raise ConfigError(f"agent_count must be >= 2, got {self.agent_count}")
        if self.max_iterations < 1:
            raise ConfigError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if not 0 <= self.rng_seed < 2**64:
            raise ConfigError(f"rng_seed must be an unsigned 64-bit integer, got {self.rng_seed}")


@dataclass
class RunResult:
    best_position: np.ndarray
    best_fitness: float
    fitness_trace: np.ndarray
    elapsed_seconds: float = 0.0
    evaluations: int = 0
    initial_best_fitness: float = math.nan


class Evaluator:
    """Wraps an objective: checks finiteness and counts calls.

    ``iteration`` is set by the run loop; -1 means population init.
    """

    def __init__(self, objective: Objective):
        self.objective = objective
        self.iteration = -1
        self.count = 0

    def __call__(self, position: np.ndarray, agent_index: int) -> float:
        self.count += 1
        value = float(self.objective(position))
        if not math.isfinite(value):
            where = "initialization" if self.iteration < 0 else f"iteration {self.iteration}"
            raise NumericError(
                f"objective returned {value} for agent {agent_index} at {where}"
            )
        return value


class Strategy(Protocol):
    name: str
    min_agents: int

    def step(
        self,
        population: list[Agent],
        iteration: int,
        max_iterations: int,
        rng,
        space: SearchSpace,
        evaluate: Evaluator,
    ) -> list[Agent]:
        ...


def initialize_population(
    space: SearchSpace,
    config: OptimizerConfig,
    objective: Objective | Evaluator,
    rng=None,
) -> list[Agent]:
    """Uniform random agents inside the box, fitness evaluated.

    When ``rng`` is omitted a fresh generator seeded from the config is used,
    so two calls with the same config give the same population.
    """
    if rng is None:
        rng = np.random.default_rng(config.rng_seed)
    evaluate = objective if isinstance(objective, Evaluator) else Evaluator(objective)
    u = rng.random((config.agent_count, space.dimension))
    positions = space.lower_bound + (space.upper_bound - space.lower_bound) * u
    positions = space.clip(positions)
    return [Agent(p.copy(), evaluate(p, i)) for i, p in enumerate(positions)]


def best_index(population: Sequence[Agent]) -> int:
    # first minimum wins ties
    return int(np.argmin([a.fitness for a in population]))


def run(
    strategy: Strategy,
    space: SearchSpace,
    config: OptimizerConfig,
    objective: Objective,
    callback: Callable[[int, list[Agent]], None] | None = None,
) -> RunResult:
    """Run ``strategy`` for exactly ``config.max_iterations`` iterations.

    ``callback(t, population)`` is called after every iteration; tests use it
    to check per-iteration invariants.
    """
    if config.agent_count < strategy.min_agents:
        raise ConfigError(
            f"{strategy.name} needs at least {strategy.min_agents} agents, "
            f"got {config.agent_count}"
        )
    rng = np.random.default_rng(config.rng_seed)
    evaluate = Evaluator(objective)
    population = initialize_population(space, config, evaluate, rng)

    i = best_index(population)
    best = Agent(population[i].position.copy(), population[i].fitness)
    initial_best = best.fitness
    trace = np.empty(config.max_iterations)

    start = time.perf_counter()
    for t in range(config.max_iterations):
        evaluate.iteration = t
        population = strategy.step(population, t, config.max_iterations, rng, space, evaluate)
        i = best_index(population)
        if population[i].fitness < best.fitness:
            best = Agent(population[i].position.copy(), population[i].fitness)
        trace[t] = best.fitness
        if callback is not None:
            callback(t, population)
    elapsed = time.perf_counter() - start

    return RunResult(
        best_position=best.position,
        best_fitness=best.fitness,
        fitness_trace=trace,
        elapsed_seconds=elapsed,
        evaluations=evaluate.count,
        initial_best_fitness=initial_best,
    )


def sphere(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.sum(x * x))


def rastrigin(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(10.0 * x.size + np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x)))


BENCHMARKS: dict[str, Objective] = {"sphere": sphere, "rastrigin": rastrigin}


def write_trace_csv(path, trace: Sequence[float]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(format_trace_csv(trace))


def format_trace_csv(trace: Sequence[float]) -> str:
    lines = ["iteration,best_fitness"]
    lines += [f"{t},{float(v)!r}" for t, v in enumerate(trace)]
    return "\n".join(lines) + "\n"


def read_trace_csv(path) -> np.ndarray:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    return np.array([float(r["best_fitness"]) for r in rows])
