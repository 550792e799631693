"""
Grey Wolf Optimizer and the four-leader modified variant.

Draw order per step: one ``rng.random((n_agents, n_leaders, 2, dim))``
call. For agent i and leader k, ``[i, k, 0]`` is the r1 vector that builds
A = 2a*r1 - a and ``[i, k, 1]`` the r2 vector that builds C = 2*r2. In
C order this means agent by agent, leader by leader, r1 before r2,
dimension by dimension.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Agent, Evaluator, SearchSpace
from .errors import ConfigError


@dataclass(frozen=True)
class WolfLeaders:
    alpha: Agent
    beta: Agent
    delta: Agent
    gamma: Agent | None = None

    def as_list(self) -> list[Agent]:
        out = [self.alpha, self.beta, self.delta]
        if self.gamma is not None:
            out.append(self.gamma)
        return out

    def positions(self) -> np.ndarray:
        return np.stack([w.position for w in self.as_list()])


def extract_leaders(population: list[Agent], count: int = 3) -> WolfLeaders:
    """Best ``count`` agents by fitness; ties go to the lower index."""
    if count not in (3, 4):
        raise ConfigError(f"leader count must be 3 or 4, got {count}")
    if len(population) < count:
        raise ConfigError(f"need at least {count} agents to pick leaders, got {len(population)}")
    order = np.argsort([a.fitness for a in population], kind="stable")[:count]
    picked = [population[i] for i in order]
    return WolfLeaders(*picked)


def coefficient_a(iteration: int, max_iterations: int) -> float:
    """Linear decay from 2 at the first iteration towards 0."""
    return 2.0 * (1.0 - iteration / max_iterations)


def _coefficients(rng, n: int, leaders: int, dim: int, a: float):
    u = rng.random((n, leaders, 2, dim))
    A = 2.0 * a * u[:, :, 0, :] - a
    C = 2.0 * u[:, :, 1, :]
    return A, C


def _finish(positions: np.ndarray, space: SearchSpace, evaluate: Evaluator) -> list[Agent]:
    positions = space.clip(positions)
    return [Agent(p.copy(), evaluate(p, i)) for i, p in enumerate(positions)]


def gwo_step(
    population: list[Agent],
    leaders: WolfLeaders,
    a: float,
    rng,
    space: SearchSpace,
    evaluate: Evaluator,
) -> list[Agent]:
    """Move every wolf (leaders included) to the mean of its three
    leader-guided estimates, then clamp and re-evaluate."""
    X = np.stack([w.position for w in population])
    L = np.stack([leaders.alpha.position, leaders.beta.position, leaders.delta.position])
    A, C = _coefficients(rng, X.shape[0], 3, X.shape[1], a)
    D = np.abs(C * L[None, :, :] - X[:, None, :])
    estimates = L[None, :, :] - A * D
    new = (estimates[:, 0] + estimates[:, 1] + estimates[:, 2]) / 3.0
    return _finish(new, space, evaluate)


def mgwo_step(
    population: list[Agent],
    leaders: WolfLeaders,
    a: float,
    rng,
    space: SearchSpace,
    evaluate: Evaluator,
) -> list[Agent]:
    """Four-leader update: the four leader distances are averaged first and
    that single distance drives all four estimates."""
    if len(population) < 4:
        raise ConfigError(f"MGWO needs at least 4 agents, got {len(population)}")
    if leaders.gamma is None:
        raise ConfigError("MGWO step requires a gamma leader")
    X = np.stack([w.position for w in population])
    L = leaders.positions()
    A, C = _coefficients(rng, X.shape[0], 4, X.shape[1], a)
    D = np.abs(C * L[None, :, :] - X[:, None, :])
    d_avg = (D[:, 0] + D[:, 1] + D[:, 2] + D[:, 3]) / 4.0
    estimates = L[None, :, :] - A * d_avg[:, None, :]
    new = (estimates[:, 0] + estimates[:, 1] + estimates[:, 2] + estimates[:, 3]) / 4.0
    return _finish(new, space, evaluate)


class GreyWolf:
    name = "GWO"
    min_agents = 3

    def step(self, population, iteration, max_iterations, rng, space, evaluate):
        leaders = extract_leaders(population, 3)
        a = coefficient_a(iteration, max_iterations)
        return gwo_step(population, leaders, a, rng, space, evaluate)


class ModifiedGreyWolf:
    name = "MGWO"
    min_agents = 4

    def step(self, population, iteration, max_iterations, rng, space, evaluate):
        leaders = extract_leaders(population, 4)
        a = coefficient_a(iteration, max_iterations)
        return mgwo_step(population, leaders, a, rng, space, evaluate)
