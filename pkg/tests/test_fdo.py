import numpy as np
import pytest
from conftest import ScriptedRng, oracle_fdo_step

from fdonet.core import Agent, Evaluator, OptimizerConfig, SearchSpace, initialize_population, rastrigin, run, sphere
from fdonet.errors import ConfigError, NumericError
from fdonet.fdo import FdoConfig, FitnessDependent, fdo_step, fitness_weight, pace


def test_fitness_weight_examples():
    assert fitness_weight(1.0, 0.5, 0) == 0.5
    for c in (0.1, 3.0, 1e6):
        assert fitness_weight(c, c, 0) == 1.0
    assert fitness_weight(0.8, 0.2, 1) == pytest.approx(-0.75, abs=1e-15)


def test_fitness_weight_contract():
    with pytest.raises(NumericError):
        fitness_weight(0.0, 0.0, 0)
    with pytest.raises(NumericError):
        fitness_weight(-1.0, 0.5, 0)


def test_weight_factor_values():
    FdoConfig(0)
    FdoConfig(1)
    with pytest.raises(ConfigError):
        FdoConfig(0.5)


def test_bee_at_global_best_random_walks():
    bee = Agent(np.array([2.0, -4.0]), 20.0)
    rng = ScriptedRng([0.75, 0.25])  # r = 0.5, -0.5
    step = pace(bee, bee, 0.0, rng)
    np.testing.assert_array_equal(step, [1.0, 2.0])
    assert rng.used == 2


def test_directed_pace_example():
    bee = Agent(np.array([2.0, 2.0]), 8.0)
    best = Agent(np.array([0.0, 0.0]), 4.0)  # fw = 0.5
    np.testing.assert_array_equal(pace(bee, best, 0.0, ScriptedRng([0.5])), [1.0, 1.0])
    np.testing.assert_array_equal(pace(bee, best, 0.0, ScriptedRng([0.25])), [-1.0, -1.0])


def test_directed_candidate_rejected_when_worse():
    pop = [Agent(np.array([0.0, 0.0]), 0.0), Agent(np.array([2.0, 2.0]), 8.0)]
    best = pop[0]
    # bee 0 has zero fitness: random walk of a zero vector stays at 0 (2 draws);
    # bee 1: fw = 0/8 = 0 -> random walk too (2 draws)
    rng = ScriptedRng([0.9, 0.1, 0.5, 0.5])
    new, gbest = fdo_step(pop, best, FdoConfig(), rng, SearchSpace(2, -5, 5), Evaluator(sphere))
    assert rng.used == 4
    np.testing.assert_array_equal(new[1].position, [2.0, 2.0])
    assert gbest is best


def test_directed_move_greedy():
    f = sphere
    pop = [Agent(np.array([0.5, 0.5]), 0.5), Agent(np.array([2.0, 2.0]), 8.0)]
    # first bee is the global best (fw=1, 2 walk draws); second has fw=1/16,
    # r >= 0 pushes it to (2,2) + (1.5,1.5)/16, which is worse and rejected
    rng = ScriptedRng([0.5, 0.5, 0.9])
    new, gbest = fdo_step(pop, pop[0], FdoConfig(), rng, SearchSpace(2, -5, 5), Evaluator(f))
    np.testing.assert_array_equal(new[1].position, [2.0, 2.0])
    # r < 0 pulls it toward the best: accepted
    rng = ScriptedRng([0.5, 0.5, 0.1])
    new, gbest = fdo_step(pop, pop[0], FdoConfig(), rng, SearchSpace(2, -5, 5), Evaluator(f))
    np.testing.assert_allclose(new[1].position, [2.0 - 1.5 / 16, 2.0 - 1.5 / 16])
    assert new[1].fitness < 8.0


def test_negative_fw_routes_to_random_walk():
    bee = Agent(np.array([3.0]), 9.0)
    best = Agent(np.array([1.0]), 1.0)  # fw = 1/9 - 1 < 0 with wf = 1
    rng = ScriptedRng([1.0])
    np.testing.assert_array_equal(pace(bee, best, 1.0, rng), [3.0])


def test_three_steps_match_oracle():
    lo, hi = -4.0, 4.0
    f = lambda x: float(np.sum(np.asarray(x) ** 2))
    positions = [[1.5], [-3.0]]
    fitness = [f(p) for p in positions]
    stream = np.random.default_rng(2024).random(12).tolist()

    pop = [Agent(np.array(p), fv) for p, fv in zip(positions, fitness)]
    rng = ScriptedRng(stream)
    space = SearchSpace(1, lo, hi)
    ox, of, offset = positions, fitness, 0
    for _ in range(3):
        best = pop[int(np.argmin([b.fitness for b in pop]))]
        pop, _ = fdo_step(pop, best, FdoConfig(), rng, space, Evaluator(f))
        ox, of, used = oracle_fdo_step(ox, of, f, stream[offset:], lo, hi)
        offset += used
        assert rng.used == offset
        for bee, x, fx in zip(pop, ox, of):
            np.testing.assert_allclose(bee.position, x, rtol=0, atol=1e-12)
            assert bee.fitness == pytest.approx(fx, abs=1e-12)


def test_global_best_is_min_of_previous_and_accepted():
    rng = np.random.default_rng(5)
    space = SearchSpace(3, -5, 5)
    pop = initialize_population(space, OptimizerConfig(6, 1, 5), sphere)
    best = min(pop, key=lambda b: b.fitness)
    for _ in range(10):
        new, new_best = fdo_step(pop, best, FdoConfig(), rng, space, Evaluator(sphere))
        accepted = [n.fitness for n, o in zip(new, pop) if n is not o]
        assert new_best.fitness == min([best.fitness] + accepted)
        pop, best = new, new_best


@pytest.mark.parametrize("objective", [sphere, rastrigin])
@pytest.mark.parametrize("seed", range(5))
def test_per_bee_fitness_never_increases(objective, seed):
    history = []
    space = SearchSpace(10, -5.12, 5.12)

    def record(t, population):
        assert all(space.contains(b.position) for b in population)
        history.append([b.fitness for b in population])

    run(FitnessDependent(), space, OptimizerConfig(10, 50, seed), objective, callback=record)
    h = np.array(history)
    assert np.all(np.diff(h, axis=0) <= 0)


def test_zero_fitness_bee_stays_put():
    # perfect fit: the random walk is tried, greedy acceptance keeps the bee
    pop = [Agent(np.array([0.0, 1.0]), 0.0), Agent(np.array([1.0, 1.0]), 1.0)]
    f = lambda x: float((x[0]) ** 2)
    new, best = fdo_step(pop, pop[0], FdoConfig(), np.random.default_rng(0), SearchSpace(2, -3, 3), Evaluator(f))
    assert new[0] is pop[0]
    assert best.fitness == 0.0
