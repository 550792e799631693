"""Average-MSE objective and the five optimizer/topology model kinds."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import OptimizerConfig, RunResult, SearchSpace, run
from .errors import ConfigError
from .fdo import FdoConfig, FitnessDependent
from .network import NetKind, NetworkTopology, forward
from .wolves import GreyWolf, ModifiedGreyWolf

WEIGHT_BOUND = 10.0


class ModelKind(str, enum.Enum):
    GWO_MLP = "GWO_MLP"
    GWO_CMLP = "GWO_CMLP"
    MGWO_MLP = "MGWO_MLP"
    FDO_MLP = "FDO_MLP"
    FDO_CMLP = "FDO_CMLP"

    @property
    def optimizer(self) -> str:
        return self.value.split("_")[0]

    @property
    def net_kind(self) -> NetKind:
        return NetKind(self.value.split("_")[1])

    @classmethod
    def parse(cls, name: str) -> "ModelKind":
        try:
            return cls(name.strip().upper())
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ConfigError(f"unknown model {name!r}; choose one of {choices}") from None


def make_strategy(optimizer: str, fdo_config: FdoConfig | None = None):
    name = optimizer.strip().upper()
    if name == "GWO":
        return GreyWolf()
    if name == "MGWO":
        return ModifiedGreyWolf()
    if name == "FDO":
        return FitnessDependent(fdo_config)
    raise ConfigError(f"unknown optimizer {optimizer!r}; choose GWO, MGWO or FDO")


@dataclass(frozen=True)
class TrainingProblem:
    topology: NetworkTopology
    train_features: np.ndarray
    train_targets: np.ndarray

    def __post_init__(self):
        X = np.ascontiguousarray(self.train_features, dtype=np.float64)
        y = np.ascontiguousarray(self.train_targets, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.topology.inputs:
            raise ConfigError(
                f"training matrix must have {self.topology.inputs} columns, got shape {X.shape}"
            )
        if X.shape[0] == 0:
            raise ConfigError("training set is empty")
        if y.shape != (X.shape[0],):
            raise ConfigError(f"expected {X.shape[0]} targets, got shape {y.shape}")
        if not np.all((y == 1) | (y == 2)):
            raise ConfigError("training targets must be encoded as 1 or 2")
        object.__setattr__(self, "train_features", X)
        object.__setattr__(self, "train_targets", y)

    @property
    def space(self) -> SearchSpace:
        return SearchSpace(self.topology.parameter_count, -WEIGHT_BOUND, WEIGHT_BOUND)

    def objective(self, params) -> float:
        return average_mse(self, params)


def sample_mse(topology: NetworkTopology, params, features_row, target: float) -> float:
    e = float(target) - forward(topology, params, features_row)
    return e * e


def average_mse(problem: TrainingProblem, params) -> float:
    params = np.ascontiguousarray(params, dtype=np.float64)
    if params.shape != (problem.topology.parameter_count,):
        raise ConfigError(
            f"parameter vector has length {params.size}, "
            f"topology needs {problem.topology.parameter_count}"
        )
    t = problem.topology
    return float(
        kernels.average_mse(
            problem.train_features, problem.train_targets, params, t.inputs, t.hidden, t.cascade
        )
    )


def train(
    kind: ModelKind | str,
    problem: TrainingProblem,
    config: OptimizerConfig | None = None,
    fdo_config: FdoConfig | None = None,
) -> tuple[np.ndarray, RunResult]:
    kind = ModelKind.parse(kind) if isinstance(kind, str) else kind
    if problem.topology.kind is not kind.net_kind:
        raise ConfigError(
            f"{kind.value} needs a {kind.net_kind.value} topology, got {problem.topology.kind.value}"
        )
    config = config or OptimizerConfig()
    strategy = make_strategy(kind.optimizer, fdo_config)
    result = run(strategy, problem.space, config, problem.objective)
    return result.best_position.copy(), result
