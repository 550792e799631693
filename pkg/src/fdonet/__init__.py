"""Derivative-free training of small feed-forward and cascade networks with
grey-wolf and fitness-dependent swarm optimizers."""
from .core import (
    Agent,
    OptimizerConfig,
    RunResult,
    SearchSpace,
    initialize_population,
    rastrigin,
    run,
    sphere,
)
from .data import Dataset, DatasetSchema, Split, load_csv, split_80_20
from .errors import ConfigError, FdonetError, ModelFileError, NumericError, SchemaError
from .evaluation import ConfusionMatrix, MetricSet, RocCurve, confusion, metrics, roc
from .fdo import FdoConfig, FitnessDependent, fdo_step, fitness_weight
from .kernels import BACKEND as KERNEL_BACKEND
from .network import NetKind, NetworkTopology, classify, forward, hidden_count, parameter_count
from .training import ModelKind, TrainingProblem, average_mse, sample_mse, train
from .wolves import GreyWolf, ModifiedGreyWolf, WolfLeaders, extract_leaders, gwo_step, mgwo_step

__version__ = "0.1.0"
