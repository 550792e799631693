"""
Command-line front end.

    fdonet train    --model FDO_MLP --dataset d1.csv --schema d1.ini
    fdonet evaluate --model-file out/model.txt --dataset d1.csv --schema d1.ini
    fdonet bench    gwo sphere --dim 10

The output directory defaults to ``$FDONET_OUTPUT_DIR`` or ``./fdonet-out``.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .core import BENCHMARKS, OptimizerConfig, SearchSpace, format_trace_csv, run
from .data import DatasetSchema, export_encoded_csv, load_csv, split_80_20
from .errors import ConfigError, FdonetError, ModelFileError
from .evaluation import evaluate, render_metrics_csv, render_report, render_roc_csv
from .fdo import FdoConfig
from .network import NetworkTopology, format_model, load_model
from .training import ModelKind, TrainingProblem, make_strategy, train

OUTPUT_ENV = "FDONET_OUTPUT_DIR"

EXIT_CODES = {"config": 2, "schema": 2, "io": 3, "numeric": 4}

BENCH_BOUNDS = {"sphere": (-100.0, 100.0), "rastrigin": (-5.12, 5.12)}


def default_output_dir() -> Path:
    return Path(os.environ.get(OUTPUT_ENV) or "fdonet-out")


@dataclass(frozen=True)
class ExperimentConfig:
    dataset_path: Path
    schema_path: Path
    model_kind: ModelKind
    agents: int = 10
    iterations: int = 50
    weight_factor: float = 0.0
    seed: int = 0
    split_seed: int = 0
    output_directory: Path | None = None


def _manifest(items: dict) -> str:
    return "".join(f"{k} = {v}\n" for k, v in items.items())


def _write_artifacts(outdir: Path, files: dict[str, str]) -> dict[str, Path]:
    """Write every file or none: anything already written is removed on failure."""
    outdir.mkdir(parents=True, exist_ok=True)
    written: dict[str, Path] = {}
    try:
        for name, text in files.items():
            path = outdir / name
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
            written[name] = path
    except BaseException:
        for path in written.values():
            path.unlink(missing_ok=True)
        raise
    return written


def _dataset_name(path: Path) -> str:
    return Path(path).name


def cmd_train(config: ExperimentConfig) -> dict[str, Path]:
    kind = config.model_kind
    schema = DatasetSchema.from_file(config.schema_path)
    dataset = load_csv(config.dataset_path, schema)
    split = split_80_20(dataset, config.split_seed)
    X_train, y_train = dataset.subset(split.train_indices)
    X_test, y_test = dataset.subset(split.test_indices)

    topology = NetworkTopology.for_inputs(len(schema.feature_columns), kind.net_kind)
    problem = TrainingProblem(topology, X_train, y_train)
    opt_config = OptimizerConfig(config.agents, config.iterations, config.seed)
    fdo_config = FdoConfig(config.weight_factor)
    strategy = make_strategy(kind.optimizer, fdo_config)
    if config.agents < strategy.min_agents:
        raise ConfigError(
            f"{kind.optimizer} needs at least {strategy.min_agents} agents, got {config.agents}"
        )
    params, result = train(kind, problem, opt_config, fdo_config)

    reports = {
        "training": evaluate(topology, params, X_train, y_train),
        "testing": evaluate(topology, params, X_test, y_test),
    }
    meta = {
        "model": kind.value,
        "optimizer": kind.optimizer,
        "seed": config.seed,
        "split_seed": config.split_seed,
        "agents": config.agents,
        "iterations": config.iterations,
        "weight_factor": config.weight_factor,
        "schema_fingerprint": schema.fingerprint(),
    }
    header = {
        "samples": len(dataset),
        "train_samples": len(split.train_indices),
        "test_samples": len(split.test_indices),
        "dimension": topology.parameter_count,
        "agents": config.agents,
        "iterations": config.iterations,
        "best_training_mse": f"{result.best_fitness:.10g}",
    }
    files = {
        "model.txt": format_model(topology, params, meta),
        "trace.csv": format_trace_csv(result.fitness_trace),
        "report.txt": render_report(kind.value, _dataset_name(config.dataset_path), reports, header),
        "metrics.csv": render_metrics_csv(kind.value, reports),
    }
    if reports["testing"].roc is not None:
        files["roc.csv"] = render_roc_csv(reports["testing"].roc)
    manifest = {
        "command": "train",
        "model": kind.value,
        "optimizer": kind.optimizer,
        "network": topology.kind.value,
        "dataset_path": config.dataset_path,
        "schema_path": config.schema_path,
        "schema_fingerprint": schema.fingerprint(),
        "inputs": topology.inputs,
        "hidden": topology.hidden,
        "dimension": topology.parameter_count,
        "agents": config.agents,
        "iterations": config.iterations,
        "weight_factor": config.weight_factor,
        "seed": config.seed,
        "split_seed": config.split_seed,
        "weight_bounds": f"{problem.space.lower_bound},{problem.space.upper_bound}",
        "rows_read": dataset.rows_read,
        "dropped_invalid": dataset.dropped_invalid,
        "dropped_duplicates": dataset.dropped_duplicates,
        "samples": len(dataset),
        "train_samples": len(split.train_indices),
        "test_samples": len(split.test_indices),
        "objective_evaluations": result.evaluations,
        "best_training_mse": repr(result.best_fitness),
        "training_rate_pct": f"{reports['training'].metrics.correct_rate_percent:.4f}",
        "testing_rate_pct": f"{reports['testing'].metrics.correct_rate_percent:.4f}",
        "kernel_backend": kernels.BACKEND,
        "elapsed_seconds": f"{result.elapsed_seconds:.3f}",
    }
    files["manifest.txt"] = _manifest(manifest)
    outdir = Path(config.output_directory or default_output_dir())
    return _write_artifacts(outdir, files)


def cmd_evaluate(
    model_path, dataset_path, schema_path, split_seed: int | None = None, output_directory=None
) -> tuple[dict[str, Path], str]:
    topology, params, meta = load_model(model_path)
    schema = DatasetSchema.from_file(schema_path)
    recorded = meta.get("schema_fingerprint")
    if recorded != schema.fingerprint():
        raise ConfigError(
            f"schema drift: model was trained with schema {recorded}, "
            f"{schema_path} has fingerprint {schema.fingerprint()}"
        )
    if len(schema.feature_columns) != topology.inputs:
        raise ConfigError(
            f"schema has {len(schema.feature_columns)} features, model expects {topology.inputs}"
        )
    trained_split = int(meta["split_seed"]) if "split_seed" in meta else None
    if split_seed is None:
        if trained_split is None:
            raise ModelFileError("model file records no split_seed; pass --split-seed")
        split_seed = trained_split
    dataset = load_csv(dataset_path, schema)
    split = split_80_20(dataset, split_seed)
    X_test, y_test = dataset.subset(split.test_indices)
    model = meta.get("model", topology.kind.value)
    reports = {"testing": evaluate(topology, params, X_test, y_test)}
    report = render_report(model, _dataset_name(dataset_path), reports)
    files = {
        "evaluation_report.txt": report,
        "evaluation_metrics.csv": render_metrics_csv(model, reports),
    }
    if reports["testing"].roc is not None:
        files["evaluation_roc.csv"] = render_roc_csv(reports["testing"].roc)
    files["evaluation_manifest.txt"] = _manifest({
        "command": "evaluate",
        "model_path": model_path,
        "model": model,
        "dataset_path": dataset_path,
        "schema_path": schema_path,
        "schema_fingerprint": schema.fingerprint(),
        "split_seed": split_seed,
        "training_split_seed": "" if trained_split is None else trained_split,
        "experiment": "same-split" if split_seed == trained_split else "different-split",
        "samples": len(dataset),
        "test_samples": len(split.test_indices),
        "testing_rate_pct": f"{reports['testing'].metrics.correct_rate_percent:.4f}",
        "kernel_backend": kernels.BACKEND,
    })
    outdir = Path(output_directory or default_output_dir())
    return _write_artifacts(outdir, files), report


def cmd_bench(
    optimizer_name: str,
    function_name: str,
    dim: int = 10,
    agents: int = 10,
    iterations: int = 50,
    seed: int = 0,
    output_path=None,
) -> tuple[Path, np.ndarray]:
    fn = function_name.strip().lower()
    if fn not in BENCHMARKS:
        raise ConfigError(f"unknown function {function_name!r}; choose sphere or rastrigin")
    strategy = make_strategy(optimizer_name)
    lo, hi = BENCH_BOUNDS[fn]
    config = OptimizerConfig(agents, iterations, seed)
    result = run(strategy, SearchSpace(dim, lo, hi), config, BENCHMARKS[fn])
    if output_path is None:
        output_path = default_output_dir() / f"bench_{strategy.name.lower()}_{fn}.csv"
    output_path = Path(output_path)
    _write_artifacts(output_path.parent, {output_path.name: format_trace_csv(result.fitness_trace)})
    return output_path, result.fitness_trace


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdonet", description="Train and evaluate swarm-optimized networks on tabular CSV data."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("train", help="train one model kind on a CSV dataset")
    t.add_argument("--model", required=True, help="GWO_MLP, GWO_CMLP, MGWO_MLP, FDO_MLP or FDO_CMLP")
    t.add_argument("--dataset", required=True, type=Path)
    t.add_argument("--schema", required=True, type=Path)
    t.add_argument("--agents", type=int, default=10)
    t.add_argument("--iterations", type=int, default=50)
    t.add_argument("--weight-factor", type=float, default=0.0)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--split-seed", type=int, default=0)
    t.add_argument("--output", type=Path, default=None)
    t.add_argument("--export-encoded", type=Path, default=None,
                   help="also write the cleaned, encoded dataset to this CSV")

    e = sub.add_parser("evaluate", help="evaluate a saved model on the test partition")
    e.add_argument("--model-file", required=True, type=Path)
    e.add_argument("--dataset", required=True, type=Path)
    e.add_argument("--schema", required=True, type=Path)
    e.add_argument("--split-seed", type=int, default=None,
                   help="defaults to the split seed recorded in the model file")
    e.add_argument("--output", type=Path, default=None)

    b = sub.add_parser("bench", help="run an optimizer on a benchmark function")
    b.add_argument("optimizer", help="gwo, mgwo or fdo")
    b.add_argument("function", help="sphere or rastrigin")
    b.add_argument("--dim", type=int, default=10)
    b.add_argument("--agents", type=int, default=10)
    b.add_argument("--iterations", type=int, default=50)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", type=Path, default=None, help="trace CSV path")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "train":
            config = ExperimentConfig(
                dataset_path=args.dataset,
                schema_path=args.schema,
                model_kind=ModelKind.parse(args.model),
                agents=args.agents,
                iterations=args.iterations,
                weight_factor=args.weight_factor,
                seed=args.seed,
                split_seed=args.split_seed,
                output_directory=args.output,
            )
            written = cmd_train(config)
            if args.export_encoded is not None:
                schema = DatasetSchema.from_file(args.schema)
                export_encoded_csv(args.export_encoded, load_csv(args.dataset, schema))
            print(written["report.txt"].read_text(encoding="utf-8"), end="")
            print(f"artifacts written to {written['model.txt'].parent}")
        elif args.command == "evaluate":
            written, report = cmd_evaluate(
                args.model_file, args.dataset, args.schema, args.split_seed, args.output
            )
            print(report, end="")
        else:
            path, trace = cmd_bench(
                args.optimizer, args.function, args.dim, args.agents,
                args.iterations, args.seed, args.out,
            )
            print(f"best fitness {trace[-1]:.6g} after {trace.size} iterations; trace in {path}")
    except FdonetError as exc:
        print(f"fdonet: {exc.kind} error: {exc}", file=sys.stderr)
        return EXIT_CODES.get(exc.kind, 1)
    except OSError as exc:
        print(f"fdonet: io error: {exc}", file=sys.stderr)
        return EXIT_CODES["io"]
    return 0


if __name__ == "__main__":
    sys.exit(main())
