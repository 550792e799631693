"""
Single-hidden-layer networks (plain MLP and cascade MLP) over a flat
parameter vector, plus the text model-file format.

Flat layout, for ``I`` inputs and ``H`` hidden units (one output):

    W    I*H   input->hidden, row per hidden unit
    b_h  H     hidden biases
    v    H     hidden->output
    b_o  1     output bias
    u    I     input->output (cascade only)
    b_a  1     auxiliary output bias (cascade only)

Hidden units are logistic, the output unit is linear.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .errors import ConfigError, ModelFileError


class NetKind(str, enum.Enum):
    MLP = "MLP"
    CMLP = "CMLP"


def hidden_count(inputs: int) -> int:
    if inputs < 1:
        raise ConfigError(f"need at least one input, got {inputs}")
    return 2 * inputs + 1


@dataclass(frozen=True)
class NetworkTopology:
    inputs: int
    hidden: int
    outputs: int = 1
    kind: NetKind = NetKind.MLP

    def __post_init__(self):
        object.__setattr__(self, "kind", NetKind(self.kind))
        if self.inputs < 1 or self.hidden < 1:
            raise ConfigError(f"inputs and hidden must be >= 1, got {self.inputs}, {self.hidden}")
        if self.outputs != 1:
            raise ConfigError(f"only single-output networks are supported, got {self.outputs}")

    @classmethod
    def for_inputs(cls, inputs: int, kind: NetKind | str = NetKind.MLP) -> "NetworkTopology":
        """Topology with the hidden layer sized 2*inputs + 1."""
        return cls(inputs, hidden_count(inputs), 1, NetKind(kind))

    @property
    def cascade(self) -> bool:
        return self.kind is NetKind.CMLP

    @property
    def parameter_count(self) -> int:
        n = self.inputs * self.hidden + self.hidden + self.hidden * self.outputs + self.outputs
        if self.cascade:
            n += self.inputs + 1
        return n


def parameter_count(topology: NetworkTopology) -> int:
    return topology.parameter_count


def _check_params(topology: NetworkTopology, params) -> np.ndarray:
    params = np.ascontiguousarray(params, dtype=np.float64)
    if params.ndim != 1 or params.shape[0] != topology.parameter_count:
        raise ConfigError(
            f"parameter vector has length {params.size}, "
            f"topology needs {topology.parameter_count}"
        )
    return params


def forward_batch(topology: NetworkTopology, params, features) -> np.ndarray:
    """Raw outputs for every row of ``features``."""
    params = _check_params(topology, params)
    X = np.ascontiguousarray(features, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != topology.inputs:
        raise ConfigError(f"feature matrix must have {topology.inputs} columns, got shape {X.shape}")
    return kernels.batch_outputs(X, params, topology.inputs, topology.hidden, topology.cascade)


def forward(topology: NetworkTopology, params, features) -> float:
    x = np.asarray(features, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != topology.inputs:
        raise ConfigError(f"expected {topology.inputs} features, got shape {x.shape}")
    return float(forward_batch(topology, params, x[None, :])[0])


def classify(output: float) -> int:
    # targets are encoded 1 (positive) / 2 (negative); ties go to 2
    return 1 if output < 1.5 else 2


def classify_batch(outputs) -> np.ndarray:
    return np.where(np.asarray(outputs) < 1.5, 1, 2)


# -- model files -------------------------------------------------------------

def save_model(path, topology: NetworkTopology, params, meta: dict | None = None) -> None:
    Path(path).write_text(format_model(topology, params, meta), encoding="utf-8")


def format_model(topology: NetworkTopology, params, meta: dict | None = None) -> str:
    params = _check_params(topology, params)
    lines = [
        "[topology]",
        f"kind = {topology.kind.value}",
        f"inputs = {topology.inputs}",
        f"hidden = {topology.hidden}",
        f"outputs = {topology.outputs}",
        "",
        "[meta]",
    ]
    lines += [f"{k} = {v}" for k, v in (meta or {}).items()]
    lines += ["", "[params]"]
    lines += [repr(float(p)) for p in params]
    return "\n".join(lines) + "\n"


def load_model(path) -> tuple[NetworkTopology, np.ndarray, dict]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFileError(f"cannot read model file {path}: {exc}") from exc
    return parse_model(text)


def parse_model(text: str) -> tuple[NetworkTopology, np.ndarray, dict]:
    sections: dict[str, list[str]] = {}
    current = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            sections[current] = []
        elif current is None:
            raise ModelFileError(f"content before first section: {line!r}")
        else:
            sections[current].append(line)
    for name in ("topology", "meta", "params"):
        if name not in sections:
            raise ModelFileError(f"model file lacks a [{name}] section")

    def kv(lines):
        out = {}
        for line in lines:
            key, sep, value = line.partition("=")
            if not sep:
                raise ModelFileError(f"expected key = value, got {line!r}")
            out[key.strip()] = value.strip()
        return out

    topo = kv(sections["topology"])
    try:
        topology = NetworkTopology(
            int(topo["inputs"]), int(topo["hidden"]), int(topo["outputs"]), NetKind(topo["kind"])
        )
        params = np.array([float(v) for v in sections["params"]])
    except (KeyError, ValueError, ConfigError) as exc:
        raise ModelFileError(f"malformed model file: {exc}") from exc
    if params.size != topology.parameter_count:
        raise ModelFileError(
            f"model file holds {params.size} parameters, topology needs {topology.parameter_count}"
        )
    if not np.all(np.isfinite(params)):
        raise ModelFileError("model file contains non-finite parameters")
    return topology, params, kv(sections["meta"])
