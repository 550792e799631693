"""Confusion-matrix metrics, ROC sweep and report rendering.

The positive class is encoded 1, the negative class 2. A lower raw network
output therefore means "more positive".
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, NumericError
from .network import NetworkTopology, classify_batch, forward_batch


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fn: int
    tn: int
    fp: int

    @property
    def positives(self) -> int:
        return self.tp + self.fn

    @property
    def negatives(self) -> int:
        return self.tn + self.fp

    @property
    def total(self) -> int:
        return self.positives + self.negatives


@dataclass(frozen=True)
class MetricSet:
    sensitivity: float
    specificity: float
    ppv: float
    npv: float
    accuracy: float
    mse: float = math.nan
    degenerate: tuple[str, ...] = ()

    @property
    def correct_rate_percent(self) -> float:
        return 100.0 * self.accuracy


@dataclass(frozen=True)
class RocCurve:
    fpr: np.ndarray
    tpr: np.ndarray
    thresholds: np.ndarray
    auc: float

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.fpr.tolist(), self.tpr.tolist()))


def _labels(values, name: str) -> np.ndarray:
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise ConfigError(f"{name} must be a 1-D vector")
    if not np.all((arr == 1) | (arr == 2)):
        raise ConfigError(f"{name} must contain only the labels 1 and 2")
    return arr


def confusion(true_labels, predicted) -> ConfusionMatrix:
    t = _labels(true_labels, "true labels")
    p = _labels(predicted, "predicted labels")
    if t.shape != p.shape:
        raise ConfigError(f"label vectors differ in length: {t.size} vs {p.size}")
    if t.size == 0:
        raise ConfigError("cannot build a confusion matrix from zero samples")
    return ConfusionMatrix(
        tp=int(np.sum((t == 1) & (p == 1))),
        fn=int(np.sum((t == 1) & (p == 2))),
        tn=int(np.sum((t == 2) & (p == 2))),
        fp=int(np.sum((t == 2) & (p == 1))),
    )


def metrics(cm: ConfusionMatrix, mse: float = math.nan) -> MetricSet:
    """Rates from a confusion matrix.

    A ratio whose denominator is zero (an empty class or an empty prediction
    bucket) is reported as 1.0 and its name is listed in ``degenerate``.
    """
    if cm.total <= 0:
        raise ConfigError("confusion matrix is empty")
    degenerate = []

    def ratio(name, num, den):
        if den == 0:
            degenerate.append(name)
            return 1.0
        return num / den

    return MetricSet(
        sensitivity=ratio("sensitivity", cm.tp, cm.tp + cm.fn),
        specificity=ratio("specificity", cm.tn, cm.tn + cm.fp),
        ppv=ratio("ppv", cm.tp, cm.tp + cm.fp),
        npv=ratio("npv", cm.tn, cm.tn + cm.fn),
        accuracy=(cm.tp + cm.tn) / cm.total,
        mse=mse,
        degenerate=tuple(degenerate),
    )


def roc(true_labels, raw_outputs) -> RocCurve:
    """Sweep thresholds over the sorted unique outputs.

    At threshold ``c`` a sample is called positive when its output is below
    ``c``. The smallest unique output yields (0, 0); a final +inf threshold
    yields (1, 1).
    """
    t = _labels(true_labels, "true labels")
    s = np.asarray(raw_outputs, dtype=np.float64)
    if s.shape != t.shape:
        raise ConfigError(f"labels and outputs differ in length: {t.size} vs {s.size}")
    P = int(np.sum(t == 1))
    N = int(np.sum(t == 2))
    if P == 0 or N == 0:
        missing = "positive (1)" if P == 0 else "negative (2)"
        raise NumericError(f"ROC curve is degenerate: no {missing} samples")
    if not np.all(np.isfinite(s)):
        raise NumericError("ROC needs finite outputs")

    thresholds = np.append(np.unique(s), np.inf)
    pos = np.sort(s[t == 1])
    neg = np.sort(s[t == 2])
    tpr = np.searchsorted(pos, thresholds, side="left") / P
    fpr = np.searchsorted(neg, thresholds, side="left") / N
    auc = float(np.sum(np.diff(fpr) * (tpr[1:] + tpr[:-1]) / 2.0))
    return RocCurve(fpr=fpr, tpr=tpr, thresholds=thresholds, auc=auc)


@dataclass
class EvaluationReport:
    confusion: ConfusionMatrix
    metrics: MetricSet
    mse: float
    roc: RocCurve | None
    elapsed_seconds: float = math.nan
    notes: list[str] = field(default_factory=list)


def evaluate(topology: NetworkTopology, params, features, targets) -> EvaluationReport:
    outputs = forward_batch(topology, params, features)
    y = np.asarray(targets, dtype=np.float64)
    e = y - outputs
    mse = float(np.dot(e, e) / e.size)
    cm = confusion(y.astype(int), classify_batch(outputs))
    curve, notes = None, []
    try:
        curve = roc(y.astype(int), outputs)
    except NumericError as exc:
        notes.append(str(exc))
    return EvaluationReport(cm, metrics(cm, mse), mse, curve, notes=notes)


# -- rendering ---------------------------------------------------------------

PERFORMANCE_COLUMNS = [
    "model", "partition",
    "positive_cases", "positive_correct", "positive_accuracy_pct",
    "negative_cases", "negative_correct", "negative_accuracy_pct",
    "mse", "rate_pct",
]
METRIC_COLUMNS = ["model", "partition", "sensitivity", "specificity", "ppv", "npv", "accuracy_pct"]


def _pct(num: int, den: int) -> float:
    return 100.0 * num / den if den else 100.0


def performance_row(model: str, partition: str, r: EvaluationReport) -> dict:
    cm = r.confusion
    return {
        "model": model,
        "partition": partition,
        "positive_cases": cm.positives,
        "positive_correct": cm.tp,
        "positive_accuracy_pct": f"{_pct(cm.tp, cm.positives):.4f}",
        "negative_cases": cm.negatives,
        "negative_correct": cm.tn,
        "negative_accuracy_pct": f"{_pct(cm.tn, cm.negatives):.4f}",
        "mse": f"{r.mse:.8g}",
        "rate_pct": f"{r.metrics.correct_rate_percent:.4f}",
    }


def metric_row(model: str, partition: str, r: EvaluationReport) -> dict:
    m = r.metrics
    return {
        "model": model,
        "partition": partition,
        "sensitivity": f"{m.sensitivity:.2f}",
        "specificity": f"{m.specificity:.2f}",
        "ppv": f"{m.ppv:.2f}",
        "npv": f"{m.npv:.2f}",
        "accuracy_pct": f"{m.correct_rate_percent:.2f}",
    }


def _table(rows: list[dict], columns: list[str]) -> str:
    cells = [columns] + [[str(r[c]) for c in columns] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_report(
    model: str,
    dataset_name: str,
    reports: dict[str, EvaluationReport],
    header: dict | None = None,
) -> str:
    """Text report: one performance table and one metric table.

    ``reports`` maps a partition name (``training``/``testing``) to its
    evaluation.
    """
    out = [f"# {model} on {dataset_name}", ""]
    for k, v in (header or {}).items():
        out.append(f"{k}: {v}")
    if header:
        out.append("")
    out += ["## performance", _table([performance_row(model, p, r) for p, r in reports.items()], PERFORMANCE_COLUMNS), ""]
    out += ["## confusion metrics", _table([metric_row(model, p, r) for p, r in reports.items()], METRIC_COLUMNS), ""]
    for p, r in reports.items():
        if r.roc is not None:
            out.append(f"roc_auc[{p}]: {r.roc.auc:.4f}")
        for name in r.metrics.degenerate:
            out.append(f"warning[{p}]: {name} has an empty denominator, reported as 1.00")
        for note in r.notes:
            out.append(f"note[{p}]: {note}")
    return "\n".join(out) + "\n"


def render_metrics_csv(model: str, reports: dict[str, EvaluationReport]) -> str:
    buf = io.StringIO()
    cols = PERFORMANCE_COLUMNS + ["sensitivity", "specificity", "ppv", "npv", "auc"]
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for p, r in reports.items():
        row = performance_row(model, p, r)
        m = r.metrics
        row.update(
            sensitivity=repr(m.sensitivity),
            specificity=repr(m.specificity),
            ppv=repr(m.ppv),
            npv=repr(m.npv),
            auc="" if r.roc is None else repr(r.roc.auc),
        )
        w.writerow(row)
    return buf.getvalue()


def render_roc_csv(curve: RocCurve) -> str:
    lines = ["threshold,fpr,tpr"]
    for c, f, t in zip(curve.thresholds, curve.fpr, curve.tpr):
        lines.append(f"{float(c)!r},{float(f)!r},{float(t)!r}")
    return "\n".join(lines) + "\n"
