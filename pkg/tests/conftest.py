import math
import re

import numpy as np
import pytest


class ScriptedRng:
    """Stands in for numpy's Generator: hands out scripted U[0,1) values in order."""

    def __init__(self, values):
        self.values = list(values)
        self.used = 0

    def random(self, size=None):
        if size is None:
            return self._take(1)[0]
        shape = (size,) if isinstance(size, int) else tuple(size)
        n = int(np.prod(shape))
        return np.array(self._take(n), dtype=float).reshape(shape)

    def _take(self, n):
        if self.used + n > len(self.values):
            raise AssertionError(f"scripted stream exhausted ({len(self.values)} values)")
        out = self.values[self.used:self.used + n]
        self.used += n
        return out


@pytest.fixture
def scripted():
    return ScriptedRng


# -- scalar oracles -----------------------------------------------------------
# Straight-line loops over agents and dimensions, reading uniform draws from a
# flat list in the documented order.

def oracle_leaders(positions, fitness, count):
    order = sorted(range(len(fitness)), key=lambda i: (fitness[i], i))
    return [positions[i] for i in order[:count]]


def oracle_wolf_step(positions, fitness, a, draws, lo, hi, four_leaders=False):
    k = 4 if four_leaders else 3
    leaders = oracle_leaders(positions, fitness, k)
    dim = len(positions[0])
    it = iter(draws)
    new_positions = []
    for x in positions:
        A, C = [], []
        for _ in range(k):
            r1 = [next(it) for _ in range(dim)]
            r2 = [next(it) for _ in range(dim)]
            A.append([2 * a * r - a for r in r1])
            C.append([2 * r for r in r2])
        new = []
        for d in range(dim):
            dists = [abs(C[j][d] * leaders[j][d] - x[d]) for j in range(k)]
            if four_leaders:
                davg = (dists[0] + dists[1] + dists[2] + dists[3]) / 4
                est = [leaders[j][d] - A[j][d] * davg for j in range(4)]
                v = (est[0] + est[1] + est[2] + est[3]) / 4
            else:
                est = [leaders[j][d] - A[j][d] * dists[j] for j in range(3)]
                v = (est[0] + est[1] + est[2]) / 3
            new.append(min(max(v, lo), hi))
        new_positions.append(new)
    return new_positions


def oracle_fdo_step(positions, fitness, f, draws, lo, hi, wf=0.0):
    """One scout-bee sweep; returns (positions, fitness, draws_used)."""
    it = iter(draws)
    used = 0
    b = min(range(len(fitness)), key=lambda i: (fitness[i], i))
    best_x, best_f = list(positions[b]), fitness[b]
    out_x, out_f = [], []
    for x, fx in zip(positions, fitness):
        directed = False
        if fx != 0:
            fw = abs(best_f / fx) - wf
            directed = 0 < fw < 1
        if directed:
            r = 2 * next(it) - 1
            used += 1
            sign = -1 if r < 0 else 1
            pace = [(x[d] - best_x[d]) * fw * sign for d in range(len(x))]
        else:
            pace = []
            for d in range(len(x)):
                r = 2 * next(it) - 1
                used += 1
                pace.append(x[d] * r)
        cand = [min(max(x[d] + pace[d], lo), hi) for d in range(len(x))]
        fc = f(cand)
        if fc < fx:
            out_x.append(cand)
            out_f.append(fc)
        else:
            out_x.append(list(x))
            out_f.append(fx)
    return out_x, out_f, used


def oracle_mse(X, y, params, inputs, hidden, cascade):
    """Fixed-order scalar loop over rows."""
    total = 0.0
    for row, target in zip(X, y):
        out = params[inputs * hidden + 2 * hidden]
        for j in range(hidden):
            z = params[inputs * hidden + j]
            for i in range(inputs):
                z += params[j * inputs + i] * row[i]
            out += params[inputs * hidden + hidden + j] / (1.0 + math.exp(-z))
        if cascade:
            base = inputs * hidden + 2 * hidden + 1
            for i in range(inputs):
                out += params[base + i] * row[i]
            out += params[base + inputs]
        total += (target - out) ** 2
    return total / len(y)


def separable_dataset(seed=12345, n=200, margin=1.0):
    """2-D points in [-3, 3]^2 labelled by the side of x1 + x2 = 0, keeping
    only points at least ``margin`` away from that line."""
    rng = np.random.default_rng(seed)
    X, y = [], []
    while len(X) < n:
        p = rng.uniform(-3.0, 3.0, 2)
        d = (p[0] + p[1]) / math.sqrt(2.0)
        if abs(d) < margin:
            continue
        X.append(p)
        y.append(1.0 if d < 0 else 2.0)
    return np.array(X), np.array(y)


def write_clinical_csv(path, feature_columns, target_column, n=300, seed=0, extra_columns=()):
    """Random yes/no symptom table whose label depends on the first three
    features, with some exact duplicates and a few blank cells."""
    import csv

    rng = np.random.default_rng(seed)
    header = list(feature_columns) + [target_column] + list(extra_columns)
    rows = []
    for _ in range(n):
        bits = rng.integers(0, 2, len(feature_columns))
        score = bits[:3].sum() + 0.3 * rng.normal()
        label = "positive" if score >= 1.5 else "negative"
        row = ["yes" if b else "no" for b in bits] + [label] + ["x"] * len(extra_columns)
        rows.append(row)
    rows += rows[:5]
    rows[7][0] = ""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
    return path


# -- acceptance reporting -----------------------------------------------------

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    for key, value in report.user_properties:
        if key == "criterion":
            why = ""
            if report.failed:
                crash = getattr(report.longrepr, "reprcrash", None)
                why = crash.message.splitlines()[0] if crash else "failed"
            ACCEPTANCE_RESULTS[value] = (report.passed, why)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda n: (int(re.match(r"AC(\d+)", n).group(1)), n)):
        passed, why = ACCEPTANCE_RESULTS[name]
        line = f"{'PASS' if passed else 'FAIL'}  {name}"
        if why:
            line += f"  ({why.strip()[:120]})"
        terminalreporter.write_line(line)
