"""Pure numpy versions of the compiled kernels (same signatures).

Sums are accumulated in the same fixed order as the compiled loops and are
vectorised over rows only, so a row's output never depends on how many
other rows are in the batch.
"""
import numpy as np


def batch_outputs(X, params, inputs, hidden, cascade):
    X = np.asarray(X, dtype=np.float64)
    params = np.asarray(params, dtype=np.float64)
    n_w = inputs * hidden
    W = params[:n_w].reshape(hidden, inputs)
    bh = params[n_w:n_w + hidden]
    v = params[n_w + hidden:n_w + 2 * hidden]

    z = np.empty((X.shape[0], hidden))
    z[:] = bh
    for i in range(inputs):
        z += X[:, i:i + 1] * W[:, i]
    with np.errstate(over="ignore"):
        denom = 1.0 + np.exp(-z)

    out = np.full(X.shape[0], params[n_w + 2 * hidden])
    for j in range(hidden):
        out += v[j] / denom[:, j]
    if cascade:
        u = params[n_w + 2 * hidden + 1:]
        for i in range(inputs):
            out += u[i] * X[:, i]
        out += u[inputs]
    return out


def average_mse(X, y, params, inputs, hidden, cascade):
    e = np.asarray(y, dtype=np.float64) - batch_outputs(X, params, inputs, hidden, cascade)
    if e.size == 0:
        return float("nan")
    # cumsum accumulates left to right, like the compiled loop
    return float(np.cumsum(e * e)[-1] / e.shape[0])
