"""Minimal dense networks with hand-written backprop.

Hidden layers use rectifier activations; the output layer is tanh (actors,
bounded actions) or identity (critics). Everything is float64 and the
gradients are exact, which the finite-difference tests rely on.
"""
from __future__ import annotations

import numpy as np

from .errors import ContractError

_OUTPUT_ACTIVATIONS = ("tanh", "identity")


class DenseNet:
    """Fully connected net; forward caches activations for one backward pass."""

    def __init__(self, layer_sizes, output_activation: str = "identity", rng: np.random.Generator | None = None):
        if len(layer_sizes) < 2 or any(int(s) < 1 for s in layer_sizes):
            raise ContractError("layer_sizes needs >= 2 positive entries")
        if output_activation not in _OUTPUT_ACTIVATIONS:
            raise ContractError(f"output_activation must be one of {_OUTPUT_ACTIVATIONS}")
        self.layer_sizes = tuple(int(s) for s in layer_sizes)
        self.output_activation = output_activation
        self.weights: list[np.ndarray] = []
        self.biases: list[np.ndarray] = []
        if rng is None:
            rng = np.random.default_rng(0)
        for idx, (fan_in, fan_out) in enumerate(zip(self.layer_sizes[:-1], self.layer_sizes[1:])):
            if idx == len(self.layer_sizes) - 2:
                # Small uniform final layer keeps initial outputs near zero.
                w = rng.uniform(-3e-3, 3e-3, size=(fan_in, fan_out))
            else:
                w = rng.normal(0.0, np.sqrt(2.0 / fan_in), size=(fan_in, fan_out))
            self.weights.append(w)
            self.biases.append(np.zeros(fan_out))
        self._cache = None

    @property
    def input_dim(self) -> int:
        return self.layer_sizes[0]

    @property
    def output_dim(self) -> int:
        return self.layer_sizes[-1]

    def forward(self, x: np.ndarray) -> np.ndarray:
        """Evaluate the net; accepts a single vector or a (batch, dim) array."""
        arr = np.asarray(x, dtype=float)
        single = arr.ndim == 1
        if single:
            arr = arr[None, :]
        if arr.ndim != 2 or arr.shape[1] != self.input_dim:
            raise ContractError(f"expected input dimension {self.input_dim}, got shape {arr.shape}")
        activations = [arr]
        pre = []
        h = arr
        last = len(self.weights) - 1
        for idx, (w, b) in enumerate(zip(self.weights, self.biases)):
            z = h @ w + b
            pre.append(z)
            if idx < last:
                h = np.maximum(z, 0.0)
            elif self.output_activation == "tanh":
                h = np.tanh(z)
            else:
                h = z
            activations.append(h)
        self._cache = (activations, pre)
        return h[0] if single else h

    def backward(self, grad_output: np.ndarray):
        """Backpropagate d(loss)/d(output) from the latest forward call.

        Returns (grads, grad_input) where grads is a list of (dW, db) per
        layer. The cache survives, so several backward passes per forward are
        allowed; calling before any forward is a contract violation.
        """
        if self._cache is None:
            raise ContractError("backward called before forward")
        activations, pre = self._cache
        g = np.asarray(grad_output, dtype=float)
        if g.ndim == 1:
            g = g[None, :]
        if g.shape != activations[-1].shape:
            raise ContractError("grad_output shape does not match the last forward output")
        grads: list[tuple[np.ndarray, np.ndarray]] = [None] * len(self.weights)
        last = len(self.weights) - 1
        for idx in range(last, -1, -1):
            if idx < last:
                dz = g * (pre[idx] > 0.0)
            elif self.output_activation == "tanh":
                dz = g * (1.0 - activations[-1] ** 2)
            else:
                dz = g
            grads[idx] = (activations[idx].T @ dz, dz.sum(axis=0))
            g = dz @ self.weights[idx].T
        return grads, g

    def parameters(self):
        """Flat list of parameter arrays, weights and biases interleaved."""
        out = []
        for w, b in zip(self.weights, self.biases):
            out.extend((w, b))
        return out

    def copy(self) -> "DenseNet":
        clone = DenseNet.__new__(DenseNet)
        clone.layer_sizes = self.layer_sizes
        clone.output_activation = self.output_activation
        clone.weights = [w.copy() for w in self.weights]
        clone.biases = [b.copy() for b in self.biases]
        clone._cache = None
        return clone


def sgd_step(net: DenseNet, grads, lr: float) -> None:
    for (dw, db), w, b in zip(grads, net.weights, net.biases):
        w -= lr * dw
        b -= lr * db


class AdamState:
    """Optional adaptive-moment optimizer (off by default in training)."""

    def __init__(self, net: DenseNet, beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.beta1, self.beta2, self.eps = beta1, beta2, eps
        self.step_count = 0
        self.m = [np.zeros_like(p) for p in net.parameters()]
        self.v = [np.zeros_like(p) for p in net.parameters()]

    def step(self, net: DenseNet, grads, lr: float) -> None:
        flat = []
        for dw, db in grads:
            flat.extend((dw, db))
        self.step_count += 1
        t = self.step_count
        for p, g, m, v in zip(net.parameters(), flat, self.m, self.v):
            m *= self.beta1
            m += (1 - self.beta1) * g
            v *= self.beta2
            v += (1 - self.beta2) * g * g
            m_hat = m / (1 - self.beta1 ** t)
            v_hat = v / (1 - self.beta2 ** t)
            p -= lr * m_hat / (np.sqrt(v_hat) + self.eps)


def polyak_update(target: DenseNet, online: DenseNet, tau: float) -> None:
    """target <- tau * online + (1 - tau) * target, parameter-wise."""
    if target.layer_sizes != online.layer_sizes:
        raise ContractError("polyak_update requires identical architectures")
    if not 0 <= tau <= 1:
        raise ContractError("tau must lie in [0, 1]")
    for t, o in zip(target.parameters(), online.parameters()):
        t *= 1.0 - tau
        t += tau * o


def finite_difference_grads(net: DenseNet, x: np.ndarray, loss_weights: np.ndarray, step: float = 1e-4):
    """Central-difference gradients of loss = sum(loss_weights * forward(x)).

    Independent oracle for the analytic backward pass.
    """
    grads = []
    for param in net.parameters():
        grad = np.zeros_like(param)
        it = np.nditer(param, flags=["multi_index"])
        while not it.finished:
            idx = it.multi_index
            original = param[idx]
            param[idx] = original + step
            hi = np.sum(loss_weights * net.forward(x))
            param[idx] = original - step
            lo = np.sum(loss_weights * net.forward(x))
            param[idx] = original
            grad[idx] = (hi - lo) / (2.0 * step)
            it.iternext()
        grads.append(grad)
    # Restore a clean cache state for the caller.
    net.forward(x)
    return grads
