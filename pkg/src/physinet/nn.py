"""Dense feedforward network with hand-rolled reverse-mode gradients.

The architecture is fixed by this package's needs: tanh on every hidden
layer, identity on the (single-neuron) output layer, 64-bit floats
throughout.  Weights are drawn uniformly from
[-sqrt(6/(fan_in+fan_out)), +sqrt(6/(fan_in+fan_out))] per layer, biases
start at zero, and the whole initialization is a deterministic function of
the seed (layer by layer, weight matrices in row-major order).

An optional frozen input standardization (subtract mean, divide by std) is
applied before the first layer; it defaults to the identity and is set
once by the trainer from the first data batch.
"""

from __future__ import annotations

import numpy as np

from .rng import Rng


def _validate_layer_sizes(layer_sizes) -> list[int]:
    sizes = [int(s) for s in layer_sizes]
    if len(sizes) < 3:
        raise ValueError("layer_sizes needs at least [n_in, hidden, n_out]")
    if any(s <= 0 for s in sizes):
        raise ValueError(f"layer sizes must be positive, got {sizes}")
    if sizes[-1] != 1:
        raise ValueError("output layer must have exactly one neuron")
    return sizes


class Network:
    """Feedforward net: tanh hidden layers, identity scalar output."""

    def __init__(self, layer_sizes, seed: int):
        self.layer_sizes = _validate_layer_sizes(layer_sizes)
        rng = Rng(seed)
        self.weights: list[np.ndarray] = []
        self.biases: list[np.ndarray] = []
        for fan_in, fan_out in zip(self.layer_sizes, self.layer_sizes[1:]):
            bound = np.sqrt(6.0 / (fan_in + fan_out))
            w = rng.uniforms(fan_out * fan_in, -bound, bound).reshape(fan_out, fan_in)
            self.weights.append(w)
            self.biases.append(np.zeros(fan_out))
        d = self.layer_sizes[0]
        self.input_mean = np.zeros(d)
        self.input_std = np.ones(d)

    @classmethod
    def from_arrays(cls, weights, biases, input_mean=None, input_std=None) -> "Network":
        """Rebuild a network from explicit parameter arrays."""
        sizes = [np.shape(weights[0])[1]] + [np.shape(w)[0] for w in weights]
        net = cls(sizes, seed=0)
        net.weights = [np.array(w, dtype=float) for w in weights]
        net.biases = [np.array(b, dtype=float) for b in biases]
        if input_mean is not None:
            net.input_mean = np.array(input_mean, dtype=float)
        if input_std is not None:
            net.input_std = np.array(input_std, dtype=float)
        return net

    @property
    def n_in(self) -> int:
        return self.layer_sizes[0]

    def set_input_standardization(self, mean, std):
        """Freeze the affine input map; zero spreads fall back to scale 1."""
        mean = np.asarray(mean, dtype=float)
        std = np.asarray(std, dtype=float)
        if mean.shape != (self.n_in,) or std.shape != (self.n_in,):
            raise ValueError("standardization stats must match the input width")
        self.input_mean = mean
        self.input_std = np.where(std > 0, std, 1.0)

    def trainable_arrays(self) -> list[np.ndarray]:
        """Parameter arrays in update order: [W0, b0, W1, b1, ...]."""
        out = []
        for w, b in zip(self.weights, self.biases):
            out.append(w)
            out.append(b)
        return out

    # -- forward -----------------------------------------------------------

    def forward_batch(self, X: np.ndarray):
        """Forward pass over a batch.

        X has shape (m, n_in).  Returns (q, activations): q is the (m,)
        vector of network outputs, activations the list of per-layer
        post-activation arrays, one (m, width) entry per layer, needed by
        backward_batch.
        """
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.n_in:
            raise ValueError(f"expected inputs of shape (m, {self.n_in}), got {X.shape}")
        a = (X - self.input_mean) / self.input_std
        activations = []
        last = len(self.weights) - 1
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            z = a @ w.T + b
            a = z if i == last else np.tanh(z)
            activations.append(a)
        return a.sum(axis=1), activations

    def forward(self, features):
        """Single-sample forward: returns (q, per-layer activation vectors)."""
        x = np.asarray(features, dtype=float).reshape(1, -1)
        q, acts = self.forward_batch(x)
        return float(q[0]), [a[0] for a in acts]

    def predict_batch(self, X: np.ndarray) -> np.ndarray:
        return self.forward_batch(X)[0]

    # -- backward ----------------------------------------------------------

    def backward_batch(self, X, activations, upstream) -> list[np.ndarray]:
        """Gradients of sum_i upstream_i * q_i w.r.t. every parameter.

        upstream is the (m,) vector dLoss/dq per sample; activations must
        come from forward_batch on the same X.  Returns arrays aligned
        with trainable_arrays().
        """
        X = np.asarray(X, dtype=float)
        upstream = np.asarray(upstream, dtype=float)
        if upstream.shape != (X.shape[0],):
            raise ValueError("upstream must hold one value per sample")
        x0 = (X - self.input_mean) / self.input_std
        delta = upstream[:, None]  # identity output layer, width 1
        grads: list[np.ndarray] = [None] * (2 * len(self.weights))
        for layer in range(len(self.weights) - 1, -1, -1):
            a_prev = activations[layer - 1] if layer > 0 else x0
            grads[2 * layer] = delta.T @ a_prev
            grads[2 * layer + 1] = delta.sum(axis=0)
            if layer > 0:
                # tanh'(z) = 1 - tanh(z)^2, from the stored activations
                delta = (delta @ self.weights[layer]) * (1.0 - activations[layer - 1] ** 2)
        return grads

    def backward(self, features, activations, upstream: float) -> list[np.ndarray]:
        """Single-sample gradients; activations from the matching forward()."""
        x = np.asarray(features, dtype=float).reshape(1, -1)
        acts = [np.asarray(a, dtype=float).reshape(1, -1) for a in activations]
        return self.backward_batch(x, acts, np.array([float(upstream)]))

    def loss_gradients(self, X, y) -> list[np.ndarray]:
        """Gradients of the mean squared error over the batch."""
        y = np.asarray(y, dtype=float)
        q, acts = self.forward_batch(X)
        upstream = 2.0 * (q - y) / y.size
        return self.backward_batch(X, acts, upstream)


class Adam:
    """Adam with bias-corrected moments; state is per parameter array."""

    def __init__(self, params, lr=0.01, beta1=0.9, beta2=0.999, eps=1e-8):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]

    def step(self, params, grads):
        """One in-place update; params must match the shapes given at init."""
        if len(params) != len(self.m) or len(grads) != len(self.m):
            raise ValueError("parameter/gradient count does not match optimizer state")
        self.t += 1
        bc1 = 1.0 - self.beta1 ** self.t
        bc2 = 1.0 - self.beta2 ** self.t
        for p, g, m, v in zip(params, grads, self.m, self.v):
            if p.shape != g.shape or p.shape != m.shape:
                raise ValueError("gradient shape does not match parameter shape")
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * (g * g)
            p -= self.lr * (m / bc1) / (np.sqrt(v / bc2) + self.eps)


def finite_diff_grad(net: Network, loss_fn, eps: float = 1e-6) -> list[np.ndarray]:
    """Central-difference gradient of loss_fn(net) per parameter.

    The test oracle for backward: perturbs each parameter in place by
    +/- eps and restores it.  eps must be positive; 1e-6 balances
    truncation against roundoff in double precision.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    grads = []
    for arr in net.trainable_arrays():
        g = np.zeros_like(arr)
        flat = arr.ravel()
        gflat = g.ravel()
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + eps
            loss_plus = loss_fn(net)
            flat[i] = orig - eps
            loss_minus = loss_fn(net)
            flat[i] = orig
            gflat[i] = (loss_plus - loss_minus) / (2.0 * eps)
        grads.append(g)
    return grads


def gradient_check_suite(
    seed: int,
    architectures=((1, 10, 10, 1), (1, 4, 1)),
    trials: int = 50,
    eps: float = 1e-6,
    perturb=None,
):
    """Compare backward against finite differences on random triples.

    For each architecture, runs `trials` seeded (network, input, target)
    triples with squared-error loss and returns (max_rel_err, worst) where
    worst = (layer_sizes, trial, array_index, flat_index) locates the
    largest discrepancy.  `perturb`, if given, mutates the analytic
    gradient list before comparison; it exists as a negative-control hook.
    """
    rng = Rng(seed)
    worst_err = 0.0
    worst_at = None
    for sizes in architectures:
        for trial in range(trials):
            net = Network(sizes, seed=rng.next_u64())
            x = rng.uniforms(sizes[0], -2.0, 2.0)
            target = rng.uniform(-2.0, 2.0)

            q, acts = net.forward(x)
            analytic = net.backward(x, acts, 2.0 * (q - target))
            if perturb is not None:
                perturb(analytic)
            numeric = finite_diff_grad(
                net, lambda m: (m.forward(x)[0] - target) ** 2, eps=eps
            )
            for k, (a, n) in enumerate(zip(analytic, numeric)):
                err = np.abs(a - n) / (np.abs(a) + np.abs(n) + 1e-8)
                idx = int(np.argmax(err))
                if float(err.ravel()[idx]) > worst_err:
                    worst_err = float(err.ravel()[idx])
                    worst_at = (tuple(sizes), trial, k, idx)
    return worst_err, worst_at
