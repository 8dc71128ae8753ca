"""The hybrid model: physics branch + network branch + two scalar weights.

Prediction is the weighted sum

    y_hat = q_physi * w_physi + q_nn * w_nn

where q_physi comes from a fixed physics model and q_nn from the trainable
network.  The scalars start at w_physi = 0.99, w_nn = 0.01, so a fresh
model is physics-dominated (y_hat ~ q_physi), and both are updated jointly
with the network parameters during training.  No gradient ever reaches the
physics branch.

The physics branch consumes the first feature only; both case studies are
one-dimensional.
"""

from __future__ import annotations

import math

import numpy as np

from .nn import Network
from .physics import physics_from_dict


def weight_ratio(w_physi: float, w_nn: float) -> float:
    """w_physi / w_nn, or NaN when w_nn is zero (kept out of plots)."""
    if w_nn == 0.0:
        return math.nan
    return w_physi / w_nn


def combiner_gradients(q_physi, q_nn, w_nn, upstream):
    """Chain rule through the weighted sum.

    upstream is dLoss/dy_hat.  Returns (d_w_physi, d_w_nn, d_q_nn); the
    last feeds the network backward pass.  Works elementwise on arrays.
    """
    return upstream * q_physi, upstream * q_nn, upstream * w_nn


class PhysiNet:
    """Weighted combination of a frozen physics model and a network.

    train_combiner=False freezes w_physi and w_nn (they are then excluded
    from the trainable set); the network itself still trains unless its
    gradient happens to vanish, as it does when w_nn = 0.
    """

    def __init__(self, physics, net: Network, w_physi: float = 0.99,
                 w_nn: float = 0.01, train_combiner: bool = True):
        self.physics = physics
        self.net = net
        self.combiner = np.array([w_physi, w_nn], dtype=float)
        self.train_combiner = train_combiner

    @property
    def w_physi(self) -> float:
        return float(self.combiner[0])

    @property
    def w_nn(self) -> float:
        return float(self.combiner[1])

    def predict(self, features):
        """Returns (y_hat, q_physi, q_nn) for one feature vector."""
        x = np.asarray(features, dtype=float).reshape(-1)
        q_nn, _ = self.net.forward(x)
        q_physi = float(self.physics.predict(x[0]))
        y_hat = q_physi * self.w_physi + q_nn * self.w_nn
        return y_hat, q_physi, q_nn

    def predict_batch(self, X):
        """Vectorized predict: three (m,) arrays (y_hat, q_physi, q_nn)."""
        X = np.asarray(X, dtype=float)
        q_nn = self.net.predict_batch(X)
        q_physi = np.asarray(self.physics.predict(X[:, 0]), dtype=float)
        y_hat = q_physi * self.combiner[0] + q_nn * self.combiner[1]
        return y_hat, q_physi, q_nn

    def trainable_arrays(self) -> list[np.ndarray]:
        arrays = self.net.trainable_arrays()
        if self.train_combiner:
            arrays.append(self.combiner)
        return arrays

    def loss_gradients(self, X, y) -> list[np.ndarray]:
        """Mean-squared-error gradients for every trainable array."""
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        q_nn, acts = self.net.forward_batch(X)
        q_physi = np.asarray(self.physics.predict(X[:, 0]), dtype=float)
        y_hat = q_physi * self.combiner[0] + q_nn * self.combiner[1]
        upstream = 2.0 * (y_hat - y) / y.size
        d_wp, d_wn, d_qnn = combiner_gradients(q_physi, q_nn, self.combiner[1], upstream)
        grads = self.net.backward_batch(X, acts, d_qnn)
        if self.train_combiner:
            grads.append(np.array([d_wp.sum(), d_wn.sum()]))
        return grads

    # -- snapshot serialization ---------------------------------------------

    def to_dict(self) -> dict:
        """Flat JSON-ready snapshot of every parameter."""
        return {
            "w_physi": self.w_physi,
            "w_nn": self.w_nn,
            "layer_sizes": list(self.net.layer_sizes),
            "weights": [w.tolist() for w in self.net.weights],
            "biases": [b.tolist() for b in self.net.biases],
            "input_mean": self.net.input_mean.tolist(),
            "input_std": self.net.input_std.tolist(),
            "physics": self.physics.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PhysiNet":
        net = Network.from_arrays(
            d["weights"], d["biases"], d["input_mean"], d["input_std"]
        )
        return cls(
            physics=physics_from_dict(d["physics"]),
            net=net,
            w_physi=float(d["w_physi"]),
            w_nn=float(d["w_nn"]),
        )
