"""Fixed analytic physics predictors.

A physics model is anything with a pure ``predict(x)`` accepting a scalar
or an ndarray of scalars.  Instances are frozen: training never touches
them, and the trainer asserts as much by comparing serialized parameters
before and after a run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LinearPhysics:
    """Affine predictor c*x + d."""

    c: float
    d: float

    def predict(self, x):
        return self.c * x + self.d

    def to_dict(self) -> dict:
        return {"kind": "linear", "c": self.c, "d": self.d}


@dataclass(frozen=True)
class SecondOrderFrf:
    """Frequency-response magnitude of 1 / (s^2 + s + a0) on s = j*omega.

    |H(j w)| = 1 / sqrt((a0 - w^2)^2 + w^2).  The denominator never
    vanishes for a0 > 0: the w^2 damping term is positive for w > 0 and
    the constant term carries w = 0.
    """

    a0: float

    def __post_init__(self):
        if not self.a0 > 0:
            raise ValueError(f"a0 must be positive, got {self.a0}")

    def predict(self, omega):
        return 1.0 / np.sqrt((self.a0 - np.square(omega)) ** 2 + np.square(omega))

    def to_dict(self) -> dict:
        return {"kind": "second_order_frf", "a0": self.a0}


def physics_from_dict(d: dict):
    """Rebuild a physics model from its to_dict() form."""
    kind = d.get("kind")
    if kind == "linear":
        return LinearPhysics(c=float(d["c"]), d=float(d["d"]))
    if kind == "second_order_frf":
        return SecondOrderFrf(a0=float(d["a0"]))
    raise ValueError(f"unknown physics kind: {kind!r}")
