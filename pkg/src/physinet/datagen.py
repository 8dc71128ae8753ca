"""Seeded synthetic measurement processes for the two case studies.

Case 1: noisy quadratic.  y = a*x^2 + b + e with x ~ U[x_low, x_high] and
e ~ Normal(0, noise_std^2).

Case 2: frequency-response measurement.  The target is the magnitude of
the true plant 1/(s^2 + s + a0_true) at omega ~ U[omega_low, omega_high],
optionally with additive normal noise (noiseless by default).

Draw order (both cases): per point, one uniform draw for the input
followed by one normal draw for the noise, in point order.  A normal draw
consumes two raw generator words (see rng), so the stream layout is fixed
and golden-tested.  The noise draw happens even when noise_std = 0, which
keeps the stream layout independent of the noise setting; adding the
resulting exact 0.0 leaves the targets bit-identical to the noiseless law.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .physics import SecondOrderFrf
from .rng import Rng


@dataclass
class DataBatch:
    """Paired inputs (n, n_features) and targets (n,) for one step."""

    inputs: np.ndarray
    targets: np.ndarray

    def __post_init__(self):
        self.inputs = np.asarray(self.inputs, dtype=float)
        self.targets = np.asarray(self.targets, dtype=float)
        if self.inputs.ndim == 1:
            self.inputs = self.inputs[:, None]
        if len(self.inputs) == 0:
            raise ValueError("a data batch cannot be empty")
        if len(self.inputs) != len(self.targets):
            raise ValueError("inputs and targets must have equal length")
        if not (np.isfinite(self.inputs).all() and np.isfinite(self.targets).all()):
            raise ValueError("data batches must be finite")

    def __len__(self) -> int:
        return len(self.targets)


@dataclass(frozen=True)
class Case1Config:
    a: float = 0.1
    b: float = 15.0
    noise_std: float = 0.5
    x_low: float = 0.0
    x_high: float = 10.0

    def __post_init__(self):
        if not self.x_low < self.x_high:
            raise ValueError("x_low must be below x_high")
        if self.noise_std < 0:
            raise ValueError("noise_std must be nonnegative")


@dataclass(frozen=True)
class Case2Config:
    a0_true: float = 4.1
    a0_model: float = 4.4
    omega_low: float = 0.0
    omega_high: float = 10.0
    noise_std: float = 0.0

    def __post_init__(self):
        if not self.omega_low < self.omega_high:
            raise ValueError("omega_low must be below omega_high")
        if self.a0_true <= 0 or self.a0_model <= 0:
            raise ValueError("plant coefficients must be positive")
        if self.noise_std < 0:
            raise ValueError("noise_std must be nonnegative")


def quadratic_law(cfg: Case1Config, x):
    """Noise-free Case 1 measurement law a*x^2 + b."""
    return cfg.a * np.square(x) + cfg.b


def frf_law(cfg: Case2Config, omega):
    """Noise-free Case 2 measurement law: true-plant FRF magnitude."""
    return SecondOrderFrf(cfg.a0_true).predict(omega)


def sample_case1(cfg: Case1Config, n: int, rng: Rng) -> DataBatch:
    """n quadratic measurements; per point one x draw then one noise draw."""
    if n < 1:
        raise ValueError("n must be at least 1")
    xs = np.empty(n)
    ys = np.empty(n)
    for i in range(n):
        x = rng.uniform(cfg.x_low, cfg.x_high)
        xs[i] = x
        ys[i] = cfg.a * x * x + cfg.b + rng.normal(0.0, cfg.noise_std)
    return DataBatch(xs[:, None], ys)


def sample_case2(cfg: Case2Config, n: int, rng: Rng) -> DataBatch:
    """n FRF measurements of the true plant; same per-point draw order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    truth = SecondOrderFrf(cfg.a0_true)
    ws = np.empty(n)
    ys = np.empty(n)
    for i in range(n):
        w = rng.uniform(cfg.omega_low, cfg.omega_high)
        ws[i] = w
        ys[i] = float(truth.predict(w)) + rng.normal(0.0, cfg.noise_std)
    return DataBatch(ws[:, None], ys)


def write_batch_csv(batch: DataBatch, path, header=("x", "y")):
    """Export a batch as CSV, one pair per row, full double precision."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for x, y in zip(batch.inputs[:, 0], batch.targets):
            writer.writerow([f"{x:.17g}", f"{y:.17g}"])
