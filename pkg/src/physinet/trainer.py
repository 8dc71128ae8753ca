"""Streaming lifecycle training protocol.

Each lifecycle step simulates one arrival of fresh measurements: a batch
of points_per_step points is drawn, the trainable variants (hybrid and
network-only) are trained on that batch alone for epochs_per_step epochs
of shuffled minibatches, and every variant is then evaluated on a test set
fixed once at the start of the run.  The physics-only variant is never
trained.  Model parameters persist across steps, but each step is a
self-contained fit: the optimizer starts from fresh moments every step.
Old batches are never replayed.

Evaluation happens after each step's training, so the step-0 record
already reflects 40 epochs on the first batch.

The network branches see standardized inputs: the affine map (subtract
mean, divide by std) is computed once from the first training batch and
frozen for the rest of the run.  Physics-branch inputs stay raw and
targets are never rescaled, keeping the combination weights in measurement
units.

Every random stream derives from config.seed; see run_lifecycle for the
exact derivation order.  Two runs with the same scenario and config give
bit-identical records.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .datagen import (
    Case1Config,
    Case2Config,
    DataBatch,
    sample_case1,
    sample_case2,
)
from .model import PhysiNet, weight_ratio
from .nn import Adam, Network
from .physics import LinearPhysics, SecondOrderFrf
from .rng import Rng


@dataclass
class TrainerConfig:
    steps: int = 100
    points_per_step: int = 80
    epochs_per_step: int = 40
    minibatch_size: int = 16
    test_set_size: int = 2000
    learning_rate: float = 0.001
    seed: int = 0

    def __post_init__(self):
        for name in ("steps", "points_per_step", "epochs_per_step",
                     "minibatch_size", "test_set_size"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if self.minibatch_size > self.points_per_step:
            raise ValueError("minibatch_size cannot exceed points_per_step")


@dataclass
class StepRecord:
    """Held-out evaluation snapshot emitted after each step's training."""

    step: int
    mse_physinet: float
    mse_nn_only: float
    mse_physics_only: float
    weight_ratio: float  # NaN when w_nn == 0
    w_physi: float
    w_nn: float


@dataclass
class PredictionSnapshot:
    """One variant's predictions over a fixed, increasing input grid."""

    step: int
    variant: str
    inputs: np.ndarray
    predictions: np.ndarray


@dataclass
class LifecycleResult:
    """Records and snapshots of one run, plus the trained variants."""

    records: list
    snapshots: list
    physinet: PhysiNet
    nn_only: Network


@dataclass
class Scenario:
    """Everything run_lifecycle needs to know about a case study."""

    name: str
    physics: object
    sample: Callable[[int, Rng], DataBatch]
    physinet_layers: tuple = (1, 10, 10, 1)
    nn_only_layers: tuple = (1, 4, 1)
    snapshot_steps: tuple = ()
    eval_grid: np.ndarray = field(default_factory=lambda: np.linspace(0.0, 10.0, 201))


def case1_scenario(cfg: Case1Config = Case1Config(),
                   physics_c: float = 1.0, physics_d: float = 10.0) -> Scenario:
    """Noisy quadratic truth vs. an assumed linear physics model."""
    return Scenario(
        name="case1",
        physics=LinearPhysics(c=physics_c, d=physics_d),
        sample=lambda n, rng: sample_case1(cfg, n, rng),
        snapshot_steps=(0, 9, 19, 29, 39, 49),
        eval_grid=np.linspace(cfg.x_low, cfg.x_high, 201),
    )


def case2_scenario(cfg: Case2Config = Case2Config()) -> Scenario:
    """True plant FRF vs. a mistuned second-order physics model."""
    return Scenario(
        name="case2",
        physics=SecondOrderFrf(a0=cfg.a0_model),
        sample=lambda n, rng: sample_case2(cfg, n, rng),
        snapshot_steps=(0, 9, 19, 29),
        eval_grid=np.linspace(cfg.omega_low, cfg.omega_high, 201),
    )


def mse(predictions, targets) -> float:
    """Mean squared error; lengths must match and be nonzero."""
    predictions = np.asarray(predictions, dtype=float)
    targets = np.asarray(targets, dtype=float)
    if predictions.shape != targets.shape:
        raise ValueError("predictions and targets must have the same shape")
    if predictions.size == 0:
        raise ValueError("mse of an empty set is undefined")
    return float(np.mean((predictions - targets) ** 2))


def train_one_step(model, batch: DataBatch, config: TrainerConfig,
                   adam: Adam | None = None, shuffle_rng: Rng | None = None):
    """Train on one fresh batch: epochs of shuffled minibatch Adam updates.

    The model needs trainable_arrays() and loss_gradients(X, y); both the
    hybrid model and the bare Network qualify.  The optimizer defaults to
    a fresh Adam, making each step a self-contained fit; shuffle_rng
    defaults to a generator seeded from config.seed (the lifecycle passes
    a persistent one so epoch shuffles differ across steps).  Returns the
    model, updated in place.
    """
    if len(batch) == 0:
        raise ValueError("cannot train on an empty batch")
    if adam is None:
        adam = Adam(model.trainable_arrays(), lr=config.learning_rate)
    if shuffle_rng is None:
        shuffle_rng = Rng(config.seed)
    X, y = batch.inputs, batch.targets
    n = len(batch)
    params = model.trainable_arrays()
    for _ in range(config.epochs_per_step):
        order = shuffle_rng.permutation(n)
        for start in range(0, n, config.minibatch_size):
            idx = order[start:start + config.minibatch_size]
            grads = model.loss_gradients(X[idx], y[idx])
            adam.step(params, grads)
    return model


def run_lifecycle(scenario: Scenario, config: TrainerConfig,
                  collect_snapshots: bool = True) -> LifecycleResult:
    """Run the full protocol; returns records, snapshots and final models.

    Stream derivation: a master generator seeded with config.seed hands
    out six child seeds, in order: test set, training batches (one stream
    across all steps), hybrid network init, network-only init, hybrid
    shuffles, network-only shuffles.
    """
    master = Rng(config.seed)
    test_rng = Rng(master.next_u64())
    batch_rng = Rng(master.next_u64())
    seed_pn_init = master.next_u64()
    seed_nn_init = master.next_u64()
    pn_shuffle = Rng(master.next_u64())
    nn_shuffle = Rng(master.next_u64())

    test = scenario.sample(config.test_set_size, test_rng)

    physinet = PhysiNet(scenario.physics,
                        Network(scenario.physinet_layers, seed=seed_pn_init))
    nn_only = Network(scenario.nn_only_layers, seed=seed_nn_init)

    grid = np.asarray(scenario.eval_grid, dtype=float)[:, None]
    records: list[StepRecord] = []
    snapshots: list[PredictionSnapshot] = []

    for step in range(config.steps):
        try:
            batch = scenario.sample(config.points_per_step, batch_rng)
        except Exception as exc:
            raise RuntimeError(f"data generation failed at step {step}") from exc

        if step == 0:
            mean = batch.inputs.mean(axis=0)
            std = batch.inputs.std(axis=0)
            physinet.net.set_input_standardization(mean, std)
            nn_only.set_input_standardization(mean, std)

        train_one_step(physinet, batch, config, shuffle_rng=pn_shuffle)
        train_one_step(nn_only, batch, config, shuffle_rng=nn_shuffle)

        records.append(StepRecord(
            step=step,
            mse_physinet=mse(physinet.predict_batch(test.inputs)[0], test.targets),
            mse_nn_only=mse(nn_only.predict_batch(test.inputs), test.targets),
            mse_physics_only=mse(
                np.asarray(scenario.physics.predict(test.inputs[:, 0]), dtype=float),
                test.targets),
            weight_ratio=weight_ratio(physinet.w_physi, physinet.w_nn),
            w_physi=physinet.w_physi,
            w_nn=physinet.w_nn,
        ))

        if collect_snapshots and step in scenario.snapshot_steps:
            snapshots.append(PredictionSnapshot(
                step, "physinet", grid[:, 0], physinet.predict_batch(grid)[0]))
            snapshots.append(PredictionSnapshot(
                step, "nn_only", grid[:, 0], nn_only.predict_batch(grid)))

    return LifecycleResult(records, snapshots, physinet, nn_only)
