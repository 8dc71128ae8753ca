"""Hybrid physics + neural network regression for streaming measurements.

A fixed analytic physics model and a small trainable feedforward network
are combined through two jointly learned scalar weights.  The package
ships the model, a from-scratch backprop/Adam stack, seeded data
generators, the streaming lifecycle trainer, and CSV/SVG reporting.
"""

from .datagen import (
    Case1Config,
    Case2Config,
    DataBatch,
    sample_case1,
    sample_case2,
    write_batch_csv,
)
from .model import PhysiNet, combiner_gradients, weight_ratio
from .nn import Adam, Network, finite_diff_grad, gradient_check_suite
from .physics import LinearPhysics, SecondOrderFrf, physics_from_dict
from .rng import Rng
from .svg import line_chart
from .trainer import (
    LifecycleResult,
    PredictionSnapshot,
    Scenario,
    StepRecord,
    TrainerConfig,
    case1_scenario,
    case2_scenario,
    mse,
    run_lifecycle,
    train_one_step,
)

__version__ = "0.1.0"

__all__ = [
    "Adam",
    "Case1Config",
    "Case2Config",
    "DataBatch",
    "LifecycleResult",
    "LinearPhysics",
    "Network",
    "PhysiNet",
    "PredictionSnapshot",
    "Rng",
    "Scenario",
    "SecondOrderFrf",
    "StepRecord",
    "TrainerConfig",
    "case1_scenario",
    "case2_scenario",
    "combiner_gradients",
    "finite_diff_grad",
    "gradient_check_suite",
    "line_chart",
    "mse",
    "physics_from_dict",
    "run_lifecycle",
    "sample_case1",
    "sample_case2",
    "train_one_step",
    "weight_ratio",
    "write_batch_csv",
]
