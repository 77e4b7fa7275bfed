"""Empirical estimators: sample means, weighted averages, shrinkage.

These operate on realized numbers only. Everything closed-form (moments in,
errors out) lives in :mod:`collab_avg.theory`; everything random lives in
:mod:`collab_avg.montecarlo`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class SampleSet:
    """A non-empty batch of scalar observations from one source."""

    values: np.ndarray
    source: str = "X"

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError("SampleSet values must be one-dimensional")
        if values.size == 0:
            raise ValueError("SampleSet must not be empty")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.size)


def empirical_mean(samples: SampleSet | np.ndarray | list[float]) -> float:
    """Arithmetic mean of the observations."""
    values = samples.values if isinstance(samples, SampleSet) else np.asarray(samples, dtype=np.float64)
    if values.size == 0:
        raise ValueError("empirical_mean requires at least one observation")
    return float(values.mean())


def weighted_average(local: float, helper: float, alpha: float) -> float:
    """Interpolate between a local and a helper estimate.

    Returns ``(1 - alpha) * local + alpha * helper``; ``alpha`` is the
    weight given to the helper and must lie in [0, 1].
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha!r}")
    return (1.0 - alpha) * local + alpha * helper


def shrink(local: float, anchor: float, alpha: float) -> float:
    """Pull an estimate toward a fixed anchor value.

    Shrinkage is weighted averaging with a constant helper; with
    ``anchor=0`` this is plain multiplicative shrinkage ``(1 - alpha) * local``.
    """
    return weighted_average(local, anchor, alpha)


def squared_error(estimate: float, target: float) -> float:
    """Per-realization squared error; its expectation is the ESE."""
    return (estimate - target) ** 2
