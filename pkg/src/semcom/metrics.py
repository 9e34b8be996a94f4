"""Semantic error, communication gain, weighted error, and constraint checks.

The three metrics:

    error          E  = ||h(X) - h(Y)||_2 / ||h(X)||_2
    gain           G  = 1 - payload_bits / source_bits
    weighted error Ew = (1 - G) * E

E is undefined when the ground truth is empty (zero norm); callers exclude
such images from error averaging and count them separately.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import EmptySeries, EmptyTruth, ZeroSource
from .scene import SemanticVector


class Feasibility(enum.Enum):
    FEASIBLE = "feasible"
    GAIN_VIOLATED = "gain_violated"
    ERROR_VIOLATED = "error_violated"
    BOTH_VIOLATED = "both"

    def __bool__(self) -> bool:
        return self is Feasibility.FEASIBLE


@dataclass(frozen=True)
class ConstraintSpec:
    """Feasibility constraints: minimum mean gain g0 and maximum mean error eps0.

    Comparisons are inclusive by default (mean gain >= g0, mean error <= eps0);
    strict mode uses > and <.
    """

    min_gain: float = 0.0
    max_error: float = math.inf
    strict: bool = False

    def __post_init__(self):
        if not 0.0 <= self.min_gain < 1.0:
            raise ValueError("min_gain must lie in [0, 1)")
        if not self.max_error > 0.0:
            raise ValueError("max_error must be positive")


@dataclass(frozen=True)
class MetricRecord:
    """Per-image metric outcome and payload accounting.

    error/weighted_error are None for empty-truth images, where the error
    metric is undefined.
    """

    image_id: str
    codec: str
    source_bits: int
    payload_bits: int
    gain: float
    error: float | None
    weighted_error: float | None
    delivered: bool
    violated_budget: bool = False
    empty_truth: bool = False


def _counts(v: SemanticVector | Sequence[float]) -> Sequence[float]:
    return v.counts if isinstance(v, SemanticVector) else v


def semantic_error(truth: SemanticVector | Sequence[float],
                   reconstructed: SemanticVector | Sequence[float]) -> float:
    """Normalized Euclidean distance between truth and reconstruction vectors."""
    hx = _counts(truth)
    hy = _counts(reconstructed)
    if len(hx) != len(hy):
        raise ValueError(f"vector lengths differ: {len(hx)} vs {len(hy)}")
    truth_norm = math.sqrt(sum(a * a for a in hx))
    if truth_norm == 0.0:
        raise EmptyTruth("ground-truth vector has zero norm; error is undefined")
    distance = math.sqrt(sum((a - b) ** 2 for a, b in zip(hx, hy)))
    return distance / truth_norm


def gain(source_bits: int, payload_bits: int) -> float:
    """Fractional data-transfer saving of sending the payload instead of the source."""
    if source_bits <= 0:
        raise ZeroSource(f"source_bits must be positive, got {source_bits}")
    return 1.0 - payload_bits / source_bits


def weighted_error(gain_value: float, error_value: float) -> float:
    """Error weighted by the fraction of data actually transmitted: (1 - G) * E."""
    return (1.0 - gain_value) * error_value


def cumulative_average(series: Sequence[float]) -> list[float]:
    """Running mean of the series: out[k] is the mean of series[0..k]."""
    if len(series) == 0:
        raise EmptySeries("cannot average an empty series")
    out = []
    running = 0.0
    for k, value in enumerate(series):
        running += value
        out.append(running / (k + 1))
    return out


def check_constraints(mean_gain: float, mean_error: float, spec: ConstraintSpec) -> Feasibility:
    """Feasibility of observed means against the constraint spec."""
    if spec.strict:
        gain_ok = mean_gain > spec.min_gain
        error_ok = mean_error < spec.max_error
    else:
        gain_ok = mean_gain >= spec.min_gain
        error_ok = mean_error <= spec.max_error
    if gain_ok and error_ok:
        return Feasibility.FEASIBLE
    if not gain_ok and not error_ok:
        return Feasibility.BOTH_VIOLATED
    return Feasibility.GAIN_VIOLATED if not gain_ok else Feasibility.ERROR_VIOLATED


def constraint_violation(mean_gain: float, mean_error: float, spec: ConstraintSpec) -> float:
    """Total constraint-violation magnitude; zero iff within both bounds."""
    gain_gap = max(0.0, spec.min_gain - mean_gain)
    error_gap = 0.0
    if math.isfinite(spec.max_error):
        error_gap = max(0.0, mean_error - spec.max_error)
    return gain_gap + error_gap
