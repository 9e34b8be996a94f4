"""Constrained codec selection by exhaustive evaluation of a finite candidate set.

Every candidate configuration is evaluated on the calibration dataset;
among those meeting both constraints (minimum mean gain, maximum mean
error) the one with the lowest mean weighted error wins. Ties break on
lower mean error, then lexicographic name, so selection is invariant
under permutation of the candidate list. Infeasibility is a first-class
result carrying all summaries ranked by how badly they violate the
constraints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .channel import ChannelConfig
from .datasets import Dataset
from .detector import DetectorModel
from .errors import EmptyConfigSet, EmptyDataset
from .metrics import ConstraintSpec, Feasibility
from .pipeline import CodecConfig, EvaluationSummary, aggregate, evaluate_dataset
from .seeding import derive_seed


@dataclass
class SelectionResult:
    """Outcome of select(): the winner when feasible, diagnostics always."""

    feasible: bool
    best: EvaluationSummary | None
    summaries: list[EvaluationSummary]


def evaluate_config(config: CodecConfig, dataset: Dataset, detector: DetectorModel,
                    channel: ChannelConfig, seed: int,
                    constraints: ConstraintSpec | None = None,
                    include_undelivered: bool = True,
                    workers: int = 1) -> EvaluationSummary:
    """Run the full pipeline for one configuration over the dataset."""
    if not dataset.scenes:
        raise EmptyDataset("dataset has no images")
    records = evaluate_dataset(dataset.scenes, dataset.vocabulary, config,
                               detector, channel, seed, workers=workers)
    return aggregate(config.name, records, constraints, include_undelivered)


def _selection_key(summary: EvaluationSummary) -> tuple[float, float, str]:
    return (summary.mean_weighted_error, summary.mean_error, summary.name)


def select(configs: Sequence[CodecConfig], dataset: Dataset, detector: DetectorModel,
           channel: ChannelConfig, constraints: ConstraintSpec, seed: int,
           include_undelivered: bool = True, workers: int = 1) -> SelectionResult:
    """Evaluate every candidate and pick the feasible one minimizing mean weighted error."""
    if not configs:
        raise EmptyConfigSet("no codec configurations to select from")
    names = [c.name for c in configs]
    if len(set(names)) != len(names):
        raise ValueError("codec config names must be unique")

    summaries = [
        evaluate_config(config, dataset, detector, channel,
                        derive_seed(seed, "config", config.name),
                        constraints, include_undelivered, workers)
        for config in configs
    ]
    feasible = [s for s in summaries if s.verdict is Feasibility.FEASIBLE]
    if feasible:
        ranked = sorted(feasible, key=_selection_key)
        ranked += sorted((s for s in summaries if s.verdict is not Feasibility.FEASIBLE),
                         key=lambda s: (s.violation, s.name))
        return SelectionResult(feasible=True, best=ranked[0], summaries=ranked)
    ranked = sorted(summaries, key=lambda s: (s.violation, s.name))
    return SelectionResult(feasible=False, best=None, summaries=ranked)
