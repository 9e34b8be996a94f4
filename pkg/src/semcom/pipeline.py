"""Per-image evaluation pipeline: encode, transmit, decode, detect, score.

This is the shared engine behind both runnable pipelines and the codec
selector. Each image's randomness derives from (run_seed, image id, stage),
so records are reproducible regardless of evaluation order or worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal, Sequence

from .channel import ChannelConfig, transmit
from .codecs import (
    CaptionNoise,
    NOISELESS,
    decode_caption,
    decode_raw,
    encode_caption,
    encode_crops,
    encode_raw,
)
from .detector import DetectorModel, detect, detect_objects_list
from .errors import EmptyDataset, EmptyTruth
from .metrics import (
    ConstraintSpec,
    Feasibility,
    MetricRecord,
    check_constraints,
    constraint_violation,
    gain,
    semantic_error,
    weighted_error,
)
from .scene import ClassVocabulary, SceneImage, SemanticVector, binary_size, semantic_truth
from .seeding import derive_seed

CodecKind = Literal["caption", "crops", "raw"]


@dataclass(frozen=True)
class CodecConfig:
    """One candidate encoder/decoder configuration."""

    name: str
    kind: CodecKind
    captions: int = 5
    noise: CaptionNoise = NOISELESS

    def __post_init__(self):
        if self.kind not in ("caption", "crops", "raw"):
            raise ValueError(f"unknown codec kind {self.kind!r}")
        if not self.name:
            raise ValueError("codec config needs a name")
        if self.kind == "caption" and self.captions < 1:
            raise ValueError("caption codec needs captions >= 1")


@dataclass
class EvaluationSummary:
    """Dataset-level aggregation of one codec configuration."""

    name: str
    mean_gain: float
    mean_error: float
    mean_weighted_error: float
    verdict: Feasibility | None
    violation: float
    records: list[MetricRecord] = field(repr=False, default_factory=list)
    error_image_count: int = 0
    empty_truth_count: int = 0
    undelivered_count: int = 0


def evaluate_image(scene: SceneImage, vocab: ClassVocabulary, codec: CodecConfig,
                   detector: DetectorModel, channel: ChannelConfig,
                   run_seed: int) -> MetricRecord:
    """Full pipeline for one image, producing its metric record."""
    base = derive_seed(run_seed, "image", scene.id)
    truth = semantic_truth(scene, vocab)
    empty_truth = truth.norm() == 0.0

    if codec.kind == "caption":
        payload = encode_caption(scene, vocab, codec.captions, codec.noise,
                                 derive_seed(base, "encode"))
    elif codec.kind == "crops":
        payload = encode_crops(scene)
    else:
        payload = encode_raw(scene)

    delivery = transmit(payload, channel, derive_seed(base, "channel"))
    source_bits = binary_size(scene)
    gain_value = gain(source_bits, payload.size_bits)

    error_value: float | None
    if empty_truth:
        error_value = None
    elif not delivery.delivered:
        # Nothing received: the reconstruction is the zero vector.
        error_value = 1.0
    else:
        reconstructed = _reconstruct(payload, vocab, codec, detector, base)
        error_value = semantic_error(truth, reconstructed)

    weighted = None if error_value is None else weighted_error(gain_value, error_value)
    return MetricRecord(
        image_id=scene.id,
        codec=codec.name,
        source_bits=source_bits,
        payload_bits=payload.size_bits,
        gain=gain_value,
        error=error_value,
        weighted_error=weighted,
        delivered=delivery.delivered,
        violated_budget=delivery.violated_budget,
        empty_truth=empty_truth,
    )


def _reconstruct(payload, vocab, codec: CodecConfig, detector: DetectorModel,
                 base_seed: int) -> SemanticVector:
    if codec.kind == "caption":
        sketches = decode_caption(payload, codec.noise, derive_seed(base_seed, "decode"))
        total = SemanticVector.zeros(len(vocab))
        for k, sketch in enumerate(sketches):
            total = total + detect(sketch, vocab, detector, derive_seed(base_seed, "detect", k))
        return total.scaled(1.0 / len(sketches))
    if codec.kind == "crops":
        return detect_objects_list(payload.body, vocab, detector, derive_seed(base_seed, "detect"))
    return detect(decode_raw(payload), vocab, detector, derive_seed(base_seed, "detect"))


def evaluate_dataset(scenes: Sequence[SceneImage], vocab: ClassVocabulary,
                     codec: CodecConfig, detector: DetectorModel,
                     channel: ChannelConfig, run_seed: int,
                     workers: int = 1) -> list[MetricRecord]:
    """Records for every scene, in dataset order regardless of worker count."""
    if workers <= 1:
        return [evaluate_image(s, vocab, codec, detector, channel, run_seed) for s in scenes]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(
            lambda s: evaluate_image(s, vocab, codec, detector, channel, run_seed), scenes))


def aggregate(name: str, records: Sequence[MetricRecord],
              constraints: ConstraintSpec | None = None,
              include_undelivered: bool = True) -> EvaluationSummary:
    """Dataset means in fixed record order, plus the feasibility verdict.

    Undelivered images stay in the means by default (scoring error 1);
    empty-truth images never contribute to error means.
    """
    if not records:
        raise EmptyDataset("no records to aggregate")
    included = list(records) if include_undelivered else [r for r in records if r.delivered]
    if not included:
        raise EmptyDataset("no delivered records to aggregate")
    mean_gain = sum(r.gain for r in included) / len(included)
    error_records = [r for r in included if r.error is not None]
    if not error_records:
        raise EmptyTruth("every included image has empty ground truth; error mean is undefined")
    mean_error = sum(r.error for r in error_records) / len(error_records)
    mean_weighted = sum(r.weighted_error for r in error_records) / len(error_records)
    verdict = None
    violation = 0.0
    if constraints is not None:
        verdict = check_constraints(mean_gain, mean_error, constraints)
        violation = constraint_violation(mean_gain, mean_error, constraints)
    return EvaluationSummary(
        name=name,
        mean_gain=mean_gain,
        mean_error=mean_error,
        mean_weighted_error=mean_weighted,
        verdict=verdict,
        violation=violation,
        records=list(records),
        error_image_count=len(error_records),
        empty_truth_count=sum(1 for r in records if r.empty_truth),
        undelivered_count=sum(1 for r in records if not r.delivered),
    )
