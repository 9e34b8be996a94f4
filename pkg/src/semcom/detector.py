"""Emulated object detector: the goal function that reduces content to class counts.

The emulation is parameterized (per-class detection probability, Poisson
false positives, optional confusion between classes) and seed-deterministic:
detect(e, vocab, model, seed) is bit-identical across repeated calls and
thread schedules. With the default perfect model it coincides with the
ground-truth class histogram.

No bounding-box matching, confidence thresholds, or mAP: the goal metric
consumes class counts only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

from .codecs import ObjectCrop, ReconstructionSketch
from .errors import UnknownClass
from .scene import ClassVocabulary, SceneImage, SemanticVector
from .seeding import derive_seed, rng_for

Evaluable = Union[SceneImage, Sequence[ObjectCrop], ReconstructionSketch]

_ROW_SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class DetectorModel:
    """Parameterized detector imperfection.

    per_class_detect_prob: scalar applied to every class, or a map
        class -> probability; classes absent from the map use 1.0.
    false_positive_rate: expected spurious detections per image per class
        (Poisson), scalar or per-class map.
    confusion: optional map true_class -> {predicted_class: probability};
        rows may sum to less than 1, the residual mass is a miss. Applied
        only to objects that pass the detection draw.
    """

    per_class_detect_prob: float | Mapping[str, float] = 1.0
    false_positive_rate: float | Mapping[str, float] = 0.0
    confusion: Mapping[str, Mapping[str, float]] | None = None

    def __post_init__(self):
        for p in self._values(self.per_class_detect_prob):
            if not 0.0 <= p <= 1.0:
                raise ValueError("detection probabilities must lie in [0, 1]")
        for r in self._values(self.false_positive_rate):
            if r < 0.0:
                raise ValueError("false-positive rates must be >= 0")
        if self.confusion is not None:
            for true_class, row in self.confusion.items():
                if any(not 0.0 <= p <= 1.0 for p in row.values()):
                    raise ValueError(f"confusion row {true_class!r} has probabilities outside [0, 1]")
                if sum(row.values()) > 1.0 + _ROW_SUM_TOLERANCE:
                    raise ValueError(f"confusion row {true_class!r} sums to more than 1")

    @staticmethod
    def _values(setting: float | Mapping[str, float]):
        return setting.values() if isinstance(setting, Mapping) else (setting,)

    def detect_prob(self, class_name: str) -> float:
        if isinstance(self.per_class_detect_prob, Mapping):
            return self.per_class_detect_prob.get(class_name, 1.0)
        return self.per_class_detect_prob

    def fp_rate(self, class_name: str) -> float:
        if isinstance(self.false_positive_rate, Mapping):
            return self.false_positive_rate.get(class_name, 0.0)
        return self.false_positive_rate

    def relabel(self, class_name: str, draw: float) -> str | None:
        """Predicted label for a detected object; None means the residual miss."""
        if self.confusion is None or class_name not in self.confusion:
            return class_name
        cumulative = 0.0
        for predicted, probability in sorted(self.confusion[class_name].items()):
            cumulative += probability
            if draw < cumulative:
                return predicted
        return None


PERFECT_DETECTOR = DetectorModel()


def _sketch_units(sketch: ReconstructionSketch, vocab: ClassVocabulary) -> list[str]:
    units = []
    for class_name in vocab:
        units.extend([class_name] * int(sketch.counts.get(class_name, 0)))
    for class_name in sketch.counts:
        if class_name not in vocab:
            raise UnknownClass(class_name)
    return units


def _detect_units(units: Sequence[str], vocab: ClassVocabulary,
                  model: DetectorModel, seed: int) -> SemanticVector:
    rng = rng_for(seed)
    size = len(vocab)
    unit_index = np.fromiter((vocab.index(c) for c in units), dtype=np.intp, count=len(units))
    detect_draw = rng.random(len(units))
    label_draw = rng.random(len(units))
    probs = np.array([model.detect_prob(c) for c in vocab], dtype=float)
    detected = detect_draw < probs[unit_index]
    if model.confusion is None:
        counts = np.bincount(unit_index[detected], minlength=size).astype(float)
    else:
        counts = np.zeros(size)
        for j in np.flatnonzero(detected):
            predicted = model.relabel(units[j], label_draw[j])
            if predicted is not None:
                counts[vocab.index(predicted)] += 1.0
    fp_rates = np.array([model.fp_rate(c) for c in vocab], dtype=float)
    counts += rng.poisson(fp_rates)
    return SemanticVector(tuple(float(c) for c in counts))


def detect(evaluable: Evaluable, vocab: ClassVocabulary,
           model: DetectorModel, seed: int) -> SemanticVector:
    """Run the emulated detector over a scene, crop list, or reconstruction sketch."""
    if isinstance(evaluable, SceneImage):
        return _detect_units([o.class_name for o in evaluable.objects], vocab, model, seed)
    if isinstance(evaluable, ReconstructionSketch):
        return _detect_units(_sketch_units(evaluable, vocab), vocab, model, seed)
    return detect_objects_list(evaluable, vocab, model, seed)


def detect_crop(crop: ObjectCrop, vocab: ClassVocabulary,
                model: DetectorModel, seed: int) -> SemanticVector:
    """Detection outcome for a single transmitted object."""
    return _detect_units([crop.class_name], vocab, model, seed)


def detect_objects_list(crops: Sequence[ObjectCrop], vocab: ClassVocabulary,
                        model: DetectorModel, seed: int) -> SemanticVector:
    """Per-crop detections accumulated into one count vector.

    Each crop draws from its own derived stream, so the sum equals the
    singleton detect_crop calls with derive_seed(seed, "crop", i) and is
    independent of evaluation order.
    """
    total = SemanticVector.zeros(len(vocab))
    for i, crop in enumerate(crops):
        total = total + detect_crop(crop, vocab, model, derive_seed(seed, "crop", i))
    return total
