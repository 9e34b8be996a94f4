"""Annotation-level scene model: the original-domain data and its ground truth.

Scenes carry no pixel buffers. An image is its dimensions, a bit-per-pixel
model, and a list of annotated object instances; that is everything the
goal function and the size accounting consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .errors import UnknownClass

# Default honors the 3-channel x 64-bit convention used for size
# accounting; set 24 for realistic 8-bit RGB.
DEFAULT_PIXEL_BITS = 192


@dataclass(frozen=True)
class ClassVocabulary:
    """Ordered, fixed set of class names; defines SemanticVector indexing."""

    classes: tuple[str, ...]

    def __post_init__(self):
        if not self.classes:
            raise ValueError("vocabulary must not be empty")
        if len(set(self.classes)) != len(self.classes):
            raise ValueError("vocabulary contains duplicate class names")
        if any(not isinstance(c, str) or not c for c in self.classes):
            raise ValueError("class names must be non-empty strings")
        object.__setattr__(self, "_index", {c: i for i, c in enumerate(self.classes)})

    @classmethod
    def of(cls, names: Sequence[str]) -> "ClassVocabulary":
        return cls(tuple(names))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownClass(name) from None

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[str]:
        return iter(self.classes)


@dataclass(frozen=True)
class ObjectInstance:
    """One annotated object: class name plus integer pixel bbox (x, y, w, h).

    Construction is permissive about geometry so that validate_scene can
    report violations instead of losing them to a constructor.
    """

    class_name: str
    bbox: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.bbox) != 4 or any(not isinstance(v, int) or isinstance(v, bool) for v in self.bbox):
            raise ValueError("bbox must be four integers (x, y, w, h)")
        object.__setattr__(self, "bbox", tuple(self.bbox))

    @property
    def width(self) -> int:
        return self.bbox[2]

    @property
    def height(self) -> int:
        return self.bbox[3]


@dataclass(frozen=True)
class SceneImage:
    """Ground-truth representation of one image."""

    id: str
    width: int
    height: int
    pixel_bits: int = DEFAULT_PIXEL_BITS
    objects: tuple[ObjectInstance, ...] = ()

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"scene {self.id!r}: dimensions must be >= 1")
        if self.pixel_bits < 1:
            raise ValueError(f"scene {self.id!r}: pixel_bits must be >= 1")
        object.__setattr__(self, "objects", tuple(self.objects))


@dataclass(frozen=True)
class SemanticVector:
    """Per-class count vector in vocabulary order; the currency of the goal function.

    Ground-truth vectors are integer-valued; averaged reconstructions may
    be fractional.
    """

    counts: tuple[float, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be non-negative")
        object.__setattr__(self, "counts", tuple(float(c) for c in self.counts))

    @classmethod
    def zeros(cls, size: int) -> "SemanticVector":
        return cls((0.0,) * size)

    @classmethod
    def from_mapping(cls, counts: Mapping[str, float], vocab: ClassVocabulary) -> "SemanticVector":
        values = [0.0] * len(vocab)
        for name, count in counts.items():
            values[vocab.index(name)] = float(count)
        return cls(tuple(values))

    def __add__(self, other: "SemanticVector") -> "SemanticVector":
        if len(self.counts) != len(other.counts):
            raise ValueError("vector lengths differ")
        return SemanticVector(tuple(a + b for a, b in zip(self.counts, other.counts)))

    def scaled(self, factor: float) -> "SemanticVector":
        return SemanticVector(tuple(c * factor for c in self.counts))

    def norm(self) -> float:
        return sum(c * c for c in self.counts) ** 0.5

    def total(self) -> float:
        return sum(self.counts)

    def __len__(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class Violation:
    """One invariant violation found by validate_scene."""

    code: str
    message: str
    object_index: int | None = None


BBOX_OUT_OF_BOUNDS = "BboxOutOfBounds"
UNKNOWN_CLASS = "UnknownClass"
NON_POSITIVE_DIMS = "NonPositiveDims"


def binary_size(scene: SceneImage) -> int:
    """Exact binary size of the original image in bits: width * height * pixel_bits."""
    return scene.width * scene.height * scene.pixel_bits


def semantic_truth(scene: SceneImage, vocab: ClassVocabulary) -> SemanticVector:
    """Ground-truth class-count vector of the scene, in vocabulary order."""
    counts = [0.0] * len(vocab)
    for obj in scene.objects:
        counts[vocab.index(obj.class_name)] += 1.0
    return SemanticVector(tuple(counts))


def validate_scene(scene: SceneImage, vocab: ClassVocabulary) -> list[Violation]:
    """All invariant violations in the scene; empty list means valid."""
    violations: list[Violation] = []
    for i, obj in enumerate(scene.objects):
        x, y, w, h = obj.bbox
        if w < 1 or h < 1:
            violations.append(Violation(
                NON_POSITIVE_DIMS,
                f"object {i}: bbox dims {w}x{h} must be >= 1x1",
                object_index=i,
            ))
        elif x < 0 or y < 0 or x + w > scene.width or y + h > scene.height:
            violations.append(Violation(
                BBOX_OUT_OF_BOUNDS,
                f"object {i}: bbox {obj.bbox} exceeds {scene.width}x{scene.height} image",
                object_index=i,
            ))
        if obj.class_name not in vocab:
            violations.append(Violation(
                UNKNOWN_CLASS,
                f"object {i}: class {obj.class_name!r} not in vocabulary",
                object_index=i,
            ))
    return violations
