"""Semantic codecs: encoder/decoder pairs between the original and semantic domains.

Three built-ins:

* caption codec -- the image is described by K textual captions; the
  receiver regenerates content from text. Captions use a deterministic
  grammar so the decoder is implementable and testable; real natural
  language enters only through the model bridge.
* crop codec -- only the annotated objects are transmitted, background
  removed; decoding is the identity at the semantic level.
* raw codec -- the traditional-communication baseline: the full image is
  transmitted and nothing is saved.

Caption grammar (canonical form):

    caption := item (";" item)* | ""
    item    := count " " class_name

with counts in decimal and classes emitted in vocabulary order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Literal, Mapping, Sequence

from .errors import ParseError
from .scene import ClassVocabulary, SceneImage, binary_size
from .seeding import rng_for

PayloadKind = Literal["captions", "crops", "raw"]

CAPTIONS: PayloadKind = "captions"
CROPS: PayloadKind = "crops"
RAW: PayloadKind = "raw"

_ITEM_RE = re.compile(r"^(0|[1-9][0-9]*) (\S(?:[^;\n]*\S)?)$")


@dataclass(frozen=True)
class CaptionSet:
    """K captions describing one image."""

    captions: tuple[str, ...]

    def __post_init__(self):
        if not self.captions:
            raise ValueError("a caption set needs at least one caption")
        object.__setattr__(self, "captions", tuple(self.captions))


@dataclass(frozen=True)
class ObjectCrop:
    """One transmitted object: class plus bbox dimensions, background removed."""

    class_name: str
    width: int
    height: int
    pixel_bits: int

    def __post_init__(self):
        if self.width * self.height < 1:
            raise ValueError("crop area must be >= 1 pixel")

    @property
    def size_bits(self) -> int:
        return self.width * self.height * self.pixel_bits


@dataclass(frozen=True)
class ReconstructionSketch:
    """Semantic-level reconstruction: the realized object multiset.

    Pixel content is never synthesized; the goal function consumes class
    counts only. ``provenance`` records which caption or codec produced
    the sketch.
    """

    counts: Mapping[str, int]
    provenance: str = ""

    def __post_init__(self):
        for name, count in self.counts.items():
            if not isinstance(count, int) or isinstance(count, bool) or count < 0:
                raise ValueError(f"count for {name!r} must be a non-negative integer")
        object.__setattr__(self, "counts", dict(self.counts))


@dataclass(frozen=True)
class CaptionNoise:
    """Imperfection model for the captioner and the text-to-image generator.

    p_mention: probability each object is mentioned in a given caption.
    p_realize: probability a mentioned object is realized by the generator.
    count_jitter: max absolute integer perturbation of realized counts.
    """

    p_mention: float = 1.0
    p_realize: float = 1.0
    count_jitter: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p_mention <= 1.0:
            raise ValueError("p_mention must lie in [0, 1]")
        if not 0.0 <= self.p_realize <= 1.0:
            raise ValueError("p_realize must lie in [0, 1]")
        if self.count_jitter < 0:
            raise ValueError("count_jitter must be >= 0")


NOISELESS = CaptionNoise()


@dataclass(frozen=True)
class Payload:
    """Output of a semantic encoder plus its exact transmitted size in bits."""

    kind: PayloadKind
    body: CaptionSet | tuple[ObjectCrop, ...] | ReconstructionSketch
    size_bits: int

    def __post_init__(self):
        if self.size_bits < 0:
            raise ValueError("size_bits must be >= 0")


def serialize_caption(counts_in_vocab_order: Sequence[tuple[int, str]]) -> str:
    """Canonical caption text for (count, class) items; zero counts are omitted."""
    return ";".join(f"{count} {name}" for count, name in counts_in_vocab_order if count > 0)


def parse_caption(text: str) -> list[tuple[int, str]]:
    """Parse one caption back to (count, class) items; strict on the grammar."""
    if text == "":
        return []
    items = []
    for piece in text.split(";"):
        match = _ITEM_RE.match(piece)
        if match is None:
            raise ParseError(f"malformed caption item {piece!r}")
        items.append((int(match.group(1)), match.group(2)))
    return items


def caption_payload_bits(captions: Sequence[str]) -> int:
    """Bit size of the canonical serialization: captions joined by newline, UTF-8."""
    return 8 * len("\n".join(captions).encode("utf-8"))


def encode_caption(scene: SceneImage, vocab: ClassVocabulary, k: int,
                   noise: CaptionNoise = NOISELESS, seed: int = 0) -> Payload:
    """Describe the scene with K captions, each mentioning objects independently."""
    if k < 1:
        raise ValueError("caption count must be >= 1")
    captions = []
    for caption_index in range(k):
        rng = rng_for(seed, "mention", caption_index)
        mentioned = rng.random(len(scene.objects)) < noise.p_mention
        counts = [0] * len(vocab)
        for obj, hit in zip(scene.objects, mentioned):
            if hit:
                counts[vocab.index(obj.class_name)] += 1
        captions.append(serialize_caption(list(zip(counts, vocab.classes))))
    caption_set = CaptionSet(tuple(captions))
    return Payload(CAPTIONS, caption_set, caption_payload_bits(captions))


def decode_caption(payload: Payload, noise: CaptionNoise = NOISELESS,
                   seed: int = 0) -> list[ReconstructionSketch]:
    """Regenerate one semantic sketch per caption.

    Each counted object is realized with probability p_realize; realized
    class counts are then perturbed by a uniform integer jitter, floored
    at zero.
    """
    if payload.kind != CAPTIONS:
        raise ValueError(f"expected a captions payload, got {payload.kind!r}")
    sketches = []
    for caption_index, caption in enumerate(payload.body.captions):
        items = parse_caption(caption)
        rng = rng_for(seed, "realize", caption_index)
        counts: dict[str, int] = {}
        for mentioned_count, class_name in items:
            realized = int(rng.binomial(mentioned_count, noise.p_realize))
            if noise.count_jitter > 0:
                realized += int(rng.integers(-noise.count_jitter, noise.count_jitter + 1))
            realized = max(0, realized)
            if realized > 0:
                counts[class_name] = counts.get(class_name, 0) + realized
        sketches.append(ReconstructionSketch(counts, provenance=f"caption[{caption_index}]"))
    return sketches


def encode_crops(scene: SceneImage) -> Payload:
    """Extract one crop per annotated object; payload size is the summed crop areas."""
    crops = tuple(
        ObjectCrop(obj.class_name, obj.width, obj.height, scene.pixel_bits)
        for obj in scene.objects
    )
    return Payload(CROPS, crops, sum(crop.size_bits for crop in crops))


def decode_crops(payload: Payload) -> ReconstructionSketch:
    """Identity decoding: the crops are the reconstruction."""
    if payload.kind != CROPS:
        raise ValueError(f"expected a crops payload, got {payload.kind!r}")
    counts: dict[str, int] = {}
    for crop in payload.body:
        counts[crop.class_name] = counts.get(crop.class_name, 0) + 1
    return ReconstructionSketch(counts, provenance="crops")


def truth_sketch(scene: SceneImage) -> ReconstructionSketch:
    """The scene's exact class histogram as a sketch."""
    counts: dict[str, int] = {}
    for obj in scene.objects:
        counts[obj.class_name] = counts.get(obj.class_name, 0) + 1
    return ReconstructionSketch(counts, provenance="raw")


def encode_raw(scene: SceneImage) -> Payload:
    """Traditional-communication baseline: transmit the full image."""
    return Payload(RAW, truth_sketch(scene), binary_size(scene))


def decode_raw(payload: Payload) -> ReconstructionSketch:
    """Raw decoding returns the scene's exact truth sketch."""
    if payload.kind != RAW:
        raise ValueError(f"expected a raw payload, got {payload.kind!r}")
    return payload.body
