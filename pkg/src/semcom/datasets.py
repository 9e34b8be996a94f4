"""Native dataset files and synthetic scene generators.

Native dataset schema (JSON, UTF-8):

    { "vocabulary": ["person", ...],
      "images": [ { "id": "...", "width": int, "height": int,
                    "pixel_bits": int (optional, default 192),
                    "objects": [ { "class": "...", "bbox": [x, y, w, h] } ] } ] }

Unknown top-level keys are rejected with a diagnostic naming the key.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import SchemaError
from .scene import (
    DEFAULT_PIXEL_BITS,
    ClassVocabulary,
    ObjectInstance,
    SceneImage,
    validate_scene,
)
from .seeding import rng_for

_TOP_LEVEL_KEYS = {"vocabulary", "images"}


@dataclass(frozen=True)
class Dataset:
    vocabulary: ClassVocabulary
    scenes: tuple[SceneImage, ...]

    def __post_init__(self):
        object.__setattr__(self, "scenes", tuple(self.scenes))

    def __len__(self) -> int:
        return len(self.scenes)


def _require(condition: bool, message: str, path: str):
    if not condition:
        raise SchemaError(message, path)


def dataset_from_dict(doc: object) -> Dataset:
    """Parse and validate a native dataset document."""
    _require(isinstance(doc, dict), "dataset document must be a JSON object", "$")
    for key in doc:
        if key not in _TOP_LEVEL_KEYS:
            raise SchemaError(f"unknown top-level key {key!r}", "$")
    for key in _TOP_LEVEL_KEYS:
        _require(key in doc, f"missing required key {key!r}", "$")

    vocab_raw = doc["vocabulary"]
    _require(isinstance(vocab_raw, list) and vocab_raw, "vocabulary must be a non-empty list",
             "$.vocabulary")
    _require(all(isinstance(c, str) for c in vocab_raw), "class names must be strings",
             "$.vocabulary")
    try:
        vocab = ClassVocabulary.of(vocab_raw)
    except ValueError as exc:
        raise SchemaError(str(exc), "$.vocabulary") from None

    images_raw = doc["images"]
    _require(isinstance(images_raw, list), "images must be a list", "$.images")
    scenes = []
    for i, image in enumerate(images_raw):
        path = f"$.images[{i}]"
        _require(isinstance(image, dict), "image entry must be an object", path)
        for field_name, kind in (("id", str), ("width", int), ("height", int)):
            _require(field_name in image, f"missing {field_name!r}", path)
            _require(isinstance(image[field_name], kind) and not isinstance(image[field_name], bool),
                     f"{field_name!r} must be a {kind.__name__}", path)
        pixel_bits = image.get("pixel_bits", DEFAULT_PIXEL_BITS)
        _require(isinstance(pixel_bits, int) and not isinstance(pixel_bits, bool),
                 "'pixel_bits' must be an int", path)
        objects = []
        for j, obj in enumerate(image.get("objects", [])):
            obj_path = f"{path}.objects[{j}]"
            _require(isinstance(obj, dict), "object entry must be an object", obj_path)
            _require("class" in obj and isinstance(obj["class"], str), "missing 'class'", obj_path)
            bbox = obj.get("bbox")
            _require(isinstance(bbox, list) and len(bbox) == 4
                     and all(isinstance(v, int) and not isinstance(v, bool) for v in bbox),
                     "'bbox' must be four integers [x, y, w, h]", obj_path)
            objects.append(ObjectInstance(obj["class"], tuple(bbox)))
        try:
            scene = SceneImage(image["id"], image["width"], image["height"],
                               pixel_bits, tuple(objects))
        except ValueError as exc:
            raise SchemaError(str(exc), path) from None
        violations = validate_scene(scene, vocab)
        if violations:
            raise SchemaError("; ".join(f"{v.code}: {v.message}" for v in violations), path)
        scenes.append(scene)
    return Dataset(vocab, tuple(scenes))


def load_dataset(path: str | Path) -> Dataset:
    """Load a native dataset file."""
    with open(path, encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}", "$") from None
    return dataset_from_dict(doc)


def dataset_to_dict(dataset: Dataset) -> dict:
    return {
        "vocabulary": list(dataset.vocabulary.classes),
        "images": [
            {
                "id": scene.id,
                "width": scene.width,
                "height": scene.height,
                "pixel_bits": scene.pixel_bits,
                "objects": [
                    {"class": obj.class_name, "bbox": list(obj.bbox)}
                    for obj in scene.objects
                ],
            }
            for scene in dataset.scenes
        ],
    }


def save_dataset(dataset: Dataset, path: str | Path):
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(dataset_to_dict(dataset), handle, indent=2)
        handle.write("\n")


def random_scenes(count: int, vocab: ClassVocabulary, *, width: int = 64, height: int = 64,
                  pixel_bits: int = DEFAULT_PIXEL_BITS, min_objects: int = 1,
                  max_objects: int = 6, min_side: int = 4, max_side: int = 16,
                  seed: int = 0) -> Dataset:
    """Synthetic scenes with a uniform number of randomly placed objects."""
    if not 1 <= min_side <= max_side <= min(width, height):
        raise ValueError("object sides must satisfy 1 <= min_side <= max_side <= image side")
    if not 0 <= min_objects <= max_objects:
        raise ValueError("object counts must satisfy 0 <= min_objects <= max_objects")
    scenes = []
    for i in range(count):
        rng = rng_for(seed, "scene", i)
        n_objects = int(rng.integers(min_objects, max_objects + 1))
        objects = []
        for _ in range(n_objects):
            class_name = vocab.classes[int(rng.integers(len(vocab)))]
            w = int(rng.integers(min_side, max_side + 1))
            h = int(rng.integers(min_side, max_side + 1))
            x = int(rng.integers(0, width - w + 1))
            y = int(rng.integers(0, height - h + 1))
            objects.append(ObjectInstance(class_name, (x, y, w, h)))
        scenes.append(SceneImage(f"scene-{i:05d}", width, height, pixel_bits, tuple(objects)))
    return Dataset(vocab, tuple(scenes))


# Tile shapes used to hit an exact half-image coverage: area -> (w, h) choices.
_HALF_TILES = {1024: [(32, 32)], 512: [(32, 16), (16, 32)], 256: [(16, 16)]}


def half_coverage_scenes(count: int, vocab: ClassVocabulary, *, width: int = 64,
                         height: int = 64, pixel_bits: int = DEFAULT_PIXEL_BITS,
                         seed: int = 0) -> Dataset:
    """Scenes whose bbox areas sum to exactly half the image area.

    Used for the low-error-tolerance scenario, where the crop codec's gain
    is then exactly 0.5 on every image.
    """
    if width < 32 or height < 32:
        raise ValueError("half-coverage scenes need at least a 32x32 image")
    target = (width * height) // 2
    if (width * height) % 2 != 0 or target % 256 != 0:
        raise ValueError("image area must be an even multiple of 512 pixels")
    scenes = []
    for i in range(count):
        rng = rng_for(seed, "scene", i)
        objects = []
        remaining = target
        while remaining > 0:
            choices = [a for a in _HALF_TILES if a <= remaining]
            area = choices[int(rng.integers(len(choices)))]
            shapes = _HALF_TILES[area]
            w, h = shapes[int(rng.integers(len(shapes)))]
            x = int(rng.integers(0, width - w + 1))
            y = int(rng.integers(0, height - h + 1))
            class_name = vocab.classes[int(rng.integers(len(vocab)))]
            objects.append(ObjectInstance(class_name, (x, y, w, h)))
            remaining -= area
        scenes.append(SceneImage(f"scene-{i:05d}", width, height, pixel_bits, tuple(objects)))
    return Dataset(vocab, tuple(scenes))
