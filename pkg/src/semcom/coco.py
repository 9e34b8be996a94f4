"""Ingestion of COCO-style instance annotation documents into native datasets.

Only the annotation structure is consumed (images, annotations,
categories); no image files are touched. Float bboxes are converted to
covering integer boxes: floor(x), floor(y), ceil(w), ceil(h), then
clamped to the image bounds.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Sequence

from .datasets import Dataset
from .errors import SchemaError, UnknownCategory
from .scene import DEFAULT_PIXEL_BITS, ClassVocabulary, ObjectInstance, SceneImage


def _require(condition: bool, message: str, path: str):
    if not condition:
        raise SchemaError(message, path)


def _int_bbox(bbox: Sequence[float], width: int, height: int) -> tuple[int, int, int, int]:
    x = math.floor(bbox[0])
    y = math.floor(bbox[1])
    w = math.ceil(bbox[2])
    h = math.ceil(bbox[3])
    x = min(max(x, 0), width - 1)
    y = min(max(y, 0), height - 1)
    w = max(1, min(w, width - x))
    h = max(1, min(h, height - y))
    return (x, y, w, h)


def import_coco(instances_path: str | Path, max_images: int | None = None,
                vocab_filter: Sequence[str] | None = None,
                pixel_bits: int = DEFAULT_PIXEL_BITS) -> Dataset:
    """Build a native dataset from a COCO instances annotation file.

    Images are ordered by ascending id; ``max_images`` keeps the first N.
    ``vocab_filter`` restricts the vocabulary (and drops annotations of
    other categories), in the order given; otherwise categories are taken
    in ascending category-id order.
    """
    with open(instances_path, encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}", "$") from None
    _require(isinstance(doc, dict), "instances document must be a JSON object", "$")
    for key in ("images", "annotations", "categories"):
        _require(key in doc, f"missing required key {key!r}", "$")
        _require(isinstance(doc[key], list), f"{key!r} must be a list", f"$.{key}")

    category_names: dict[int, str] = {}
    for i, category in enumerate(doc["categories"]):
        path = f"$.categories[{i}]"
        _require(isinstance(category, dict), "category must be an object", path)
        _require("id" in category and "name" in category, "category needs 'id' and 'name'", path)
        cat_id, name = category["id"], category["name"]
        _require(isinstance(cat_id, int) and isinstance(name, str), "bad category types", path)
        _require(cat_id not in category_names, f"duplicate category id {cat_id}", path)
        category_names[cat_id] = name

    if vocab_filter is not None:
        known = set(category_names.values())
        for name in vocab_filter:
            _require(name in known, f"filter class {name!r} not among categories", "$.categories")
        vocab = ClassVocabulary.of(list(vocab_filter))
    else:
        vocab = ClassVocabulary.of([category_names[cid] for cid in sorted(category_names)])

    image_meta: dict[int, tuple[int, int]] = {}
    for i, image in enumerate(doc["images"]):
        path = f"$.images[{i}]"
        _require(isinstance(image, dict), "image must be an object", path)
        for field_name in ("id", "width", "height"):
            _require(field_name in image, f"missing {field_name!r}", path)
            _require(isinstance(image[field_name], int) and not isinstance(image[field_name], bool),
                     f"{field_name!r} must be an int", path)
        _require(image["width"] >= 1 and image["height"] >= 1, "image dims must be >= 1", path)
        _require(image["id"] not in image_meta, f"duplicate image id {image['id']}", path)
        image_meta[image["id"]] = (image["width"], image["height"])

    kept_ids = sorted(image_meta)
    if max_images is not None:
        kept_ids = kept_ids[:max_images]
    kept = set(kept_ids)

    objects_by_image: dict[int, list[ObjectInstance]] = {image_id: [] for image_id in kept_ids}
    for i, annotation in enumerate(doc["annotations"]):
        path = f"$.annotations[{i}]"
        _require(isinstance(annotation, dict), "annotation must be an object", path)
        for field_name in ("image_id", "category_id", "bbox"):
            _require(field_name in annotation, f"missing {field_name!r}", path)
        image_id = annotation["image_id"]
        _require(isinstance(image_id, int), "'image_id' must be an int", path)
        _require(image_id in image_meta, f"annotation references unknown image {image_id}", path)
        category_id = annotation["category_id"]
        if category_id not in category_names:
            raise UnknownCategory(f"{path}: annotation references missing category {category_id}")
        bbox = annotation["bbox"]
        _require(isinstance(bbox, list) and len(bbox) == 4
                 and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in bbox),
                 "'bbox' must be four numbers [x, y, w, h]", path)
        if image_id not in kept:
            continue
        class_name = category_names[category_id]
        if class_name not in vocab:
            continue
        width, height = image_meta[image_id]
        objects_by_image[image_id].append(ObjectInstance(class_name, _int_bbox(bbox, width, height)))

    scenes = []
    for image_id in kept_ids:
        width, height = image_meta[image_id]
        scenes.append(SceneImage(str(image_id), width, height, pixel_bits,
                                 tuple(objects_by_image[image_id])))
    return Dataset(vocab, tuple(scenes))
