from __future__ import annotations

import json

import pytest

from semcom import SchemaError, UnknownCategory, import_coco, semantic_truth


def coco_fixture() -> dict:
    """Two images, three annotations: image 1 has two person and one car."""
    return {
        "images": [
            {"id": 1, "width": 64, "height": 48},
            {"id": 2, "width": 32, "height": 32},
        ],
        "annotations": [
            {"image_id": 1, "category_id": 10, "bbox": [0.0, 0.0, 8.0, 8.0]},
            {"image_id": 1, "category_id": 10, "bbox": [10.4, 5.6, 20.2, 30.9]},
            {"image_id": 1, "category_id": 20, "bbox": [40.0, 30.0, 30.0, 30.0]},
        ],
        "categories": [
            {"id": 10, "name": "person"},
            {"id": 20, "name": "car"},
        ],
    }


def write_coco(tmp_path, doc, name="instances.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


class TestImport:
    def test_fixture_counts(self, tmp_path):
        dataset = import_coco(write_coco(tmp_path, coco_fixture()))
        assert dataset.vocabulary.classes == ("person", "car")
        assert [s.id for s in dataset.scenes] == ["1", "2"]
        truth = semantic_truth(dataset.scenes[0], dataset.vocabulary)
        assert truth.counts == (2.0, 1.0)
        assert dataset.scenes[1].objects == ()

    def test_float_bbox_covering_box(self, tmp_path):
        dataset = import_coco(write_coco(tmp_path, coco_fixture()))
        boxes = {o.bbox for o in dataset.scenes[0].objects}
        # floor(10.4), floor(5.6), ceil(20.2), ceil(30.9) -> covers the original
        assert (10, 5, 21, 31) in boxes

    def test_out_of_bounds_bbox_clamped(self, tmp_path):
        dataset = import_coco(write_coco(tmp_path, coco_fixture()))
        clamped = next(o for o in dataset.scenes[0].objects if o.bbox[0] == 40)
        # 30 wide / 30 tall at (40, 30) in 64x48 -> clipped to the image edge
        assert clamped.bbox == (40, 30, 24, 18)

    def test_rounding_rule_inside_bounds(self, tmp_path):
        doc = coco_fixture()
        doc["annotations"].append(
            {"image_id": 2, "category_id": 20, "bbox": [3.7, 2.2, 5.1, 6.9]})
        dataset = import_coco(write_coco(tmp_path, doc))
        obj = dataset.scenes[1].objects[0]
        x, y, w, h = obj.bbox
        # floor the corner, ceil the dims: origin never moves right/down and
        # the dims never shrink
        assert (x, y) == (3, 2)
        assert (w, h) == (6, 7)
        assert w >= 5.1 and h >= 6.9

    def test_empty_annotations(self, tmp_path):
        doc = coco_fixture()
        doc["annotations"] = []
        dataset = import_coco(write_coco(tmp_path, doc))
        assert all(scene.objects == () for scene in dataset.scenes)

    def test_max_images_keeps_lowest_ids(self, tmp_path):
        dataset = import_coco(write_coco(tmp_path, coco_fixture()), max_images=1)
        assert [s.id for s in dataset.scenes] == ["1"]

    def test_vocab_filter_order_and_dropping(self, tmp_path):
        dataset = import_coco(write_coco(tmp_path, coco_fixture()), vocab_filter=["car"])
        assert dataset.vocabulary.classes == ("car",)
        assert len(dataset.scenes[0].objects) == 1

    def test_unknown_filter_class(self, tmp_path):
        with pytest.raises(SchemaError):
            import_coco(write_coco(tmp_path, coco_fixture()), vocab_filter=["unicorn"])


class TestErrors:
    def test_unknown_category(self, tmp_path):
        doc = coco_fixture()
        doc["annotations"][0]["category_id"] = 999
        with pytest.raises(UnknownCategory) as excinfo:
            import_coco(write_coco(tmp_path, doc))
        assert "$.annotations[0]" in str(excinfo.value)

    def test_missing_top_level_key(self, tmp_path):
        doc = coco_fixture()
        del doc["categories"]
        with pytest.raises(SchemaError) as excinfo:
            import_coco(write_coco(tmp_path, doc))
        assert "categories" in str(excinfo.value)

    def test_bad_image_entry_reports_path(self, tmp_path):
        doc = coco_fixture()
        del doc["images"][1]["width"]
        with pytest.raises(SchemaError) as excinfo:
            import_coco(write_coco(tmp_path, doc))
        assert "$.images[1]" in str(excinfo.value)

    def test_annotation_for_unknown_image(self, tmp_path):
        doc = coco_fixture()
        doc["annotations"][0]["image_id"] = 777
        with pytest.raises(SchemaError) as excinfo:
            import_coco(write_coco(tmp_path, doc))
        assert "777" in str(excinfo.value)

    def test_duplicate_category_id(self, tmp_path):
        doc = coco_fixture()
        doc["categories"].append({"id": 10, "name": "other"})
        with pytest.raises(SchemaError):
            import_coco(write_coco(tmp_path, doc))
