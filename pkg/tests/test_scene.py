from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semcom import (
    ClassVocabulary,
    ObjectInstance,
    SceneImage,
    SemanticVector,
    UnknownClass,
    binary_size,
    semantic_truth,
    validate_scene,
)
from semcom.scene import BBOX_OUT_OF_BOUNDS, NON_POSITIVE_DIMS, UNKNOWN_CLASS


class TestVocabulary:
    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            ClassVocabulary.of(["person", "person"])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            ClassVocabulary.of([])

    def test_index_follows_order(self, vocab):
        assert [vocab.index(c) for c in ("person", "car", "dog")] == [0, 1, 2]

    def test_unknown_class(self, vocab):
        with pytest.raises(UnknownClass):
            vocab.index("bike")
        assert "bike" not in vocab
        assert "car" in vocab


class TestBinarySize:
    def test_64x64_default_bits(self, scene_321):
        assert binary_size(scene_321) == 786432

    def test_single_pixel_single_bit(self):
        assert binary_size(SceneImage("tiny", 1, 1, 1)) == 1

    def test_2x2_default_bits(self):
        assert binary_size(SceneImage("s", 2, 2, 192)) == 768

    @given(w=st.integers(1, 50), h=st.integers(1, 50), bits=st.integers(1, 256))
    def test_strictly_monotone_in_each_dimension(self, w, h, bits):
        base = binary_size(SceneImage("s", w, h, bits))
        assert binary_size(SceneImage("s", w + 1, h, bits)) > base
        assert binary_size(SceneImage("s", w, h + 1, bits)) > base
        assert binary_size(SceneImage("s", w, h, bits + 1)) > base

    def test_construction_rejects_bad_dims(self):
        with pytest.raises(ValueError):
            SceneImage("s", 0, 4)
        with pytest.raises(ValueError):
            SceneImage("s", 4, 4, 0)


class TestSemanticTruth:
    def test_worked_example(self, vocab, scene_321):
        assert semantic_truth(scene_321, vocab).counts == (3.0, 2.0, 1.0)

    def test_empty_scene_gives_zero_vector(self, vocab, empty_scene):
        assert semantic_truth(empty_scene, vocab).counts == (0.0, 0.0, 0.0)

    def test_partial_counts(self, vocab):
        scene = SceneImage("s", 8, 8, 192, (
            ObjectInstance("car", (0, 0, 2, 2)),
            ObjectInstance("car", (2, 2, 2, 2)),
        ))
        assert semantic_truth(scene, vocab).counts == (0.0, 2.0, 0.0)

    def test_unknown_class_raises(self, vocab):
        scene = SceneImage("s", 8, 8, 192, (ObjectInstance("bike", (0, 0, 2, 2)),))
        with pytest.raises(UnknownClass):
            semantic_truth(scene, vocab)

    @given(st.lists(st.sampled_from(["person", "car", "dog"]), max_size=12),
           st.randoms(use_true_random=False))
    def test_total_and_permutation_invariance(self, classes, rand):
        vocab = ClassVocabulary.of(["person", "car", "dog"])
        objects = [ObjectInstance(c, (0, 0, 1, 1)) for c in classes]
        scene = SceneImage("s", 8, 8, 192, tuple(objects))
        truth = semantic_truth(scene, vocab)
        assert truth.total() == len(classes)
        rand.shuffle(objects)
        shuffled = SceneImage("s", 8, 8, 192, tuple(objects))
        assert semantic_truth(shuffled, vocab) == truth


class TestValidateScene:
    def test_valid_scene(self, vocab, scene_321):
        assert validate_scene(scene_321, vocab) == []

    def test_bbox_out_of_bounds(self, vocab):
        scene = SceneImage("s", 64, 64, 192, (ObjectInstance("person", (60, 60, 10, 10)),))
        codes = [v.code for v in validate_scene(scene, vocab)]
        assert codes == [BBOX_OUT_OF_BOUNDS]

    def test_unknown_class_reported(self):
        vocab = ClassVocabulary.of(["person", "car"])
        scene = SceneImage("s", 64, 64, 192, (ObjectInstance("bike", (0, 0, 4, 4)),))
        codes = [v.code for v in validate_scene(scene, vocab)]
        assert codes == [UNKNOWN_CLASS]

    def test_non_positive_dims_reported(self, vocab):
        scene = SceneImage("s", 64, 64, 192, (ObjectInstance("person", (0, 0, 0, 4)),))
        codes = [v.code for v in validate_scene(scene, vocab)]
        assert codes == [NON_POSITIVE_DIMS]

    def test_multiple_violations_with_indices(self, vocab):
        scene = SceneImage("s", 16, 16, 192, (
            ObjectInstance("person", (0, 0, 4, 4)),
            ObjectInstance("bike", (14, 14, 4, 4)),
        ))
        violations = validate_scene(scene, vocab)
        assert {v.code for v in violations} == {BBOX_OUT_OF_BOUNDS, UNKNOWN_CLASS}
        assert all(v.object_index == 1 for v in violations)


class TestSemanticVector:
    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            SemanticVector((1.0, -0.5))

    def test_from_mapping_uses_vocab_order(self, vocab):
        vec = SemanticVector.from_mapping({"dog": 1, "person": 3}, vocab)
        assert vec.counts == (3.0, 0.0, 1.0)

    def test_add_and_scale(self):
        total = SemanticVector((1.0, 2.0)) + SemanticVector((3.0, 4.0))
        assert total.counts == (4.0, 6.0)
        assert total.scaled(0.5).counts == (2.0, 3.0)

    def test_norm(self):
        assert SemanticVector((3.0, 4.0)).norm() == 5.0
