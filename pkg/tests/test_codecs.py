from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semcom import (
    CaptionNoise,
    NOISELESS,
    ObjectInstance,
    ParseError,
    SceneImage,
    binary_size,
    decode_caption,
    decode_crops,
    decode_raw,
    encode_caption,
    encode_crops,
    encode_raw,
    gain,
    parse_caption,
    random_scenes,
    semantic_truth,
    serialize_caption,
    truth_sketch,
)
from semcom.codecs import caption_payload_bits


class TestCaptionGrammar:
    def test_canonical_round_trip(self):
        text = "3 person;2 car;1 dog"
        assert serialize_caption(parse_caption(text)) == text

    def test_empty_caption(self):
        assert parse_caption("") == []
        assert serialize_caption([]) == ""

    def test_zero_counts_omitted(self):
        assert serialize_caption([(0, "person"), (2, "car")]) == "2 car"

    @pytest.mark.parametrize("bad", [
        "3;;person", "03 person", "3  person", "person 3", "3 person;",
        ";3 person", "3person", " 3 person", "3 person ", "-1 person",
    ])
    def test_malformed_items_rejected(self, bad):
        with pytest.raises(ParseError):
            parse_caption(bad)

    def test_class_names_with_spaces(self):
        assert parse_caption("2 traffic light") == [(2, "traffic light")]

    @given(st.lists(
        st.tuples(st.integers(1, 99), st.sampled_from(["person", "car", "dog", "traffic light"])),
        max_size=4, unique_by=lambda item: item[1]))
    def test_serialize_parse_identity(self, items):
        assert parse_caption(serialize_caption(items)) == items


class TestCaptionCodec:
    def test_single_full_caption(self, vocab, scene_321):
        payload = encode_caption(scene_321, vocab, 1, NOISELESS, seed=0)
        assert payload.body.captions == ("3 person;2 car;1 dog",)
        assert payload.size_bits == 160

    def test_five_identical_captions(self, vocab, scene_321):
        payload = encode_caption(scene_321, vocab, 5, NOISELESS, seed=0)
        assert payload.body.captions == ("3 person;2 car;1 dog",) * 5
        assert payload.size_bits == 8 * (5 * 20 + 4) == 832

    def test_zero_mention_probability(self, vocab, scene_321):
        noise = CaptionNoise(p_mention=0.0)
        payload = encode_caption(scene_321, vocab, 5, noise, seed=0)
        assert payload.body.captions == ("",) * 5

    def test_caption_count_validated(self, vocab, scene_321):
        with pytest.raises(ValueError):
            encode_caption(scene_321, vocab, 0, NOISELESS, seed=0)

    def test_size_is_exactly_eight_times_bytes(self, vocab):
        dataset = random_scenes(10, vocab, seed=3)
        for scene in dataset.scenes:
            payload = encode_caption(scene, vocab, 3, CaptionNoise(p_mention=0.6), seed=5)
            joined = "\n".join(payload.body.captions)
            assert payload.size_bits == 8 * len(joined.encode("utf-8"))

    def test_lossless_round_trip(self, vocab, scene_321):
        payload = encode_caption(scene_321, vocab, 1, NOISELESS, seed=0)
        sketches = decode_caption(payload, NOISELESS, seed=9)
        assert len(sketches) == 1
        assert sketches[0].counts == {"person": 3, "car": 2, "dog": 1}

    def test_zero_realize_probability(self, vocab, scene_321):
        payload = encode_caption(scene_321, vocab, 1, NOISELESS, seed=0)
        sketches = decode_caption(payload, CaptionNoise(p_realize=0.0), seed=9)
        assert sketches[0].counts == {}

    def test_corrupted_caption_raises(self):
        from semcom import CaptionSet, Payload
        corrupted = Payload("captions", CaptionSet(("3;;person",)), 8 * 9)
        with pytest.raises(ParseError):
            decode_caption(corrupted, NOISELESS, seed=0)

    def test_jitter_bounded_and_floored(self, vocab, scene_321):
        payload = encode_caption(scene_321, vocab, 1, NOISELESS, seed=0)
        for seed in range(50):
            sketch = decode_caption(payload, CaptionNoise(count_jitter=2), seed=seed)[0]
            for name, truth in (("person", 3), ("car", 2), ("dog", 1)):
                assert 0 <= sketch.counts.get(name, 0) <= truth + 2

    def test_decode_determinism(self, vocab, scene_321):
        payload = encode_caption(scene_321, vocab, 5, CaptionNoise(p_mention=0.7), seed=1)
        noise = CaptionNoise(p_realize=0.5, count_jitter=1)
        first = decode_caption(payload, noise, seed=77)
        second = decode_caption(payload, noise, seed=77)
        assert [s.counts for s in first] == [s.counts for s in second]

    def test_kind_checked(self, scene_321):
        with pytest.raises(ValueError):
            decode_caption(encode_crops(scene_321), NOISELESS, seed=0)


class TestCropCodec:
    def test_size_from_bbox_areas(self, vocab):
        objects = tuple(ObjectInstance("person", (0, 0, 16, 16)) for _ in range(6))
        scene = SceneImage("s", 64, 64, 192, objects)
        payload = encode_crops(scene)
        assert payload.size_bits == 6 * 16 * 16 * 192 == 294912

    def test_empty_scene(self, empty_scene):
        payload = encode_crops(empty_scene)
        assert payload.body == ()
        assert payload.size_bits == 0
        assert decode_crops(payload).counts == {}

    def test_full_image_crop_equals_raw_size(self):
        scene = SceneImage("s", 64, 64, 192, (ObjectInstance("person", (0, 0, 64, 64)),))
        assert encode_crops(scene).size_bits == binary_size(scene)

    def test_identity_decode(self, vocab, scene_321):
        sketch = decode_crops(encode_crops(scene_321))
        assert sketch.counts == {"person": 3, "car": 2, "dog": 1}

    def test_single_dog(self, vocab):
        scene = SceneImage("s", 8, 8, 192, (ObjectInstance("dog", (0, 0, 2, 2)),))
        assert decode_crops(encode_crops(scene)).counts == {"dog": 1}

    def test_semantically_lossless_on_random_scenes(self, vocab):
        for scene in random_scenes(20, vocab, seed=8).scenes:
            sketch = decode_crops(encode_crops(scene))
            truth = semantic_truth(scene, vocab)
            assert sketch.counts == {c: int(n) for c, n in zip(vocab.classes, truth.counts) if n}

    def test_crop_size_never_exceeds_raw_for_in_bounds_boxes(self, vocab):
        for scene in random_scenes(20, vocab, seed=9).scenes:
            assert encode_crops(scene).size_bits <= binary_size(scene)


class TestRawCodec:
    def test_size_is_binary_size(self, scene_321):
        assert encode_raw(scene_321).size_bits == 786432

    def test_gain_is_zero(self, scene_321):
        payload = encode_raw(scene_321)
        assert gain(binary_size(scene_321), payload.size_bits) == 0.0

    def test_decode_equals_truth_sketch(self, scene_321):
        payload = encode_raw(scene_321)
        assert decode_raw(payload).counts == truth_sketch(scene_321).counts
        assert decode_raw(payload).counts == {"person": 3, "car": 2, "dog": 1}

    def test_kind_checked(self, scene_321):
        with pytest.raises(ValueError):
            decode_raw(encode_crops(scene_321))


class TestNoiseValidation:
    def test_probability_ranges(self):
        with pytest.raises(ValueError):
            CaptionNoise(p_mention=1.5)
        with pytest.raises(ValueError):
            CaptionNoise(p_realize=-0.1)
        with pytest.raises(ValueError):
            CaptionNoise(count_jitter=-1)


def test_caption_payload_bits_counts_newlines():
    assert caption_payload_bits(["ab", "cd"]) == 8 * 5
