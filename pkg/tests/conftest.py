from __future__ import annotations

import pytest

from semcom import ClassVocabulary, ObjectInstance, SceneImage


@pytest.fixture
def vocab() -> ClassVocabulary:
    return ClassVocabulary.of(["person", "car", "dog"])


@pytest.fixture
def scene_321(vocab) -> SceneImage:
    """64x64 scene with 3 person, 2 car, 1 dog; the recurring worked example."""
    return SceneImage("scene-a", 64, 64, 192, (
        ObjectInstance("person", (0, 0, 4, 4)),
        ObjectInstance("person", (4, 0, 4, 4)),
        ObjectInstance("person", (8, 0, 4, 4)),
        ObjectInstance("car", (0, 8, 4, 4)),
        ObjectInstance("car", (4, 8, 4, 4)),
        ObjectInstance("dog", (8, 8, 4, 4)),
    ))


@pytest.fixture
def empty_scene() -> SceneImage:
    return SceneImage("scene-empty", 64, 64, 192, ())
