from __future__ import annotations

import json

import pytest

from semcom import SchemaError
from semcom.scenarios import PRESET_NAMES, load_scenario


class TestPresets:
    def test_both_presets_load(self):
        for name in PRESET_NAMES:
            scenario = load_scenario(name)
            assert scenario.name == name
            assert scenario.description

    def test_low_data_rate_smoke(self):
        scenario = load_scenario("low-data-rate")
        cfg = scenario.run_config(scenes=20)
        assert cfg.codec.kind == "caption"
        assert cfg.constraints.min_gain == 0.9
        assert cfg.constraints.max_error == 0.65
        assert len(cfg.dataset.scenes) == 20

    def test_low_error_tolerance_smoke(self):
        scenario = load_scenario("low-error-tolerance")
        cfg = scenario.run_config(scenes=10)
        assert cfg.codec.kind == "crops"
        assert cfg.constraints.min_gain == 0.5
        for scene in cfg.dataset.scenes:
            area = sum(o.width * o.height for o in scene.objects)
            assert area * 2 == scene.width * scene.height

    def test_dataset_generation_is_reproducible(self):
        scenario = load_scenario("low-data-rate")
        assert scenario.build_dataset(15) == scenario.build_dataset(15)


class TestScenarioFiles:
    def test_custom_file_loads(self, tmp_path):
        doc = {
            "name": "custom",
            "dataset": {"generator": "random", "scenes": 3, "classes": ["a", "b"]},
            "codec": {"name": "crops", "kind": "crops"},
            "seed": 5,
        }
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        scenario = load_scenario(path)
        cfg = scenario.run_config()
        assert len(cfg.dataset.scenes) == 3
        assert cfg.seed == 5

    def test_unknown_keys_rejected(self, tmp_path):
        doc = {
            "name": "x",
            "dataset": {"generator": "random", "scenes": 1, "classes": ["a"]},
            "codec": {"name": "raw", "kind": "raw"},
            "surprise": True,
        }
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        with pytest.raises(SchemaError):
            load_scenario(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_scenario(tmp_path / "absent.json")
