"""Dict/JSON builders for the run components, shared by the CLI and scenario presets."""

from __future__ import annotations

from .channel import ChannelConfig
from .codecs import CaptionNoise
from .detector import DetectorModel
from .errors import SchemaError
from .metrics import ConstraintSpec
from .pipeline import CodecConfig


def _only_keys(doc: object, allowed: set[str], path: str) -> dict:
    if not isinstance(doc, dict):
        raise SchemaError("expected a JSON object", path)
    for key in doc:
        if key not in allowed:
            raise SchemaError(f"unknown key {key!r}", path)
    return doc


def codec_config_from_dict(doc: dict, path: str = "$") -> CodecConfig:
    _only_keys(doc, {"name", "kind", "captions", "p_mention", "p_realize", "count_jitter"}, path)
    kind = doc.get("kind")
    if kind not in ("caption", "crops", "raw"):
        raise SchemaError(f"codec kind must be caption|crops|raw, got {kind!r}", path)
    name = doc.get("name", kind)
    try:
        if kind == "caption":
            noise = CaptionNoise(
                p_mention=float(doc.get("p_mention", 1.0)),
                p_realize=float(doc.get("p_realize", 1.0)),
                count_jitter=int(doc.get("count_jitter", 0)),
            )
            return CodecConfig(name, "caption", captions=int(doc.get("captions", 5)), noise=noise)
        for key in ("captions", "p_mention", "p_realize", "count_jitter"):
            if key in doc:
                raise SchemaError(f"{key!r} only applies to the caption codec", path)
        return CodecConfig(name, kind)
    except ValueError as exc:
        raise SchemaError(str(exc), path) from None


def detector_from_dict(doc: dict, path: str = "$.detector") -> DetectorModel:
    _only_keys(doc, {"detect_prob", "false_positive_rate", "confusion"}, path)
    try:
        return DetectorModel(
            per_class_detect_prob=doc.get("detect_prob", 1.0),
            false_positive_rate=doc.get("false_positive_rate", 0.0),
            confusion=doc.get("confusion"),
        )
    except ValueError as exc:
        raise SchemaError(str(exc), path) from None


def channel_from_dict(doc: dict, path: str = "$.channel") -> ChannelConfig:
    _only_keys(doc, {"budget_bits", "rate_bps", "erasure_prob", "on_violation",
                     "inclusive_budget"}, path)
    try:
        kwargs = dict(doc)
        if "budget_bits" in kwargs:
            kwargs["budget_bits"] = int(kwargs["budget_bits"])
        return ChannelConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise SchemaError(str(exc), path) from None


def constraints_from_dict(doc: dict, path: str = "$.constraints") -> ConstraintSpec:
    _only_keys(doc, {"min_gain", "max_error", "strict"}, path)
    try:
        return ConstraintSpec(
            min_gain=float(doc.get("min_gain", 0.0)),
            max_error=float(doc.get("max_error", float("inf"))),
            strict=bool(doc.get("strict", False)),
        )
    except ValueError as exc:
        raise SchemaError(str(exc), path) from None
