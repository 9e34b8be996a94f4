"""Semantic-aware, goal-oriented image transmission: simulator and benchmark harness.

The pipeline: a semantic encoder turns an annotated scene into a payload
(captions, object crops, or the raw image), the channel enforces a bit
budget, a decoder rebuilds a semantic-level reconstruction, and an
emulated object detector reduces both sides to class-count vectors that
the error/gain/weighted-error metrics compare. A selector enumerates
candidate codecs under gain/error constraints.
"""

from .channel import ChannelConfig, DeliveryResult, transmit
from .codecs import (
    CaptionNoise,
    CaptionSet,
    NOISELESS,
    ObjectCrop,
    Payload,
    ReconstructionSketch,
    decode_caption,
    decode_crops,
    decode_raw,
    encode_caption,
    encode_crops,
    encode_raw,
    parse_caption,
    serialize_caption,
    truth_sketch,
)
from .coco import import_coco
from .datasets import (
    Dataset,
    half_coverage_scenes,
    load_dataset,
    random_scenes,
    save_dataset,
)
from .detector import (
    DetectorModel,
    PERFECT_DETECTOR,
    detect,
    detect_crop,
    detect_objects_list,
)
from .errors import (
    BridgeError,
    EmptyConfigSet,
    EmptyDataset,
    EmptySeries,
    EmptyTruth,
    ParseError,
    SchemaError,
    SemcomError,
    UnknownCategory,
    UnknownClass,
    ZeroSource,
)
from .harness import (
    RunConfig,
    RunReport,
    export_csv,
    render_plot,
    run_caption_pipeline,
    run_crop_pipeline,
    run_pipeline,
    run_raw_pipeline,
)
from .metrics import (
    ConstraintSpec,
    Feasibility,
    MetricRecord,
    check_constraints,
    cumulative_average,
    gain,
    semantic_error,
    weighted_error,
)
from .pipeline import CodecConfig, EvaluationSummary, evaluate_image
from .scene import (
    ClassVocabulary,
    ObjectInstance,
    SceneImage,
    SemanticVector,
    binary_size,
    semantic_truth,
    validate_scene,
)
from .scenarios import Scenario, load_scenario
from .seeding import derive_seed, rng_for
from .selector import SelectionResult, evaluate_config, select

__version__ = "0.1.0"

__all__ = [
    "BridgeError", "CaptionNoise", "CaptionSet", "ChannelConfig", "ClassVocabulary",
    "CodecConfig", "ConstraintSpec", "Dataset", "DeliveryResult", "DetectorModel",
    "EmptyConfigSet", "EmptyDataset", "EmptySeries", "EmptyTruth", "EvaluationSummary",
    "Feasibility", "MetricRecord", "NOISELESS", "ObjectCrop", "ObjectInstance",
    "ParseError", "Payload", "PERFECT_DETECTOR", "ReconstructionSketch", "RunConfig",
    "RunReport", "Scenario", "SceneImage", "SchemaError", "SelectionResult",
    "SemanticVector", "SemcomError", "UnknownCategory", "UnknownClass", "ZeroSource",
    "binary_size", "check_constraints", "cumulative_average", "decode_caption",
    "decode_crops", "decode_raw", "derive_seed", "detect", "detect_crop",
    "detect_objects_list", "encode_caption", "encode_crops", "encode_raw",
    "evaluate_config", "evaluate_image", "export_csv", "gain", "half_coverage_scenes",
    "import_coco", "load_dataset", "load_scenario", "parse_caption", "random_scenes",
    "render_plot", "rng_for", "run_caption_pipeline", "run_crop_pipeline",
    "run_pipeline", "run_raw_pipeline", "save_dataset", "select", "semantic_error",
    "semantic_truth", "serialize_caption", "transmit", "truth_sketch",
    "validate_scene", "weighted_error",
]
