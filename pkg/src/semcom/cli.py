"""Command-line harness.

Subcommands:
    run           one codec over a dataset, with CSV/plot emission
    select        constrained selection over a candidate config file
    import-coco   COCO instance annotations -> native dataset JSON
    make-dataset  synthetic scene generation

Exit codes: 0 success (and feasible selection), 2 infeasible selection,
3 input error. SEMCOM_LOG={error|info|debug} controls log verbosity.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path

from .channel import UNLIMITED_BITS
from .codecs import CaptionNoise
from .coco import import_coco
from .config import channel_from_dict, codec_config_from_dict, detector_from_dict
from .datasets import half_coverage_scenes, load_dataset, random_scenes, save_dataset
from .detector import DetectorModel
from .errors import SemcomError
from .harness import RunConfig, export_csv, render_plot, run_pipeline
from .metrics import ConstraintSpec
from .pipeline import CodecConfig
from .scene import ClassVocabulary
from .selector import select

log = logging.getLogger("semcom.cli")

_LOG_LEVELS = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}


class _Parser(argparse.ArgumentParser):
    """argparse, but usage errors exit with the documented input-error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _class_list(text: str) -> list[str]:
    names = [piece.strip() for piece in text.split(",")]
    if any(not name for name in names):
        raise argparse.ArgumentTypeError("class list must be comma-separated non-empty names")
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="semcom",
                     description="Semantic-aware, goal-oriented image transmission harness")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run one codec over a dataset")
    run.add_argument("--dataset", required=True)
    run.add_argument("--codec", required=True, choices=["caption", "crops", "raw"])
    run.add_argument("--captions", type=int, default=5, metavar="K")
    run.add_argument("--p-mention", type=float, default=1.0, metavar="F")
    run.add_argument("--p-realize", type=float, default=1.0, metavar="F")
    run.add_argument("--jitter", type=int, default=0, metavar="N")
    run.add_argument("--detect-prob", type=float, default=1.0, metavar="F")
    run.add_argument("--fp-rate", type=float, default=0.0, metavar="F")
    run.add_argument("--budget-bits", type=int, default=UNLIMITED_BITS, metavar="R0")
    run.add_argument("--rate-bps", type=float, default=1e6, metavar="F")
    run.add_argument("--erasure", type=float, default=0.0, metavar="F")
    run.add_argument("--g0", type=float, default=0.0, metavar="F")
    run.add_argument("--eps0", type=float, default=math.inf, metavar="F")
    run.add_argument("--seed", type=int, default=0, metavar="N")
    run.add_argument("--out", metavar="csv-path")
    run.add_argument("--plot", metavar="png-path")

    selection = sub.add_parser("select", help="pick the best feasible codec config")
    selection.add_argument("--dataset", required=True)
    selection.add_argument("--configs", required=True, metavar="json-path")
    selection.add_argument("--g0", type=float, default=0.0, metavar="F")
    selection.add_argument("--eps0", type=float, default=math.inf, metavar="F")
    selection.add_argument("--seed", type=int, default=0, metavar="N")
    selection.add_argument("--out", metavar="json-path")

    coco = sub.add_parser("import-coco", help="convert COCO instance annotations")
    coco.add_argument("--instances", required=True)
    coco.add_argument("--max-images", type=int, default=None, metavar="N")
    coco.add_argument("--classes", type=_class_list, default=None, metavar="a,b,c")
    coco.add_argument("--out", required=True, metavar="native-json-path")

    make = sub.add_parser("make-dataset", help="generate a synthetic dataset")
    make.add_argument("--kind", choices=["random", "half-coverage"], default="random")
    make.add_argument("--scenes", type=int, required=True, metavar="N")
    make.add_argument("--classes", type=_class_list, required=True, metavar="a,b,c")
    make.add_argument("--width", type=int, default=64)
    make.add_argument("--height", type=int, default=64)
    make.add_argument("--pixel-bits", type=int, default=192)
    make.add_argument("--min-objects", type=int, default=1)
    make.add_argument("--max-objects", type=int, default=6)
    make.add_argument("--min-side", type=int, default=4)
    make.add_argument("--max-side", type=int, default=16)
    make.add_argument("--seed", type=int, default=0)
    make.add_argument("--out", required=True)
    return parser


def _codec_from_args(args) -> CodecConfig:
    if args.codec == "caption":
        noise = CaptionNoise(args.p_mention, args.p_realize, args.jitter)
        return CodecConfig("caption", "caption", captions=args.captions, noise=noise)
    return CodecConfig(args.codec, args.codec)


def _summary_line(summary) -> str:
    verdict = summary.verdict.value if summary.verdict is not None else "unchecked"
    return (f"codec={summary.name} images={len(summary.records)} "
            f"mean_gain={summary.mean_gain:.6f} mean_error={summary.mean_error:.6f} "
            f"mean_weighted_error={summary.mean_weighted_error:.6f} verdict={verdict} "
            f"undelivered={summary.undelivered_count} empty_truth={summary.empty_truth_count}")


def _cmd_run(args) -> int:
    dataset = load_dataset(args.dataset)
    cfg = RunConfig(
        dataset=dataset,
        codec=_codec_from_args(args),
        detector=DetectorModel(per_class_detect_prob=args.detect_prob,
                               false_positive_rate=args.fp_rate),
        channel=channel_from_dict({"budget_bits": args.budget_bits, "rate_bps": args.rate_bps,
                                   "erasure_prob": args.erasure}),
        constraints=ConstraintSpec(min_gain=args.g0, max_error=args.eps0),
        seed=args.seed,
    )
    report = run_pipeline(cfg)
    print(_summary_line(report.summary))
    if args.out:
        export_csv(report, args.out)
        log.info("wrote %s", args.out)
    if args.plot:
        reports = [report]
        if cfg.codec.kind != "raw":
            baseline_cfg = RunConfig(dataset=dataset, codec=CodecConfig("raw", "raw"),
                                     detector=cfg.detector, channel=cfg.channel,
                                     constraints=cfg.constraints, seed=args.seed)
            reports.append(run_pipeline(baseline_cfg))
        render_plot(reports, args.plot)
        log.info("wrote %s", args.plot)
    return 0


def _cmd_select(args) -> int:
    dataset = load_dataset(args.dataset)
    with open(args.configs, encoding="utf-8") as handle:
        doc = json.load(handle)
    if isinstance(doc, list):
        doc = {"configs": doc}
    if not isinstance(doc, dict) or "configs" not in doc:
        raise SemcomError(f"{args.configs}: expected a config list or an object with 'configs'")
    configs = [codec_config_from_dict(entry, f"$.configs[{i}]")
               for i, entry in enumerate(doc["configs"])]
    detector = detector_from_dict(doc.get("detector", {}))
    channel = channel_from_dict(doc.get("channel", {}))
    constraints = ConstraintSpec(min_gain=args.g0, max_error=args.eps0)
    result = select(configs, dataset, detector, channel, constraints, args.seed)

    for summary in result.summaries:
        print(_summary_line(summary))
    if result.feasible:
        print(f"selected={result.best.name}")
    else:
        print("selected=none (no feasible configuration)")
    if args.out:
        document = {
            "feasible": result.feasible,
            "selected": result.best.name if result.best else None,
            "ranking": [
                {
                    "name": s.name,
                    "mean_gain": s.mean_gain,
                    "mean_error": s.mean_error,
                    "mean_weighted_error": s.mean_weighted_error,
                    "verdict": s.verdict.value if s.verdict else None,
                    "violation": s.violation,
                }
                for s in result.summaries
            ],
        }
        Path(args.out).write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
    return 0 if result.feasible else 2


def _cmd_import_coco(args) -> int:
    dataset = import_coco(args.instances, max_images=args.max_images,
                          vocab_filter=args.classes)
    save_dataset(dataset, args.out)
    print(f"imported images={len(dataset.scenes)} classes={len(dataset.vocabulary)} "
          f"out={args.out}")
    return 0


def _cmd_make_dataset(args) -> int:
    vocab = ClassVocabulary.of(args.classes)
    if args.kind == "random":
        dataset = random_scenes(args.scenes, vocab, width=args.width, height=args.height,
                                pixel_bits=args.pixel_bits, min_objects=args.min_objects,
                                max_objects=args.max_objects, min_side=args.min_side,
                                max_side=args.max_side, seed=args.seed)
    else:
        dataset = half_coverage_scenes(args.scenes, vocab, width=args.width,
                                       height=args.height, pixel_bits=args.pixel_bits,
                                       seed=args.seed)
    save_dataset(dataset, args.out)
    print(f"generated scenes={len(dataset.scenes)} out={args.out}")
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "select": _cmd_select,
    "import-coco": _cmd_import_coco,
    "make-dataset": _cmd_make_dataset,
}


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("SEMCOM_LOG", "error").lower()
    logging.basicConfig(level=_LOG_LEVELS.get(level, logging.ERROR),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (SemcomError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"semcom: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
