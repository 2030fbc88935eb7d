# ===----------------------------------------------------------------------=== #
#
# This source file is part of the dualtrack open source project
#
# Copyright (c) 2026 dualtrack contributors
# Licensed under the MIT License
#
# See LICENSE for license information
#
# ===----------------------------------------------------------------------=== #
"""
Command-line workflows: train, track, eval, bench and synth.

Every flag maps to one dotted configuration key and overrides the config
file and environment. Each command writes ``effective_config.json`` into
its output directory.
"""

import argparse
import dataclasses
import json
import logging
import os
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from dualtrack.__version__ import __version__
from dualtrack.config.config_manager import AppConfig, ConfigManager
from dualtrack.core.constants import (
    CHECKPOINT_FILE,
    EFFECTIVE_CONFIG_FILE,
    ENV_CONFIG,
    EXIT_DATA,
    EXIT_NUMERIC,
    EXIT_OK,
    EXIT_USAGE,
    LOSS_LOG_FILE,
)
from dualtrack.core.exceptions import (
    CheckpointError,
    ConfigurationError,
    DataError,
    DatasetError,
    MissingConfigurationError,
    NumericError,
    ShapeError,
)
from dualtrack.core.interfaces import AdaptMode, BlockKind, Corruption, MotionKind, ObjectKind
from dualtrack.core.utils import seed_everything
from dualtrack.data.records import load_dataset
from dualtrack.data.sampler import TupleSampler
from dualtrack.data.synthetic import generate_corpus
from dualtrack.evaluation.bench import bench_block, format_bench_table
from dualtrack.evaluation.ope import OPEReport, ope_run, score_results_dir, write_outputs
from dualtrack.tracking.results import write_results
from dualtrack.tracking.tracker import Tracker
from dualtrack.training.checkpoint import load_model
from dualtrack.training.trainer import Trainer

logger = logging.getLogger(__name__)

BENCH_FILE = "bench.txt"

# argparse destination -> dotted config key
FLAG_KEYS: Dict[str, str] = {
    "seed": "seed",
    "log_level": "log_level",
    "dtta": "adaptation.mode",
    "lambda_bn": "adaptation.lambda_bn",
    "update_N": "tracking.update.n",
    "lambda_d": "tracking.update.lambda_d",
    "update_strategy": "tracking.update.strategy",
    "extended": "tracking.extended_results",
    "window_weight": "heads.window_weight",
    "workers": "evaluation.workers",
    "fusion": "filtration.kind",
    "steps": "training.steps",
    "epochs": "training.epochs",
    "batch_size": "training.batch_size",
    "lr": "training.lr",
    "repeats": "bench.repeats",
    "warmup": "bench.warmup",
    "threads": "bench.threads",
    "sequences": "synth.sequences",
    "length": "synth.length",
    "object_kind": "synth.object_kind",
    "motion": "synth.motion",
    "corruption": "synth.corruption",
    "severity": "synth.severity",
    "schedule": "synth.schedule",
    "block": "bench.blocks",
    "channels": "bench.channels",
    "size": "bench.size",
    "dataset": "paths.dataset",
    "checkpoint": "paths.checkpoint",
    "out": "paths.out",
    "results": "paths.results",
}


def _values(enum_cls: Any) -> List[str]:
    return [m.value for m in enum_cls]


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help=f"JSON configuration file (default: ${ENV_CONFIG})")
    parser.add_argument("--seed", type=int, help="Global random seed")
    parser.add_argument("--out", type=Path, help="Output directory")
    parser.add_argument("--log-level", dest="log_level", help="Logging level name")


def _add_tracking(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--checkpoint", type=Path, help="Trained checkpoint")
    parser.add_argument("--dataset", type=Path, help="Dataset root directory")
    parser.add_argument("--dtta", choices=_values(AdaptMode), help="Test-time normalization mode")
    parser.add_argument("--lambda-bn", dest="lambda_bn", type=float, help="Instance-statistics weight")
    parser.add_argument("--update-N", dest="update_N", type=int, help="Minimum frames between updates")
    parser.add_argument("--lambda-d", dest="lambda_d", type=float, help="Score running-average weight")
    parser.add_argument("--update-strategy", dest="update_strategy", help="running_average, fixed_interval or none")
    parser.add_argument("--window-weight", dest="window_weight", type=float, help="Cosine window weight")
    parser.add_argument("--workers", type=int, help="Sequences tracked in parallel")
    parser.add_argument(
        "--extended", action="store_true", default=None, help="Append a score column to result files"
    )


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with one subcommand per workflow."""
    parser = argparse.ArgumentParser(prog="dualtrack", description="Dual-template siamese tracker")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="Train a model and write a checkpoint")
    _add_common(train)
    train.add_argument("--dataset", type=Path, help="Dataset root directory")
    train.add_argument("--steps", type=int, help="Steps per epoch")
    train.add_argument("--epochs", type=int, help="Number of epochs")
    train.add_argument("--batch-size", dest="batch_size", type=int, help="Batch size")
    train.add_argument("--lr", type=float, help="Adam learning rate")
    train.add_argument("--fusion", choices=["fmf", "psa", "concat"], help="Filtration block")

    track = sub.add_parser("track", help="Track every sequence of a dataset")
    _add_common(track)
    _add_tracking(track)

    evaluate = sub.add_parser("eval", help="Score tracking results")
    _add_common(evaluate)
    _add_tracking(evaluate)
    evaluate.add_argument("--results", type=Path, help="Existing results directory to score")

    bench = sub.add_parser("bench", help="Benchmark filtration blocks")
    _add_common(bench)
    bench.add_argument("--block", action="append", choices=_values(BlockKind), help="Block to time (repeatable)")
    bench.add_argument("--channels", type=int, help="Filtration input width 2C")
    bench.add_argument("--size", type=int, help="Spatial size of the block input")
    bench.add_argument("--repeats", type=int, help="Timed repeats")
    bench.add_argument("--warmup", type=int, help="Untimed warmup passes")
    bench.add_argument("--threads", type=int, help="Intra-op threads")

    synth = sub.add_parser("synth", help="Generate a synthetic dataset")
    _add_common(synth)
    synth.add_argument("--sequences", type=int, help="Number of sequences")
    synth.add_argument("--length", type=int, help="Frames per sequence")
    synth.add_argument("--object", dest="object_kind", choices=_values(ObjectKind), help="Object shape")
    synth.add_argument("--motion", choices=_values(MotionKind), help="Motion model")
    synth.add_argument("--corruption", choices=_values(Corruption), help="Per-frame corruption")
    synth.add_argument("--severity", type=float, help="Corruption severity")
    synth.add_argument("--schedule", choices=["constant", "ramp"], help="Severity schedule")
    return parser


def flag_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Dotted-key overrides for every flag that was given."""
    return {key: getattr(args, dest) for dest, key in FLAG_KEYS.items() if getattr(args, dest, None) is not None}


def write_effective_config(config: AppConfig, out_dir: Path) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / EFFECTIVE_CONFIG_FILE
    path.write_text(json.dumps(config.to_dict(), indent=4, sort_keys=True) + "\n", encoding="utf-8")
    return path


def _with_architecture(config: AppConfig, trained: AppConfig) -> AppConfig:
    """Take the network sections from the checkpoint and everything else from ``config``."""
    return dataclasses.replace(
        config,
        backbone=trained.backbone,
        filtration=trained.filtration,
        heads=dataclasses.replace(trained.heads, window_weight=config.heads.window_weight),
    )


def _path(config: AppConfig, name: str) -> Path:
    """Resolved ``paths.<name>``, which a flag or the config file must set."""
    value = getattr(config.paths, name)
    if not value:
        raise MissingConfigurationError(
            f"paths.{name} is not set; pass --{name} or set it in the config file", config_key=f"paths.{name}"
        )
    return Path(value)


def _tracker(config: AppConfig) -> Tuple[Tracker, AppConfig]:
    model, trained = load_model(_path(config, "checkpoint"))
    effective = _with_architecture(config, trained)
    return Tracker(model, effective), effective


def cmd_train(config: AppConfig) -> int:
    dataset, out = _path(config, "dataset"), _path(config, "out")
    records = load_dataset(dataset)
    if not records:
        raise DatasetError(f"No usable sequences under {dataset}", path=str(dataset))
    sampler = TupleSampler({dataset.name: records}, config.sampling, seed=config.seed)
    trainer = Trainer(config)
    write_effective_config(config, out)
    result = trainer.fit(sampler, log_path=out / LOSS_LOG_FILE)
    trainer.save(out / CHECKPOINT_FILE, metadata={"steps": result.steps, "final_loss": result.final_loss})
    return EXIT_OK


def _run_ope(config: AppConfig) -> Tuple[OPEReport, AppConfig]:
    tracker, effective = _tracker(config)
    seed_everything(effective.seed)
    report = ope_run(tracker, _path(effective, "dataset"), effective.evaluation)
    return report, effective


def cmd_track(config: AppConfig) -> int:
    out = _path(config, "out")
    report, effective = _run_ope(config)
    write_effective_config(effective, out)
    for result in report.results.values():
        write_results(result, out, extended=effective.tracking.extended_results)
    return EXIT_OK


def cmd_eval(config: AppConfig) -> int:
    out = _path(config, "out")
    if config.paths.results:
        report = score_results_dir(_path(config, "results"), _path(config, "dataset"), config.evaluation)
        effective = config
        write_tracks = False
    else:
        report, effective = _run_ope(config)
        write_tracks = True
    write_effective_config(effective, out)
    write_outputs(
        report,
        out,
        config_echo=effective.to_dict(),
        extended=effective.tracking.extended_results,
        write_tracks=write_tracks,
    )
    print(f"AUC: {report.aggregate.auc:.6f}")
    return EXIT_OK


def cmd_bench(config: AppConfig) -> int:
    out = _path(config, "out")
    bench = config.bench
    reports = [
        bench_block(block, channels=bench.channels, size=bench.size, bench=bench, config=config)
        for block in bench.blocks
    ]
    table = format_bench_table(reports)
    write_effective_config(config, out)
    (out / BENCH_FILE).write_text(table, encoding="utf-8")
    print(table, end="")
    return EXIT_OK


def cmd_synth(config: AppConfig) -> int:
    out = _path(config, "out")
    write_effective_config(config, out)
    generate_corpus(config.synth, out, seed=config.seed)
    return EXIT_OK


COMMANDS: Mapping[str, Callable[[AppConfig], int]] = {
    "train": cmd_train,
    "track": cmd_track,
    "eval": cmd_eval,
    "bench": cmd_bench,
    "synth": cmd_synth,
}


def run(argv: Optional[Sequence[str]] = None, configure: Optional[Callable[[str], None]] = None) -> int:
    """Parse ``argv``, resolve the configuration and run the command.

    Args:
        argv: Arguments without the program name (``sys.argv[1:]`` when None).
        configure: Called with the resolved log level before the command runs.

    Returns:
        Process exit status.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE

    try:
        manager = ConfigManager(config_path=args.config or os.getenv(ENV_CONFIG))
        manager.apply_overrides(flag_overrides(args), source="cli")
        config = manager.config
        if configure is not None:
            configure(config.log_level)
        seed_everything(config.seed)
        logger.info("Running %s with config sources %s", args.command, manager.sources or "defaults")
        return COMMANDS[args.command](config)
    except (ConfigurationError, ShapeError) as exc:
        logger.error("Configuration error: %s", exc)
        return EXIT_USAGE
    except (DataError, CheckpointError) as exc:
        logger.error("Data error: %s", exc)
        return EXIT_DATA
    except NumericError as exc:
        logger.error("Numeric failure: %s", exc)
        return EXIT_NUMERIC
