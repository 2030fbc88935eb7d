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
Configuration Manager for dualtrack
"""

import copy
import dataclasses
import json
import logging
import os
import threading
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, get_type_hints

from dotenv import dotenv_values

from dualtrack.core.constants import ENV_LOG_LEVEL, ENV_PREFIX, ENV_SEED
from dualtrack.core.exceptions import (
    ConfigurationError,
    InvalidConfigValueError,
    MissingConfigurationError,
    UnknownAdaptationModeError,
)
from dualtrack.core.interfaces import (
    AdaptMode,
    BlockKind,
    Corruption,
    FusionKind,
    MotionKind,
    ObjectKind,
    UpdateStrategy,
)

logger = logging.getLogger(__name__)


@dataclass
class BackboneConfig:
    """Backbone geometry.

    Attributes:
        stage_channels: Output width of each stride-2 stage.
        width: Working width C produced by the channel adapter.
        share_weights: Siamese weight sharing (always on).
    """

    stage_channels: Tuple[int, ...] = (16, 32, 64, 96)
    width: int = 128
    share_weights: bool = True


@dataclass
class FiltrationConfig:
    """Relation-aware block settings.

    Attributes:
        kind: One of ``fmf``, ``psa`` or ``concat``.
        squeeze_rate: Squeeze rate S of the value/query projections.
        layer_norm_eps: Epsilon of the layer normalization after W_ch.
    """

    kind: str = FusionKind.FMF.value
    squeeze_rate: int = 2
    layer_norm_eps: float = 1e-5


@dataclass
class HeadConfig:
    """Heads and decoding settings."""

    channels: int = 128
    window_weight: float = 0.30
    bn_eps: float = 1e-5


@dataclass
class LossWeights:
    """Weights of the total tracking loss.

    Attributes:
        fl: Focal loss weight.
        tr: Transitive relation loss weight.
        reg: Relation regularization weight.
    """

    fl: float = 1.0
    tr: float = 1.0 / 3.0
    reg: float = 1.0 / 3.0


@dataclass
class LossConfig:
    """Loss settings."""

    weights: LossWeights = field(default_factory=LossWeights)
    focal_alpha: float = 0.25
    focal_gamma: float = 2.0


@dataclass
class AugmentParams:
    """Crop context and augmentation ranges.

    Attributes:
        template_offset: Context offset of template crops.
        search_offset: Context offset of search crops.
        scale_range: Uniform range of the crop side multiplier.
        shift_range: Uniform range of the crop center multiplier.
        color_strength: Scale of the color jitter ranges (0 disables it).
    """

    template_offset: float = 0.2
    search_offset: float = 2.0
    scale_range: Tuple[float, float] = (0.65, 1.35)
    shift_range: Tuple[float, float] = (0.92, 1.08)
    color_strength: float = 1.0


@dataclass
class SamplingConfig:
    """Training tuple sampling."""

    delta: int = 150
    augment: AugmentParams = field(default_factory=AugmentParams)
    dataset_weights: Dict[str, float] = field(default_factory=dict)


@dataclass
class UpdatePolicy:
    """Dynamic template refresh policy.

    Attributes:
        n: Minimum number of frames between refreshes.
        lambda_d: Momentum of the running score average.
        strategy: One of ``running_average``, ``fixed_interval``, ``none``.
        initial_average: Starting value of the running score average.
    """

    n: int = 60
    lambda_d: float = 0.25
    strategy: str = UpdateStrategy.RUNNING_AVERAGE.value
    initial_average: float = 1.0


@dataclass
class TrackingConfig:
    """Online tracking settings."""

    update: UpdatePolicy = field(default_factory=UpdatePolicy)
    extended_results: bool = False


@dataclass
class AdaptationConfig:
    """Test-time adaptation of the heads' batch-norm statistics."""

    mode: str = AdaptMode.OFF.value
    lambda_bn: float = 0.1
    momentum_prior: float = 16.0
    momentum_rate: Optional[float] = None
    dua_momentum: float = 0.1
    dua_decay: float = 0.94
    dua_min_momentum: float = 0.005


@dataclass
class TrainingConfig:
    """Offline training settings."""

    batch_size: int = 8
    lr: float = 1e-4
    steps: int = 2000
    epochs: int = 1
    bn_momentum: float = 0.1
    grad_clip: float = 10.0
    weight_decay: float = 0.0
    log_every: int = 10


@dataclass
class EvaluationConfig:
    """One-pass evaluation settings."""

    workers: int = 1
    precision_threshold: float = 20.0
    norm_precision_threshold: float = 0.2
    num_thresholds: int = 21


@dataclass
class BenchConfig:
    """Latency benchmark settings.

    Attributes:
        blocks: Filtration blocks to time.
        channels: Block input width 2C.
        size: Spatial side of the block input.
    """

    repeats: int = 50
    warmup: int = 5
    threads: int = 1
    blocks: Tuple[str, ...] = (BlockKind.FMF.value, BlockKind.PSA.value)
    channels: int = 256
    size: int = 16


@dataclass
class SynthConfig:
    """Synthetic corpus generation."""

    sequences: int = 20
    length: int = 100
    frame_size: Tuple[int, int] = (320, 240)
    object_kind: str = ObjectKind.RECTANGLE.value
    motion: str = MotionKind.LINEAR.value
    corruption: str = Corruption.NONE.value
    severity: float = 0.0
    schedule: str = "constant"


@dataclass
class PathsConfig:
    """Input and output locations; an empty string means unset.

    Attributes:
        dataset: Dataset root directory.
        checkpoint: Trained checkpoint file.
        out: Output directory of the command.
        results: Existing results directory scored by ``eval``.
    """

    dataset: str = ""
    checkpoint: str = ""
    out: str = ""
    results: str = ""


@dataclass
class AppConfig:
    """
    Application configuration data class.

    Attributes:
        seed: Global random seed.
        log_level: Logging level name.
        preset: Name of the preset the defaults came from.
    """

    seed: int = 0
    log_level: str = "INFO"
    preset: str = "desk"
    backbone: BackboneConfig = field(default_factory=BackboneConfig)
    filtration: FiltrationConfig = field(default_factory=FiltrationConfig)
    heads: HeadConfig = field(default_factory=HeadConfig)
    losses: LossConfig = field(default_factory=LossConfig)
    sampling: SamplingConfig = field(default_factory=SamplingConfig)
    tracking: TrackingConfig = field(default_factory=TrackingConfig)
    adaptation: AdaptationConfig = field(default_factory=AdaptationConfig)
    training: TrainingConfig = field(default_factory=TrainingConfig)
    evaluation: EvaluationConfig = field(default_factory=EvaluationConfig)
    bench: BenchConfig = field(default_factory=BenchConfig)
    synth: SynthConfig = field(default_factory=SynthConfig)
    paths: PathsConfig = field(default_factory=PathsConfig)

    def to_dict(self) -> Dict[str, Any]:
        """Convert config to dictionary."""
        return _to_jsonable(asdict(self))

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "AppConfig":
        """Create config from a (possibly partial) nested dictionary."""
        return _build(cls, data, prefix="")

    def validate(self) -> "AppConfig":
        """Check value ranges, raising InvalidConfigValueError on the first failure."""
        _check(all(w > 0 for w in self.backbone.stage_channels), "backbone.stage_channels")
        _check(len(self.backbone.stage_channels) == 4, "backbone.stage_channels")
        _check(self.backbone.width > 0, "backbone.width")
        _check(self.backbone.share_weights, "backbone.share_weights")
        _check(_is_member(FusionKind, self.filtration.kind), "filtration.kind")
        squeeze = self.filtration.squeeze_rate
        _check(squeeze >= 1 and (2 * self.backbone.width) % squeeze == 0, "filtration.squeeze_rate")
        _check(self.heads.channels > 0, "heads.channels")
        _check(0.0 <= self.heads.window_weight <= 1.0, "heads.window_weight")
        weights = self.losses.weights
        _check(min(weights.fl, weights.tr, weights.reg) >= 0.0, "losses.weights")
        aug = self.sampling.augment
        _check(aug.scale_range[0] <= 1.0 <= aug.scale_range[1], "sampling.augment.scale_range")
        _check(aug.shift_range[0] <= 1.0 <= aug.shift_range[1], "sampling.augment.shift_range")
        _check(aug.template_offset >= 0.0 and aug.search_offset >= 0.0, "sampling.augment")
        _check(self.sampling.delta >= 0, "sampling.delta")
        policy = self.tracking.update
        _check(policy.n >= 1, "tracking.update.n")
        _check(0.0 < policy.lambda_d <= 1.0, "tracking.update.lambda_d")
        _check(_is_member(UpdateStrategy, policy.strategy), "tracking.update.strategy")
        _check(0.0 <= self.adaptation.lambda_bn <= 1.0, "adaptation.lambda_bn")
        if not _is_member(AdaptMode, self.adaptation.mode):
            raise UnknownAdaptationModeError(self.adaptation.mode)
        _check(_is_member(ObjectKind, self.synth.object_kind), "synth.object_kind")
        _check(_is_member(MotionKind, self.synth.motion), "synth.motion")
        _check(self.synth.schedule in ("constant", "ramp"), "synth.schedule")
        rate = self.adaptation.momentum_rate
        _check(rate is None or 0.0 <= rate <= 1.0, "adaptation.momentum_rate")
        _check(self.training.batch_size >= 2, "training.batch_size")
        _check(self.training.lr > 0.0, "training.lr")
        _check(0.0 <= self.training.bn_momentum <= 1.0, "training.bn_momentum")
        _check(self.evaluation.workers >= 1, "evaluation.workers")
        _check(self.bench.repeats >= 1 and self.bench.warmup >= 1, "bench")
        _check(all(_is_member(BlockKind, b) for b in self.bench.blocks), "bench.blocks")
        _check(self.bench.channels > 0 and self.bench.channels % 2 == 0, "bench.channels")
        _check(self.bench.size > 0, "bench.size")
        _check(self.synth.length >= 2, "synth.length")
        _check(_is_member(Corruption, self.synth.corruption), "synth.corruption")
        return self


PRESETS: Dict[str, Dict[str, Any]] = {
    "desk": {},
    "full": {
        "preset": "full",
        "sampling": {
            "delta": 150,
            "dataset_weights": {
                "got10k": 300_000,
                "lasot": 100_000,
                "coco": 200_000,
                "trackingnet": 400_000,
            },
        },
        "training": {"batch_size": 32, "lr": 1e-4, "epochs": 20, "steps": 31_250},
    },
}


def preset_config(name: str) -> AppConfig:
    """Return the configuration of a named preset.

    Args:
        name: ``desk`` or ``full``.

    Raises:
        MissingConfigurationError: If the preset does not exist.
    """
    if name not in PRESETS:
        raise MissingConfigurationError(f"Unknown preset {name!r}", config_key="preset")
    return AppConfig.from_dict(PRESETS[name])


class ConfigManager:
    """Configuration manager for dualtrack.

    Handles loading, saving, and accessing the hierarchical configuration.
    Values are resolved as defaults < config file < environment < explicit
    overrides (CLI flags).

    Attributes:
        config_path: Path to the configuration JSON file, if any.
        config: Current AppConfig instance.
        sources: Human-readable record of where overrides came from.

    Example:
        >>> manager = ConfigManager()
        >>> manager.get("tracking.update.n")
        60
        >>> manager.set("adaptation.mode", "dtta")
    """

    def __init__(
        self,
        config_path: Optional[Path] = None,
        env_file: Optional[Path] = None,
        use_environment: bool = True,
    ):
        """
        Initialize configuration manager.

        Args:
            config_path: Path to a JSON configuration file.
            env_file: Optional ``.env`` file read before the process environment.
            use_environment: Whether ``DUALTRACK_*`` variables are applied.
        """
        self.config_path = Path(config_path) if config_path is not None else None
        self.env_file = Path(env_file) if env_file is not None else Path(".env")
        self.use_environment = use_environment
        self.config = AppConfig()
        self.sources: Dict[str, str] = {}
        self.load()

    def load(self) -> None:
        """Load configuration from file and environment variables.

        Raises:
            ConfigurationError: If the file is missing, malformed or holds unknown keys.
        """
        data: Dict[str, Any] = {}
        if self.config_path is not None:
            if not self.config_path.exists():
                raise MissingConfigurationError(
                    f"Config file not found: {self.config_path}", config_key="config"
                )
            try:
                with open(self.config_path, "r", encoding="utf-8") as f:
                    data = json.load(f)
            except (OSError, json.JSONDecodeError) as exc:
                logger.exception("Configuration loading failed", exc_info=exc)
                raise ConfigurationError(f"Malformed config file {self.config_path}: {exc}") from exc
            if not isinstance(data, dict):
                raise ConfigurationError(f"Config root must be an object: {self.config_path}")

        preset = data.get("preset", "desk")
        if preset not in PRESETS:
            raise MissingConfigurationError(f"Unknown preset {preset!r}", config_key="preset")
        base = copy.deepcopy(PRESETS[preset])
        self.config = AppConfig.from_dict(_deep_merge(base, data))
        if self.config_path is not None:
            logger.info("Loaded configuration from %s", self.config_path)

        if self.use_environment:
            self.apply_overrides(self._environment_overrides(), source="environment")
        self.config.validate()

    def _environment_overrides(self) -> Dict[str, Any]:
        """Collect ``DUALTRACK_*`` variables from the .env file and process."""
        env: Dict[str, Any] = {}
        if self.env_file.exists():
            env.update({k: v for k, v in dotenv_values(self.env_file).items() if v is not None})
        env.update(os.environ)

        overrides: Dict[str, Any] = {}
        if ENV_SEED in env:
            overrides["seed"] = env[ENV_SEED]
        if ENV_LOG_LEVEL in env:
            overrides["log_level"] = env[ENV_LOG_LEVEL]
        for key, value in env.items():
            if not key.startswith(ENV_PREFIX) or key in (ENV_SEED, ENV_LOG_LEVEL):
                continue
            dotted = key[len(ENV_PREFIX):].lower().replace("__", ".")
            if _has_path(self.config, dotted):
                overrides[dotted] = value
        return overrides

    def save(self, path: Optional[Path] = None) -> Path:
        """Save configuration to a JSON file.

        Args:
            path: Destination; defaults to ``config_path``.

        Returns:
            The path written.
        """
        target = Path(path) if path is not None else self.config_path
        if target is None:
            raise MissingConfigurationError("No config path to save to", config_key="config")
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8") as f:
            json.dump(self.config.to_dict(), f, indent=4, sort_keys=True)
        return target

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a configuration value by dotted key.

        Args:
            key: Dotted key such as ``tracking.update.n``
            default: Value returned when the key does not exist

        Returns:
            Configuration value
        """
        node: Any = self.config
        for part in key.split("."):
            if not dataclasses.is_dataclass(node) or not hasattr(node, part):
                return default
            node = getattr(node, part)
        return node

    def set(self, key: str, value: Any) -> None:
        """
        Set a configuration value by dotted key, coercing it to the field type.

        Args:
            key: Dotted key
            value: New value (strings are parsed)
        """
        self.apply_overrides({key: value}, source="set")

    def apply_overrides(self, overrides: Mapping[str, Any], source: str = "override") -> None:
        """
        Apply several dotted-key overrides and re-validate.

        The overrides are applied to a copy; the current configuration only
        changes when every value parses and the result validates.

        Args:
            overrides: Mapping of dotted keys to values. ``None`` values are skipped.
            source: Label recorded in ``sources`` for provenance.

        Raises:
            ConfigurationError: If a key does not exist or a value cannot be coerced.
        """
        candidate = copy.deepcopy(self.config)
        applied = []
        for key, value in overrides.items():
            if value is None:
                continue
            parent, name = _resolve_parent(candidate, key)
            current = getattr(parent, name)
            hint = get_type_hints(type(parent))[name]
            setattr(parent, name, _coerce(value, current, hint, key))
            applied.append(key)
            logger.debug("Config %s = %r (%s)", key, getattr(parent, name), source)
        candidate.validate()
        self.config = candidate
        self.sources.update({key: source for key in applied})

    def reset(self) -> None:
        """Reset configuration to default values."""
        self.config = AppConfig()
        self.sources.clear()

    def to_dict(self) -> Dict[str, Any]:
        """Return the effective configuration as plain JSON-compatible data."""
        return self.config.to_dict()


def _check(condition: bool, key: str) -> None:
    if not condition:
        raise InvalidConfigValueError(f"Invalid value for {key}", config_key=key)


def _is_member(enum_cls: Any, value: str) -> bool:
    return value in {m.value for m in enum_cls}


def _to_jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_jsonable(v) for v in value]
    return value


def _deep_merge(base: Dict[str, Any], update: Mapping[str, Any]) -> Dict[str, Any]:
    for key, value in update.items():
        if isinstance(value, Mapping) and isinstance(base.get(key), dict):
            base[key] = _deep_merge(base[key], value)
        else:
            base[key] = value
    return base


def _resolve_parent(config: AppConfig, key: str) -> Tuple[Any, str]:
    parts = key.split(".")
    node: Any = config
    for part in parts[:-1]:
        if not dataclasses.is_dataclass(node) or not hasattr(node, part):
            raise ConfigurationError(f"Unknown config key: {key}")
        node = getattr(node, part)
    if not dataclasses.is_dataclass(node) or not hasattr(node, parts[-1]):
        raise ConfigurationError(f"Unknown config key: {key}")
    return node, parts[-1]


def _has_path(config: AppConfig, dotted: str) -> bool:
    node: Any = config
    for part in dotted.split("."):
        if not dataclasses.is_dataclass(node) or not hasattr(node, part):
            return False
        node = getattr(node, part)
    return True


def _build(cls: Any, data: Mapping[str, Any], prefix: str) -> Any:
    if not isinstance(data, Mapping):
        raise ConfigurationError(f"Section {prefix or '<root>'} must be an object")
    hints = get_type_hints(cls)
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise ConfigurationError(
            f"Unknown config keys: {', '.join(sorted(prefix + k for k in unknown))}"
        )
    default = cls()
    kwargs: Dict[str, Any] = {}
    for name in names:
        if name not in data:
            continue
        current = getattr(default, name)
        if dataclasses.is_dataclass(current):
            kwargs[name] = _build(type(current), data[name], f"{prefix}{name}.")
        else:
            kwargs[name] = _coerce(data[name], current, hints[name], prefix + name)
    return dataclasses.replace(default, **kwargs)


def _coerce(value: Any, current: Any, hint: Any, key: str) -> Any:
    """Convert ``value`` to the type of ``current`` (strings are parsed)."""
    try:
        if isinstance(current, bool):
            if isinstance(value, str):
                return value.strip().lower() in ("true", "1", "yes", "on")
            return bool(value)
        if isinstance(current, int):
            return int(value)
        if isinstance(current, float):
            return float(value)
        if isinstance(current, str):
            return str(value)
        if isinstance(current, tuple):
            items = json.loads(value) if isinstance(value, str) else value
            return tuple(type(current[0])(v) for v in items) if current else tuple(items)
        if isinstance(current, dict):
            items = json.loads(value) if isinstance(value, str) else value
            return {str(k): float(v) for k, v in dict(items).items()}
        if current is None:
            if value is None:
                return None
            if isinstance(value, str) and value.strip().lower() in ("", "none", "null"):
                return None
            return float(value)
    except (TypeError, ValueError) as exc:
        raise InvalidConfigValueError(f"Cannot parse {value!r} for {key}", config_key=key) from exc
    raise InvalidConfigValueError(f"Unsupported config type {hint!r} for {key}", config_key=key)


_config_manager: Optional[ConfigManager] = None
_config_lock = threading.Lock()


def get_config_manager() -> ConfigManager:
    """
    Get global configuration manager instance.

    Returns:
        ConfigManager instance
    """
    global _config_manager
    with _config_lock:
        if _config_manager is None:
            _config_manager = ConfigManager()
    return _config_manager


def reset_config_manager() -> None:
    """Reset global configuration manager instance."""
    global _config_manager
    _config_manager = None
