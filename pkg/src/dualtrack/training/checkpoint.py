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
Checkpoint container.

A checkpoint is a zstandard-compressed ``torch.save`` payload holding a
magic string, the format version, the effective configuration and the
state dicts of the network (weights plus source batch-norm statistics) and
of the training-only projection heads. Adapted statistics are never saved.
"""

import io
import logging
import pickle
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import torch
import zstandard as zstd
from packaging.version import InvalidVersion, Version
from torch import nn

from dualtrack.config.config_manager import AppConfig
from dualtrack.core.constants import CHECKPOINT_FORMAT_VERSION, CHECKPOINT_MAGIC
from dualtrack.core.exceptions import CheckpointError, ConfigurationError
from dualtrack.model.network import DualTrackNet

logger = logging.getLogger(__name__)

COMPRESSION_LEVEL = 10


@dataclass
class Checkpoint:
    """Decoded checkpoint contents."""

    config: AppConfig
    model_state: Dict[str, Any]
    projection_state: Optional[Dict[str, Any]] = None
    format_version: str = CHECKPOINT_FORMAT_VERSION
    metadata: Dict[str, Any] = field(default_factory=dict)


def save_checkpoint(
    path: Path,
    model: nn.Module,
    config: AppConfig,
    projection: Optional[nn.Module] = None,
    metadata: Optional[Dict[str, Any]] = None,
) -> Path:
    """Write a checkpoint atomically.

    Args:
        path: Destination file.
        model: Network whose state dict is stored.
        config: Effective configuration echoed into the container.
        projection: Optional training heads.
        metadata: Extra JSON-compatible values (step count, final loss).

    Returns:
        The path written.
    """
    payload = {
        "magic": CHECKPOINT_MAGIC,
        "format_version": CHECKPOINT_FORMAT_VERSION,
        "config": config.to_dict(),
        "model": model.state_dict(),
        "projection": projection.state_dict() if projection is not None else None,
        "metadata": metadata or {},
    }
    buffer = io.BytesIO()
    torch.save(payload, buffer)
    data = zstd.ZstdCompressor(level=COMPRESSION_LEVEL).compress(buffer.getvalue())

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(data)
    tmp.replace(path)
    logger.info("Checkpoint saved to %s (%d bytes)", path, len(data))
    return path


def _check_version(raw: Any, path: Path) -> str:
    try:
        found = Version(str(raw))
    except InvalidVersion as exc:
        raise CheckpointError(f"Invalid checkpoint format version {raw!r}", path=str(path)) from exc
    current = Version(CHECKPOINT_FORMAT_VERSION)
    if found.major != current.major:
        raise CheckpointError(
            f"Checkpoint format {found} is incompatible with {current}", path=str(path)
        )
    if found > current:
        logger.warning("Checkpoint %s uses newer format %s (reader is %s)", path, found, current)
    return str(found)


def read_checkpoint(path: Path) -> Checkpoint:
    """Decode a checkpoint file.

    Raises:
        CheckpointError: If the file is missing, corrupt or of an incompatible format.
    """
    path = Path(path)
    if not path.exists():
        raise CheckpointError(f"Checkpoint not found: {path}", path=str(path))
    try:
        raw = zstd.ZstdDecompressor().decompress(path.read_bytes())
        payload = torch.load(io.BytesIO(raw), map_location="cpu", weights_only=True)
    except (zstd.ZstdError, pickle.UnpicklingError, RuntimeError, EOFError, ValueError) as exc:
        logger.exception("Checkpoint decoding failed", exc_info=exc)
        raise CheckpointError(f"Corrupt checkpoint: {path}", path=str(path)) from exc

    if not isinstance(payload, dict) or payload.get("magic") != CHECKPOINT_MAGIC:
        raise CheckpointError(f"Not a dualtrack checkpoint: {path}", path=str(path))
    version = _check_version(payload.get("format_version"), path)
    try:
        config = AppConfig.from_dict(payload.get("config") or {})
    except ConfigurationError as exc:
        raise CheckpointError(f"Checkpoint config is invalid: {exc}", path=str(path)) from exc
    return Checkpoint(
        config=config,
        model_state=payload["model"],
        projection_state=payload.get("projection"),
        format_version=version,
        metadata=dict(payload.get("metadata") or {}),
    )


def load_model(path: Path) -> Tuple[DualTrackNet, AppConfig]:
    """Rebuild the network stored in a checkpoint, in eval mode.

    Returns:
        (model, configuration echoed in the checkpoint).
    """
    checkpoint = read_checkpoint(path)
    model = DualTrackNet(checkpoint.config)
    try:
        model.load_state_dict(checkpoint.model_state)
    except RuntimeError as exc:
        raise CheckpointError(f"Checkpoint weights do not match the model: {exc}", path=str(path)) from exc
    logger.info("Loaded checkpoint %s (format %s)", path, checkpoint.format_version)
    return model.eval(), checkpoint.config
