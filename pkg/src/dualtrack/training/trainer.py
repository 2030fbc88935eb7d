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
Offline training loop.

Each step samples a batch of training tuples, runs the network in training
mode (batch-norm running statistics follow the exponential rule with the
configured momentum), evaluates the total loss and takes one Adam step
with global-norm gradient clipping.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import torch
from torch import nn

from dualtrack.config.config_manager import AppConfig
from dualtrack.core.exceptions import NonFiniteLossError
from dualtrack.core.utils import is_finite, seed_everything
from dualtrack.data.sampler import TrainingBatch, TupleSampler
from dualtrack.losses.relation import ProjectionHeads
from dualtrack.losses.total import LossBreakdown, compute_losses
from dualtrack.model.network import DualTrackNet, TrainingOutputs
from dualtrack.training.checkpoint import save_checkpoint

logger = logging.getLogger(__name__)


@dataclass
class TrainingResult:
    """Summary of a training run."""

    steps: int
    history: List[Dict[str, float]] = field(default_factory=list)
    checkpoint_path: Optional[Path] = None

    @property
    def final_loss(self) -> float:
        return self.history[-1]["total"] if self.history else float("nan")


class Trainer:
    """Owns the network, the projection heads and the optimizer.

    Args:
        config: Application configuration; seeds the generators before
            building any module.
        model: Optional pre-built network.

    Example:
        >>> trainer = Trainer(AppConfig())
        >>> result = trainer.fit(sampler, steps=10)
    """

    def __init__(self, config: Optional[AppConfig] = None, model: Optional[DualTrackNet] = None):
        self.config = config or AppConfig()
        seed_everything(self.config.seed)
        self.model = model or DualTrackNet(self.config)
        self.projection = ProjectionHeads(self.model.width)
        self.trainable: List[nn.Parameter] = [
            *self.model.parameters(),
            *self.projection.parameters(),
        ]
        training = self.config.training
        self.optimizer = torch.optim.Adam(
            self.trainable, lr=training.lr, weight_decay=training.weight_decay
        )

    def forward_training(self, batch: TrainingBatch) -> TrainingOutputs:
        """Network outputs plus the intermediates used by the relation losses."""
        return self.model(batch.static_template, batch.dynamic_template, batch.search, batch.current)

    def step(self, batch: TrainingBatch, step_index: int = 0) -> LossBreakdown:
        """One optimizer step on ``batch``.

        Raises:
            NonFiniteLossError: If any loss component is NaN or infinite.
        """
        self.model.train()
        self.projection.train()
        outputs = self.forward_training(batch)
        losses = compute_losses(
            outputs, batch.gt_boxes, batch.targets, self.projection, self.config.losses
        )
        if not is_finite(losses.total):
            raise NonFiniteLossError(step_index, losses.as_floats())

        self.optimizer.zero_grad(set_to_none=True)
        losses.total.backward()
        torch.nn.utils.clip_grad_norm_(self.trainable, self.config.training.grad_clip)
        self.optimizer.step()
        return losses

    def fit(
        self,
        sampler: TupleSampler,
        steps: Optional[int] = None,
        log_path: Optional[Path] = None,
    ) -> TrainingResult:
        """Train for ``steps`` steps (default ``training.steps * training.epochs``).

        Args:
            sampler: Source of batches.
            steps: Override of the step count.
            log_path: JSON-lines loss log; the first line echoes the configuration.
        """
        training = self.config.training
        total_steps = steps if steps is not None else training.steps * training.epochs
        history: List[Dict[str, float]] = []
        log_file = open(log_path, "w", encoding="utf-8") if log_path is not None else None
        try:
            if log_file is not None:
                log_file.write(json.dumps({"event": "config", "config": self.config.to_dict()}, sort_keys=True) + "\n")
            for step_index in range(1, total_steps + 1):
                losses = self.step(sampler.batch(training.batch_size), step_index)
                record = losses.as_floats()
                history.append(record)
                if log_file is not None:
                    log_file.write(json.dumps({"event": "step", "step": step_index, **record}, sort_keys=True) + "\n")
                if step_index % training.log_every == 0 or step_index == total_steps:
                    logger.info(
                        "step %d/%d loss %.4f (iou %.4f focal %.4f tr %.4f reg %.4f)",
                        step_index,
                        total_steps,
                        record["total"],
                        record["iou"],
                        record["focal"],
                        record["relation"],
                        record["regularizer"],
                    )
        finally:
            if log_file is not None:
                log_file.close()
        self.model.eval()
        return TrainingResult(steps=total_steps, history=history)

    def save(self, path: Path, metadata: Optional[Dict[str, Any]] = None) -> Path:
        return save_checkpoint(path, self.model, self.config, self.projection, metadata)
