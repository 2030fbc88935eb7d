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
"""Crops, augmentation, dataset I/O, tuple sampling and synthetic sequences."""

from dualtrack.data.augment import GeometricDraw, apply_geometric_augment, color_jitter, draw_geometric
from dualtrack.data.crops import CropWindow, center_subpatch, context_side, crop_patch, crop_region, crop_window
from dualtrack.data.records import SequenceRecord, load_dataset, load_sequence, read_boxes, save_sequence, write_boxes
from dualtrack.data.sampler import (
    TrainingBatch,
    TrainingTuple,
    TupleSampler,
    collate,
    draw_indices,
    sample_training_tuple,
)
from dualtrack.data.synthetic import SyntheticSpec, apply_corruption, generate_corpus, synth_generate_sequence

__all__ = [
    "CropWindow",
    "GeometricDraw",
    "SequenceRecord",
    "SyntheticSpec",
    "TrainingBatch",
    "TrainingTuple",
    "TupleSampler",
    "apply_corruption",
    "apply_geometric_augment",
    "center_subpatch",
    "collate",
    "color_jitter",
    "context_side",
    "crop_patch",
    "crop_region",
    "crop_window",
    "draw_geometric",
    "draw_indices",
    "generate_corpus",
    "load_dataset",
    "load_sequence",
    "read_boxes",
    "sample_training_tuple",
    "save_sequence",
    "synth_generate_sequence",
    "write_boxes",
]
