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
"""Network modules: backbone, filtration, correlation fusion and heads."""

from dualtrack.model.backbone import Backbone, ChannelAdapter
from dualtrack.model.filtration import (
    ChannelReduce,
    FastMixedFiltration,
    FiltrationOutput,
    PassThroughFiltration,
    PolarizedSelfAttention,
    RelationAwareBlock,
    build_filtration,
)
from dualtrack.model.fusion import SearchFusion, pixelwise_cross_correlation
from dualtrack.model.heads import HeadOutputs, TrackingHeads, decode_prediction, hann_window
from dualtrack.model.network import DualTrackNet, TrainingOutputs

__all__ = [
    "Backbone",
    "ChannelAdapter",
    "ChannelReduce",
    "DualTrackNet",
    "FastMixedFiltration",
    "FiltrationOutput",
    "HeadOutputs",
    "PassThroughFiltration",
    "PolarizedSelfAttention",
    "RelationAwareBlock",
    "SearchFusion",
    "TrackingHeads",
    "TrainingOutputs",
    "build_filtration",
    "decode_prediction",
    "hann_window",
    "pixelwise_cross_correlation",
]
