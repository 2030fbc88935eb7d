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
"""General utility functions.

Provides seeding helpers and small tensor conversions used
across the package.
"""

import random

import numpy as np
import torch


def seed_everything(seed: int) -> np.random.Generator:
    """Seed python, numpy and torch, and return a fresh numpy generator."""
    random.seed(seed)
    np.random.seed(seed % (2**32))
    torch.manual_seed(seed)
    return np.random.default_rng(seed)


def patch_to_tensor(patch: np.ndarray) -> torch.Tensor:
    """Convert a 3xHxW float patch into a 1x3xHxW float32 tensor."""
    return torch.from_numpy(np.ascontiguousarray(patch, dtype=np.float32)).unsqueeze(0)


def is_finite(value: torch.Tensor) -> bool:
    """Return True when every element of the tensor is finite."""
    return bool(torch.isfinite(value).all())
