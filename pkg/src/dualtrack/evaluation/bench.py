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
Latency, parameter and multiply-add benchmarks of filtration blocks and
of the full network.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence, Tuple, Union

import numpy as np
import torch
from torch import Tensor, nn

from dualtrack.config.config_manager import AppConfig, BenchConfig
from dualtrack.core.constants import SEARCH_GRID, SEARCH_SIZE, TEMPLATE_GRID, TEMPLATE_SIZE
from dualtrack.core.interfaces import BlockKind
from dualtrack.model.filtration import FastMixedFiltration, PolarizedSelfAttention
from dualtrack.model.network import DualTrackNet

logger = logging.getLogger(__name__)


@dataclass
class BenchReport:
    """Benchmark result of one block.

    Attributes:
        block: Block kind.
        input_shape: Shape of the (first) input tensor.
        samples_ms: Wall-clock latency of every timed repeat.
        median_ms: Median latency.
        p95_ms: 95th-percentile latency.
        params: Trainable parameters counted on the module.
        expected_params: Closed-form count, when one exists.
        macs: Multiply-adds of one forward pass.
    """

    block: str
    input_shape: Tuple[int, ...]
    samples_ms: List[float] = field(default_factory=list)
    median_ms: float = 0.0
    p95_ms: float = 0.0
    params: int = 0
    expected_params: Optional[int] = None
    macs: int = 0


def count_parameters(module: nn.Module) -> int:
    return sum(p.numel() for p in module.parameters() if p.requires_grad)


def count_macs(module: nn.Module, inputs: Sequence[Tensor]) -> int:
    """Multiply-adds of one forward pass.

    Convolutions and linear layers are counted through forward hooks;
    modules exposing ``elementwise_macs(h, w)`` add their broadcast terms
    for each call.
    """
    total = 0
    handles = []

    def _conv_hook(layer: nn.Conv2d, args: Any, output: Tensor) -> None:
        nonlocal total
        kh, kw = layer.kernel_size
        total += output.numel() // output.shape[0] * (layer.in_channels // layer.groups) * kh * kw

    def _linear_hook(layer: nn.Linear, args: Any, output: Tensor) -> None:
        nonlocal total
        total += output.numel() // output.shape[0] * layer.in_features

    def _elementwise_hook(layer: nn.Module, args: Any, output: Any) -> None:
        nonlocal total
        height, width = args[0].shape[-2:]
        total += layer.elementwise_macs(int(height), int(width))  # type: ignore[operator]

    for sub in module.modules():
        if isinstance(sub, nn.Conv2d):
            handles.append(sub.register_forward_hook(_conv_hook))
        elif isinstance(sub, nn.Linear):
            handles.append(sub.register_forward_hook(_linear_hook))
        if hasattr(sub, "elementwise_macs"):
            handles.append(sub.register_forward_hook(_elementwise_hook))
    try:
        with torch.no_grad():
            module(*inputs)
    finally:
        for handle in handles:
            handle.remove()
    if isinstance(module, DualTrackNet):
        total += TEMPLATE_GRID * TEMPLATE_GRID * module.width * SEARCH_GRID * SEARCH_GRID
    return total


def build_block(
    kind: Union[str, BlockKind],
    channels: int = 256,
    size: int = SEARCH_GRID,
    squeeze_rate: int = 2,
    config: Optional[AppConfig] = None,
) -> Tuple[nn.Module, List[Tensor], Optional[int]]:
    """Instantiate a block in eval mode with random inputs.

    Returns:
        (module, inputs, closed-form parameter count or None).
    """
    kind = BlockKind(kind)
    generator = torch.Generator().manual_seed(0)
    if kind is BlockKind.FULL:
        model = DualTrackNet(config or AppConfig()).eval()
        templates = [torch.rand(1, 3, TEMPLATE_SIZE, TEMPLATE_SIZE, generator=generator) for _ in range(2)]
        searches = [torch.rand(1, 3, SEARCH_SIZE, SEARCH_SIZE, generator=generator) for _ in range(2)]
        return model, [*templates, *searches], None
    block_cls = FastMixedFiltration if kind is BlockKind.FMF else PolarizedSelfAttention
    block = block_cls(channels, squeeze_rate=squeeze_rate).eval()
    x = torch.randn(1, channels, size, size, generator=generator)
    return block, [x], block_cls.parameter_count(channels, squeeze_rate)


def bench_block(
    kind: Union[str, BlockKind],
    channels: int = 256,
    size: int = SEARCH_GRID,
    bench: Optional[BenchConfig] = None,
    config: Optional[AppConfig] = None,
) -> BenchReport:
    """Time a block and report its parameter and multiply-add counts.

    Runs ``bench.warmup`` untimed passes, then ``bench.repeats`` timed ones
    with ``bench.threads`` intra-op threads.
    """
    bench = bench or BenchConfig()
    squeeze_rate = config.filtration.squeeze_rate if config is not None else 2
    module, inputs, expected = build_block(kind, channels, size, squeeze_rate, config)
    previous_threads = torch.get_num_threads()
    torch.set_num_threads(bench.threads)
    samples: List[float] = []
    try:
        with torch.no_grad():
            for _ in range(max(1, bench.warmup)):
                module(*inputs)
            for _ in range(bench.repeats):
                start = time.perf_counter()
                module(*inputs)
                samples.append((time.perf_counter() - start) * 1000.0)
    finally:
        torch.set_num_threads(previous_threads)

    report = BenchReport(
        block=BlockKind(kind).value,
        input_shape=tuple(inputs[0].shape),
        samples_ms=samples,
        median_ms=float(np.median(samples)),
        p95_ms=float(np.percentile(samples, 95)),
        params=count_parameters(module),
        expected_params=expected,
        macs=count_macs(module, inputs),
    )
    logger.info(
        "Bench %s: median %.3f ms, p95 %.3f ms, %d params, %d MACs",
        report.block,
        report.median_ms,
        report.p95_ms,
        report.params,
        report.macs,
    )
    return report


def format_bench_table(reports: Sequence[BenchReport]) -> str:
    """Fixed-width table with one row per block."""
    header = f"{'block':<6} {'input':<20} {'median_ms':>10} {'p95_ms':>10} {'params':>10} {'macs':>14}"
    rows = [header]
    for r in reports:
        shape = "x".join(str(d) for d in r.input_shape)
        rows.append(
            f"{r.block:<6} {shape:<20} {r.median_ms:>10.3f} {r.p95_ms:>10.3f} {r.params:>10d} {r.macs:>14d}"
        )
    return "\n".join(rows) + "\n"
