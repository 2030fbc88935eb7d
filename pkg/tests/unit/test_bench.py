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
import pytest
import torch

from dualtrack.config.config_manager import BenchConfig
from dualtrack.evaluation.bench import bench_block, build_block, count_macs, count_parameters, format_bench_table
from dualtrack.model.filtration import FastMixedFiltration, PolarizedSelfAttention


class TestCounts:
    @pytest.mark.parametrize("channels", [16, 64, 256])
    def test_fmf_below_psa(self, channels):
        fmf, _, fmf_expected = build_block("fmf", channels, 8)
        psa, _, psa_expected = build_block("psa", channels, 8)
        assert count_parameters(fmf) == fmf_expected
        assert count_parameters(psa) == psa_expected
        assert fmf_expected < psa_expected

    def test_macs_of_a_conv(self):
        conv = torch.nn.Conv2d(4, 6, kernel_size=3, padding=1)
        assert count_macs(conv, [torch.zeros(1, 4, 5, 5)]) == 6 * 25 * 4 * 9

    def test_fmf_macs(self):
        block = FastMixedFiltration(8).eval()
        inner, positions = 4, 16
        convs = 2 * inner * 8 * positions + 8 * positions + 8 * inner
        assert count_macs(block, [torch.zeros(1, 8, 4, 4)]) == convs + block.elementwise_macs(4, 4)

    def test_psa_costs_more(self):
        x = [torch.zeros(1, 64, 16, 16)]
        assert count_macs(FastMixedFiltration(64), x) < count_macs(PolarizedSelfAttention(64), x)


class TestBenchBlock:
    def test_single_repeat(self):
        report = bench_block("fmf", channels=16, size=8, bench=BenchConfig(repeats=1, warmup=1, threads=1))
        assert len(report.samples_ms) == 1
        assert report.median_ms == report.samples_ms[0]
        assert report.input_shape == (1, 16, 8, 8)
        assert report.params == report.expected_params

    def test_restores_threads(self):
        before = torch.get_num_threads()
        bench_block("psa", channels=16, size=8, bench=BenchConfig(repeats=2, warmup=1, threads=1))
        assert torch.get_num_threads() == before

    def test_full_network(self, tiny_config):
        report = bench_block("full", bench=BenchConfig(repeats=1, warmup=1), config=tiny_config)
        assert report.expected_params is None
        assert report.params > 0 and report.macs > 0
        assert report.input_shape == (1, 3, 128, 128)

    def test_table(self):
        reports = [
            bench_block(kind, channels=16, size=8, bench=BenchConfig(repeats=3, warmup=1)) for kind in ("fmf", "psa")
        ]
        lines = format_bench_table(reports).splitlines()
        assert lines[0].split() == ["block", "input", "median_ms", "p95_ms", "params", "macs"]
        assert [line.split()[0] for line in lines[1:]] == ["fmf", "psa"]
