# Copyright 2026 The tinydse Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import tinydse


def test_arch_and_footprint():
    specs = tinydse.default_archs()
    assert [s.name for s in specs][:2] == ["resnet6", "resnet8a"]
    graph = tinydse.build_arch(specs[0])
    assert graph.param_count() == 379712
    assert tinydse.param_bytes(graph, tinydse.PrecisionScheme.float32()) == 1518848
    assert tinydse.param_bytes(graph, tinydse.PrecisionScheme.fixed8()) == 379712
    assert tinydse.peak_memory_bytes(graph, tinydse.PrecisionScheme.float32()) == 3211264
    elems = dict(tinydse.layer_activation_elems(graph))
    assert elems["input"] == 224 * 224 * 3


def test_custom_spec_validation():
    spec = tinydse.ArchSpec("tiny", [1], base_channels=16, input_h=64, input_w=64,
                            embedding_dim=32)
    graph = tinydse.build_arch(spec)
    assert graph.param_count() > 0
    with pytest.raises(tinydse.ValidationError):
        tinydse.ArchSpec("bad", [])


def test_catalog_and_board():
    catalog = tinydse.default_catalog()
    assert len(catalog.parts) == 14
    tier = tinydse.select_memory_tier(catalog, "flash", 3 * 2**20 + 2**18)
    assert tier.capacity_mb == 4
    board = tinydse.min_board(catalog, flash_bytes=3407872, psram_bytes=602112,
                              sensors=["camera", "microphone"], min_cores=2)
    assert board.processor.name == "esp32s3"
    cost = tinydse.board_cost(board)
    assert cost.total_cents == sum(cents for _, cents in cost.items)


def test_latency_model():
    coeffs = tinydse.LatencyCoeffs()
    for op in ("conv", "fc", "elementwise", "pool"):
        for cls in ("float32", "fixed8", "xnor_base"):
            coeffs.set(op, cls, 10.0)
    graph = tinydse.build_arch(tinydse.default_archs()[0])
    base = tinydse.model_latency(graph, tinydse.PrecisionScheme.xnor(1, 1), coeffs)
    assert tinydse.model_latency(graph, tinydse.PrecisionScheme.xnor(2, 1), coeffs) == 2 * base
    compute, _, total = tinydse.system_latency([("face", 4.0), ("voice", 4.0)], 2)
    assert compute == total == 4.0
    assert tinydse.effective_latency(10.0, 0.5) == 20.0
    with pytest.raises(tinydse.EvalError):
        tinydse.effective_latency(10.0, 1.0)


def test_verification_metrics():
    scores = [(True, d) for d in (1, 2, 3, 4)] + [(False, d) for d in (3, 4, 5, 6)]
    curve = tinydse.roc(scores)
    assert abs(tinydse.eer(curve) - 0.25) < 1e-12
    op = tinydse.frr_at_far(curve, 0.25)
    assert op.threshold == 3.5 and op.frr == 0.25
    assert tinydse.eer_of([(True, 0.1), (False, 0.9)]) == 0.0

    fe, fp = [1.0, 0.0], [0.0, 1.0]
    ve, vp = [1.0, 0.0], [1.0, 0.0]
    fused = tinydse.fuse_distance(fe, fp, ve, vp)
    assert math.isclose(fused**2, tinydse.distance(fe, fp) ** 2, rel_tol=1e-12)


def test_pareto_front():
    assert sorted(tinydse.pareto_front([(1, 5), (2, 3), (3, 4)])) == [0, 1]
    assert tinydse.pareto_front([(7, 7)]) == [0]
