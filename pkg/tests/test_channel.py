from __future__ import annotations

import pytest

from semcom import ChannelConfig, transmit
from semcom.codecs import CaptionSet, Payload


def payload_of(bits: int) -> Payload:
    return Payload("captions", CaptionSet(("x",)), bits)


class TestBudget:
    def test_within_budget_delivers(self):
        cfg = ChannelConfig(budget_bits=1000, rate_bps=1000.0)
        result = transmit(payload_of(160), cfg, seed=0)
        assert result.delivered and not result.violated_budget
        assert result.latency_s == 160 / 1000.0
        assert result.payload_bits == 160

    def test_over_budget_flagged(self):
        cfg = ChannelConfig(budget_bits=1000)
        result = transmit(payload_of(786432), cfg, seed=0)
        assert result.violated_budget
        assert result.delivered  # default policy: deliver but flag

    def test_exact_budget_is_violation_by_default(self):
        cfg = ChannelConfig(budget_bits=1000)
        assert transmit(payload_of(1000), cfg, seed=0).violated_budget

    def test_inclusive_mode_allows_exact_budget(self):
        cfg = ChannelConfig(budget_bits=1000, inclusive_budget=True)
        assert not transmit(payload_of(1000), cfg, seed=0).violated_budget
        assert transmit(payload_of(1001), cfg, seed=0).violated_budget

    def test_drop_policy(self):
        cfg = ChannelConfig(budget_bits=1000, on_violation="drop")
        result = transmit(payload_of(2000), cfg, seed=0)
        assert result.violated_budget and not result.delivered

    def test_budget_depends_only_on_size(self):
        cfg = ChannelConfig(budget_bits=1000)
        a = Payload("captions", CaptionSet(("aaaa",)), 500)
        b = Payload("captions", CaptionSet(("zz",)), 500)
        assert transmit(a, cfg, 1) == transmit(b, cfg, 1)


class TestErasure:
    def test_certain_erasure(self):
        cfg = ChannelConfig(erasure_prob=1.0)
        assert all(not transmit(payload_of(8), cfg, seed=s).delivered for s in range(20))

    def test_no_erasure_always_delivers(self):
        cfg = ChannelConfig(erasure_prob=0.0)
        assert all(transmit(payload_of(8), cfg, seed=s).delivered for s in range(20))

    def test_deterministic_per_seed(self):
        cfg = ChannelConfig(erasure_prob=0.5)
        for seed in range(10):
            assert transmit(payload_of(8), cfg, seed) == transmit(payload_of(8), cfg, seed)

    def test_rate_roughly_matches_probability(self):
        cfg = ChannelConfig(erasure_prob=0.3)
        lost = sum(not transmit(payload_of(8), cfg, seed=s).delivered for s in range(2000))
        assert 0.25 < lost / 2000 < 0.35


class TestLatency:
    def test_linear_in_size(self):
        cfg = ChannelConfig(rate_bps=500.0)
        one = transmit(payload_of(100), cfg, 0).latency_s
        two = transmit(payload_of(200), cfg, 0).latency_s
        assert two == pytest.approx(2 * one)
        assert one == pytest.approx(0.2)


class TestValidation:
    def test_bad_configs_rejected(self):
        with pytest.raises(ValueError):
            ChannelConfig(budget_bits=0)
        with pytest.raises(ValueError):
            ChannelConfig(rate_bps=0.0)
        with pytest.raises(ValueError):
            ChannelConfig(erasure_prob=1.5)
        with pytest.raises(ValueError):
            ChannelConfig(on_violation="retry")
