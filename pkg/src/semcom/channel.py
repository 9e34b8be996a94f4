"""Wireless link model: per-image bit budget, optional erasure, latency accounting.

The budget is a per-image payload-size cap. The constraint is strict by
default (a payload of exactly budget_bits violates it); inclusive mode is
available. Violations are results, not exceptions, so the harness can
score infeasible configurations and explain why they fail.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .codecs import Payload
from .seeding import rng_for

ViolationPolicy = Literal["flag", "drop"]

UNLIMITED_BITS = 1 << 62


@dataclass(frozen=True)
class ChannelConfig:
    """Link parameters.

    budget_bits: max payload size per image, in bits.
    rate_bps: link rate, used for latency reporting only.
    erasure_prob: probability the whole payload is lost.
    on_violation: "flag" delivers over-budget payloads but marks them;
        "drop" treats them as undelivered.
    inclusive_budget: when True a payload of exactly budget_bits is allowed.
    """

    budget_bits: int = UNLIMITED_BITS
    rate_bps: float = 1e6
    erasure_prob: float = 0.0
    on_violation: ViolationPolicy = "flag"
    inclusive_budget: bool = False

    def __post_init__(self):
        if self.budget_bits < 1:
            raise ValueError("budget_bits must be >= 1")
        if not self.rate_bps > 0:
            raise ValueError("rate_bps must be positive")
        if not 0.0 <= self.erasure_prob <= 1.0:
            raise ValueError("erasure_prob must lie in [0, 1]")
        if self.on_violation not in ("flag", "drop"):
            raise ValueError("on_violation must be 'flag' or 'drop'")


@dataclass(frozen=True)
class DeliveryResult:
    delivered: bool
    violated_budget: bool
    latency_s: float
    payload_bits: int


def transmit(payload: Payload, cfg: ChannelConfig, seed: int) -> DeliveryResult:
    """Send one payload over the link; the outcome depends only on its size."""
    if cfg.inclusive_budget:
        violated = payload.size_bits > cfg.budget_bits
    else:
        violated = payload.size_bits >= cfg.budget_bits
    latency = payload.size_bits / cfg.rate_bps
    delivered = True
    if violated and cfg.on_violation == "drop":
        delivered = False
    if delivered and cfg.erasure_prob > 0.0:
        erased = rng_for(seed, "erasure").random() < cfg.erasure_prob
        delivered = not erased
    return DeliveryResult(delivered, violated, latency, payload.size_bits)
