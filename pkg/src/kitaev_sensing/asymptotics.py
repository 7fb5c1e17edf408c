"""Leading-order QFIM near the multicritical point mu = 2, delta -> 0, and regime labels."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams

QUANTITIES = ("f_mm", "f_dd", "g")

# (low below, high above) in |delta|; the closed interval between is "intermediate"
REGIME_THRESHOLDS = {
    "f_mm": (1e-3, 1e-2),
    "f_dd": (1e-5, 0.03),
    "g": (1e-5, 0.03),
}


@dataclass(frozen=True)
class LeadingOrder:
    f_mm_lead: float
    f_dd_lead: float
    f_md_lead: float
    g_lead: float


@dataclass(frozen=True)
class RegimeLabel:
    quantity: str
    label: str


def leading_order(params: ModelParams, L: int) -> LeadingOrder:
    """
    Leading large-L behaviour at the multicritical point.

    Only ``params.delta`` enters; ``mu`` is assumed to sit at 2.  Never
    raises on out-of-regime input.
    """
    d = params.delta
    L = float(L)
    pi = math.pi
    return LeadingOrder(
        f_mm_lead=d * d * L**6 / pi**6,
        f_dd_lead=L * L / 8.0,
        f_md_lead=-d * L**4 / pi**4,
        g_lead=(pi * pi - 8.0) * d * d * L**6 / pi**8,
    )


def odd_zeta_partial(terms: int) -> float:
    """Partial sum of ``1 / (2j - 1)^2`` for j = 1..terms (tends to pi^2 / 8)."""
    if terms < 1:
        raise ValueError(f"terms must be a positive integer, got {terms}")
    odd = np.arange(1, 2 * terms, 2, dtype=float)
    return math.fsum(1.0 / (odd * odd))


def classify_regime(quantity: str, delta: float) -> RegimeLabel:
    """Label ``delta`` as low / intermediate / high for the scaling of ``quantity``."""
    if quantity not in REGIME_THRESHOLDS:
        raise ValueError(f"quantity must be one of {QUANTITIES}, got {quantity!r}")
    if delta < 0:
        raise ValueError(f"delta must be non-negative, got {delta}")
    low, high = REGIME_THRESHOLDS[quantity]
    if delta < low:
        label = "low"
    elif delta <= high:
        label = "intermediate"
    else:
        label = "high"
    return RegimeLabel(quantity, label)
