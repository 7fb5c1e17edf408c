"""Finite-size scaling: power-law exponents from log-log least squares."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .model import ModelParams
from .qfim import precision_scalar, qfim

DEFAULT_SIZES = (400, 600, 800, 1000)
VERIFICATION_SIZES = tuple(range(1000, 10001, 1000))
SWEEP_QUANTITIES = ("f_mm", "f_dd", "f_md_abs", "g")


@dataclass(frozen=True)
class ScalingFit:
    """``value ~ exp(log_prefactor) * L**exponent`` fitted over ``points``."""

    exponent: float
    log_prefactor: float
    r_squared: float
    points: List[Tuple[int, float]]

    @property
    def prefactor(self) -> float:
        return float(np.exp(self.log_prefactor))


def fit_exponent(points: Sequence[Tuple[int, float]]) -> ScalingFit:
    """Ordinary least squares of ``ln(value)`` on ``ln(L)``."""
    points = [(int(L), float(v)) for L, v in points]
    if len(points) < 3:
        raise ValueError(f"need at least 3 points to fit an exponent, got {len(points)}")
    sizes = np.array([p[0] for p in points], dtype=float)
    values = np.array([p[1] for p in points])
    if len(set(sizes.tolist())) != len(sizes):
        raise ValueError("system sizes must be distinct")
    if np.any(sizes <= 0):
        raise ValueError("system sizes must be positive")
    if np.any(~(values > 0)):
        raise ValueError("all values must be positive to take logarithms")

    x = np.log(sizes)
    y = np.log(values)
    xc = x - x.mean()
    yc = y - y.mean()
    slope = float(np.dot(xc, yc) / np.dot(xc, xc))
    intercept = float(y.mean() - slope * x.mean())
    ss_res = float(np.sum((yc - slope * xc) ** 2))
    ss_tot = float(np.dot(yc, yc))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return ScalingFit(slope, intercept, min(1.0, max(0.0, r2)), points)


def quantity_value(params: ModelParams, L: int, quantity: str) -> float:
    if quantity not in SWEEP_QUANTITIES:
        raise ValueError(f"quantity must be one of {SWEEP_QUANTITIES}, got {quantity!r}")
    q = qfim(params, L)
    if quantity == "f_mm":
        return q.f_mm
    if quantity == "f_dd":
        return q.f_dd
    if quantity == "f_md_abs":
        return abs(q.f_md)
    return precision_scalar(q)


def scaling_sweep(
    params: ModelParams, sizes: Sequence[int] = DEFAULT_SIZES, quantity: str = "g"
) -> ScalingFit:
    """Evaluate ``quantity`` at each size and fit its exponent."""
    points = [(int(L), quantity_value(params, L, quantity)) for L in sizes]
    if all(v == 0.0 for _, v in points):
        raise ValueError(
            f"{quantity} vanishes identically at mu={params.mu}, delta={params.delta}; "
            "no exponent to fit"
        )
    return fit_exponent(points)
