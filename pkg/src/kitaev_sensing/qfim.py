"""
Closed-form quantum Fisher information matrix of the Kitaev ground state.

With ``theta_k`` the polar angle of ``(z_k, y_k)``, each sector is
``cos(theta_k/2) + i sin(theta_k/2) c_k^+ c_{-k}^+`` and the QFIM reduces to
``F_ab = sum_k d_a theta_k d_b theta_k``, i.e.

    F_mu_mu       = sum_k delta^2 sin^2 k / eps_k^4
    F_mu_delta    = sum_k delta z_k sin^2 k / eps_k^4
    F_delta_delta = sum_k z_k^2 sin^2 k / eps_k^4

Sums run over the L/2 anti-periodic momenta and are accumulated with
``math.fsum`` since terms near k = pi dominate by many orders of magnitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import CriticalLineError
from .model import (
    ModelParams,
    bdg_components,
    build_grid,
    check_gapped,
    eps_plus_z,
    grid_components,
)

DET_CLAMP_REL = 1e-9
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class QfimMatrix:
    """Symmetric 2x2 QFIM in the (mu, delta) basis."""

    f_mm: float
    f_md: float
    f_dd: float
    params: ModelParams
    sites: int

    def __post_init__(self):
        if self.f_mm < 0 or self.f_dd < 0:
            raise ValueError(f"QFIM diagonal must be non-negative: f_mm={self.f_mm}, f_dd={self.f_dd}")
        if self.determinant < -DET_CLAMP_REL * max(1.0, self.f_mm * self.f_dd):
            raise ValueError(f"QFIM is not positive semidefinite: det={self.determinant}")

    @property
    def determinant(self) -> float:
        return self.f_mm * self.f_dd - self.f_md * self.f_md

    def as_array(self) -> np.ndarray:
        return np.array([[self.f_mm, self.f_md], [self.f_md, self.f_dd]])


@dataclass(frozen=True)
class PrecisionBound:
    """Lower bound on ``delta_mu^2 + delta_delta^2`` after ``repetitions`` runs."""

    g: float
    bound: float
    repetitions: int


def amplitude_derivatives(params: ModelParams, k: float) -> Tuple[float, complex, float, complex]:
    """
    Partial derivatives ``(du/dmu, dv/dmu, du/ddelta, dv/ddelta)`` at momentum ``k``.

    The delta-derivatives are the textbook expressions with ``y_k / delta``
    replaced by ``-sin k``, so they stay finite as delta -> 0.
    """
    c = bdg_components(params, k)
    z, y, eps = c.z, c.y, c.eps
    epz = float(eps_plus_z(z, y, eps))
    if eps <= 0.0 or epz <= 0.0:
        raise CriticalLineError(
            "amplitude derivatives undefined on the degenerate branch (eps_k + z_k = 0); "
            "use the one-sided limit of the amplitudes instead"
        )
    sin_k = math.sin(min(k, math.pi - k))
    root = math.sqrt(eps * epz)
    du_dmu = (z - eps) * root / (2.0 * _SQRT2 * eps**3)
    dv_dmu = 1j * y * root / (2.0 * _SQRT2 * eps**3)
    du_ddelta = y * z * sin_k / (2.0 * _SQRT2 * eps**2.5 * math.sqrt(epz))
    dv_ddelta = -1j * z * sin_k * math.sqrt(epz) / (2.0 * _SQRT2 * eps**2.5)
    return du_dmu, dv_dmu, du_ddelta, dv_ddelta


def qfim_terms(params: ModelParams, L: int) -> Tuple[np.ndarray, np.ndarray]:
    """Per-momentum angle derivatives ``(d_mu theta_k, d_delta theta_k)``, largest k first."""
    grid = build_grid(L)
    c = grid_components(params, grid)
    check_gapped(c)
    sin_k = np.sin(np.minimum(grid.momenta, grid.reflected))
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        # (x / eps) / eps rather than x / eps^2 so small gaps do not underflow eps^2
        a = params.delta * sin_k / c.eps / c.eps
        b = c.z * sin_k / c.eps / c.eps
        finite = np.all(np.isfinite(a * a)) and np.all(np.isfinite(b * b))
    if not finite:
        raise CriticalLineError(
            f"QFIM overflows at mu={params.mu}, delta={params.delta}, L={L}: "
            "a grid mode is numerically gapless"
        )
    return a[::-1], b[::-1]


def qfim(params: ModelParams, L: int) -> QfimMatrix:
    """Analytic QFIM of the ground state on ``L`` sites."""
    a, b = qfim_terms(params, L)
    f_mm, f_md, f_dd = math.fsum(a * a), math.fsum(a * b), math.fsum(b * b)
    if not math.isfinite(f_mm * f_dd):
        raise CriticalLineError(
            f"QFIM determinant overflows at mu={params.mu}, delta={params.delta}, L={L}"
        )
    return QfimMatrix(f_mm=f_mm, f_md=f_md, f_dd=f_dd, params=params, sites=int(L))


def precision_scalar(q: QfimMatrix) -> float:
    """``G = 1 / Tr[F^-1] = det F / Tr F``; tiny negative determinants clamp to zero."""
    trace = q.f_mm + q.f_dd
    if trace <= 0.0:
        raise ValueError("precision scalar undefined for a QFIM with zero trace")
    det = q.determinant
    if det < 0.0:
        if det < -DET_CLAMP_REL * max(1.0, q.f_mm * q.f_dd):
            raise ValueError(f"QFIM determinant {det} is significantly negative")
        det = 0.0
    return det / trace


def multiparam_bound(q: QfimMatrix, m: int = 1) -> PrecisionBound:
    """Equally weighted multi-parameter Cramer-Rao bound ``1 / (m G)``."""
    if m < 1:
        raise ValueError(f"repetitions must be a positive integer, got {m}")
    g = precision_scalar(q)
    bound = math.inf if g == 0.0 else 1.0 / (m * g)
    return PrecisionBound(g=g, bound=bound, repetitions=m)


def singleparam_bound(q: QfimMatrix, m: int = 1) -> float:
    """Sum of the two independent single-parameter bounds ``(1/m)(1/F_mm + 1/F_dd)``."""
    if m < 1:
        raise ValueError(f"repetitions must be a positive integer, got {m}")
    if q.f_mm <= 0.0 or q.f_dd <= 0.0:
        raise ValueError("single-parameter bound needs both diagonal QFIM elements positive")
    return (1.0 / q.f_mm + 1.0 / q.f_dd) / m
