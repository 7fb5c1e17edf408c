"""
Numerical cross-checks of the analytic QFIM.

Two independent routes, neither of which uses the closed-form sums:

* ``qfim_fd`` differentiates the Bogoliubov amplitudes by central differences
  and assembles the pure-state QFIM (including the Berry-connection term).
* ``qfi_fidelity`` reads a diagonal element off the drop of the state overlap
  under a small parameter step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .model import ModelParams, ground_state
from .qfim import QfimMatrix, qfim

DEFAULT_H = 1e-5
DEFAULT_STEP = 1e-4
MAX_STEP = 0.1
MIN_RELATIVE_STEP = 1e-12
FIDELITY_FLOOR = 1e-14
ABSOLUTE_BELOW = 1e-12

AXES = ("mu", "delta")


@dataclass(frozen=True)
class CrosscheckReport:
    point: Tuple[ModelParams, int]
    analytic: QfimMatrix
    finite_difference: QfimMatrix
    fidelity_diag: Tuple[float, float]
    max_rel_error: float
    berry_term: float


def _axis_value(params: ModelParams, axis: str) -> float:
    if axis == "mu":
        return params.mu
    if axis == "delta":
        return params.delta
    raise ValueError(f"axis must be one of {AXES}, got {axis!r}")


def _shift(params: ModelParams, axis: str, amount: float) -> ModelParams:
    if axis == "mu":
        return params.shifted(d_mu=amount)
    return params.shifted(d_delta=amount)


def _check_step(params: ModelParams, h: float, name: str):
    if not h > 0.0:
        raise ValueError(f"{name} must be positive, got {h}")
    if h > MAX_STEP:
        raise ValueError(f"{name}={h} exceeds {MAX_STEP}: truncation error dominates")
    scale = max(1.0, abs(params.mu), abs(params.delta))
    if h < MIN_RELATIVE_STEP * scale:
        raise ValueError(f"{name}={h} is below the resolvable difference at this point")


def _amplitude_derivative(params: ModelParams, L: int, axis: str, h: float):
    """d(u, v)/d(axis) on the grid; one-sided toward delta > 0 when the stencil would cross zero."""
    x = _axis_value(params, axis)

    def amps(offset):
        s = ground_state(_shift(params, axis, offset), L)
        return s.u, s.v

    if axis == "delta" and 0.0 <= x < h:
        (u0, v0), (u1, v1), (u2, v2) = amps(0.0), amps(h), amps(2.0 * h)
        return (-3.0 * u0 + 4.0 * u1 - u2) / (2.0 * h), (-3.0 * v0 + 4.0 * v1 - v2) / (2.0 * h)
    if axis == "delta" and -h < x < 0.0:
        (u0, v0), (u1, v1), (u2, v2) = amps(0.0), amps(-h), amps(-2.0 * h)
        return (3.0 * u0 - 4.0 * u1 + u2) / (2.0 * h), (3.0 * v0 - 4.0 * v1 + v2) / (2.0 * h)
    (up, vp), (um, vm) = amps(h), amps(-h)
    return (up - um) / (2.0 * h), (vp - vm) / (2.0 * h)


def _fd_pieces(params: ModelParams, L: int, h: float):
    _check_step(params, h, "h")
    state = ground_state(params, L)
    derivs = [_amplitude_derivative(params, L, axis, h) for axis in AXES]
    metric = np.empty((2, 2))
    berry = np.empty((2, 2))
    # <d_a psi|psi>, one per axis
    conn = [
        math.fsum((np.conj(du) * state.u).real + (np.conj(dv) * state.v).real)
        + 1j * math.fsum((np.conj(du) * state.u).imag + (np.conj(dv) * state.v).imag)
        for du, dv in derivs
    ]
    for a in range(2):
        for b in range(2):
            dua, dva = derivs[a]
            dub, dvb = derivs[b]
            metric[a, b] = 4.0 * math.fsum((np.conj(dua) * dub + np.conj(dva) * dvb).real)
            berry[a, b] = 4.0 * (conn[a] * np.conj(conn[b])).real
    return metric, berry


def _as_qfim(metric, berry, params: ModelParams, L: int) -> QfimMatrix:
    f = metric - berry
    return QfimMatrix(
        f_mm=f[0, 0],
        f_md=0.5 * (f[0, 1] + f[1, 0]),
        f_dd=f[1, 1],
        params=params,
        sites=int(L),
    )


def qfim_fd(params: ModelParams, L: int, h: float = DEFAULT_H) -> QfimMatrix:
    """QFIM from central-difference amplitude derivatives (Berry term subtracted)."""
    metric, berry = _fd_pieces(params, L, h)
    return _as_qfim(metric, berry, params, L)


def berry_term(params: ModelParams, L: int, h: float = DEFAULT_H) -> float:
    """Largest |4 Re(<d_a psi|psi><psi|d_b psi>)|; zero for these real-phase states."""
    _, berry = _fd_pieces(params, L, h)
    return float(np.max(np.abs(berry)))


def _log_abs_overlap(a, b) -> float:
    # |<a|b>|^2 = 1 - |u_a v_b - u_b v_a|^2 per normalized sector; avoids 1 - (1 - tiny)
    cross = np.abs(a.u * b.v - b.u * a.v) ** 2
    if np.any(cross >= 1.0):
        return -math.inf
    return 0.5 * math.fsum(np.log1p(-cross))


def qfi_fidelity(params: ModelParams, L: int, axis: str, step: float = DEFAULT_STEP) -> float:
    """
    Diagonal QFIM element along ``axis`` from ``8 (1 - |<psi|psi'>|) / step^2``.

    The two states straddle the point symmetrically; along delta they are
    moved onto the delta >= 0 side (resp. <= 0) when the pair would
    straddle delta = 0.
    """
    x = _axis_value(params, axis)
    _check_step(params, step, "step")
    if axis == "delta" and 0.0 <= x < 0.5 * step:
        lo, hi = 0.0, step
    elif axis == "delta" and -0.5 * step < x < 0.0:
        lo, hi = -step, 0.0
    else:
        lo, hi = -0.5 * step, 0.5 * step
    a = ground_state(_shift(params, axis, lo), L)
    b = ground_state(_shift(params, axis, hi), L)
    if np.array_equal(a.u, b.u) and np.array_equal(a.v, b.v):
        return 0.0
    infidelity = -math.expm1(_log_abs_overlap(a, b))
    if infidelity >= 0.1:
        raise ValueError(f"step={step} too large: 1 - |overlap| = {infidelity:.3g}")
    if infidelity < FIDELITY_FLOOR:
        raise ValueError(f"step={step} too small: 1 - |overlap| = {infidelity:.3g} is unresolved")
    return 8.0 * infidelity / step**2


def _deviation(estimate: float, exact: float, scale: float) -> float:
    if scale < ABSOLUTE_BELOW:
        return abs(estimate - exact)
    return abs(estimate - exact) / scale


def crosscheck(
    params: ModelParams, L: int, h: float = DEFAULT_H, step: float = DEFAULT_STEP
) -> CrosscheckReport:
    """
    Compare the analytic QFIM with both numerical routes.

    Each element's deviation is measured relative to ``sqrt(F_aa F_bb)`` of the
    analytic matrix, which is the element itself on the diagonal and the
    Cauchy-Schwarz bound off it.  Scales under 1e-12 are compared absolutely.
    """
    analytic = qfim(params, L)
    metric, berry = _fd_pieces(params, L, h)
    fd = _as_qfim(metric, berry, params, L)
    fid = (qfi_fidelity(params, L, "mu", step), qfi_fidelity(params, L, "delta", step))
    cross_scale = math.sqrt(analytic.f_mm * analytic.f_dd)
    errors = [
        _deviation(fd.f_mm, analytic.f_mm, analytic.f_mm),
        _deviation(fd.f_md, analytic.f_md, max(abs(analytic.f_md), cross_scale)),
        _deviation(fd.f_dd, analytic.f_dd, analytic.f_dd),
        _deviation(fid[0], analytic.f_mm, analytic.f_mm),
        _deviation(fid[1], analytic.f_dd, analytic.f_dd),
    ]
    return CrosscheckReport(
        point=(params, int(L)),
        analytic=analytic,
        finite_difference=fd,
        fidelity_diag=fid,
        max_rel_error=max(errors),
        berry_term=float(np.max(np.abs(berry))),
    )
