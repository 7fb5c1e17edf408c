"""
Momentum-space description of the 1D Kitaev chain with anti-periodic boundaries.

Each pair of momenta (k, -k) contributes an independent two-level sector
spanned by the empty state and the doubly occupied pair state.  The ground
state is the product over sectors of ``u_k + v_k c_k^+ c_{-k}^+`` acting on
the vacuum, with

    z_k = -mu - 2 cos k,    y_k = -delta sin k,    eps_k = sqrt(z_k^2 + y_k^2)

and ``u_k = sqrt((eps_k + z_k) / (2 eps_k))``, ``v_k = i y_k / sqrt(2 eps_k (eps_k + z_k))``.

Near the band edges ``1 + cos k`` and ``1 - cos k`` are tiny, so ``z_k`` is
rebuilt from half-angle sines of ``k`` and ``pi - k``; the grid keeps the
reflected momenta exactly (from integers) for that purpose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Tuple, Union

import numpy as np

from .errors import ConvergenceError, CriticalLineError

ArrayLike = Union[float, np.ndarray]

# eps + z below this fraction of eps is evaluated through (eps - z) instead
STABLE_BRANCH_RATIO = 1e-8
GAPLESS_Z_TOL = 1e-14
_PI_6 = np.pi / 6
DEFAULT_WINDING_STEPS = 10_000
WINDING_RESIDUAL_TOL = 1e-3


@dataclass(frozen=True)
class ModelParams:
    """Couplings of the chain: on-site potential ``mu`` and p-wave pairing ``delta``."""

    mu: float
    delta: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.delta)):
            raise ValueError(f"couplings must be finite, got mu={self.mu}, delta={self.delta}")
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "delta", float(self.delta))

    def shifted(self, d_mu: float = 0.0, d_delta: float = 0.0) -> "ModelParams":
        return ModelParams(self.mu + d_mu, self.delta + d_delta)


@dataclass(frozen=True)
class MomentumGrid:
    """
    The L/2 anti-periodic momenta ``k_i = (2i - 1) pi / L``, i = 1..L/2.

    Attributes
    ----------
    sites : int
        Chain length L (even, at least 2).
    momenta : np.ndarray
        Strictly increasing momenta in (0, pi).
    reflected, centered : np.ndarray
        ``pi - momenta`` and ``pi/2 - momenta``, built from integers so they
        carry no cancellation error.
    """

    sites: int
    momenta: np.ndarray = field(repr=False)
    reflected: np.ndarray = field(repr=False)
    centered: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.momenta)

    def __eq__(self, other):
        if not isinstance(other, MomentumGrid):
            return NotImplemented
        return self.sites == other.sites

    def __hash__(self):
        return hash(self.sites)


@dataclass(frozen=True)
class BdgComponents:
    """Band functions ``z``, ``y`` and the dispersion ``eps`` (scalars or arrays)."""

    z: ArrayLike
    y: ArrayLike
    eps: ArrayLike


@dataclass(frozen=True)
class BogoliubovState:
    """Per-sector amplitudes of the ground state; ``u`` real, ``v`` purely imaginary."""

    params: ModelParams
    grid: MomentumGrid
    u: np.ndarray = field(repr=False)
    v: np.ndarray = field(repr=False)

    @property
    def amplitudes(self):
        return list(zip(self.u.tolist(), self.v.tolist()))


def build_grid(L: int) -> MomentumGrid:
    """Return the anti-periodic momentum grid for a chain of ``L`` sites."""
    if isinstance(L, bool) or int(L) != L:
        raise ValueError(f"L must be an integer, got {L!r}")
    L = int(L)
    if L < 2 or L % 2:
        raise ValueError(f"L must be a positive even integer, got {L}")
    odd = np.arange(1, L, 2, dtype=np.int64)
    momenta = odd * np.pi / L
    reflected = (L - odd) * np.pi / L
    centered = (L - 2 * odd) * np.pi / (2 * L)
    for arr in (momenta, reflected, centered):
        arr.flags.writeable = False
    return MomentumGrid(L, momenta, reflected, centered)


def _components(mu: float, delta: float, k, k_reflected, k_centered) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    k = np.asarray(k, dtype=float)
    q = np.asarray(k_reflected, dtype=float)
    r = np.asarray(k_centered, dtype=float)
    sin_k = np.sin(np.minimum(k, q))
    # 1 - cos k = 2 sin^2(k/2) near k = 0, 1 + cos k = 2 sin^2((pi - k)/2) near k = pi,
    # cos k = sin(pi/2 - k) in between; each form is odd under (mu, k) -> (-mu, pi - k)
    z_low = -(mu + 2.0) + 4.0 * np.sin(0.5 * k) ** 2
    z_high = -(mu - 2.0) - 4.0 * np.sin(0.5 * q) ** 2
    z_mid = -mu - 2.0 * np.sin(r)
    z = np.where(r > _PI_6, z_low, np.where(r < -_PI_6, z_high, z_mid))
    y = -delta * sin_k
    eps = np.hypot(z, y)
    return z, y, eps


def _check_momentum(k):
    k_arr = np.asarray(k, dtype=float)
    if np.any(~((k_arr > 0.0) & (k_arr < np.pi))):
        raise ValueError("momentum must lie in the open interval (0, pi)")


def bdg_components(params: ModelParams, k: ArrayLike) -> BdgComponents:
    """Evaluate ``z_k``, ``y_k`` and ``eps_k`` at momentum ``k`` (scalar or array)."""
    _check_momentum(k)
    k_arr = np.asarray(k, dtype=float)
    z, y, eps = _components(params.mu, params.delta, k_arr, np.pi - k_arr, 0.5 * np.pi - k_arr)
    if np.ndim(k) == 0:
        return BdgComponents(float(z), float(y), float(eps))
    return BdgComponents(z, y, eps)


def grid_components(params: ModelParams, grid: MomentumGrid) -> BdgComponents:
    z, y, eps = _components(params.mu, params.delta, grid.momenta, grid.reflected, grid.centered)
    return BdgComponents(z, y, eps)


def eps_plus_z(z, y, eps):
    """``eps + z`` without cancellation: uses ``y^2 / (eps - z)`` when ``z < 0``."""
    z = np.asarray(z, dtype=float)
    y = np.asarray(y, dtype=float)
    eps = np.asarray(eps, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        alt = np.where(z < 0, y * y / (eps - z), eps + z)
    return np.where(z >= 0, eps + z, alt)


def check_gapped(c: BdgComponents):
    """Raise if a momentum of ``c`` is a gapless mode (eps_k = 0)."""
    z, y, eps = (np.asarray(a, dtype=float) for a in (c.z, c.y, c.eps))
    # with y = 0 a rounding-level z means the Fermi point sits on the grid
    if np.any((eps <= 0.0) | ((y == 0.0) & (np.abs(z) < GAPLESS_Z_TOL))):
        raise CriticalLineError("gapless mode on the grid: eps_k = 0")


def _amplitudes_from(z, y, eps):
    z = np.asarray(z, dtype=float)
    y = np.asarray(y, dtype=float)
    eps = np.asarray(eps, dtype=float)
    check_gapped(BdgComponents(z, y, eps))
    # amplitudes depend only on the direction of (z, y); an exact power-of-two
    # rescale keeps subnormal couplings from losing bits in eps
    _, exponent = np.frexp(np.maximum(np.abs(z), np.abs(y)))
    z, y = np.ldexp(z, -exponent), np.ldexp(y, -exponent)
    eps = np.hypot(z, y)
    with np.errstate(divide="ignore", invalid="ignore"):
        epz = eps_plus_z(z, y, eps)
        emz = eps - z
        stable = epz < STABLE_BRANCH_RATIO * eps
        root_2eps = np.sqrt(2.0 * eps)
        # divide one root at a time so tiny gaps never form a subnormal product
        u_direct = np.sqrt(epz) / root_2eps
        v_direct = y / root_2eps / np.sqrt(epz)
        u_stable = np.abs(y) / root_2eps / np.sqrt(emz)
        v_stable = np.sign(y) * np.sqrt(emz) / root_2eps
        u = np.where(stable, u_stable, u_direct)
        v_imag = np.where(stable, v_stable, v_direct)
    # delta = 0 with z < 0: take the delta -> 0+ limit, where y < 0
    filled = (y == 0.0) & (z < 0.0)
    u = np.where(filled, 0.0, u)
    v_imag = np.where(filled, -1.0, v_imag)
    return u, 1j * v_imag


def amplitudes(params: ModelParams, k: float) -> Tuple[float, complex]:
    """
    Bogoliubov amplitudes ``(u_k, v_k)`` at a single momentum.

    The exactly degenerate input (delta = 0 with z_k < 0) returns the
    one-sided limit ``(0, -i)`` reached as delta -> 0 from above.
    """
    c = bdg_components(params, k)
    u, v = _amplitudes_from(c.z, c.y, c.eps)
    return float(u), complex(v)


def ground_state(params: ModelParams, L: int) -> BogoliubovState:
    """Ground state of the chain on ``L`` sites as per-momentum amplitude pairs."""
    grid = build_grid(L)
    c = grid_components(params, grid)
    u, v = _amplitudes_from(c.z, c.y, c.eps)
    return BogoliubovState(params, grid, u, v)


def overlap(a: BogoliubovState, b: BogoliubovState) -> complex:
    """``<a|b>`` as the product of per-sector overlaps."""
    if a.grid != b.grid:
        raise ValueError(f"states live on different grids (L={a.grid.sites} vs L={b.grid.sites})")
    per_mode = np.conj(a.u) * b.u + np.conj(a.v) * b.v
    return complex(np.prod(per_mode))


def average_occupation(state: BogoliubovState) -> float:
    """Mean particle number: each sector holds the pair with probability ``|v_k|^2``."""
    return math.fsum(2.0 * np.abs(state.v) ** 2)


def winding_number(params: ModelParams, steps: int = DEFAULT_WINDING_STEPS) -> int:
    """
    Winding of the loop ``(z_k, y_k)`` around the origin as k runs over [-pi, pi).

    Midpoint rule over ``steps`` uniform panels.  Positive for
    ``|mu| < 2, delta > 0``.
    """
    if steps < 100:
        raise ValueError(f"steps must be at least 100, got {steps}")
    if abs(params.mu) == 2.0 or params.delta == 0.0:
        raise CriticalLineError(
            f"winding number undefined on a critical line (mu={params.mu}, delta={params.delta})"
        )
    dk = 2.0 * np.pi / steps
    k = -np.pi + (np.arange(steps) + 0.5) * dk
    z = -params.mu - 2.0 * np.cos(k)
    y = -params.delta * np.sin(k)
    dz = 2.0 * np.sin(k)
    dy = -params.delta * np.cos(k)
    integrand = (z * dy - y * dz) / (z * z + y * y)
    w = math.fsum(integrand) * dk / (2.0 * np.pi)
    nearest = round(w)
    if abs(w - nearest) > WINDING_RESIDUAL_TOL:
        raise ConvergenceError(
            f"winding integral {w:.6f} is not within {WINDING_RESIDUAL_TOL} of an integer; "
            "increase steps"
        )
    return int(nearest)
