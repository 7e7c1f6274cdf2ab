"""The coefficient space X = (R^d, l_p) and its dual (R^d, l_q).

Besides the scalar API on :class:`PVector` / :class:`DualXVector`, the module
exposes two array kernels, :func:`lp_norms` and :func:`duality_map`, which act
along the last axis and are reused by the Bochner-space layer for batches of
atom values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError

__all__ = [
    "ExponentPair", "XConfig", "PVector", "DualXVector",
    "lp_norms", "duality_map",
    "x_norm", "x_dual_norm", "x_pair", "j_x", "j_x_star",
]


@dataclass(frozen=True)
class ExponentPair:
    """Conjugate exponents ``1/p + 1/q = 1``; build with ``ExponentPair(p)``."""

    p: float
    q: float = field(init=False)

    def __post_init__(self):
        p = float(self.p)
        if not (1.0 < p < math.inf):
            raise ConfigurationError(f"exponent must satisfy 1 < p < inf, got {self.p!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", p / (p - 1.0))

    def dual(self) -> "ExponentPair":
        return ExponentPair(self.q)


@dataclass(frozen=True)
class XConfig:
    dim: int
    exponents: ExponentPair

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise ConfigurationError(f"X dimension must be a positive integer, got {self.dim!r}")
        if not isinstance(self.exponents, ExponentPair):
            object.__setattr__(self, "exponents", ExponentPair(self.exponents))

    @classmethod
    def lp(cls, dim: int, p_x: float) -> "XConfig":
        return cls(int(dim), ExponentPair(p_x))

    @property
    def p_x(self) -> float:
        return self.exponents.p

    @property
    def q_x(self) -> float:
        return self.exponents.q


def _as_coords(cfg: XConfig, coords) -> np.ndarray:
    arr = np.array(coords, dtype=float).reshape(-1)
    if arr.shape != (cfg.dim,):
        raise ConfigurationError(f"expected {cfg.dim} coordinates, got {arr.size}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PVector:
    """A point of X."""

    cfg: XConfig
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", _as_coords(self.cfg, self.coords))

    @classmethod
    def basis(cls, cfg: XConfig, n: int) -> "PVector":
        e = np.zeros(cfg.dim)
        e[n] = 1.0
        return cls(cfg, e)

    def __repr__(self):
        return f"PVector({self.coords.tolist()}, p_x={self.cfg.p_x:g})"


@dataclass(frozen=True, eq=False)
class DualXVector:
    """A point of X*, coordinates paired with :class:`PVector` by the dot product."""

    cfg: XConfig
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", _as_coords(self.cfg, self.coords))

    @classmethod
    def basis(cls, cfg: XConfig, n: int) -> "DualXVector":
        e = np.zeros(cfg.dim)
        e[n] = 1.0
        return cls(cfg, e)

    def __repr__(self):
        return f"DualXVector({self.coords.tolist()}, q_x={self.cfg.q_x:g})"


def lp_norms(a: np.ndarray, p: float) -> np.ndarray:
    """l_p norms along the last axis, rescaled by the max entry to avoid overflow."""
    a = np.abs(np.asarray(a, dtype=float))
    scale = a.max(axis=-1, initial=0.0)
    safe = np.where(scale > 0, scale, 1.0)
    ratio = a / safe[..., None]
    return scale * np.sum(ratio ** p, axis=-1) ** (1.0 / p)


def duality_map(a: np.ndarray, p: float) -> np.ndarray:
    """Normalized duality map of l_p applied along the last axis.

    Uses ``|a_n|^(p-1) sign(a_n) / ||a||^(p-2) = ||a|| sign(a_n) (|a_n|/||a||)^(p-1)``,
    which keeps every power applied to a number in [0, 1]. Zero rows map to zero.
    """
    a = np.asarray(a, dtype=float)
    norms = lp_norms(a, p)[..., None]
    safe = np.where(norms > 0, norms, 1.0)
    return norms * np.sign(a) * (np.abs(a) / safe) ** (p - 1.0)


def _check_cfg(a, b):
    if a.cfg != b.cfg:
        raise ConfigurationError(f"X configurations differ: {a.cfg} vs {b.cfg}")


def x_norm(x: PVector) -> float:
    return float(lp_norms(x.coords, x.cfg.p_x))


def x_dual_norm(phi: DualXVector) -> float:
    return float(lp_norms(phi.coords, phi.cfg.q_x))


def x_pair(phi: DualXVector, x: PVector) -> float:
    """Evaluate the dual element ``phi`` at ``x``."""
    _check_cfg(phi, x)
    return float(np.dot(phi.coords, x.coords))


def j_x(x: PVector) -> DualXVector:
    """Normalized duality mapping X -> X*; the origin maps to the origin."""
    return DualXVector(x.cfg, duality_map(x.coords, x.cfg.p_x))


def j_x_star(phi: DualXVector) -> PVector:
    """Inverse of :func:`j_x`, i.e. the duality mapping of X* with exponent q_x."""
    return PVector(phi.cfg, duality_map(phi.coords, phi.cfg.q_x))
