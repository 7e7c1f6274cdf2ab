"""Simple functions on a finite atomic measure space and their duals.

A :class:`SimpleFunction` stores one X value per atom, as a ``(n_atoms, dim)``
array; the function is the origin on the part of S not covered by atoms. All
norms and pairings are finite sums weighted by the atom masses, which makes
them exact versions of the corresponding Bochner integrals.

The batch kernels :func:`bochner_norms` and :func:`pairings` evaluate many
functions at once (leading axes are batch axes); the oracle and the
variational-inequality certifiers rely on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigurationError, DomainError
from .tolerance import DEFAULT_TOL, ToleranceConfig
from .xspace import (
    DualXVector, ExponentPair, PVector, XConfig, duality_map, lp_norms,
)

__all__ = [
    "MeasureSpace", "SimpleFunction", "DualSimpleFunction",
    "bochner_norms", "pairings",
    "lp_norm", "lq_norm", "pair", "linear_combine", "embed",
    "j_p", "j_q_star", "support",
]


@dataclass(frozen=True)
class MeasureSpace:
    """Ordered list of ``(atom_id, mass)`` pairs with distinct ids and finite positive masses."""

    atoms: tuple

    def __post_init__(self):
        atoms = tuple((str(a), float(m)) for a, m in self.atoms)
        if not atoms:
            raise ConfigurationError("measure space needs at least one atom")
        ids = [a for a, _ in atoms]
        if len(set(ids)) != len(ids):
            raise ConfigurationError(f"atom ids must be distinct: {ids}")
        for a, m in atoms:
            if not (0.0 < m < np.inf):
                raise ConfigurationError(f"atom {a!r} has mass {m!r}; need 0 < mass < inf")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def from_masses(cls, masses: Iterable[float], prefix: str = "A") -> "MeasureSpace":
        return cls(tuple((f"{prefix}{i + 1}", m) for i, m in enumerate(masses)))

    @classmethod
    def unit(cls, n: int) -> "MeasureSpace":
        return cls.from_masses([1.0] * n)

    @property
    def ids(self) -> list[str]:
        return [a for a, _ in self.atoms]

    @property
    def masses(self) -> np.ndarray:
        return np.array([m for _, m in self.atoms])

    def __len__(self):
        return len(self.atoms)

    def index(self, atom_id: str) -> int:
        try:
            return self.ids.index(atom_id)
        except ValueError:
            raise ConfigurationError(f"unknown atom id {atom_id!r}") from None


class _AtomFunction:
    """Shared storage and arithmetic for primal and dual simple functions."""

    __slots__ = ("space", "xcfg", "exponents", "values")

    def __init__(self, space: MeasureSpace, xcfg: XConfig, exponents: ExponentPair, values=None):
        if not isinstance(exponents, ExponentPair):
            exponents = ExponentPair(exponents)
        shape = (len(space), xcfg.dim)
        if values is None:
            arr = np.zeros(shape)
        else:
            arr = np.array(values, dtype=float)
            if arr.shape != shape:
                raise ConfigurationError(f"values must have shape {shape}, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ConfigurationError("values must be finite")
        arr.setflags(write=False)
        self.space = space
        self.xcfg = xcfg
        self.exponents = exponents
        self.values = arr

    def _like(self, values):
        return type(self)(self.space, self.xcfg, self.exponents, values)

    def _check(self, other):
        if type(other) is not type(self):
            raise ConfigurationError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        _check_compatible(self, other)

    def __add__(self, other):
        self._check(other)
        return self._like(self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return self._like(self.values - other.values)

    def __neg__(self):
        return self._like(-self.values)

    def __mul__(self, scalar):
        return self._like(float(scalar) * self.values)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self._like(self.values / float(scalar))

    def is_zero(self, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        return bool(np.all(np.abs(self.values) <= tol.abs))

    def allclose(self, other, atol: float = 1e-9, rtol: float = 0.0) -> bool:
        self._check(other)
        return bool(np.allclose(self.values, other.values, atol=atol, rtol=rtol))

    def __repr__(self):
        name = type(self).__name__
        return f"{name}({dict(zip(self.space.ids, self.values.tolist()))})"


class SimpleFunction(_AtomFunction):
    """Element of L_p(S; X), one :class:`PVector` value per atom."""

    __slots__ = ()

    @property
    def p(self) -> float:
        return self.exponents.p

    def atom_value(self, atom_id: str) -> PVector:
        return PVector(self.xcfg, self.values[self.space.index(atom_id)])

    @classmethod
    def zero(cls, space, xcfg, exponents) -> "SimpleFunction":
        return cls(space, xcfg, exponents)

    @classmethod
    def from_vectors(cls, space, exponents, vectors: Sequence[PVector]) -> "SimpleFunction":
        if len(vectors) != len(space):
            raise ConfigurationError(f"need {len(space)} values, got {len(vectors)}")
        xcfg = vectors[0].cfg
        if any(v.cfg != xcfg for v in vectors):
            raise ConfigurationError("all values must share one X configuration")
        return cls(space, xcfg, exponents, np.stack([v.coords for v in vectors]))


class DualSimpleFunction(_AtomFunction):
    """Element of L_q(S; X*), one :class:`DualXVector` value per atom.

    ``exponents`` is the same pair as for the primal space; the dual norm
    uses ``exponents.q``.
    """

    __slots__ = ()

    @property
    def q(self) -> float:
        return self.exponents.q

    def atom_value(self, atom_id: str) -> DualXVector:
        return DualXVector(self.xcfg, self.values[self.space.index(atom_id)])

    @classmethod
    def zero(cls, space, xcfg, exponents) -> "DualSimpleFunction":
        return cls(space, xcfg, exponents)

    @classmethod
    def from_vectors(cls, space, exponents, vectors: Sequence[DualXVector]) -> "DualSimpleFunction":
        if len(vectors) != len(space):
            raise ConfigurationError(f"need {len(space)} values, got {len(vectors)}")
        xcfg = vectors[0].cfg
        if any(v.cfg != xcfg for v in vectors):
            raise ConfigurationError("all values must share one X configuration")
        return cls(space, xcfg, exponents, np.stack([v.coords for v in vectors]))


def _check_compatible(a, b):
    if a.space != b.space:
        raise ConfigurationError("functions live on different measure spaces")
    if a.xcfg != b.xcfg:
        raise ConfigurationError(f"X configurations differ: {a.xcfg} vs {b.xcfg}")
    if a.exponents != b.exponents:
        raise ConfigurationError(f"Bochner exponents differ: {a.exponents.p} vs {b.exponents.p}")


# -- batch kernels ---------------------------------------------------------

def bochner_norms(values: np.ndarray, masses: np.ndarray, p: float, p_x: float) -> np.ndarray:
    """``(sum_i m_i ||v_i||_{p_x}^p)^(1/p)`` over the atom axis (second to last)."""
    xn = lp_norms(values, p_x)
    scale = xn.max(axis=-1, initial=0.0)
    safe = np.where(scale > 0, scale, 1.0)
    return scale * np.sum(masses * (xn / safe[..., None]) ** p, axis=-1) ** (1.0 / p)


def pairings(dual_values: np.ndarray, values: np.ndarray, masses: np.ndarray) -> np.ndarray:
    """Mass-weighted pairing of one dual array with a batch of primal arrays."""
    return np.einsum("...ad,ad,a->...", values, dual_values, masses)


def _bochner_duality(values, masses, p, p_x):
    """Duality map of L_p(S; l_{p_x}) on raw arrays.

    Atomwise ``||f_i||^(p-2) J_X f_i / ||f||^(p-2)``, rewritten as
    ``||f|| (||f_i||/||f||)^(p-1) * J_X f_i / ||f_i||`` so that zero atoms and
    p < 2 need no special casing beyond the final mask.
    """
    total = float(bochner_norms(values, masses, p, p_x))
    if total == 0.0:
        return np.zeros_like(values)
    xn = lp_norms(values, p_x)
    safe = np.where(xn > 0, xn, 1.0)
    unit = duality_map(values, p_x) / safe[:, None]
    weight = total * (xn / total) ** (p - 1.0)
    return np.where((xn > 0)[:, None], weight[:, None] * unit, 0.0)


# -- scalar API ------------------------------------------------------------

def lp_norm(f: SimpleFunction) -> float:
    return float(bochner_norms(f.values, f.space.masses, f.p, f.xcfg.p_x))


def lq_norm(phi: DualSimpleFunction) -> float:
    return float(bochner_norms(phi.values, phi.space.masses, phi.q, phi.xcfg.q_x))


def pair(phi: DualSimpleFunction, f: SimpleFunction) -> float:
    """Canonical pairing ``sum_i m_i <phi_i, f_i>``."""
    if not isinstance(phi, DualSimpleFunction) or not isinstance(f, SimpleFunction):
        raise ConfigurationError("pair expects (DualSimpleFunction, SimpleFunction)")
    _check_compatible(phi, f)
    return float(pairings(phi.values, f.values, f.space.masses))


def linear_combine(coeffs: Sequence[float], fs: Sequence):
    """Atomwise linear combination; works for primal or dual functions."""
    if len(coeffs) != len(fs) or not fs:
        raise ConfigurationError("need one coefficient per function and at least one function")
    head = fs[0]
    for f in fs[1:]:
        head._check(f)
    values = sum(float(c) * f.values for c, f in zip(coeffs, fs))
    return head._like(values)


def embed(space: MeasureSpace, atom_subset: Sequence[str], x: PVector,
          exponents: ExponentPair) -> SimpleFunction:
    """Isometric copy of ``x`` spread over the given atoms.

    Returns ``m^(-1/p) (1_A (x) x)`` where ``m`` is the total mass of the
    listed atoms.
    """
    if not atom_subset:
        raise DomainError("embed needs a non-empty atom subset")
    if not isinstance(exponents, ExponentPair):
        exponents = ExponentPair(exponents)
    idx = sorted({space.index(a) for a in atom_subset})
    total = float(space.masses[idx].sum())
    values = np.zeros((len(space), x.cfg.dim))
    values[idx] = total ** (-1.0 / exponents.p) * x.coords
    return SimpleFunction(space, x.cfg, exponents, values)


def j_p(f: SimpleFunction) -> DualSimpleFunction:
    """Normalized duality mapping of L_p(S; X); the origin maps to the dual origin."""
    values = _bochner_duality(f.values, f.space.masses, f.p, f.xcfg.p_x)
    return DualSimpleFunction(f.space, f.xcfg, f.exponents, values)


def j_q_star(phi: DualSimpleFunction) -> SimpleFunction:
    """Duality mapping of L_q(S; X*), the inverse of :func:`j_p`."""
    values = _bochner_duality(phi.values, phi.space.masses, phi.q, phi.xcfg.q_x)
    return SimpleFunction(phi.space, phi.xcfg, phi.exponents, values)


def support(phi, tol: ToleranceConfig = DEFAULT_TOL) -> list[str]:
    """Atom ids on which ``phi`` is not the origin."""
    q_x = phi.xcfg.q_x if isinstance(phi, DualSimpleFunction) else phi.xcfg.p_x
    norms = lp_norms(phi.values, q_x)
    return [a for a, n in zip(phi.space.ids, norms) if n > tol.abs]
