"""Closed convex sets on which linear functionals are optimized.

Five kinds are supported: :class:`BallSpec`, :class:`SubdomainBall`,
:class:`Polytope`, :class:`Cone` and :class:`Subspace`. ``ConvexSetSpec`` is
their union. Every kind knows how to test membership of a simple function;
polytope and cone membership are non-negative least-squares problems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.optimize import nnls

from .bochner import SimpleFunction, bochner_norms, lp_norm
from .errors import ConfigurationError
from .tolerance import DEFAULT_TOL, ToleranceConfig

__all__ = ["BallSpec", "SubdomainBall", "Polytope", "Cone", "Subspace", "ConvexSetSpec"]


def _residual_ok(resid: float, scale: float, tol: ToleranceConfig) -> bool:
    # least-squares residuals accumulate rounding over every coordinate
    return resid <= 10 * tol.pairing_slack(scale)


def _same_space(fs: Sequence[SimpleFunction]):
    head = fs[0]
    for f in fs[1:]:
        head._check(f)
    return head


@dataclass(frozen=True, eq=False)
class BallSpec:
    """Closed ball ``{f : ||f - center|| <= radius}``."""

    center: SimpleFunction
    radius: float

    kind = "ball"

    def __post_init__(self):
        if not self.radius > 0:
            raise ConfigurationError(f"radius must be positive, got {self.radius!r}")
        object.__setattr__(self, "radius", float(self.radius))

    @classmethod
    def centered(cls, like: SimpleFunction, radius: float) -> "BallSpec":
        """Ball about the origin of the space ``like`` lives in."""
        return cls(SimpleFunction.zero(like.space, like.xcfg, like.exponents), radius)

    @property
    def is_centered(self) -> bool:
        return not np.any(self.center.values)

    @property
    def template(self) -> SimpleFunction:
        return self.center

    def distance_to_center(self, g: SimpleFunction) -> float:
        return lp_norm(g - self.center)

    def contains(self, g: SimpleFunction, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        return self.distance_to_center(g) <= self.radius + tol.slack(self.radius)

    def contains_values(self, values: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
        c = self.center
        norms = bochner_norms(values - c.values, c.space.masses, c.p, c.xcfg.p_x)
        return norms <= self.radius + tol.slack(self.radius)


@dataclass(frozen=True, eq=False)
class SubdomainBall:
    """``{f : (sum_{i in A} m_i ||f_i||^p)^(1/p) <= bound}``, unconstrained off ``A``.

    ``template`` fixes the space; only its shape and exponents are used.
    """

    template: SimpleFunction
    atoms: tuple
    bound: float

    kind = "subdomain_ball"

    def __post_init__(self):
        if not self.bound > 0:
            raise ConfigurationError(f"bound must be positive, got {self.bound!r}")
        if not self.atoms:
            raise ConfigurationError("subdomain ball needs a non-empty atom subset")
        space = self.template.space
        for a in self.atoms:
            space.index(a)
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "bound", float(self.bound))

    @property
    def mask(self) -> np.ndarray:
        space = self.template.space
        m = np.zeros(len(space), dtype=bool)
        m[[space.index(a) for a in self.atoms]] = True
        return m

    def restricted_norms(self, values: np.ndarray) -> np.ndarray:
        t = self.template
        masses = np.where(self.mask, t.space.masses, 0.0)
        return bochner_norms(values, masses, t.p, t.xcfg.p_x)

    def contains(self, g: SimpleFunction, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        self.template._check(g)
        return bool(self.contains_values(g.values, tol))

    def contains_values(self, values, tol: ToleranceConfig = DEFAULT_TOL):
        return self.restricted_norms(values) <= self.bound + tol.slack(self.bound)


@dataclass(frozen=True, eq=False)
class Polytope:
    """Convex hull of finitely many vertices."""

    vertices: tuple

    kind = "polytope"

    def __post_init__(self):
        if not self.vertices:
            raise ConfigurationError("polytope needs at least one vertex")
        object.__setattr__(self, "vertices", tuple(self.vertices))
        _same_space(self.vertices)

    @property
    def template(self) -> SimpleFunction:
        return self.vertices[0]

    def contains(self, g: SimpleFunction, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        self.template._check(g)
        verts = np.stack([v.values.ravel() for v in self.vertices], axis=1)
        scale = max(1.0, float(np.abs(verts).max()), float(np.abs(g.values).max()))
        # the extra row enforces sum(weights) = 1
        a = np.vstack([verts, scale * np.ones((1, verts.shape[1]))])
        b = np.concatenate([g.values.ravel(), [scale]])
        _, resid = nnls(a, b)
        return _residual_ok(resid, scale, tol)


@dataclass(frozen=True, eq=False)
class Cone:
    """``vertex + {sum_j u_j d_j : u_j >= 0}`` for finitely many directions ``d_j``."""

    vertex: SimpleFunction
    generators: tuple

    kind = "cone"

    def __post_init__(self):
        if not self.generators:
            raise ConfigurationError("cone needs at least one generator")
        object.__setattr__(self, "generators", tuple(self.generators))
        _same_space((self.vertex,) + self.generators)

    @property
    def template(self) -> SimpleFunction:
        return self.vertex

    def contains(self, g: SimpleFunction, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        self.template._check(g)
        gens = np.stack([d.values.ravel() for d in self.generators], axis=1)
        b = (g - self.vertex).values.ravel()
        _, resid = nnls(gens, b)
        scale = max(1.0, float(np.abs(b).max()))
        return _residual_ok(resid, scale, tol)


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear span of finitely many generators."""

    generators: tuple

    kind = "subspace"

    def __post_init__(self):
        if not self.generators:
            raise ConfigurationError("subspace needs at least one generator")
        object.__setattr__(self, "generators", tuple(self.generators))
        _same_space(self.generators)

    @property
    def template(self) -> SimpleFunction:
        return self.generators[0]

    def contains(self, g: SimpleFunction, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        self.template._check(g)
        gens = np.stack([d.values.ravel() for d in self.generators], axis=1)
        b = g.values.ravel()
        coef, *_ = np.linalg.lstsq(gens, b, rcond=None)
        resid = float(np.linalg.norm(gens @ coef - b))
        scale = max(1.0, float(np.abs(b).max()))
        return _residual_ok(resid, scale, tol)


ConvexSetSpec = Union[BallSpec, SubdomainBall, Polytope, Cone, Subspace]
