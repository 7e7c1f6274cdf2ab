"""Maximizing a linear functional over a closed convex set.

:func:`solve` returns a :class:`SolutionSet` describing every maximizer of
``<phi, .>`` over one of the supported set kinds, together with the supremum.
Around it sit the inverse-image maps for balls (which dual elements, or which
primal elements through ``J_p``, make a given point optimal), the
optimal/non-optimal classification on balls, and orthogonality tests.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .bochner import (
    DualSimpleFunction, MeasureSpace, SimpleFunction, _check_compatible,
    j_p, j_q_star, lp_norm, lq_norm, pair, support,
)
from .errors import ConfigurationError, DomainError
from .sets import BallSpec, Cone, ConvexSetSpec, Polytope, SubdomainBall, Subspace
from .tolerance import DEFAULT_TOL, ToleranceConfig
from .xspace import XConfig

__all__ = [
    "SolutionKind", "SolutionSet", "OptimalClass", "NonconvexityReport",
    "solve", "sup_value", "membership_in_solution",
    "inverse_image_ball", "inverse_image_star_ball",
    "classify_ball_point", "is_self_optimal", "perp", "nonconvexity_demo",
]


class SolutionKind(str, enum.Enum):
    EMPTY = "empty"
    WHOLE_SET = "whole_set"
    SINGLETON = "singleton"
    POLYTOPE_FACE = "polytope_face"
    CONE_FACE = "cone_face"
    DUAL_RAY = "dual_ray"
    PRIMAL_RAY = "primal_ray"
    # maximizers pinned on a sub-domain, free elsewhere
    LEVEL_SET = "level_set"


@dataclass(frozen=True, eq=False)
class SolutionSet:
    """Structured description of a solution set or inverse image.

    ``point`` holds the singleton, the cone vertex, the level-set witness or
    the primal ray direction; ``direction`` holds the dual ray direction;
    ``indices`` lists polytope face vertices or active cone generators.
    ``sup_value`` is ``math.inf`` when the supremum is infinite and ``None``
    for inverse images.
    """

    kind: SolutionKind
    sup_value: Optional[float]
    point: Optional[SimpleFunction] = None
    direction: Optional[DualSimpleFunction] = None
    indices: tuple = field(default_factory=tuple)

    @property
    def is_empty(self) -> bool:
        return self.kind is SolutionKind.EMPTY


class OptimalClass(str, enum.Enum):
    OPTIMAL = "optimal"
    NONE_OPTIMAL = "none_optimal"


def _hoelder_slack(phi, f, tol: ToleranceConfig) -> float:
    # rounding in <phi, f> scales with the Hoelder bound ||phi|| ||f||
    return tol.pairing_slack(lq_norm(phi) * lp_norm(f))


def solve(phi: DualSimpleFunction, C: ConvexSetSpec, tol: ToleranceConfig = DEFAULT_TOL) -> SolutionSet:
    """All maximizers of ``<phi, .>`` over ``C``."""
    _check_compatible(phi, C.template)
    if phi.is_zero(tol):
        return SolutionSet(SolutionKind.WHOLE_SET, 0.0)
    if isinstance(C, BallSpec):
        norm = lq_norm(phi)
        g = C.center + (C.radius / norm) * j_q_star(phi)
        return SolutionSet(SolutionKind.SINGLETON, pair(phi, C.center) + C.radius * norm, point=g)
    if isinstance(C, SubdomainBall):
        if set(support(phi, tol)) - set(C.atoms):
            return SolutionSet(SolutionKind.EMPTY, math.inf)
        norm = lq_norm(phi)
        witness = (C.bound / norm) * j_q_star(phi)
        return SolutionSet(SolutionKind.LEVEL_SET, C.bound * norm, point=witness)
    if isinstance(C, Polytope):
        values = [pair(phi, v) for v in C.vertices]
        best = max(values)
        face = tuple(i for i, (v, vx) in enumerate(zip(values, C.vertices))
                     if v >= best - _hoelder_slack(phi, vx, tol))
        return SolutionSet(SolutionKind.POLYTOPE_FACE, best, indices=face)
    if isinstance(C, Cone):
        active = []
        for j, d in enumerate(C.generators):
            value = pair(phi, d)
            slack = _hoelder_slack(phi, d, tol)
            if value > slack:
                return SolutionSet(SolutionKind.EMPTY, math.inf)
            if value >= -slack:
                active.append(j)
        return SolutionSet(SolutionKind.CONE_FACE, pair(phi, C.vertex),
                           point=C.vertex, indices=tuple(active))
    if isinstance(C, Subspace):
        if all(abs(pair(phi, d)) <= _hoelder_slack(phi, d, tol) for d in C.generators):
            return SolutionSet(SolutionKind.WHOLE_SET, 0.0)
        return SolutionSet(SolutionKind.EMPTY, math.inf)
    raise ConfigurationError(f"unsupported set kind {type(C).__name__}")


def sup_value(phi: DualSimpleFunction, C: ConvexSetSpec, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    return solve(phi, C, tol).sup_value


def membership_in_solution(phi: DualSimpleFunction, g: SimpleFunction, C: ConvexSetSpec,
                           tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Whether ``g`` maximizes ``<phi, .>`` over ``C``.

    Raises
    ------
    DomainError
        If ``g`` is not in ``C``.
    """
    if not C.contains(g, tol):
        raise DomainError("point is not in the set")
    sol = solve(phi, C, tol)
    if sol.is_empty:
        return False
    value = pair(phi, g)
    slack = tol.pairing_slack(max(abs(sol.sup_value), lq_norm(phi) * lp_norm(g)))
    return value >= sol.sup_value - slack


# -- balls -----------------------------------------------------------------

def _ball_offset(g: SimpleFunction, r: float, center: Optional[SimpleFunction],
                 tol: ToleranceConfig) -> tuple[SimpleFunction, bool]:
    """Return ``g - center`` and whether it lies on the sphere; reject points outside."""
    if not r > 0:
        raise ConfigurationError(f"radius must be positive, got {r!r}")
    w = g if center is None else g - center
    norm = lp_norm(w)
    slack = tol.slack(r)
    if norm > r + slack:
        raise DomainError(f"point has distance {norm!r} from the center, outside radius {r!r}")
    return w, abs(norm - r) <= slack


def inverse_image_ball(g: SimpleFunction, r: float, center: Optional[SimpleFunction] = None,
                       tol: ToleranceConfig = DEFAULT_TOL) -> SolutionSet:
    """Dual elements whose maximizer over the ball is ``g``.

    On the sphere this is the ray ``{t J_p(g - center) : t >= 0}``; inside the
    ball only the dual origin qualifies, reported as the ray with zero
    direction.
    """
    w, on_sphere = _ball_offset(g, r, center, tol)
    direction = j_p(w) if on_sphere else DualSimpleFunction.zero(g.space, g.xcfg, g.exponents)
    return SolutionSet(SolutionKind.DUAL_RAY, None, direction=direction)


def inverse_image_star_ball(g: SimpleFunction, r: float, center: Optional[SimpleFunction] = None,
                            tol: ToleranceConfig = DEFAULT_TOL) -> SolutionSet:
    """Primal elements ``h`` with ``g`` maximizing ``<J_p h, .>`` over the ball.

    ``J_q*`` maps the dual ray onto the primal ray ``{t (g - center)}``.
    """
    w, on_sphere = _ball_offset(g, r, center, tol)
    point = w if on_sphere else SimpleFunction.zero(g.space, g.xcfg, g.exponents)
    return SolutionSet(SolutionKind.PRIMAL_RAY, None, point=point)


def classify_ball_point(g: SimpleFunction, r: float, center: Optional[SimpleFunction] = None,
                        tol: ToleranceConfig = DEFAULT_TOL) -> OptimalClass:
    _, on_sphere = _ball_offset(g, r, center, tol)
    return OptimalClass.OPTIMAL if on_sphere else OptimalClass.NONE_OPTIMAL


def is_self_optimal(g: SimpleFunction, C: ConvexSetSpec, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Whether ``g`` solves the problem posed by its own dual image ``J_p g``."""
    if not C.contains(g, tol):
        raise DomainError("point is not in the set")
    sol = solve(j_p(g), C, tol)
    if sol.is_empty:
        return False
    sq = lp_norm(g) ** 2
    return sq >= sol.sup_value - tol.pairing_slack(max(sq, abs(sol.sup_value)))


def perp(phi: DualSimpleFunction, target: Union[SimpleFunction, ConvexSetSpec],
         tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Orthogonality of ``phi`` to a function or to a generated set.

    For a cone the test is against ``K - vertex``, i.e. the generators; for
    balls and sub-domain balls, which contain a neighbourhood of one of
    their points, only the dual origin is orthogonal.
    """
    if isinstance(target, SimpleFunction):
        return abs(pair(phi, target)) <= _hoelder_slack(phi, target, tol)
    _check_compatible(phi, target.template)
    if isinstance(target, (BallSpec, SubdomainBall)):
        return phi.is_zero(tol)
    if isinstance(target, Polytope):
        gens = target.vertices
    elif isinstance(target, (Cone, Subspace)):
        gens = target.generators
    else:
        raise ConfigurationError(f"unsupported set kind {type(target).__name__}")
    return all(perp(phi, d, tol) for d in gens)


# -- non-convex inverse image ------------------------------------------------

@dataclass(frozen=True)
class NonconvexityReport:
    """Outcome of the segment counterexample.

    ``memberships[name]`` tells whether that function lies in the ``J_p``
    inverse image of ``g`` over the segment ``[0, g]``; ``pairings[name]``
    is ``<J_p(name), g>``; ``dual_coefficients[name]`` lists the coefficient
    of each ``1_{A_i} (x) e_i*`` in ``J_p(name)``.
    """

    p: float
    g: tuple
    memberships: dict
    pairings: dict
    dual_coefficients: dict

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "g": list(self.g),
            "memberships": dict(self.memberships),
            "pairings": dict(self.pairings),
            "dual_coefficients": {k: list(v) for k, v in self.dual_coefficients.items()},
        }


def _diagonal_function(space, xcfg, exponents, coeffs) -> SimpleFunction:
    return SimpleFunction(space, xcfg, exponents, np.diag(np.asarray(coeffs, dtype=float)))


def nonconvexity_demo(tol: ToleranceConfig = DEFAULT_TOL) -> NonconvexityReport:
    """Exhibit two points of ``S^{-*}(g)`` whose convex combination is not in it.

    Setup: p = 3, three unit-mass atoms, ``x_i = e_i`` in l_3^3,
    ``g = (25, 37, 77)`` on the atoms and ``C`` the segment from the origin to
    ``g``; ``u = (3, -2, -1)``, ``v = (1, -3, 2)`` and ``h = 2u/3 + v/3``.
    """
    space = MeasureSpace.unit(3)
    xcfg = XConfig.lp(3, 3.0)
    exps = xcfg.exponents
    g = _diagonal_function(space, xcfg, exps, [25.0, 37.0, 77.0])
    u = _diagonal_function(space, xcfg, exps, [3.0, -2.0, -1.0])
    v = _diagonal_function(space, xcfg, exps, [1.0, -3.0, 2.0])
    h = (2.0 / 3.0) * u + (1.0 / 3.0) * v
    segment = Polytope((SimpleFunction.zero(space, xcfg, exps), g))
    memberships, pairings_, coeffs = {}, {}, {}
    for name, w in (("u", u), ("v", v), ("h", h)):
        jw = j_p(w)
        memberships[name] = membership_in_solution(jw, g, segment, tol)
        pairings_[name] = pair(jw, g)
        coeffs[name] = tuple(float(c) for c in np.diag(jw.values))
    return NonconvexityReport(3.0, (25.0, 37.0, 77.0), memberships, pairings_, coeffs)
