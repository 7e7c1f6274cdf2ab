"""Brute-force stand-ins for the closed forms, used to cross-check them.

Nothing here calls a duality map or a closed-form projection. Each oracle
draws a deterministic sample of the set, keeps the best point, and (for the
ball kinds, where membership is a single norm evaluation) refines it with a
derivative-free random search that only accepts feasible, improving moves.

Unbounded sets (cones, subspaces, the free part of a sub-domain ball) are
sampled inside a box of half-width ``budget.truncation``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .bochner import DualSimpleFunction, SimpleFunction, bochner_norms, pairings
from .errors import ConfigurationError
from .optimize import SolutionKind, SolutionSet
from .projections import (
    SetSampler, lyapunov_values, rng_stream, sample_ball_values, unit_directions,
)
from .sets import BallSpec, Cone, ConvexSetSpec, Polytope, SubdomainBall, Subspace
from .tolerance import ToleranceConfig

__all__ = [
    "SampleBudget", "SupEstimate", "sample_values", "sample_set", "set_sampler",
    "brute_sup", "brute_metric_proj", "brute_lyapunov_min", "sample_solution",
]

_EXACT = ToleranceConfig(rel=0.0, abs=0.0)
POLISH_ITERS = 100
POLISH_BATCH = 64
EXTRAPOLATE_MAX = 8
LINE_SEARCH_STEPS = 32
# a few ulps inside, so rounding never pushes a boundary point out
_INSIDE = 1.0 - 8 * np.finfo(float).eps


@dataclass(frozen=True)
class SampleBudget:
    n: int
    seed: int = 0
    truncation: float = 10.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ConfigurationError(f"sample count must be a positive integer, got {self.n!r}")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ConfigurationError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if not self.truncation > 0:
            raise ConfigurationError(f"truncation must be positive, got {self.truncation!r}")


class SupEstimate(NamedTuple):
    value: float
    argmax: SimpleFunction


def _structural_points(C: ConvexSetSpec) -> list[np.ndarray]:
    """Extreme points always included: polytope vertices, cone apex, subspace origin."""
    if isinstance(C, Polytope):
        return [v.values for v in C.vertices]
    if isinstance(C, Cone):
        return [C.vertex.values]
    if isinstance(C, Subspace):
        return [np.zeros_like(C.template.values)]
    return []


def _random_points(C: ConvexSetSpec, budget: SampleBudget) -> np.ndarray:
    t = C.template
    T = budget.truncation
    if isinstance(C, BallSpec):
        return sample_ball_values(C, budget.n, budget.seed)
    out = []
    for stream, size in rng_stream(budget.seed, budget.n):
        rng = stream(0)
        if isinstance(C, SubdomainBall):
            mask = C.mask
            dirs = unit_directions(rng, size, t, np.where(mask, t.space.masses, 0.0))
            radii = C.bound * np.sqrt(stream(1).uniform(size=size))
            pts = radii[:, None, None] * dirs
            free = stream(2).uniform(-T, T, size=pts.shape)
            pts[:, ~mask] = free[:, ~mask]
        elif isinstance(C, Polytope):
            w = rng.dirichlet(np.ones(len(C.vertices)), size=size)
            pts = np.einsum("nk,kad->nad", w, np.stack([v.values for v in C.vertices]))
        elif isinstance(C, Cone):
            u = rng.uniform(0.0, T, size=(size, len(C.generators)))
            pts = C.vertex.values + np.einsum("nk,kad->nad", u, np.stack([d.values for d in C.generators]))
        elif isinstance(C, Subspace):
            c = rng.uniform(-T, T, size=(size, len(C.generators)))
            pts = np.einsum("nk,kad->nad", c, np.stack([d.values for d in C.generators]))
        else:
            raise ConfigurationError(f"unsupported set kind {type(C).__name__}")
        out.append(pts)
    return np.concatenate(out)


def sample_values(C: ConvexSetSpec, budget: SampleBudget) -> np.ndarray:
    """Sample of ``C`` as an array ``(m, n_atoms, dim)``.

    Structural points come first, followed by ``budget.n`` random points, so
    a larger budget with the same seed extends a smaller one.
    """
    structural = _structural_points(C)
    random = _random_points(C, budget)
    if structural:
        return np.concatenate([np.stack(structural), random])
    return random


def sample_set(C: ConvexSetSpec, budget: SampleBudget) -> list[SimpleFunction]:
    t = C.template
    return [t._like(v) for v in sample_values(C, budget)]


def set_sampler(C: ConvexSetSpec, truncation: float = 10.0) -> SetSampler:
    """Adapter to the ``sampler(n, seed)`` protocol used by the VI certifiers."""
    return lambda n, seed: sample_values(C, SampleBudget(n, seed, truncation))


def _feasible_fn(C: ConvexSetSpec):
    if isinstance(C, (BallSpec, SubdomainBall)):
        return lambda values: C.contains_values(values, _EXACT)
    return None


def _scale(C: ConvexSetSpec) -> float:
    return C.radius if isinstance(C, BallSpec) else C.bound


def _boundary_fn(C: ConvexSetSpec):
    """Radial map onto the bounding sphere, used when the optimum lies on it."""
    if isinstance(C, BallSpec):
        c = C.center
        def to_sphere(values):
            w = values - c.values
            norms = bochner_norms(w, c.space.masses, c.p, c.xcfg.p_x)
            safe = np.where(norms > 0, norms, 1.0)
            return c.values + (_INSIDE * C.radius / safe)[:, None, None] * w
        return to_sphere
    if isinstance(C, SubdomainBall):
        def to_level(values):
            norms = C.restricted_norms(values)
            safe = np.where(norms > 0, norms, 1.0)
            out = values.copy()
            out[:, C.mask] *= (_INSIDE * C.bound / safe)[:, None, None]
            return out
        return to_level
    return None


def _axis_directions(template: SimpleFunction) -> np.ndarray:
    """Signed unit-norm coordinate directions, shape (2 * atoms * d, atoms, d)."""
    k = template.values.size
    eye = np.eye(k).reshape((k,) + template.values.shape)
    eye = np.concatenate([eye, -eye])
    norms = bochner_norms(eye, template.space.masses, template.p, template.xcfg.p_x)
    return eye / norms[:, None, None]


def _polish(x, fx, objective, feasible, template, rng, step, boundary=None):
    """Compass plus random-search ascent: accept the best feasible improving move.

    Every batch holds the signed coordinate axes next to random directions;
    the axes resolve objectives that are nearly flat along one coordinate.

    After a success the same move is repeated with doubling length while it
    keeps improving, which speeds up progress along flat ridges. The step
    doubles after a success (capped at its initial value) and halves after a
    failure, restarting from the cap once it has collapsed. With
    ``boundary``, every candidate is first pulled onto the boundary, which
    keeps the search on the surface carrying the optimum.
    """
    place = (lambda v: v) if boundary is None else boundary
    axes = _axis_directions(template)
    cap = step
    for _ in range(POLISH_ITERS):
        dirs = np.concatenate([axes, unit_directions(rng, POLISH_BATCH, template)])
        cand = place(x[None] + step * dirs)
        vals = np.where(feasible(cand), objective(cand), -np.inf)
        k = int(np.argmax(vals))
        if vals[k] > fx:
            move = cand[k] - x
            x, fx = cand[k], float(vals[k])
            for _ in range(EXTRAPOLATE_MAX):
                move = 2.0 * move
                nxt = place((x + move)[None])
                val = float(np.where(feasible(nxt), objective(nxt), -np.inf)[0])
                if not val > fx:
                    break
                x, fx = nxt[0], val
            step = min(2.0 * step, cap)
        else:
            # restart once the step has collapsed
            step = cap if step < 1e-6 * cap else 0.5 * step
    return x, fx


def _best(objective, pool: np.ndarray):
    vals = objective(pool)
    k = int(np.argmax(vals))
    return pool[k], float(vals[k])


def _pool(C, budget, candidates, extra=()):
    parts = [sample_values(C, budget)]
    injected = [c.values for c in candidates] + [e for e in extra]
    if injected:
        parts.insert(0, np.stack(injected))
    return np.concatenate(parts)


def _polish_rng(budget: SampleBudget) -> np.random.Generator:
    # separate stream from the sampling chunks
    return np.random.default_rng([int(budget.seed), 2 ** 32 - 1])


def brute_sup(phi: DualSimpleFunction, C: ConvexSetSpec, budget: SampleBudget,
              candidates: Sequence[SimpleFunction] = (), polish: bool = True) -> SupEstimate:
    """Largest sampled value of ``<phi, .>`` over ``C``."""
    masses = phi.space.masses
    objective = lambda v: pairings(phi.values, v, masses)
    x, fx = _best(objective, _pool(C, budget, candidates))
    feasible = _feasible_fn(C)
    if polish and feasible is not None:
        # a linear objective peaks on the boundary of a ball
        x, fx = _polish(x, fx, objective, feasible, C.template, _polish_rng(budget),
                        0.25 * _scale(C), _boundary_fn(C))
    return SupEstimate(fx, C.template._like(x))


def brute_metric_proj(g: SimpleFunction, C: ConvexSetSpec, budget: SampleBudget,
                      candidates: Sequence[SimpleFunction] = (), polish: bool = True) -> SimpleFunction:
    """Sampled point of ``C`` closest to ``g``; ``g`` itself is tried when it lies in ``C``."""
    masses = g.space.masses
    objective = lambda v: -bochner_norms(v - g.values, masses, g.p, g.xcfg.p_x)
    extra = [g.values] if C.contains(g) else []
    x, fx = _best(objective, _pool(C, budget, candidates, extra))
    feasible = _feasible_fn(C)
    if polish and feasible is not None and fx < 0:
        x, fx = _polish(x, fx, objective, feasible, C.template, _polish_rng(budget), 0.25 * _scale(C))
    return C.template._like(x)


def _line_search(objective, center, point, r, masses, p, p_x):
    """Golden-section maximization along ``center + s (point - center)``, up to the sphere."""
    w = point - center
    norm = float(bochner_norms(w, masses, p, p_x))
    if norm == 0.0:
        return point, float(objective(point[None])[0])
    lo, hi = 0.0, r / norm
    along = lambda s: float(objective((center + s * w)[None])[0])
    ratio = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = hi - ratio * (hi - lo), lo + ratio * (hi - lo)
    fa, fb = along(a), along(b)
    for _ in range(LINE_SEARCH_STEPS):
        if fa >= fb:
            hi, b, fb = b, a, fa
            a = hi - ratio * (hi - lo)
            fa = along(a)
        else:
            lo, a, fa = a, b, fb
            b = lo + ratio * (hi - lo)
            fb = along(b)
    s = a if fa >= fb else b
    return center + s * w, max(fa, fb)


def brute_lyapunov_min(phi: DualSimpleFunction, ball: BallSpec, budget: SampleBudget,
                       candidates: Sequence[SimpleFunction] = (), polish: bool = True) -> SimpleFunction:
    """Sampled minimizer of ``V(phi, .)`` over ``ball``, refined radially then locally.

    Works for any center, which is the only route to the generalized
    projection onto shifted balls.
    """
    objective = lambda v: -lyapunov_values(phi, v)
    x, fx = _best(objective, _pool(ball, budget, candidates))
    c = ball.center
    y, fy = _line_search(objective, c.values, x, ball.radius, c.space.masses, c.p, c.xcfg.p_x)
    if fy > fx and ball.contains_values(y[None], _EXACT)[0]:
        x, fx = y, fy
    if polish:
        x, fx = _polish(x, fx, objective, _feasible_fn(ball), c, _polish_rng(budget), 0.25 * ball.radius)
    return c._like(x)


def sample_solution(sol: SolutionSet, C: ConvexSetSpec, budget: SampleBudget) -> list[SimpleFunction]:
    """Members of a primal solution set, drawn according to its description."""
    t = C.template
    T = budget.truncation
    rng = np.random.default_rng([int(budget.seed), 7])
    n = budget.n
    kind = sol.kind
    if kind is SolutionKind.EMPTY:
        return []
    if kind is SolutionKind.SINGLETON:
        return [sol.point]
    if kind is SolutionKind.WHOLE_SET:
        return sample_set(C, budget)
    if kind is SolutionKind.POLYTOPE_FACE:
        verts = np.stack([C.vertices[i].values for i in sol.indices])
        w = rng.dirichlet(np.ones(len(verts)), size=n)
        return [t._like(v) for v in np.einsum("nk,kad->nad", w, verts)] + [C.vertices[i] for i in sol.indices]
    if kind is SolutionKind.CONE_FACE:
        if not sol.indices:
            return [sol.point]
        gens = np.stack([C.generators[j].values for j in sol.indices])
        u = rng.uniform(0.0, T, size=(n, len(gens)))
        pts = sol.point.values + np.einsum("nk,kad->nad", u, gens)
        return [sol.point] + [t._like(v) for v in pts]
    if kind is SolutionKind.LEVEL_SET:
        mask = C.mask
        pts = np.repeat(sol.point.values[None], n, axis=0)
        free = rng.uniform(-T, T, size=pts.shape)
        pts[:, ~mask] = free[:, ~mask]
        return [sol.point] + [t._like(v) for v in pts]
    if kind is SolutionKind.PRIMAL_RAY:
        return [float(s) * sol.point for s in rng.uniform(0.0, T, size=n)]
    raise ConfigurationError(f"cannot sample members of a {kind.value} description")
