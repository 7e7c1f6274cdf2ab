"""Metric, generalized and generalized metric projections onto closed balls.

For the ball ``B(r)`` about the origin all three projections have closed
forms: the generalized projection sends ``phi`` to ``J_q*(phi)``, rescaled onto
the sphere when ``||phi|| > r``, and both the generalized metric projection
and the metric projection reduce to radial rescaling of ``g``. The metric
projection also has a closed form for shifted centers, by translation; the
other two do not, and are only reachable through
:func:`bochner_opt.oracle.brute_lyapunov_min`.

The certifiers check the variational inequalities characterizing each
projection against sampled points of the set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional

import numpy as np

from .bochner import (
    DualSimpleFunction, SimpleFunction, bochner_norms, j_p, j_q_star,
    lp_norm, lq_norm, pair, pairings, _check_compatible,
)
from .errors import ConfigurationError
from .sets import BallSpec
from .tolerance import DEFAULT_TOL, ToleranceConfig

__all__ = [
    "BallSpec", "VICertificate", "SetSampler",
    "lyapunov_v", "lyapunov_values", "pi_ball", "gpi_ball", "metric_proj_ball",
    "rng_stream", "sample_ball_values", "ball_sampler",
    "certify_vi_metric", "certify_vi_pi", "certify_vi_gpi",
]

#: ``sampler(n, seed) -> array of shape (n, n_atoms, dim)``; deterministic in (n, seed).
SetSampler = Callable[[int, int], np.ndarray]

CHUNK = 4096


@dataclass(frozen=True, eq=False)
class VICertificate:
    holds: bool
    worst_violation: float
    witness: Optional[SimpleFunction] = None
    samples: int = 0

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "worst_violation": self.worst_violation,
            "samples": self.samples,
        }


def lyapunov_v(phi: DualSimpleFunction, f: SimpleFunction) -> float:
    """``||phi||^2 - 2<phi, f> + ||f||^2``."""
    return lq_norm(phi) ** 2 - 2.0 * pair(phi, f) + lp_norm(f) ** 2


def lyapunov_values(phi: DualSimpleFunction, values: np.ndarray) -> np.ndarray:
    """:func:`lyapunov_v` for a batch of primal value arrays."""
    masses = phi.space.masses
    norms = bochner_norms(values, masses, phi.exponents.p, phi.xcfg.p_x)
    return lq_norm(phi) ** 2 - 2.0 * pairings(phi.values, values, masses) + norms ** 2


def _require_centered(ball_or_r):
    if isinstance(ball_or_r, BallSpec):
        if not ball_or_r.is_centered:
            raise ConfigurationError(
                "closed forms for the generalized projections need a ball about the origin; "
                "use oracle.brute_lyapunov_min for shifted centers")
        return ball_or_r.radius
    r = float(ball_or_r)
    if not r > 0:
        raise ConfigurationError(f"radius must be positive, got {r!r}")
    return r


def pi_ball(phi: DualSimpleFunction, r) -> SimpleFunction:
    """Generalized projection of ``phi`` onto the ball of radius ``r`` about the origin.

    ``r`` may be a radius or a centered :class:`BallSpec`.
    """
    r = _require_centered(r)
    x = j_q_star(phi)
    norm = lq_norm(phi)
    if norm <= r:
        return x
    return (r / norm) * x


def gpi_ball(g: SimpleFunction, r) -> SimpleFunction:
    """Generalized metric projection onto the ball of radius ``r`` about the origin."""
    r = _require_centered(r)
    norm = lp_norm(g)
    if norm <= r:
        return g
    return (r / norm) * g


def metric_proj_ball(g: SimpleFunction, ball: BallSpec) -> SimpleFunction:
    """Nearest point of ``ball`` to ``g``; any center is allowed."""
    w = g - ball.center
    norm = lp_norm(w)
    if norm <= ball.radius:
        return g
    return ball.center + (ball.radius / norm) * w


# -- sampling --------------------------------------------------------------

def rng_stream(seed: int, n: int, chunk: int = CHUNK) -> Iterator[tuple[Callable[[int], np.random.Generator], int]]:
    """Split ``n`` draws into fixed-size chunks with their own generators.

    Yields ``(stream, size)``; ``stream(j)`` is the generator seeded from
    ``(seed, k, j)`` for chunk ``k``. Each kind of variate in a chunk takes its
    own ``j``, so a short final chunk draws a prefix of what a full chunk
    would, and the first ``m`` draws for budget ``n >= m`` coincide with the
    draws for budget ``m``.
    """
    done, k = 0, 0
    while done < n:
        size = min(chunk, n - done)
        yield (lambda j, k=k: np.random.default_rng([int(seed), k, j])), size
        done += size
        k += 1


def unit_directions(rng: np.random.Generator, size: int, template: SimpleFunction,
                    masses: Optional[np.ndarray] = None) -> np.ndarray:
    """Componentwise standard normals, rescaled to unit (possibly restricted) Bochner norm."""
    shape = (size,) + template.values.shape
    z = rng.standard_normal(shape)
    m = template.space.masses if masses is None else masses
    norms = bochner_norms(z, m, template.p, template.xcfg.p_x)
    return z / norms[:, None, None]


def sample_ball_values(ball: BallSpec, n: int, seed: int) -> np.ndarray:
    """``n`` points of ``ball``: random direction times a radius ``r * sqrt(U)``."""
    out = []
    for stream, size in rng_stream(seed, n):
        dirs = unit_directions(stream(0), size, ball.center)
        radii = ball.radius * np.sqrt(stream(1).uniform(size=size))
        out.append(ball.center.values + radii[:, None, None] * dirs)
    return np.concatenate(out) if out else np.empty((0,) + ball.center.values.shape)


def ball_sampler(ball: BallSpec) -> SetSampler:
    return lambda n, seed: sample_ball_values(ball, n, seed)


# -- variational inequality certificates ------------------------------------

def _certify(test_dual: DualSimpleFunction, y: SimpleFunction, sampler: SetSampler,
             n: int, seed: int, tol: ToleranceConfig) -> VICertificate:
    z = sampler(n, seed)
    if z.shape[1:] != y.values.shape:
        raise ConfigurationError(f"sampler returned shape {z.shape[1:]}, expected {y.values.shape}")
    values = pairings(test_dual.values, y.values[None] - z, y.space.masses)
    if values.size == 0:
        return VICertificate(True, 0.0, None, 0)
    k = int(np.argmin(values))
    worst = float(values[k])
    holds = worst >= -tol.certificate
    witness = None if holds else y._like(z[k])
    return VICertificate(holds, worst, witness, int(values.size))


def certify_vi_metric(x: SimpleFunction, y: SimpleFunction, set_sampler: SetSampler,
                      n: int = 10_000, seed: int = 0,
                      tol: ToleranceConfig = DEFAULT_TOL) -> VICertificate:
    """Check ``<J_p(x - y), y - z> >= 0`` on sampled ``z``, i.e. that y is the metric projection of x."""
    _check_compatible(x, y)
    return _certify(j_p(x - y), y, set_sampler, n, seed, tol)


def certify_vi_pi(phi: DualSimpleFunction, y: SimpleFunction, set_sampler: SetSampler,
                  n: int = 10_000, seed: int = 0,
                  tol: ToleranceConfig = DEFAULT_TOL) -> VICertificate:
    """Check ``<phi - J_p y, y - z> >= 0`` on sampled ``z``."""
    _check_compatible(phi, y)
    return _certify(phi - j_p(y), y, set_sampler, n, seed, tol)


def certify_vi_gpi(x: SimpleFunction, y: SimpleFunction, set_sampler: SetSampler,
                   n: int = 10_000, seed: int = 0,
                   tol: ToleranceConfig = DEFAULT_TOL) -> VICertificate:
    """Check ``<J_p x - J_p y, y - z> >= 0`` on sampled ``z``."""
    _check_compatible(x, y)
    return _certify(j_p(x) - j_p(y), y, set_sampler, n, seed, tol)
