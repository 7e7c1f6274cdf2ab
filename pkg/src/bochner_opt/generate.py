"""Random instances shared by the ``verify`` suites and the test-suite."""

from __future__ import annotations

import numpy as np

from .bochner import DualSimpleFunction, MeasureSpace, SimpleFunction, lp_norm
from .sets import BallSpec, Cone, Subspace
from .xspace import ExponentPair, XConfig


def random_setting(rng: np.random.Generator, max_dim: int = 5, max_atoms: int = 5,
                   exp_range=(1.1, 6.0), mass_range=(0.1, 10.0)):
    """Draw ``(space, xcfg, exponents)`` with exponents and masses uniform on the given ranges."""
    n = int(rng.integers(1, max_atoms + 1))
    d = int(rng.integers(1, max_dim + 1))
    space = MeasureSpace.from_masses(rng.uniform(*mass_range, size=n))
    xcfg = XConfig.lp(d, float(rng.uniform(*exp_range)))
    exps = ExponentPair(float(rng.uniform(*exp_range)))
    return space, xcfg, exps


def random_values(rng, space, xcfg, sparsity: float = 0.2, scale: float = 3.0) -> np.ndarray:
    # some atoms switched off, so zero atoms get exercised
    v = scale * rng.standard_normal((len(space), xcfg.dim))
    off = rng.uniform(size=len(space)) < sparsity
    v[off] = 0.0
    return v


def random_function(rng, space, xcfg, exps, **kw) -> SimpleFunction:
    return SimpleFunction(space, xcfg, exps, random_values(rng, space, xcfg, **kw))


def random_dual(rng, space, xcfg, exps, **kw) -> DualSimpleFunction:
    return DualSimpleFunction(space, xcfg, exps, random_values(rng, space, xcfg, **kw))


def nonzero(draw, rng, *args, **kw):
    while True:
        f = draw(rng, *args, sparsity=0.0, **kw)
        if np.any(f.values != 0.0):
            return f


def random_ball(rng, like: SimpleFunction, centered: bool = True) -> BallSpec:
    r = float(rng.uniform(0.2, 5.0))
    if centered:
        return BallSpec.centered(like, r)
    return BallSpec(like._like(rng.standard_normal(like.values.shape)), r)


def sphere_point(rng, ball: BallSpec) -> SimpleFunction:
    w = nonzero(random_function, rng, ball.center.space, ball.center.xcfg, ball.center.exponents)
    return ball.center + (ball.radius / lp_norm(w)) * w


def interior_point(rng, ball: BallSpec, shrink=(0.0, 0.9)) -> SimpleFunction:
    w = nonzero(random_function, rng, ball.center.space, ball.center.xcfg, ball.center.exponents)
    return ball.center + (ball.radius * float(rng.uniform(*shrink)) / lp_norm(w)) * w


def random_cone(rng, like: SimpleFunction, n_gen=None) -> Cone:
    k = int(rng.integers(1, 4)) if n_gen is None else n_gen
    vertex = like._like(rng.standard_normal(like.values.shape))
    gens = tuple(nonzero(random_function, rng, like.space, like.xcfg, like.exponents) for _ in range(k))
    return Cone(vertex, gens)


def random_subspace(rng, like: SimpleFunction, n_gen=None) -> Subspace:
    k = int(rng.integers(1, 3)) if n_gen is None else n_gen
    return Subspace(tuple(nonzero(random_function, rng, like.space, like.xcfg, like.exponents)
                          for _ in range(k)))


def polar_dual(rng, cone: Cone) -> DualSimpleFunction:
    """A dual element with ``<phi, d_j> <= 0`` for every generator (possibly the origin)."""
    like = cone.vertex
    for _ in range(200):
        phi = random_dual(rng, like.space, like.xcfg, like.exponents, sparsity=0.0)
        vals = np.array([np.einsum("ad,ad,a->", phi.values, d.values, like.space.masses)
                         for d in cone.generators])
        if np.all(vals <= -1e-3 * np.abs(vals).max(initial=1.0)):
            return phi
        if np.all(vals >= 1e-3 * np.abs(vals).max(initial=1.0)):
            return -phi
    return DualSimpleFunction.zero(like.space, like.xcfg, like.exponents)
