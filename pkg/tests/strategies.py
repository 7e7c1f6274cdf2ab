"""Hypothesis strategies for spaces and simple functions."""

import numpy as np
from hypothesis import strategies as st

from bochner_opt import DualSimpleFunction, MeasureSpace, SimpleFunction, XConfig
from bochner_opt.xspace import ExponentPair

exponent = st.floats(1.1, 6.0)
coord = st.floats(-50.0, 50.0, allow_nan=False, allow_infinity=False)


@st.composite
def settings(draw, max_dim=5, max_atoms=5):
    n = draw(st.integers(1, max_atoms))
    d = draw(st.integers(1, max_dim))
    masses = draw(st.lists(st.floats(0.1, 10.0), min_size=n, max_size=n))
    return MeasureSpace.from_masses(masses), XConfig.lp(d, draw(exponent)), ExponentPair(draw(exponent))


def _values(draw, space, xcfg):
    flat = draw(st.lists(coord, min_size=len(space) * xcfg.dim, max_size=len(space) * xcfg.dim))
    return np.array(flat).reshape(len(space), xcfg.dim)


@st.composite
def functions(draw, max_dim=5, max_atoms=5):
    space, xcfg, exps = draw(settings(max_dim, max_atoms))
    return SimpleFunction(space, xcfg, exps, _values(draw, space, xcfg))


@st.composite
def function_pairs(draw, max_dim=5, max_atoms=5):
    """A primal function and a dual function on one space."""
    space, xcfg, exps = draw(settings(max_dim, max_atoms))
    f = SimpleFunction(space, xcfg, exps, _values(draw, space, xcfg))
    phi = DualSimpleFunction(space, xcfg, exps, _values(draw, space, xcfg))
    return f, phi


@st.composite
def duals(draw, max_dim=5, max_atoms=5):
    space, xcfg, exps = draw(settings(max_dim, max_atoms))
    return DualSimpleFunction(space, xcfg, exps, _values(draw, space, xcfg))
