"""Acceptance criteria 1-9, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints a
PASS/FAIL line per criterion. Random instances come from cached builders, so
the oracle criterion sees exactly the instances of criteria 1-8 even when it
runs alone.
"""

import functools
import math

import numpy as np
import pytest
from scipy.linalg import null_space

from bochner_opt import (
    BallSpec, Cone, DualSimpleFunction, MeasureSpace, OptimalClass, Polytope,
    SimpleFunction, SolutionKind, SubdomainBall, Subspace, XConfig,
    brute_lyapunov_min, brute_metric_proj, brute_sup, classify_ball_point,
    gpi_ball, j_p, j_q_star, lp_norm, lq_norm, lyapunov_v, membership_in_solution,
    metric_proj_ball, nonconvexity_demo, pair, perp, pi_ball, solve,
    certify_vi_gpi, certify_vi_metric, certify_vi_pi, ball_sampler,
)
from bochner_opt import generate as gen
from bochner_opt.bochner import bochner_norms, pairings
from bochner_opt.oracle import SampleBudget, sample_solution, sample_values
from bochner_opt.projections import lyapunov_values, sample_ball_values

EXACT = 1e-9
SAMPLES = 10_000
ORACLE_SAMPLES = 100_000


def diag(kind, coeffs, masses=None, p=3.0, p_x=3.0):
    n = len(coeffs)
    space = MeasureSpace.unit(n) if masses is None else MeasureSpace.from_masses(masses)
    return kind(space, XConfig.lp(n, p_x), p, np.diag(np.asarray(coeffs, dtype=float)))


def lp(x, p):
    # scaled so tiny or huge entries neither underflow nor overflow
    s = np.max(np.abs(x), initial=0.0)
    return 0.0 if s == 0 else s * np.sum((np.abs(x) / s) ** p) ** (1 / p)


def textbook_jx(x, p):
    n = lp(x, p)
    if n == 0:
        return np.zeros_like(x)
    return n * (np.abs(x) / n) ** (p - 1) * np.sign(x)


def small(C) -> bool:
    t = C.template
    return len(t.space) <= 3 and t.xcfg.dim <= 3


# -- instance builders -------------------------------------------------------

@functools.lru_cache(maxsize=None)
def ray_cone():
    u = diag(SimpleFunction, [25, 37, 77])
    K = Cone(0 * u, (u,))
    duals = {name: diag(DualSimpleFunction, c) for name, c in
             (("Phi", [-9, 4, 1]), ("Psi", [-9, 0, -1]), ("Upsilon", [9, 4, 0]))}
    return u, K, duals


@functools.lru_cache(maxsize=None)
def segment():
    g = diag(SimpleFunction, [25, 37, 77])
    u, v = diag(SimpleFunction, [3, -2, -1]), diag(SimpleFunction, [1, -3, 2])
    h = (2 / 3) * u + (1 / 3) * v
    return g, Polytope((0 * g, g)), {"u": u, "v": v, "h": h}


@functools.lru_cache(maxsize=None)
def simplex():
    verts = tuple(diag(SimpleFunction, e) for e in np.eye(3))
    duals = [diag(DualSimpleFunction, c) for c in ([1, 1, 1], [1, 1, 0], [1, 0, 0], [1, -1, 1])]
    return Polytope(verts), duals


def subdomain(M):
    space = MeasureSpace.from_masses([1.0, 2.0])
    cfg = XConfig.lp(2, 2.0)
    xs = DualSimpleFunction(space, cfg, 3.0, [[0.6, 0.8], [0.0, 0.0]])
    return xs, SubdomainBall(SimpleFunction.zero(space, cfg, 3.0), ("A1",), M)


BRANCHES = "abcdef"


@functools.lru_cache(maxsize=None)
def projection_cases(branch):
    """200 centered-ball cases; (a)(b) hold a dual, (c)-(f) a primal function."""
    rng = np.random.default_rng([6, BRANCHES.index(branch)])
    out = []
    for _ in range(200):
        space, xcfg, exps = gen.random_setting(rng)
        if branch in "ab":
            arg = gen.nonzero(gen.random_dual, rng, space, xcfg, exps)
            size = lq_norm(arg)
        else:
            arg = gen.nonzero(gen.random_function, rng, space, xcfg, exps)
            size = lp_norm(arg)
        # inside branches (a)(c)(e) get r >= size, the others r < size
        inside = branch in "ace"
        r = size * float(rng.uniform(1.0, 3.0) if inside else rng.uniform(0.1, 0.95))
        zero = SimpleFunction.zero(space, xcfg, exps)
        out.append((arg, BallSpec.centered(zero, r)))
    return out


@functools.lru_cache(maxsize=None)
def ball_point_cases():
    """50 sphere points and 50 interior points, each with its ball."""
    rng = np.random.default_rng([7, 0])
    sphere, interior = [], []
    for _ in range(50):
        space, xcfg, exps = gen.random_setting(rng)
        ball = gen.random_ball(rng, gen.random_function(rng, space, xcfg, exps))
        sphere.append((ball, gen.sphere_point(rng, ball)))
    for _ in range(50):
        space, xcfg, exps = gen.random_setting(rng)
        ball = gen.random_ball(rng, gen.random_function(rng, space, xcfg, exps))
        g = gen.interior_point(rng, ball)
        phis = [gen.nonzero(gen.random_dual, rng, space, xcfg, exps) for _ in range(20)]
        interior.append((ball, g, phis))
    return sphere, interior


@functools.lru_cache(maxsize=None)
def cone_cases():
    """100 cones with a dual that is polar to the generators half of the time."""
    rng = np.random.default_rng([8, 0])
    out = []
    for k in range(100):
        space, xcfg, exps = gen.random_setting(rng)
        K = gen.random_cone(rng, gen.random_function(rng, space, xcfg, exps))
        phi = gen.polar_dual(rng, K) if k % 2 == 0 else gen.random_dual(rng, space, xcfg, exps)
        out.append((phi, K))
    return out


def _annihilator(rng, S, space, xcfg, exps):
    # duals vanishing on every generator: null space of the weighted pairing rows
    rows = np.stack([(S.template.space.masses[:, None] * d.values).ravel() for d in S.generators])
    basis = null_space(rows)
    vals = basis @ rng.standard_normal(basis.shape[1]) if basis.size else np.zeros(rows.shape[1])
    return DualSimpleFunction(space, xcfg, exps, vals.reshape(len(space), xcfg.dim))


@functools.lru_cache(maxsize=None)
def subspace_cases():
    """50 subspaces, each with a generic, an annihilating and a support-disjoint dual."""
    rng = np.random.default_rng([8, 1])
    out = []
    while len(out) < 50:
        space, xcfg, exps = gen.random_setting(rng)
        if len(space) < 2:
            continue
        cut = int(rng.integers(1, len(space)))
        gens = []
        for _ in range(int(rng.integers(1, 3))):
            v = gen.random_values(rng, space, xcfg, sparsity=0.0)
            v[:cut] = 0.0
            gens.append(SimpleFunction(space, xcfg, exps, v))
        S = Subspace(tuple(gens))
        disjoint = gen.random_values(rng, space, xcfg, sparsity=0.0)
        disjoint[cut:] = 0.0
        duals = {
            "generic": gen.nonzero(gen.random_dual, rng, space, xcfg, exps),
            "annihilating": _annihilator(rng, S, space, xcfg, exps),
            "disjoint": DualSimpleFunction(space, xcfg, exps, disjoint),
        }
        out.append((S, duals))
    return out


@functools.lru_cache(maxsize=None)
def falsification_cases():
    """50 cones at the origin that contain ``J_q* phi``."""
    rng = np.random.default_rng([8, 2])
    out = []
    for _ in range(50):
        space, xcfg, exps = gen.random_setting(rng)
        phi = gen.nonzero(gen.random_dual, rng, space, xcfg, exps)
        zero = SimpleFunction.zero(space, xcfg, exps)
        extra = gen.random_cone(rng, zero).generators
        out.append((phi, Cone(zero, (j_q_star(phi),) + extra)))
    return out


# -- criteria ----------------------------------------------------------------

def test_criterion_1_ray_cone():
    u, K, duals = ray_cone()
    for name, want in (("Phi", 0.0), ("Psi", -302.0), ("Upsilon", 373.0)):
        assert abs(pair(duals[name], u) - want) <= EXACT
    whole = solve(duals["Phi"], K)
    assert whole.kind is SolutionKind.CONE_FACE and whole.indices == (0,)
    apex = solve(duals["Psi"], K)
    assert apex.kind is SolutionKind.CONE_FACE and apex.indices == () and apex.point.is_zero()
    assert solve(duals["Upsilon"], K).kind is SolutionKind.EMPTY


def test_criterion_2_segment_nonconvexity():
    g, seg, pts = segment()
    c36 = 36 ** (1 / 3)
    want_coeffs = {
        "u": np.array([9, -4, -1]) / c36,
        "v": np.array([1, -9, 4]) / c36,
        "h": 7 * 4 ** (1 / 3) / 6 * np.array([1, -1, 0]),
    }
    want_pair = {"u": 0.0, "v": 0.0, "h": -14 * 4 ** (1 / 3)}
    want_member = {"u": True, "v": True, "h": False}
    for name, w in pts.items():
        jw = j_p(w)
        assert np.max(np.abs(np.diag(jw.values) - want_coeffs[name])) <= EXACT
        assert np.all(jw.values[~np.eye(3, dtype=bool)] == 0.0)
        assert abs(pair(jw, g) - want_pair[name]) <= EXACT
        assert membership_in_solution(jw, g, seg) is want_member[name]
    rep = nonconvexity_demo()
    assert rep.memberships == want_member


def test_criterion_3_polytope_faces():
    C, duals = simplex()
    for phi, face in zip(duals, [(0, 1, 2), (0, 1), (0,), (0, 2)]):
        sol = solve(phi, C)
        assert sol.kind is SolutionKind.POLYTOPE_FACE
        assert sol.indices == face
        assert abs(sol.sup_value - 1.0) <= EXACT


@pytest.mark.parametrize("M", [1.0, 2.5])
def test_criterion_4_subdomain_ball(M):
    xs, C = subdomain(M)
    sol = solve(xs, C)
    assert abs(sol.sup_value - M) <= EXACT
    h = SimpleFunction(C.template.space, C.template.xcfg, 3.0, [M * np.array([0.6, 0.8]), [0.0, 0.0]])
    assert sol.point.allclose(h, atol=EXACT)
    assert abs(pair(xs, h) - M) <= EXACT
    pts = sample_values(C, SampleBudget(1000, 4))
    strict = C.restricted_norms(pts) < M
    vals = pairings(xs.values, pts, xs.space.masses)
    assert strict.sum() >= 900
    assert np.all(vals[strict] < M)


def test_criterion_5_duality_identities():
    rng = np.random.default_rng([5, 0])
    worst = dict.fromkeys(("pairing", "norm", "round_trip", "homogeneity", "factor_law"), 0.0)
    for _ in range(1000):
        space, xcfg, exps = gen.random_setting(rng)
        f = gen.random_function(rng, space, xcfg, exps)
        jf, nf = j_p(f), lp_norm(f)
        worst["pairing"] = max(worst["pairing"], abs(pair(jf, f) - nf ** 2) / (1 + nf ** 2))
        worst["norm"] = max(worst["norm"], abs(lq_norm(jf) - nf) / (1 + nf))
        worst["round_trip"] = max(worst["round_trip"], np.max(np.abs(j_q_star(jf).values - f.values)))
        lam = float(rng.uniform(-10, 10))
        diff = j_p(lam * f) - lam * jf
        worst["homogeneity"] = max(worst["homogeneity"], lq_norm(diff) / max(abs(lam) * nf, 1e-300))
        # factor law on a single-atom block
        a = int(rng.integers(len(space)))
        block = np.zeros_like(f.values)
        block[a] = f.values[a]
        m, p, q = space.masses[a], exps.p, exps.q
        want = m ** (1 / p - 1 / q) * textbook_jx(block[a], xcfg.p_x)
        got = j_p(f._like(block)).values
        scale = max(np.max(np.abs(want)), 1e-300)
        err = max(np.max(np.abs(got[a] - want)), np.max(np.abs(np.delete(got, a, axis=0)), initial=0.0))
        worst["factor_law"] = max(worst["factor_law"], err / scale)
    limits = {"pairing": 1e-9, "norm": 1e-9, "round_trip": 1e-8, "homogeneity": 1e-9, "factor_law": 1e-9}
    assert all(worst[k] <= limits[k] for k in limits), worst


@pytest.mark.parametrize("branch", list(BRANCHES))
def test_criterion_6_ball_projections(branch):
    for k, (arg, ball) in enumerate(projection_cases(branch)):
        r = ball.radius
        z = sample_ball_values(ball, SAMPLES, k)
        s = ball_sampler(ball)
        if branch in "ab":
            y = pi_ball(arg, r)
            assert (lq_norm(arg) <= r) == (branch == "a")
            assert np.min(lyapunov_values(arg, z)) - lyapunov_v(arg, y) >= -1e-7
            assert certify_vi_pi(arg, y, s, SAMPLES, k).holds
        elif branch in "cd":
            y = gpi_ball(arg, r)
            assert np.min(lyapunov_values(j_p(arg), z)) - lyapunov_v(j_p(arg), y) >= -1e-7
            assert certify_vi_gpi(arg, y, s, SAMPLES, k).holds
        else:
            y = metric_proj_ball(arg, ball)
            m = arg.space.masses
            dist = bochner_norms(z - arg.values, m, arg.p, arg.xcfg.p_x)
            assert np.min(dist) - lp_norm(arg - y) >= -1e-7
            assert certify_vi_metric(arg, y, s, SAMPLES, k).holds
        assert ball.contains(y)


def test_criterion_6_hilbert_case():
    rng = np.random.default_rng([6, 99])
    worst = 0.0
    for _ in range(200):
        space, _, _ = gen.random_setting(rng)
        d = int(rng.integers(1, 6))
        g = gen.random_function(rng, space, XConfig.lp(d, 2.0), 2.0)
        r = lp_norm(g) * float(rng.uniform(0.1, 2.0)) + 0.1
        a = pi_ball(j_p(g), r).values
        b = gpi_ball(g, r).values
        c = metric_proj_ball(g, BallSpec.centered(0 * g, r)).values
        worst = max(worst, np.abs(a - b).max(), np.abs(b - c).max(), np.abs(a - c).max())
    assert worst <= 1e-10


def test_criterion_7_ball_optimality():
    sphere, interior = ball_point_cases()
    for k, (ball, g) in enumerate(sphere):
        z = sample_ball_values(ball, SAMPLES, k)
        assert classify_ball_point(g, ball.radius, ball.center) is OptimalClass.OPTIMAL
        for t in (0.0, 0.5, 1.0, 10.0):
            phi = t * j_p(g - ball.center)
            best = np.max(pairings(phi.values, z, g.space.masses))
            assert best - pair(phi, g) <= EXACT * max(1.0, lq_norm(phi) * lp_norm(g))
            assert membership_in_solution(phi, g, ball)
    for k, (ball, g, phis) in enumerate(interior):
        z = sample_ball_values(ball, SAMPLES, 100 + k)
        assert classify_ball_point(g, ball.radius, ball.center) is OptimalClass.NONE_OPTIMAL
        for phi in phis:
            assert np.max(pairings(phi.values, z, g.space.masses)) - pair(phi, g) > 1e-9


def test_criterion_8_cones_and_subspaces():
    outcomes = set()
    for k, (phi, K) in enumerate(cone_cases()):
        sol = solve(phi, K)
        assert (not sol.is_empty) == membership_in_solution(phi, K.vertex, K)
        outcomes.add(sol.is_empty)
        if sol.is_empty:
            continue
        base = pair(phi, K.vertex)
        for g in sample_solution(sol, K, SampleBudget(20, k)):
            assert abs(pair(phi, g) - base) <= EXACT * max(1.0, lq_norm(phi) * lp_norm(g))
    assert outcomes == {True, False}
    kinds = set()
    for S, duals in subspace_cases():
        for name, phi in duals.items():
            sol = solve(phi, S)
            assert sol.kind in (SolutionKind.WHOLE_SET, SolutionKind.EMPTY)
            assert (sol.kind is SolutionKind.WHOLE_SET) == perp(phi, S)
            kinds.add(sol.kind)
            if name != "generic":
                assert sol.kind is SolutionKind.WHOLE_SET
    assert kinds == {SolutionKind.WHOLE_SET, SolutionKind.EMPTY}
    for phi, K in falsification_cases():
        star = j_q_star(phi)
        assert K.contains(star)
        assert not membership_in_solution(phi, star, K)
        assert solve(phi, K).is_empty


# -- oracle agreement --------------------------------------------------------

def sup_instances():
    """Every finite-sup (dual, set) pair of criteria 1-8 on at most 3 atoms in at most 3 dimensions."""
    out = []
    u, K, duals = ray_cone()
    out += [(phi, K) for phi in duals.values()]
    g, seg, pts = segment()
    out += [(j_p(w), seg) for w in pts.values()]
    C, polys = simplex()
    out += [(phi, C) for phi in polys]
    out += [subdomain(M) for M in (1.0, 2.5)]
    for branch in "ab":
        out += [(phi, ball) for phi, ball in projection_cases(branch)]
    sphere, interior = ball_point_cases()
    for ball, g in sphere:
        out += [(t * j_p(g - ball.center), ball) for t in (0.5, 1.0, 10.0)]
    for ball, g, phis in interior:
        out += [(phi, ball) for phi in phis]
    out += [(phi, K) for phi, K in cone_cases()]
    for S, duals in subspace_cases():
        out += [(phi, S) for phi in duals.values()]
    out += list(falsification_cases())
    return [(phi, C) for phi, C in out if small(C) and math.isfinite(solve(phi, C).sup_value)]


def sup_scale(phi, C, exact):
    # the part of the optimum the sampler has to find
    if isinstance(C, BallSpec):
        return C.radius * lq_norm(phi)
    if isinstance(C, SubdomainBall):
        return abs(exact - pair(phi, C.template))
    return abs(exact)


def test_criterion_9_oracle_agreement():
    worst = {"sup": 0.0, "pi": 0.0, "gpi": 0.0, "metric": 0.0}
    over = 0.0
    for k, (phi, C) in enumerate(sup_instances()):
        exact = solve(phi, C).sup_value
        est = brute_sup(phi, C, SampleBudget(ORACLE_SAMPLES, k)).value
        over = max(over, est - exact)
        scale = sup_scale(phi, C, exact)
        gap = exact - est
        if scale > 0:
            worst["sup"] = max(worst["sup"], gap / scale)
        else:
            worst["sup"] = max(worst["sup"], 0.0 if gap <= EXACT else math.inf)
    for branch in BRANCHES:
        for k, (arg, ball) in enumerate(projection_cases(branch)):
            if not small(ball):
                continue
            b = SampleBudget(ORACLE_SAMPLES, k)
            if branch in "ab":
                y = brute_lyapunov_min(arg, ball, b)
                gap = lyapunov_v(arg, y) - lyapunov_v(arg, pi_ball(arg, ball))
                worst["pi"] = max(worst["pi"], gap / lq_norm(arg) ** 2)
            elif branch in "cd":
                phi = j_p(arg)
                y = brute_lyapunov_min(phi, ball, b)
                gap = lyapunov_v(phi, y) - lyapunov_v(phi, gpi_ball(arg, ball))
                worst["gpi"] = max(worst["gpi"], gap / lq_norm(phi) ** 2)
            else:
                y = brute_metric_proj(arg, ball, b)
                exact = lp_norm(arg - metric_proj_ball(arg, ball))
                got = lp_norm(arg - y)
                rel = 0.0 if got <= exact + EXACT else (got - exact) / exact
                worst["metric"] = max(worst["metric"], rel)
            assert ball.contains(y)
    print(f"oracle worst relative gaps {worst}, largest overshoot {over:.3g}")
    assert over <= EXACT
    assert all(v <= 0.05 for v in worst.values()), worst
