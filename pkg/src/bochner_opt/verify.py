"""Self-check suites behind ``bochner-opt verify``.

``paper`` replays the checks stored in the shipped problem files; the other
suites draw random instances from a seeded generator and test identities
and variational inequality certificates on them.
"""

from __future__ import annotations

from importlib import resources
from typing import Callable

import numpy as np

from . import generate as gen
from .bochner import j_p, j_q_star, lp_norm, lq_norm, pair, pairings
from .errors import ConfigurationError
from .optimize import (
    OptimalClass, SolutionKind, classify_ball_point, inverse_image_ball,
    membership_in_solution, solve,
)
from .projections import (
    ball_sampler, certify_vi_gpi, certify_vi_metric, certify_vi_pi,
    gpi_ball, metric_proj_ball, pi_ball, sample_ball_values,
)
from .tolerance import DEFAULT_TOL
from .xspace import duality_map

SUITES = ("paper", "duality", "projections", "balls", "cones", "all")
CHECK_TOL = 1e-9

Runner = Callable[[list], tuple]


def problem_files() -> list:
    root = resources.files("bochner_opt") / "problems"
    return sorted((p for p in root.iterdir() if p.name.endswith(".json")), key=lambda p: p.name)


def _lookup(doc, path: str):
    cur = doc
    for part in path.split("."):
        if isinstance(cur, list):
            cur = cur[int(part)]
        elif isinstance(cur, dict) and part in cur:
            cur = cur[part]
        else:
            raise KeyError(path)
    return cur


def matches(actual, expected, tol: float) -> bool:
    if isinstance(expected, bool) or isinstance(actual, bool):
        return actual is expected
    if isinstance(expected, (int, float)) and isinstance(actual, (int, float)):
        return abs(actual - expected) <= tol
    if isinstance(expected, list) and isinstance(actual, list):
        return len(actual) == len(expected) and all(matches(a, e, tol) for a, e in zip(actual, expected))
    if isinstance(expected, dict) and isinstance(actual, dict):
        return actual.keys() == expected.keys() and all(matches(actual[k], expected[k], tol) for k in expected)
    return actual == expected


def _case(name, passed, **detail):
    return {"name": name, "passed": bool(passed), **detail}


def suite_paper(runner: Runner, samples: int, seed: int) -> list:
    cases = []
    for path in problem_files():
        from .problem import load_problem  # avoid an import cycle at module load
        with resources.as_file(path) as real:
            prob = load_problem(real)
            for i, check in enumerate(prob.checks):
                name = f"{path.name}:{check.get('name', i)}"
                code, doc = runner(["-p", str(real)] + list(check["argv"]))
                tol = check.get("tol", CHECK_TOL)
                bad = []
                if code != check.get("exit_code", 0):
                    bad.append(f"exit code {code}")
                for key, want in check["expect"].items():
                    try:
                        got = _lookup(doc, key)
                    except (KeyError, IndexError, ValueError):
                        bad.append(f"{key}: missing")
                        continue
                    if not matches(got, want, tol):
                        bad.append(f"{key}: got {got!r}, expected {want!r}")
                cases.append(_case(name, not bad, problems=bad))
    return cases


def factor_law_error(f) -> float:
    """Relative error of ``J_p(1_A x) = m^(1/p - 1/q) 1_A J_X x`` on the first atom of ``f``."""
    block = np.zeros_like(f.values)
    block[0] = f.values[0]
    if not np.any(block):
        return 0.0
    m, p, q = f.space.masses[0], f.exponents.p, f.exponents.q
    want = m ** (1.0 / p - 1.0 / q) * duality_map(block[0], f.xcfg.p_x)
    got = j_p(f._like(block)).values
    err = np.max(np.abs(got[0] - want)) + np.max(np.abs(got[1:]), initial=0.0)
    return float(err / max(1.0, np.max(np.abs(want))))


def suite_duality(runner, samples: int, seed: int, n_cases: int = 100) -> list:
    rng = np.random.default_rng([seed, 101])
    worst = {"pairing": 0.0, "norm": 0.0, "round_trip": 0.0, "homogeneity": 0.0, "factor_law": 0.0}
    for _ in range(n_cases):
        space, xcfg, exps = gen.random_setting(rng)
        f = gen.random_function(rng, space, xcfg, exps)
        jf = j_p(f)
        nf = lp_norm(f)
        worst["pairing"] = max(worst["pairing"], abs(pair(jf, f) - nf ** 2) / (1 + nf ** 2))
        worst["norm"] = max(worst["norm"], abs(lq_norm(jf) - nf) / (1 + nf))
        back = j_q_star(jf)
        worst["round_trip"] = max(worst["round_trip"], float(np.max(np.abs(back.values - f.values), initial=0.0)))
        t = float(rng.uniform(-4, 4))
        scaled = j_p(t * f).values - t * jf.values
        worst["homogeneity"] = max(worst["homogeneity"],
                                   float(np.max(np.abs(scaled), initial=0.0)) / (1 + abs(t) * nf))
        worst["factor_law"] = max(worst["factor_law"], factor_law_error(f))
    limits = {"pairing": 1e-9, "norm": 1e-9, "round_trip": 1e-8, "homogeneity": 1e-9, "factor_law": 1e-9}
    return [_case(k, worst[k] <= limits[k], worst=worst[k], limit=limits[k]) for k in worst]


def suite_projections(runner, samples: int, seed: int, n_cases: int = 20) -> list:
    rng = np.random.default_rng([seed, 102])
    worst = {"pi": np.inf, "gpi": np.inf, "metric": np.inf, "metric_shifted": np.inf}
    for k in range(n_cases):
        space, xcfg, exps = gen.random_setting(rng, max_dim=3, max_atoms=3)
        f = gen.random_function(rng, space, xcfg, exps)
        phi = gen.random_dual(rng, space, xcfg, exps)
        ball = gen.random_ball(rng, f)
        shifted = gen.random_ball(rng, f, centered=False)
        s, ss = ball_sampler(ball), ball_sampler(shifted)
        certs = {
            "pi": certify_vi_pi(phi, pi_ball(phi, ball), s, samples, seed + k),
            "gpi": certify_vi_gpi(f, gpi_ball(f, ball), s, samples, seed + k),
            "metric": certify_vi_metric(f, metric_proj_ball(f, ball), s, samples, seed + k),
            "metric_shifted": certify_vi_metric(f, metric_proj_ball(f, shifted), ss, samples, seed + k),
        }
        for name, c in certs.items():
            worst[name] = min(worst[name], c.worst_violation)
    return [_case(k, v >= -DEFAULT_TOL.certificate, worst=float(v)) for k, v in worst.items()]


def suite_balls(runner, samples: int, seed: int, n_cases: int = 20) -> list:
    rng = np.random.default_rng([seed, 103])
    certified, classified = True, True
    worst = np.inf
    for k in range(n_cases):
        space, xcfg, exps = gen.random_setting(rng, max_dim=3, max_atoms=3)
        f = gen.random_function(rng, space, xcfg, exps)
        ball = gen.random_ball(rng, f)
        g = gen.sphere_point(rng, ball)
        inner = gen.interior_point(rng, ball)
        direction = inverse_image_ball(g, ball.radius).direction
        z = sample_ball_values(ball, samples, seed + k)
        for t in (0.0, 0.5, 1.0, 10.0):
            # g maximizes <phi, .> iff <phi, g - z> >= 0 on the ball
            margin = float(np.min(pairings((t * direction).values, g.values[None] - z, space.masses)))
            worst = min(worst, margin)
            certified &= margin >= -DEFAULT_TOL.certificate
        classified &= classify_ball_point(g, ball.radius) is OptimalClass.OPTIMAL
        classified &= classify_ball_point(inner, ball.radius) is OptimalClass.NONE_OPTIMAL
    return [_case("sphere_certificates", certified, worst=float(worst)),
            _case("classification", classified)]


def suite_cones(runner, samples: int, seed: int, n_cases: int = 30) -> list:
    rng = np.random.default_rng([seed, 104])
    equivalence, pinned, dichotomy = True, True, True
    for _ in range(n_cases):
        space, xcfg, exps = gen.random_setting(rng, max_dim=3, max_atoms=3)
        like = gen.random_function(rng, space, xcfg, exps)
        cone = gen.random_cone(rng, like)
        phi = gen.polar_dual(rng, cone) if rng.uniform() < 0.5 else gen.random_dual(rng, space, xcfg, exps)
        sol = solve(phi, cone)
        member = membership_in_solution(phi, cone.vertex, cone)
        equivalence &= (not sol.is_empty) == member
        if not sol.is_empty:
            pinned &= abs(sol.sup_value - pair(phi, cone.vertex)) <= 1e-9 * max(1.0, abs(sol.sup_value))
        sub = gen.random_subspace(rng, like)
        sol = solve(phi, sub)
        orthogonal = all(abs(pair(phi, d)) <= DEFAULT_TOL.pairing_slack(lq_norm(phi) * lp_norm(d))
                         for d in sub.generators)
        dichotomy &= (sol.kind is SolutionKind.WHOLE_SET) == orthogonal
        dichotomy &= sol.kind in (SolutionKind.WHOLE_SET, SolutionKind.EMPTY)
    return [_case("vertex_membership_equivalence", equivalence),
            _case("value_pinning", pinned),
            _case("subspace_dichotomy", dichotomy)]


_SUITES = {
    "paper": suite_paper,
    "duality": suite_duality,
    "projections": suite_projections,
    "balls": suite_balls,
    "cones": suite_cones,
}


def run_suite(name: str, runner: Runner, samples: int, seed: int) -> list:
    if name not in SUITES:
        raise ConfigurationError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    names = list(_SUITES) if name == "all" else [name]
    cases = []
    for n in names:
        cases.extend(dict(c, suite=n) for c in _SUITES[n](runner, samples, seed))
    return cases
