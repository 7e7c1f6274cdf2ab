"""Write the shipped problem files with frozen expected values.

Expected values come from closed-form arithmetic written out here with
plain numpy; nothing is imported from the package, so the files act as an
independent reference for ``bochner-opt verify --suite paper``.

    python3 tools/freeze_problems.py
"""

import json
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parent.parent / "src" / "bochner_opt" / "problems"


def lp(x, p):
    return float(np.sum(np.abs(x) ** p) ** (1 / p))


def jx(x, p):
    # textbook form ||x||^{2-p} |x|^{p-1} sign(x)
    x = np.asarray(x, float)
    n = lp(x, p)
    return (n ** (2 - p) * np.abs(x) ** (p - 1) * np.sign(x)).tolist()


def diag(c):
    return np.diag(np.asarray(c, float)).tolist()


def unit_atoms(n):
    return [{"id": f"A{i + 1}", "mass": 1.0} for i in range(n)]


def check(name, argv, expect, **extra):
    return {"name": name, "argv": argv, "expect": expect, **extra}


def subdomain_ball():
    # atom A of mass 1 carries the constraint, atom B (mass 2) is free
    xs = np.array([0.6, 0.8])
    prim = lambda a, b: {"kind": "primal", "values": {"A": list(a), "B": list(b)}}
    doc = {
        "description": "Linear functional supported on a unit-mass atom over a ball constraint that "
                       "only restricts that atom; the other atom is free.",
        "space": {"atoms": [{"id": "A", "mass": 1.0}, {"id": "B", "mass": 2.0}]},
        "x": {"dim": 2, "p_x": 2.0},
        "p": 3.0,
        "functions": {
            "xstar": {"kind": "dual", "values": {"A": xs.tolist()}},
            "off_a": {"kind": "dual", "values": {"A": xs.tolist(), "B": [0.0, 1.0]}},
            "h1": prim(xs, [0, 0]),
            "h1_shifted": prim(xs, [5.0, -7.0]),
            "h25": prim(2.5 * xs, [0, 0]),
            "inner": prim(0.5 * xs, [1.0, 1.0]),
            # on the level set but with A-norm 1, so inside only the larger ball
            "tilted": prim([1.0, 0.0], [0, 0]),
        },
        "sets": {
            "C1": {"kind": "subdomain_ball", "atoms": ["A"], "bound": 1.0},
            "C25": {"kind": "subdomain_ball", "atoms": ["A"], "bound": 2.5},
        },
        "checks": [],
    }
    for M, s, h in ((1.0, "C1", "h1"), (2.5, "C25", "h25")):
        doc["checks"] += [
            check(f"sup {s}", ["solve", "xstar", "--set", s],
                  {"result.kind": "level_set", "sup_value": M,
                   "result.point.values": [(M * xs).tolist(), [0.0, 0.0]]}),
            check(f"maximizer pairing {s}", ["pair", "xstar", h], {"result.pairing": M}),
            check(f"maximizer member {s}", ["member", "xstar", h, "--set", s], {"result.member": True}),
            check(f"interior not member {s}", ["member", "xstar", "inner", "--set", s],
                  {"result.member": False}),
            check(f"unbounded direction {s}", ["solve", "off_a", "--set", s],
                  {"result.kind": "empty", "sup_value": "+inf"}),
        ]
    doc["checks"] += [
        check("free atom ignored", ["member", "xstar", "h1_shifted", "--set", "C1"], {"result.member": True}),
        check("level value below bound", ["member", "xstar", "tilted", "--set", "C25"],
              {"result.member": False}),
        check("point outside set", ["member", "xstar", "h25", "--set", "C1"], {"error.type": "domain"},
              exit_code=2),
    ]
    return doc


def polytope_faces():
    e = np.eye(3)
    dual = lambda c: {"kind": "dual", "values": diag(c)}
    doc = {
        "description": "Convex hull of three unit-mass atoms carrying orthonormal directions; the "
                       "maximizing face depends on the signs of the functional's coefficients.",
        "space": {"atoms": unit_atoms(3)},
        "x": {"dim": 3, "p_x": 3.0},
        "p": 3.0,
        "functions": {
            **{f"v{i + 1}": {"kind": "primal", "values": diag(e[i])} for i in range(3)},
            "phi": dual([1, 1, 1]),
            "psi": dual([1, 1, 0]),
            "gamma": dual([1, 0, 0]),
            "lam": dual([1, -1, 1]),
        },
        "sets": {"C": {"kind": "polytope", "vertices": ["v1", "v2", "v3"]}},
        "checks": [],
    }
    for name, face in (("phi", [0, 1, 2]), ("psi", [0, 1]), ("gamma", [0]), ("lam", [0, 2])):
        doc["checks"].append(check(f"face {name}", ["solve", name, "--set", "C"],
                                   {"result.kind": "polytope_face", "result.indices": face,
                                    "sup_value": 1.0}))
    doc["checks"].append(check("vertex outside face", ["member", "gamma", "v2", "--set", "C"],
                               {"result.member": False}))
    return doc


def ray_cone():
    u = [25.0, 37.0, 77.0]
    dual = lambda c: {"kind": "dual", "values": diag(c)}
    Phi, Psi, Ups = [-9, 4, 1], [-9, 0, -1], [9, 4, 0]
    pr = lambda c: float(np.dot(c, u))
    assert (pr(Phi), pr(Psi), pr(Ups)) == (0.0, -302.0, 373.0)
    doc = {
        "description": "Ray from the origin through u on three unit-mass atoms, with one functional "
                       "per outcome: whole ray, apex only, unbounded.",
        "space": {"atoms": unit_atoms(3)},
        "x": {"dim": 3, "p_x": 3.0},
        "p": 3.0,
        "functions": {"u": {"kind": "primal", "values": diag(u)},
                      "Phi": dual(Phi), "Psi": dual(Psi), "Upsilon": dual(Ups)},
        "sets": {"K": {"kind": "cone", "generators": ["u"]}},
        "checks": [
            check("pair Phi", ["pair", "Phi", "u"], {"result.pairing": pr(Phi)}),
            check("pair Psi", ["pair", "Psi", "u"], {"result.pairing": pr(Psi)}),
            check("pair Upsilon", ["pair", "Upsilon", "u"], {"result.pairing": pr(Ups)}),
            check("whole ray", ["solve", "Phi", "--set", "K"],
                  {"result.kind": "cone_face", "result.indices": [0], "sup_value": 0.0}),
            check("apex only", ["solve", "Psi", "--set", "K"],
                  {"result.kind": "cone_face", "result.indices": [], "sup_value": 0.0,
                   "result.point.values": diag([0, 0, 0])}),
            check("unbounded", ["solve", "Upsilon", "--set", "K"],
                  {"result.kind": "empty", "sup_value": "+inf"}),
            check("pair theta_star", ["pair", "theta_star", "u"], {"result.pairing": 0.0}),
        ],
    }
    return doc


def segment_nonconvexity():
    g = [25.0, 37.0, 77.0]
    u, v = np.array([3.0, -2.0, -1.0]), np.array([1.0, -3.0, 2.0])
    h = 2 * u / 3 + v / 3
    c36 = 36.0 ** (1 / 3)
    ju, jv = np.array([9, -4, -1]) / c36, np.array([1, -9, 4]) / c36
    jh = 7 * 4 ** (1 / 3) / 6 * np.array([1.0, -1.0, 0.0])
    # cross-check the closed forms against the single-atom formula: coefficient c_i^2 / ||c||_3
    for c, jc in ((u, ju), (v, jv), (h, jh)):
        assert np.allclose(np.sign(c) * c ** 2 / lp(c, 3), jc, rtol=0, atol=1e-14)
    doc = {
        "description": "Segment from the origin to g on three unit-mass atoms: two primal points "
                       "whose dual images make g optimal, while a convex combination of them does not.",
        "space": {"atoms": unit_atoms(3)},
        "x": {"dim": 3, "p_x": 3.0},
        "p": 3.0,
        "functions": {
            "g": {"kind": "primal", "values": diag(g)},
            "u": {"kind": "primal", "values": diag(u)},
            "v": {"kind": "primal", "values": diag(v)},
            "h": {"kind": "primal", "values": diag(h)},
            "ju": {"kind": "dual", "values": diag(ju)},
            "jv": {"kind": "dual", "values": diag(jv)},
            "jh": {"kind": "dual", "values": diag(jh)},
        },
        "sets": {"C": {"kind": "polytope", "vertices": ["theta", "g"]}},
        "checks": [
            check("norm u", ["norm", "u"], {"result.norm": c36}),
            check("norm v", ["norm", "v"], {"result.norm": c36}),
            check("dual image u", ["dualmap", "u"], {"result.values": diag(ju)}),
            check("dual image v", ["dualmap", "v"], {"result.values": diag(jv)}),
            check("dual image h", ["dualmap", "h"], {"result.values": diag(jh)}),
            check("pair ju g", ["pair", "ju", "g"], {"result.pairing": 0.0}, tol=1e-9),
            check("pair jv g", ["pair", "jv", "g"], {"result.pairing": 0.0}, tol=1e-9),
            check("pair jh g", ["pair", "jh", "g"], {"result.pairing": -14 * 4 ** (1 / 3)}),
            check("member u", ["member", "ju", "g", "--set", "C"], {"result.member": True}),
            check("member v", ["member", "jv", "g", "--set", "C"], {"result.member": True}),
            check("member h", ["member", "jh", "g", "--set", "C"], {"result.member": False}),
            check("demo", ["demo", "nonconvexity"],
                  {"result.memberships": {"u": True, "v": True, "h": False},
                   "result.pairings.h": -14 * 4 ** (1 / 3),
                   "result.dual_coefficients.u": ju.tolist(),
                   "result.dual_coefficients.v": jv.tolist(),
                   "result.dual_coefficients.h": jh.tolist()}),
        ],
    }
    return doc


def sphere_inverse_image():
    p, r, mass = 3.0, 2.0, 2.0
    d = np.array([0.6, 0.8])
    x = (r / mass ** (1 / p)) * d  # mass^{1/p} ||x|| = r
    xstar = np.array(jx(x, 2.0))
    # J_p(1_A x) = (mass ||x||^p)^{-(1/q - 1/p)} ||x||^{p-2} 1_A J_X x
    q = p / (p - 1)
    coef = (mass * lp(x, 2) ** p) ** (-(1 / q - 1 / p)) * lp(x, 2) ** (p - 2)
    prim = lambda a: {"kind": "primal", "values": {"A": list(a)}}
    doc = {
        "description": "Ball of radius 2 about the origin; a point supported on one atom of mass 2 "
                       "lying on the sphere, an interior point and an exterior point.",
        "space": {"atoms": [{"id": "A", "mass": mass}, {"id": "B", "mass": 1.0}]},
        "x": {"dim": 2, "p_x": 2.0},
        "p": p,
        "functions": {"g": prim(x), "inner": prim(0.5 * x), "outer": prim(1.5 * x)},
        "sets": {"B": {"kind": "ball", "radius": r}},
        "checks": [
            check("norm on sphere", ["norm", "g"], {"result.norm": r}),
            check("dual ray", ["inverse-image", "g", "--set", "B"],
                  {"result.kind": "dual_ray", "result.direction.values": [(coef * xstar).tolist(), [0.0, 0.0]]}),
            check("primal ray", ["inverse-image", "g", "--set", "B", "--star"],
                  {"result.kind": "primal_ray", "result.point.values": [x.tolist(), [0.0, 0.0]]}),
            check("interior dual ray", ["inverse-image", "inner", "--set", "B"],
                  {"result.kind": "dual_ray", "result.direction.values": [[0.0, 0.0], [0.0, 0.0]]}),
            check("classify sphere", ["classify", "g", "--set", "B"], {"result.class": "optimal"}),
            check("classify interior", ["classify", "inner", "--set", "B"], {"result.class": "none_optimal"}),
            check("outside ball", ["classify", "outer", "--set", "B"], {"error.type": "domain"}, exit_code=2),
        ],
    }
    return doc


def single_atom_projections():
    p_x, r = 3.0, 2.0
    q_x = p_x / (p_x - 1)
    dy = np.array([1.0, -2.0, 0.5])
    y_small = 1.5 * dy / lp(dy, q_x)
    y_big = 3.0 * dy / lp(dy, q_x)
    dx = np.array([-1.0, 0.5, 2.0])
    x_small = 1.5 * dx / lp(dx, p_x)
    x_big = 3.0 * dx / lp(dx, p_x)
    z = [0.0, 0.0, 0.0]
    prim = lambda a: {"kind": "primal", "values": {"A": list(a)}}
    dual = lambda a: {"kind": "dual", "values": {"A": list(a)}}
    out = lambda a: [list(a), z]
    doc = {
        "description": "Projections onto the ball of radius 2 of functions supported on one unit-mass "
                       "atom, below and above the radius.",
        "space": {"atoms": [{"id": "A", "mass": 1.0}, {"id": "B", "mass": 1.0}]},
        "x": {"dim": 3, "p_x": p_x},
        "p": 3.0,
        "functions": {"y_small": dual(y_small), "y_big": dual(y_big),
                      "x_small": prim(x_small), "x_big": prim(x_big)},
        "sets": {"B": {"kind": "ball", "radius": r}},
        "checks": [],
    }
    cases = (
        ("pi inside", "y_small", "pi", jx(y_small, q_x)),
        ("pi outside", "y_big", "pi", (r / lp(y_big, q_x) * np.array(jx(y_big, q_x))).tolist()),
        ("gpi inside", "x_small", "gpi", x_small.tolist()),
        ("gpi outside", "x_big", "gpi", (r / lp(x_big, p_x) * x_big).tolist()),
        ("metric inside", "x_small", "metric", x_small.tolist()),
        ("metric outside", "x_big", "metric", (r / lp(x_big, p_x) * x_big).tolist()),
    )
    for name, fn, kind, want in cases:
        doc["checks"].append(check(name, ["project", fn, "--set", "B", "--kind", kind],
                                   {"result.point.values": out(want), "result.approximate": False,
                                    "certificate.holds": True}))
    return doc


FILES = {
    "subdomain_ball.json": subdomain_ball,
    "polytope_faces.json": polytope_faces,
    "ray_cone.json": ray_cone,
    "segment_nonconvexity.json": segment_nonconvexity,
    "sphere_inverse_image.json": sphere_inverse_image,
    "single_atom_projections.json": single_atom_projections,
}


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    for name, build in FILES.items():
        (OUT / name).write_text(json.dumps(build(), indent=2) + "\n", encoding="utf-8")
        print("wrote", OUT / name)
