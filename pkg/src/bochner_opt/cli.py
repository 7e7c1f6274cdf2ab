"""``bochner-opt``: run operations on a problem file and print one JSON document.

Exit codes: 0 success, 1 validation error, 2 domain error, 3 failed ``verify``.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import verify as _verify
from .bochner import SimpleFunction, j_p, j_q_star, lp_norm, lq_norm, pair
from .errors import ConfigurationError, DomainError
from .optimize import (
    classify_ball_point, inverse_image_ball, inverse_image_star_ball,
    membership_in_solution, nonconvexity_demo, solve,
)
from .oracle import SampleBudget, brute_lyapunov_min, brute_metric_proj
from .problem import dumps, encode_function, encode_number, encode_solution, load_problem
from .projections import (
    ball_sampler, certify_vi_gpi, certify_vi_metric, certify_vi_pi,
    gpi_ball, metric_proj_ball, pi_ball,
)
from .tolerance import DEFAULT_TOL

EXIT_OK, EXIT_VALIDATION, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3
SEED_ENV = "BOCHNER_OPT_SEED"
DEFAULT_SAMPLES = 10_000
DEFAULT_TRUNCATION = 10.0


class _Parser(argparse.ArgumentParser):
    # usage errors are validation errors, not argparse's exit status 2
    def error(self, message):
        raise ConfigurationError(f"{self.prog}: {message}")


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bochner-opt", description=__doc__.splitlines()[0])
    parser.add_argument("-p", "--problem", help="problem file (JSON)")
    sampling = _Parser(add_help=False)
    sampling.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                          help="sample count for oracles and certificates")
    sampling.add_argument("--seed", type=int, default=None,
                          help=f"sampling seed (default: ${SEED_ENV} or 0)")
    sampling.add_argument("--truncation", type=float, default=DEFAULT_TRUNCATION,
                          help="coefficient bound T when sampling unbounded sets")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("norm", help="Bochner norm of a function").add_argument("fn")
    p = sub.add_parser("pair", help="dual pairing <dual, fn>")
    p.add_argument("dual")
    p.add_argument("fn")
    sub.add_parser("dualmap", help="J_p of a primal function").add_argument("fn")
    sub.add_parser("dualmap-inv", help="J_q* of a dual function").add_argument("dual")

    p = sub.add_parser("project", parents=[sampling], help="project onto a ball")
    p.add_argument("fn", help="primal function, or dual function for --kind pi")
    p.add_argument("--set", required=True, dest="set_name")
    p.add_argument("--kind", required=True, choices=("metric", "pi", "gpi"))
    p.add_argument("--oracle", action="store_true", help="use the brute-force oracle")

    p = sub.add_parser("solve", help="maximize <dual, .> over a set")
    p.add_argument("dual")
    p.add_argument("--set", required=True, dest="set_name")
    p = sub.add_parser("member", help="is fn a maximizer of <dual, .> over a set")
    p.add_argument("dual")
    p.add_argument("fn")
    p.add_argument("--set", required=True, dest="set_name")
    p = sub.add_parser("inverse-image", help="dual (or with --star, primal) elements making fn optimal")
    p.add_argument("fn")
    p.add_argument("--set", required=True, dest="set_name")
    p.add_argument("--star", action="store_true")
    p = sub.add_parser("classify", help="optimal or none_optimal point of a ball")
    p.add_argument("fn")
    p.add_argument("--set", required=True, dest="set_name")

    sub.add_parser("demo", help="built-in demonstrations").add_argument("name", choices=("nonconvexity",))
    p = sub.add_parser("verify", parents=[sampling], help="run a self-check suite")
    p.add_argument("--suite", required=True, choices=_verify.SUITES)
    return parser


# -- command handlers; each returns (doc, exit code) -------------------------

def _project(prob, args, doc):
    ball = prob.ball(args.set_name)
    budget = SampleBudget(args.samples, args.seed, args.truncation)
    approximate = args.oracle or (args.kind != "metric" and not ball.is_centered)
    sampler = ball_sampler(ball)
    if args.kind == "metric":
        g = prob.primal(args.fn)
        y = brute_metric_proj(g, ball, budget) if args.oracle else metric_proj_ball(g, ball)
        cert = certify_vi_metric(g, y, sampler, args.samples, args.seed, prob.tol)
    elif args.kind == "pi":
        phi = prob.dual(args.fn)
        y = brute_lyapunov_min(phi, ball, budget) if approximate else pi_ball(phi, ball)
        cert = certify_vi_pi(phi, y, sampler, args.samples, args.seed, prob.tol)
    else:
        g = prob.primal(args.fn)
        y = brute_lyapunov_min(j_p(g), ball, budget) if approximate else gpi_ball(g, ball)
        cert = certify_vi_gpi(g, y, sampler, args.samples, args.seed, prob.tol)
    doc["result"] = {
        "point": encode_function(y),
        "method": "oracle" if approximate else "closed_form",
        "approximate": approximate,
    }
    if approximate:
        doc["result"]["sampling"] = {"samples": budget.n, "seed": budget.seed,
                                     "truncation": budget.truncation}
    doc["certificate"] = cert.to_dict()
    return EXIT_OK


def _dispatch(prob, args, doc, runner):
    cmd = args.command
    if cmd == "norm":
        f = prob.function(args.fn)
        doc["result"] = {"norm": lp_norm(f) if isinstance(f, SimpleFunction) else lq_norm(f)}
    elif cmd == "pair":
        doc["result"] = {"pairing": pair(prob.dual(args.dual), prob.primal(args.fn))}
    elif cmd == "dualmap":
        doc["result"] = encode_function(j_p(prob.primal(args.fn)))
    elif cmd == "dualmap-inv":
        doc["result"] = encode_function(j_q_star(prob.dual(args.dual)))
    elif cmd == "project":
        return _project(prob, args, doc)
    elif cmd == "solve":
        sol = solve(prob.dual(args.dual), prob.set(args.set_name), prob.tol)
        doc["result"] = encode_solution(sol)
        doc["sup_value"] = encode_number(sol.sup_value)
    elif cmd == "member":
        doc["result"] = {"member": membership_in_solution(
            prob.dual(args.dual), prob.primal(args.fn), prob.set(args.set_name), prob.tol)}
    elif cmd == "inverse-image":
        ball = prob.ball(args.set_name)
        fn = inverse_image_star_ball if args.star else inverse_image_ball
        doc["result"] = encode_solution(fn(prob.primal(args.fn), ball.radius, ball.center, prob.tol))
        doc["sup_value"] = None
    elif cmd == "classify":
        ball = prob.ball(args.set_name)
        doc["result"] = {"class": classify_ball_point(prob.primal(args.fn), ball.radius,
                                                      ball.center, prob.tol).value}
    elif cmd == "demo":
        doc["result"] = nonconvexity_demo(prob.tol if prob else DEFAULT_TOL).to_dict()
    elif cmd == "verify":
        cases = _verify.run_suite(args.suite, runner, args.samples, args.seed)
        failed = [c for c in cases if not c["passed"]]
        doc["result"] = {"suite": args.suite, "cases": cases}
        doc["certificate"] = {"holds": not failed, "passed": len(cases) - len(failed),
                              "failed": len(failed)}
        return EXIT_VERIFY if failed else EXIT_OK
    return EXIT_OK


_NO_PROBLEM = ("demo", "verify")


def _inputs(args) -> dict:
    out = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "problem") and v is not None}
    if args.problem is not None:
        out["problem"] = Path(args.problem).name
    return out


def run(argv) -> tuple[int, dict]:
    """Execute one command; returns ``(exit_code, output_document)`` and never exits."""
    doc = {"command": None, "inputs": {}, "tolerances": DEFAULT_TOL.to_dict()}
    try:
        args = build_parser().parse_args(list(argv))
        doc["command"] = args.command
        if getattr(args, "seed", 0) is None:
            args.seed = default_seed()
        if hasattr(args, "samples") and args.samples < 1:
            raise ConfigurationError(f"--samples must be positive, got {args.samples}")
        doc["inputs"] = _inputs(args)
        prob = None
        if args.problem is not None:
            prob = load_problem(args.problem)
            doc["tolerances"] = prob.tol.to_dict()
        elif args.command not in _NO_PROBLEM:
            raise ConfigurationError(f"{args.command} needs a problem file (-p FILE)")
        code = _dispatch(prob, args, doc, run)
    except ConfigurationError as exc:
        doc["error"] = {"type": "validation", "message": str(exc)}
        code = EXIT_VALIDATION
    except DomainError as exc:
        doc["error"] = {"type": "domain", "message": str(exc)}
        code = EXIT_DOMAIN
    if doc["command"] is None:
        doc["command"] = ""
    return code, doc


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if any(a in ("-h", "--help") for a in argv):
        build_parser().parse_args(argv)  # prints help and exits 0
    code, doc = run(argv)
    sys.stdout.write(dumps(doc) + "\n")
    if "error" in doc:
        sys.stderr.write(f"bochner-opt: {doc['error']['type']} error: {doc['error']['message']}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
