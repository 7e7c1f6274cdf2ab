"""Loading problem files and turning results into JSON-ready documents."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import jsonschema
import numpy as np

from .bochner import DualSimpleFunction, MeasureSpace, SimpleFunction
from .errors import ConfigurationError
from .optimize import SolutionSet
from .schema import PROBLEM_SCHEMA
from .sets import BallSpec, Cone, ConvexSetSpec, Polytope, SubdomainBall, Subspace
from .tolerance import ToleranceConfig
from .xspace import ExponentPair, XConfig

Function = Union[SimpleFunction, DualSimpleFunction]

#: names resolvable in every problem
THETA, THETA_STAR = "theta", "theta_star"


@dataclass
class Problem:
    space: MeasureSpace
    xcfg: XConfig
    exponents: ExponentPair
    functions: dict = field(default_factory=dict)
    sets: dict = field(default_factory=dict)
    tol: ToleranceConfig = field(default_factory=ToleranceConfig)
    checks: list = field(default_factory=list)
    source: str = "<problem>"

    def function(self, name: str) -> Function:
        if name == THETA:
            return SimpleFunction.zero(self.space, self.xcfg, self.exponents)
        if name == THETA_STAR:
            return DualSimpleFunction.zero(self.space, self.xcfg, self.exponents)
        try:
            return self.functions[name]
        except KeyError:
            raise ConfigurationError(f"{self.source}: unknown function {name!r}") from None

    def primal(self, name: str) -> SimpleFunction:
        f = self.function(name)
        if not isinstance(f, SimpleFunction):
            raise ConfigurationError(f"{self.source}: {name!r} is a dual function, expected a primal one")
        return f

    def dual(self, name: str) -> DualSimpleFunction:
        f = self.function(name)
        if not isinstance(f, DualSimpleFunction):
            raise ConfigurationError(f"{self.source}: {name!r} is a primal function, expected a dual one")
        return f

    def set(self, name: str) -> ConvexSetSpec:
        try:
            return self.sets[name]
        except KeyError:
            raise ConfigurationError(f"{self.source}: unknown set {name!r}") from None

    def ball(self, name: str) -> BallSpec:
        s = self.set(name)
        if not isinstance(s, BallSpec):
            raise ConfigurationError(f"{self.source}: set {name!r} is a {s.kind}, expected a ball")
        return s


def _field_path(error: jsonschema.ValidationError) -> str:
    return "/".join(str(p) for p in error.absolute_path) or "<root>"


def load_problem(path) -> Problem:
    """Read and validate a problem file.

    Raises
    ------
    ConfigurationError
        With a ``file:line:col`` diagnostic for malformed JSON, or a
        ``file: field/path: message`` diagnostic for schema or reference errors.
    """
    path = Path(path)
    source = str(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"{source}: cannot read problem file: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return parse_problem(doc, source)


def parse_problem(doc: dict, source: str = "<problem>") -> Problem:
    validator = jsonschema.Draft202012Validator(PROBLEM_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise ConfigurationError(f"{source}: {_field_path(e)}: {e.message}")
    try:
        space = MeasureSpace(tuple((a["id"], a["mass"]) for a in doc["space"]["atoms"]))
        xcfg = XConfig.lp(doc["x"]["dim"], doc["x"]["p_x"])
        exps = ExponentPair(doc["p"])
        tol = ToleranceConfig(**doc.get("tolerances", {}))
    except ConfigurationError as exc:
        raise ConfigurationError(f"{source}: {exc}") from None
    prob = Problem(space, xcfg, exps, tol=tol, checks=list(doc.get("checks", [])), source=source)

    for name, spec in doc.get("functions", {}).items():
        if name in (THETA, THETA_STAR):
            raise ConfigurationError(f"{source}: functions/{name}: name is reserved")
        prob.functions[name] = _parse_values(prob, f"functions/{name}", spec)
    for name, spec in doc.get("sets", {}).items():
        if name in prob.functions:
            raise ConfigurationError(f"{source}: sets/{name}: name already used by a function")
        try:
            prob.sets[name] = _parse_set(prob, spec)
        except ConfigurationError as exc:
            raise ConfigurationError(f"{source}: sets/{name}: {exc}") from None
    return prob


def _parse_values(prob: Problem, where: str, spec: dict) -> Function:
    n, d = len(prob.space), prob.xcfg.dim
    raw = spec["values"]
    if isinstance(raw, dict):
        values = np.zeros((n, d))
        for atom, coords in raw.items():
            try:
                i = prob.space.index(atom)
            except ConfigurationError:
                raise ConfigurationError(f"{prob.source}: {where}/values/{atom}: unknown atom id") from None
            if len(coords) != d:
                raise ConfigurationError(f"{prob.source}: {where}/values/{atom}: expected {d} coordinates")
            values[i] = coords
    else:
        if len(raw) != n or any(len(row) != d for row in raw):
            raise ConfigurationError(f"{prob.source}: {where}/values: expected {n} rows of {d} coordinates")
        values = np.array(raw, dtype=float)
    cls = SimpleFunction if spec["kind"] == "primal" else DualSimpleFunction
    return cls(prob.space, prob.xcfg, prob.exponents, values)


def _parse_set(prob: Problem, spec: dict) -> ConvexSetSpec:
    kind = spec["kind"]
    if kind == "ball":
        return BallSpec(prob.primal(spec.get("center", THETA)), spec["radius"])
    if kind == "subdomain_ball":
        return SubdomainBall(prob.primal(THETA), tuple(spec["atoms"]), spec["bound"])
    if kind == "polytope":
        return Polytope(tuple(prob.primal(v) for v in spec["vertices"]))
    if kind == "cone":
        return Cone(prob.primal(spec.get("vertex", THETA)), tuple(prob.primal(d) for d in spec["generators"]))
    return Subspace(tuple(prob.primal(d) for d in spec["generators"]))


# -- output encoding -------------------------------------------------------

def encode_number(x):
    x = float(x)
    if math.isinf(x) and x > 0:
        return "+inf"
    return x


def encode_function(f: Function) -> dict:
    return {
        "kind": "primal" if isinstance(f, SimpleFunction) else "dual",
        "atoms": f.space.ids,
        "values": [[float(c) for c in row] for row in f.values],
    }


def encode_solution(sol: SolutionSet) -> dict:
    doc = {"kind": sol.kind.value}
    if sol.point is not None:
        doc["point"] = encode_function(sol.point)
    if sol.direction is not None:
        doc["direction"] = encode_function(sol.direction)
    if sol.indices or sol.kind.value in ("polytope_face", "cone_face"):
        doc["indices"] = list(sol.indices)
    return doc


def dumps(doc) -> str:
    """Deterministic JSON: sorted keys, shortest round-trip float repr."""
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False)
