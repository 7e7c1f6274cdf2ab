"""JSON schemas for problem files and for CLI output documents."""

_number = {"type": "number"}
_name = {"type": "string", "minLength": 1}
_names = {"type": "array", "items": _name, "minItems": 1}
_coords = {"type": "array", "items": _number}

_values = {
    "oneOf": [
        {"type": "array", "items": _coords},
        {"type": "object", "additionalProperties": _coords},
    ]
}

_function = {
    "type": "object",
    "required": ["kind", "values"],
    "properties": {
        "kind": {"enum": ["primal", "dual"]},
        "values": _values,
    },
    "additionalProperties": False,
}

_set = {
    "oneOf": [
        {
            "type": "object",
            "required": ["kind", "radius"],
            "properties": {
                "kind": {"const": "ball"},
                "radius": {"type": "number", "exclusiveMinimum": 0},
                "center": _name,
            },
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": ["kind", "atoms", "bound"],
            "properties": {
                "kind": {"const": "subdomain_ball"},
                "atoms": _names,
                "bound": {"type": "number", "exclusiveMinimum": 0},
            },
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": ["kind", "vertices"],
            "properties": {"kind": {"const": "polytope"}, "vertices": _names},
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": ["kind", "generators"],
            "properties": {"kind": {"const": "cone"}, "vertex": _name, "generators": _names},
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": ["kind", "generators"],
            "properties": {"kind": {"const": "subspace"}, "generators": _names},
            "additionalProperties": False,
        },
    ]
}

PROBLEM_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "problem file",
    "type": "object",
    "required": ["space", "x", "p"],
    "properties": {
        "description": {"type": "string"},
        "space": {
            "type": "object",
            "required": ["atoms"],
            "properties": {
                "atoms": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "required": ["id", "mass"],
                        "properties": {
                            "id": _name,
                            "mass": {"type": "number", "exclusiveMinimum": 0},
                        },
                        "additionalProperties": False,
                    },
                }
            },
            "additionalProperties": False,
        },
        "x": {
            "type": "object",
            "required": ["dim", "p_x"],
            "properties": {
                "dim": {"type": "integer", "minimum": 1},
                "p_x": {"type": "number", "exclusiveMinimum": 1},
            },
            "additionalProperties": False,
        },
        "p": {"type": "number", "exclusiveMinimum": 1},
        "functions": {"type": "object", "additionalProperties": _function},
        "sets": {"type": "object", "additionalProperties": _set},
        "tolerances": {
            "type": "object",
            "properties": {k: {"type": "number", "minimum": 0}
                           for k in ("rel", "abs", "pairing", "certificate")},
            "additionalProperties": False,
        },
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["argv", "expect"],
                "properties": {
                    "name": {"type": "string"},
                    "argv": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                    "expect": {"type": "object"},
                    "exit_code": {"type": "integer"},
                    "tol": {"type": "number", "minimum": 0},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

_fn_out = {
    "type": "object",
    "required": ["kind", "atoms", "values"],
    "properties": {
        "kind": {"enum": ["primal", "dual"]},
        "atoms": {"type": "array", "items": {"type": "string"}},
        "values": {"type": "array", "items": _coords},
    },
}

_sup = {"oneOf": [_number, {"const": "+inf"}, {"type": "null"}]}

OUTPUT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "output document",
    "type": "object",
    "required": ["command", "inputs", "tolerances"],
    "properties": {
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "result": {},
        "sup_value": _sup,
        "certificate": {"type": "object"},
        "error": {
            "type": "object",
            "required": ["type", "message"],
            "properties": {
                "type": {"enum": ["validation", "domain"]},
                "message": {"type": "string"},
            },
        },
        "tolerances": {
            "type": "object",
            "required": ["rel", "abs", "pairing", "certificate"],
            "properties": {k: _number for k in ("rel", "abs", "pairing", "certificate")},
        },
    },
    "additionalProperties": False,
    "$defs": {"function": _fn_out},
}
