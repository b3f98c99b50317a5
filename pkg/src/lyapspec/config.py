"""System description files.

Example::

    {"branches": [{"kind": "affine", "interval": [0.0, 0.3333333333333333]},
                  {"kind": "quadratic", "interval": [0.75, 1.0], "epsilon": 0.3}]}

Unknown keys are rejected; ``epsilon`` is required for quadratic branches and
forbidden for affine ones.
"""
from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .errors import LyapspecError
from .system import BranchSpec, CookieCutterSystem, validate_system

_INTERVAL = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}

SYSTEM_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "branches": {
            "type": "array",
            "items": {
                "oneOf": [
                    {
                        "type": "object",
                        "properties": {"kind": {"const": "affine"}, "interval": _INTERVAL},
                        "required": ["kind", "interval"],
                        "additionalProperties": False,
                    },
                    {
                        "type": "object",
                        "properties": {
                            "kind": {"const": "quadratic"},
                            "interval": _INTERVAL,
                            "epsilon": {"type": "number"},
                        },
                        "required": ["kind", "interval", "epsilon"],
                        "additionalProperties": False,
                    },
                ]
            },
        }
    },
    "required": ["branches"],
    "additionalProperties": False,
}


class ConfigError(LyapspecError):
    """Unreadable file, malformed JSON or schema violation."""


def parse_branches(doc: dict) -> list[BranchSpec]:
    try:
        jsonschema.validate(doc, SYSTEM_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"schema violation at {where}: {exc.message}") from None
    specs = []
    for item in doc["branches"]:
        a, b = (float(v) for v in item["interval"])
        if item["kind"] == "affine":
            specs.append(BranchSpec.affine(a, b))
        else:
            specs.append(BranchSpec.quadratic(a, b, float(item["epsilon"])))
    return specs


def load_branches(path: str | Path) -> list[BranchSpec]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from None
    return parse_branches(doc)


def load_system(path: str | Path) -> CookieCutterSystem:
    return validate_system(load_branches(path))


def dump_system(system: CookieCutterSystem) -> dict:
    out = []
    for br in system.branches:
        item = {"kind": br.kind.value, "interval": [br.a, br.b]}
        if br.kind.value == "quadratic":
            item["epsilon"] = br.epsilon
        out.append(item)
    return {"branches": out}
