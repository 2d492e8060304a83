"""Run configurations for the consistency harness and the CLI.

A config is a plain JSON object: a schema tag, an optional seed, and a
list of check entries.  ``default_config`` pins the standard battery;
``negative_control_config`` deliberately asserts false hypotheses so a
run demonstrates how a VIOLATION surfaces.
"""

from __future__ import annotations

import json
from typing import Mapping

from .errors import UsageError

SCHEMA = "zerodim-verify/1"


def default_config() -> dict:
    """The standard battery: fourteen checks across the bundled
    systems, all expected CONSISTENT."""
    return {
        "schema": SCHEMA,
        "checks": [
            {"check": "recurrence-vs-reach-symmetry", "system": "odometer",
             "horizon": 8, "depth": 2},
            {"check": "recurrence-vs-reach-symmetry", "system": "full-shift",
             "horizon": 8, "depth": 2},
            {"check": "one-way-reach-blocks-return", "system": "full-shift",
             "source": "step", "target": "zero", "horizon": 8, "depth": 2},
            {"check": "cone-returns-give-syndetic", "system": "odometer",
             "point": "zero", "horizon": 8, "depth": 2},
            {"check": "joint-returns-under-uniform-modulus",
             "system": "thue-morse", "point_x": "reflection",
             "point_y": "reflection-flipped", "horizon": 32, "depth": 2},
            {"check": "recurrent-orbit-trace-continuity",
             "system": "circle-stack", "point": "limit", "horizon": 8,
             "depth": 3, "neighbor_depth_max": 4,
             "asserted": {"totally-disconnected": False}},
            {"check": "uniform-modulus-gives-orbit-continuity",
             "system": "odometer", "points": ["one", "zero"], "horizon": 8,
             "depth": 2, "neighbor_depth_max": 4},
            {"check": "regular-returns-tile-horizon", "system": "odometer",
             "point": "zero", "horizon": 8, "depth": 2, "cover_cap": 16},
            {"check": "regular-returns-tile-horizon", "system": "full-shift",
             "point": "alternating", "horizon": 8, "depth": 2,
             "cover_cap": 16},
            {"check": "pointwise-periodic-invariant-cells",
             "system": "successor-map", "period_max": 8, "depth": 3,
             "horizon": 6},
            {"check": "regional-approach-without-proximality",
             "system": "two-copy", "depth": 3, "horizon": 3},
            {"check": "regional-approach-without-proximality",
             "system": "mcmahon", "depth": 3, "horizon": 3},
            {"check": "syndetic-subgroup-normal-core",
             "samples": ["sym-3", "dihedral-4"]},
            {"check": "syndetic-thick-duality", "window": 24},
        ],
    }


def negative_control_config() -> dict:
    """Deliberately false assertions: the run must end in VIOLATION."""
    return {
        "schema": SCHEMA,
        "checks": [
            {"check": "recurrence-vs-reach-symmetry", "system": "full-shift",
             "horizon": 8, "depth": 2,
             "asserted": {"pointwise-recurrent": True}},
            {"check": "recurrent-orbit-trace-continuity",
             "system": "circle-stack", "point": "limit", "horizon": 8,
             "depth": 3, "neighbor_depth_max": 4,
             "asserted": {"totally-disconnected": True}},
            {"check": "recurrence-vs-reach-symmetry", "system": "odometer",
             "horizon": 8, "depth": 2},
        ],
    }


def validate_config(config: Mapping) -> dict:
    if not isinstance(config, Mapping):
        raise UsageError("config must be a JSON object")
    if config.get("schema") != SCHEMA:
        raise UsageError("config schema must be %r, got %r"
                         % (SCHEMA, config.get("schema")))
    checks = config.get("checks")
    if not isinstance(checks, list) or not checks:
        raise UsageError("config needs a non-empty 'checks' list")
    for i, entry in enumerate(checks):
        if not isinstance(entry, Mapping):
            raise UsageError("check entry %d is not an object" % i)
        if not isinstance(entry.get("check"), str):
            raise UsageError("check entry %d has no 'check' name" % i)
    return dict(config)


def load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError("config %s is not valid JSON: %s" % (path, exc))
    return validate_config(data)
