"""Instance files: one JSON object per instance, rationals as "p/q" strings."""
from __future__ import annotations

import json
from pathlib import Path

from .core import (AdditiveInstance, ConcaveCardinalityInstance, CoverageInstance, Instance,
                   TABLE_MAX_N, TableInstance)
from .errors import InvalidArgument, ResourceLimit
from .instances import TightFamilyInstance, TightFamilyParams


def instance_from_json(d: dict) -> Instance:
    if not isinstance(d, dict):
        raise InvalidArgument("instance JSON must be an object")
    kind = d.get("kind")
    n = d.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidArgument(f"bad ground set size {n!r}")
    try:
        if kind == "explicit-table":
            if n > TABLE_MAX_N:
                raise ResourceLimit(f"explicit tables are limited to n <= {TABLE_MAX_N}, got {n}")
            return TableInstance(n, d["values"], monotone=bool(d.get("monotone", False)),
                                 submodular=bool(d.get("submodular", False)))
        if kind == "coverage":
            inst = CoverageInstance(d["weights"], d["sets"])
        elif kind == "additive":
            inst = AdditiveInstance(d["weights"])
        elif kind == "concave-cardinality":
            inst = ConcaveCardinalityInstance(d["g"])
        elif kind == "tight-family":
            return TightFamilyInstance(TightFamilyParams(n, d["T"], d["alpha"], d["r"]))
        else:
            raise InvalidArgument(f"unknown instance kind {kind!r}")
    except KeyError as exc:
        raise InvalidArgument(f"{kind} instance is missing field {exc}") from None
    if inst.n != n:
        raise InvalidArgument(f"declared n={n} but data describe {inst.n} elements")
    return inst


def load_instance(path) -> Instance:
    with open(path) as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidArgument(f"{path}: invalid JSON ({exc})") from None
    return instance_from_json(d)


def save_instance(instance: Instance, path) -> None:
    Path(path).write_text(json.dumps(instance.to_json(), indent=1) + "\n")
