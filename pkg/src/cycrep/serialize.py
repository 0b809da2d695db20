"""Stable JSON forms for matrices, ring elements, modules and morphisms.

Rationals serialize as "a/b" with positive denominator and the fraction in
lowest terms; plain integers omit the denominator.  Matrices are nested
arrays of such strings; zero-dimensional matrices rely on the surrounding
object's dimension fields to pin their shapes.  Serialization is canonical,
so byte-identical output for identical inputs is part of the contract.
"""

from __future__ import annotations

import json
from typing import Any

from .cyclic_site import SupportSet, units
from .linalg import QMatrix, rat, rat_to_str
from .modules import (
    ModuleMorphism,
    OutCycModule,
    atomic_module,
    free_module,
    random_module,
    regular_module,
    semifree_module,
)
from .rep_ring import RUElement, tau_ru_module


def matrix_to_json(m: QMatrix) -> list[list[str]]:
    return [[rat_to_str(v) for v in m.row(i)] for i in range(m.rows)]


def matrix_from_json(data: Any, rows: int, cols: int) -> QMatrix:
    if not isinstance(data, list) or len(data) != rows:
        raise ValueError(f"expected {rows} rows, got {data!r}")
    flat = []
    for r in data:
        if not isinstance(r, list) or len(r) != cols:
            raise ValueError(f"expected rows of length {cols}")
        flat.extend(rat(x) for x in r)
    return QMatrix(rows, cols, flat)


def ru_to_json(a: RUElement) -> dict:
    return {"level": a.level, "coeffs": [rat_to_str(c) for c in a.coeffs]}


def ru_from_json(obj: Any) -> RUElement:
    return RUElement(int(obj["level"]), [rat(c) for c in obj["coeffs"]])


def module_to_json(x: OutCycModule) -> dict:
    levels = {}
    for n in x.support:
        levels[str(n)] = {
            "dim": x.dim(n),
            "action": {str(l): matrix_to_json(x.action(n, l)) for l in units(n)},
        }
    restrictions = {f"{n}->{m}": matrix_to_json(x.restriction_step(n, m))
                    for n, m in x.support.covering_pairs()}
    return {"support": list(x.support), "levels": levels, "restrictions": restrictions}


def module_from_json(obj: Any) -> OutCycModule:
    support = SupportSet(obj["support"])
    dims = {}
    actions = {}
    for key, lv in obj["levels"].items():
        n = int(key)
        d = int(lv["dim"])
        dims[n] = d
        acts = {}
        for lkey, mat in lv["action"].items():
            acts[int(lkey)] = matrix_from_json(mat, d, d)
        for l in units(n):
            if l not in acts:
                raise ValueError(f"missing action for unit {l} at level {n}")
        actions[n] = acts
    restrictions = {}
    for key, mat in obj.get("restrictions", {}).items():
        a, b = key.split("->")
        n, m = int(a), int(b)
        restrictions[(n, m)] = matrix_from_json(mat, dims[m], dims[n])
    for pair in support.covering_pairs():
        if pair not in restrictions:
            raise ValueError(f"missing restriction for covering pair {pair}")
    return OutCycModule(support, dims, actions, restrictions, name="from-file")


def morphism_to_json(f: ModuleMorphism) -> dict:
    return {
        "source": f.source.name or "?",
        "target": f.target.name or "?",
        "levels": {str(n): matrix_to_json(f.mats[n]) for n in f.source.support},
    }


def results_to_json(dims: list[int], witnesses: list[Any]) -> dict:
    return {"dims": list(dims), "witnesses": witnesses}


def dumps_canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


BUILTIN_NAMES = ("regular", "tauRU", "free:<n>", "semifree:<n>", "atomic:<n>:<d>")


def is_builtin_name(name: str) -> bool:
    if name in ("regular", "tauRU"):
        return True
    head = name.split(":", 1)[0]
    return head in ("free", "semifree", "atomic")


def module_from_name(name: str, support: SupportSet, seed: int = 0) -> OutCycModule:
    """Resolve a built-in constructor name over the given support."""
    if name == "regular":
        return regular_module(support)
    if name == "tauRU":
        return tau_ru_module(support)
    parts = name.split(":")
    if parts[0] == "free" and len(parts) == 2:
        return free_module(int(parts[1]), support)
    if parts[0] == "semifree" and len(parts) == 2:
        return semifree_module(int(parts[1]), support)
    if parts[0] == "atomic" and len(parts) == 3:
        return atomic_module(int(parts[1]), int(parts[2]), support)
    if parts[0] == "random" and len(parts) == 2:
        return random_module(support, seed + int(parts[1]))
    raise ValueError(f"unknown module name {name!r}; built-ins: {', '.join(BUILTIN_NAMES)}")


def load_module(spec: str, support: SupportSet, prefer_file: bool = False,
                seed: int = 0) -> OutCycModule:
    """Built-in names resolve before file paths unless a file is preferred."""
    import os
    if not prefer_file and is_builtin_name(spec):
        return module_from_name(spec, support, seed)
    if os.path.exists(spec):
        with open(spec) as fh:
            x = module_from_json(json.load(fh))
        if x.support != support:
            raise ValueError(f"module file support {list(x.support)} does not match "
                             f"requested support {list(support)}")
        return x
    return module_from_name(spec, support, seed)
