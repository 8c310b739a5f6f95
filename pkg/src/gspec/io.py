"""Group and G-group description files (JSON), plus the loader front end."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional

import numpy as np

from .errors import ValidationError
from . import groups as gr
from . import ggroups as gx
from .groups import FiniteGroup
from .ggroups import GGroup
from . import corpus as cp


def build_group(desc: dict[str, Any]) -> FiniteGroup:
    """Construct a validated group from a cayley-v1 or perm-v1 description."""
    fmt = desc.get("format")
    name = desc.get("name", "G")
    if fmt == "cayley-v1":
        table = desc.get("table")
        order = desc.get("order")
        if not isinstance(table, list):
            raise ValidationError("cayley-v1 requires a 'table' list")
        arr = np.asarray(table, dtype=np.int64)
        if order is not None and arr.shape[0] != order:
            raise ValidationError("declared order does not match the table")
        return FiniteGroup(arr, name)
    if fmt == "perm-v1":
        gens = desc.get("generators")
        degree = desc.get("degree")
        if not isinstance(gens, list) or not isinstance(degree, int):
            raise ValidationError("perm-v1 requires 'generators' and 'degree'")
        return FiniteGroup.from_permutations(gens, degree, name)
    raise ValidationError(f"unknown group format {fmt!r}")


def _resolve_ambient(spec: Any, base_dir: Path) -> FiniteGroup:
    if isinstance(spec, dict):
        return build_group(spec)
    if isinstance(spec, str):
        if spec.startswith("builtin:"):
            return cp.base_group(spec.split(":", 1)[1])
        path = base_dir / spec
        with open(path, encoding="utf-8") as f:
            return build_group(json.load(f))
    raise ValidationError("ggroup-v1 'ambient' must be a description, path, or builtin name")


def load_ggroup_desc(desc: dict[str, Any], base_dir: Path) -> GGroup:
    if desc.get("format") != "ggroup-v1":
        raise ValidationError(f"unknown G-group format {desc.get('format')!r}")
    ambient = _resolve_ambient(desc.get("ambient"), base_dir)
    gspec_ = desc.get("g")
    if not isinstance(gspec_, dict) or "generators" not in gspec_:
        raise ValidationError("ggroup-v1 requires g.generators")
    gens = [int(x) for x in gspec_["generators"]]
    for x in gens:
        if not 0 <= x < ambient.order:
            raise ValidationError(f"generator index {x} out of range")
    sub = gr.subgroup_generated(ambient, gens)
    return gx.make_ggroup(ambient, sub, desc.get("name", f"{ambient.name}/gen"))


def load(source: str) -> GGroup:
    """Load a G-group from 'builtin:NAME' or a JSON description file.

    Plain group files are wrapped as the G-group of the group over itself.
    """
    if source.startswith("builtin:"):
        return cp.corpus_entry(source.split(":", 1)[1]).ggroup
    path = Path(source)
    try:
        with open(path, encoding="utf-8") as f:
            desc = json.load(f)
    except FileNotFoundError:
        raise ValidationError(f"no such file: {source}")
    except json.JSONDecodeError as e:
        raise ValidationError(f"malformed JSON in {source}: {e}")
    fmt = desc.get("format")
    if fmt == "ggroup-v1":
        return load_ggroup_desc(desc, path.parent)
    if fmt in {"cayley-v1", "perm-v1"}:
        h = build_group(desc)
        return gx.make_ggroup(h, gr.full_set(h), f"{h.name}/{h.name}")
    raise ValidationError(f"unknown format {fmt!r} in {source}")
