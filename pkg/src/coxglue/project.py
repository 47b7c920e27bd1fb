"""Project files: a single JSON format describing a Coxeter system, a
mirrored stratified complex, and optional group data for gluings.

Infinite Coxeter bonds are encoded as 0.  Group backends:

    {"backend": "trivial"}
    {"backend": "finite", "generators": {"r": [1, 2, 0]},
     "relators": ["r^3"], "center": ["r"]}        # relators/center optional
    {"backend": "finite", "table": {"elements": ["1", "a"],
     "table": [[0, 1], [1, 0]]}}
    {"backend": "free_abelian", "rank": 2, "center": [[1, 0], [0, 1]]}
    {"backend": "formal", "generators": ["a", "b"],
     "relators": ["a b a^-1 b^-1"], "center": ["a"]}

Maps are keyed "deepStratum->shallowStratum" and carry either a "matrix"
(free abelian to free abelian; one column per domain generator) or
"images" from domain generator names to codomain elements (integer
vectors for free abelian targets, words otherwise).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import jsonschema

from .cog import FiniteGroup, FormalPresentation, FreeAbelian, Hom, LocalGroup
from .coxeter import CoxeterMatrix, CoxeterSystem
from .errors import DanglingReference, SchemaError
from .mirrored import MirroredComplex, StratifiedComplex, Stratum
from .presentations import word_from_string

SCHEMA = {
    "type": "object",
    "required": ["version", "coxeter", "space"],
    "properties": {
        "version": {"const": 1},
        "coxeter": {
            "type": "object",
            "required": ["generators", "matrix"],
            "properties": {
                "generators": {"type": "array",
                               "items": {"type": "string"}, "minItems": 1},
                "matrix": {"type": "array",
                           "items": {"type": "array",
                                     "items": {"type": "integer",
                                               "minimum": 0}}},
            },
        },
        "space": {
            "type": "object",
            "required": ["strata", "faces", "mirrors"],
            "properties": {
                "strata": {"type": "array", "items": {
                    "type": "object",
                    "required": ["id", "dim", "codim"],
                    "properties": {"id": {"type": "string"},
                                   "dim": {"type": "integer", "minimum": 0},
                                   "codim": {"type": "integer", "minimum": 0}},
                }},
                "faces": {"type": "array", "items": {
                    "type": "array", "items": {"type": "string"},
                    "minItems": 2, "maxItems": 2}},
                "mirrors": {"type": "object", "additionalProperties": {
                    "type": "array", "items": {"type": "string"}}},
            },
        },
        "groups": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["backend"],
            "properties": {"backend": {
                "enum": ["trivial", "finite", "free_abelian", "formal"]}},
        }},
        "maps": {"type": "object", "additionalProperties": {"type": "object"}},
        "action": {
            "type": "object",
            "required": ["degree", "generators"],
            "properties": {
                "degree": {"type": "integer", "minimum": 1},
                "generators": {"type": "object", "additionalProperties": {
                    "type": "array", "items": {"type": "integer"}}},
            },
        },
        "caps": {"type": "object"},
        "tolerances": {"type": "object"},
    },
}

DEFAULT_CAPS = {"radius": 3, "ball_cap": 100000}
DEFAULT_TOLERANCES = {"sphere": 1e-9}


@dataclass
class ProjectSpec:
    system: CoxeterSystem
    mx: MirroredComplex
    groups: dict[str, LocalGroup] | None
    maps: dict[tuple[str, str], Hom] | None
    action: dict[str, tuple[int, ...]] | None
    caps: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)


def _group_from_json(data: dict, pointer: str) -> LocalGroup:
    backend = data["backend"]
    try:
        if backend == "trivial":
            return FiniteGroup.trivial()
        if backend == "finite":
            if "table" in data:
                t = data["table"]
                return FiniteGroup.from_table(
                    t["elements"], t["table"],
                    generators=data.get("table_generators"),
                    relators=data.get("relators"),
                    center=data.get("center"))
            return FiniteGroup(
                {g: tuple(p) for g, p in data.get("generators", {}).items()},
                relators=data.get("relators"), center=data.get("center"))
        if backend == "free_abelian":
            return FreeAbelian(data["rank"], center=data.get("center"))
        return FormalPresentation(data.get("generators", []),
                                  data.get("relators", []),
                                  center=data.get("center"))
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"invalid group: {exc}", pointer) from exc


def _element_from_json(group: LocalGroup, data, pointer: str):
    try:
        if group.kind == "free_abelian":
            v = tuple(int(x) for x in data)
            if len(v) != group.rank:
                raise ValueError(f"vector length {len(v)} != rank {group.rank}")
            return v
        word = word_from_string(data)
        return group.evaluate(word)
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"invalid element: {exc}", pointer) from exc


def _hom_from_json(domain: LocalGroup, codomain: LocalGroup, data: dict,
                   pointer: str) -> Hom:
    try:
        if "matrix" in data:
            return Hom.from_matrix(domain, codomain, data["matrix"])
        images = {}
        for gname, enc in data.get("images", {}).items():
            images[gname] = _element_from_json(codomain, enc,
                                               f"{pointer}/images/{gname}")
        return Hom(domain, codomain, images)
    except SchemaError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"invalid map: {exc}", pointer) from exc


def load(path: str) -> ProjectSpec:
    """Load and validate a project file; referential checks run eagerly."""
    with open(path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
    return from_dict(raw)


def from_dict(raw: dict) -> ProjectSpec:
    try:
        jsonschema.validate(raw, SCHEMA)
    except jsonschema.ValidationError as exc:
        pointer = "/" + "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(exc.message, pointer) from exc

    cox = raw["coxeter"]
    names = cox["generators"]
    n = len(names)
    m = cox["matrix"]
    if len(m) != n or any(len(row) != n for row in m):
        raise SchemaError(f"matrix must be {n}x{n}", "/coxeter/matrix")
    try:
        matrix = CoxeterMatrix(tuple(tuple(row) for row in m))
        system = CoxeterSystem(matrix, names=names)
    except ValueError as exc:
        raise SchemaError(str(exc), "/coxeter/matrix") from exc

    sp = raw["space"]
    ids = {s["id"] for s in sp["strata"]}
    for k, pair in enumerate(sp["faces"]):
        for sid in pair:
            if sid not in ids:
                raise DanglingReference(
                    f"face pair references unknown stratum {sid!r} "
                    f"(/space/faces/{k})")
    for gen, strata in sp["mirrors"].items():
        if gen not in names:
            raise DanglingReference(
                f"mirror generator {gen!r} is not a Coxeter generator")
        for sid in strata:
            if sid not in ids:
                raise DanglingReference(
                    f"mirror {gen!r} references unknown stratum {sid!r}")
    try:
        complex = StratifiedComplex(
            [Stratum(s["id"], s["dim"], s["codim"]) for s in sp["strata"]],
            [tuple(p) for p in sp["faces"]])
        mx = MirroredComplex(complex, {g: set(v)
                                       for g, v in sp["mirrors"].items()})
    except ValueError as exc:
        raise SchemaError(str(exc), "/space") from exc

    groups = None
    if "groups" in raw:
        groups = {}
        for sid, gdata in raw["groups"].items():
            if sid not in ids:
                raise DanglingReference(
                    f"group assigned to unknown stratum {sid!r}")
            groups[sid] = _group_from_json(gdata, f"/groups/{sid}")
        missing = ids - set(groups)
        if missing:
            raise DanglingReference(
                f"group assignment misses strata: {sorted(missing)}")

    maps = None
    if "maps" in raw:
        if groups is None:
            raise SchemaError("maps require a group assignment", "/maps")
        maps = {}
        for key, mdata in raw["maps"].items():
            if "->" not in key:
                raise SchemaError("map keys look like 'deep->shallow'",
                                  f"/maps/{key}")
            src, dst = key.split("->", 1)
            for sid in (src, dst):
                if sid not in ids:
                    raise DanglingReference(
                        f"map {key!r} references unknown stratum {sid!r}")
            if not mx.complex.leq(src, dst):
                raise SchemaError(
                    f"map {key!r}: {src!r} is not a face of {dst!r}",
                    f"/maps/{key}")
            maps[(src, dst)] = _hom_from_json(groups[src], groups[dst],
                                              mdata, f"/maps/{key}")

    action = None
    if "action" in raw:
        deg = raw["action"]["degree"]
        action = {}
        for gen, perm in raw["action"]["generators"].items():
            if gen not in names:
                raise DanglingReference(
                    f"action generator {gen!r} is not a Coxeter generator")
            if sorted(perm) != list(range(deg)):
                raise SchemaError(
                    f"action of {gen!r} is not a permutation of degree {deg}",
                    f"/action/generators/{gen}")
            action[gen] = tuple(perm)
        missing = set(names) - set(action)
        if missing:
            raise SchemaError(f"action misses generators: {sorted(missing)}",
                              "/action/generators")

    caps = {**DEFAULT_CAPS, **raw.get("caps", {})}
    tolerances = {**DEFAULT_TOLERANCES, **raw.get("tolerances", {})}
    return ProjectSpec(system, mx, groups, maps, action, caps, tolerances, raw)
