"""JSON encodings for glossae, element sets, configs, complexes, regions.

Every ``*_from_json`` function validates shape and types and raises
SchemaError naming the offending field; ``*_to_json`` functions emit
plain dicts with deterministically sorted id lists.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .core import Description, Glossa
from .imaging import DiscRegion, HexagonRegion, PolygonRegion, RegionSpec
from .nerve import SimplicialComplex
from .setops import DescriptiveResult, UnionConfig


class SchemaError(ValueError):
    """A JSON document does not match the expected schema."""


def _require(obj: dict, field: str, kinds, where: str):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object, got {type(obj).__name__}")
    if field not in obj:
        raise SchemaError(f"{where}: missing field {field!r}")
    val = obj[field]
    if not isinstance(val, kinds):
        raise SchemaError(f"{where}.{field}: unexpected type {type(val).__name__}")
    return val


def _number_list(val, where: str) -> list[float]:
    if not isinstance(val, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in val
    ):
        raise SchemaError(f"{where}: expected a list of numbers")
    return [float(v) for v in val]


def glossa_from_json(obj: dict) -> Glossa:
    dim = _require(obj, "dim", int, "glossa")
    phi_empty = _number_list(_require(obj, "phi_empty", list, "glossa"), "glossa.phi_empty")
    elements = _require(obj, "elements", list, "glossa")
    pairs = []
    for i, el in enumerate(elements):
        where = f"glossa.elements[{i}]"
        eid = _require(el, "id", str, where)
        desc = _number_list(_require(el, "desc", list, where), f"{where}.desc")
        coords = None
        if "coords" in el:
            c = _number_list(el["coords"], f"{where}.coords")
            if len(c) != 2 or not all(v.is_integer() for v in c):
                raise SchemaError(f"{where}.coords: expected an integer pair")
            coords = (int(c[0]), int(c[1]))
        pairs.append((eid, desc, coords))
    try:
        return Glossa(pairs, dim, phi_empty)
    except ValueError as exc:
        raise SchemaError(f"glossa: {exc}") from exc


def glossa_to_json(g: Glossa) -> dict:
    elements = []
    for el, (eid, desc) in zip(g.elements, g.pairs):
        if not isinstance(eid, str):
            raise SchemaError(f"glossa: element id {eid!r} is not a string")
        entry: dict = {"id": eid, "desc": list(desc.values)}
        if el.coords is not None:
            entry["coords"] = list(el.coords)
        elements.append(entry)
    return {"dim": g.dim, "phi_empty": list(g.empty_desc.values), "elements": elements}


def element_set_from_json(obj: dict, g: Optional[Glossa] = None) -> frozenset:
    ids = _require(obj, "ids", list, "element set")
    for i, eid in enumerate(ids):
        if not isinstance(eid, str):
            raise SchemaError(f"element set.ids[{i}]: expected a string id")
    out = frozenset(ids)
    if g is not None:
        try:
            out = g.validate_subset(out)
        except ValueError as exc:
            raise SchemaError(f"element set: {exc}") from exc
    return out


def element_set_to_json(ids: Iterable) -> dict:
    return {"ids": sorted(ids)}


def union_config_from_json(obj: dict) -> UnionConfig:
    spatial = _require(obj, "spatial", str, "config")
    descriptive = _require(obj, "descriptive", (str, dict), "config")
    eta = obj.get("eta", 0.0)
    if isinstance(eta, bool) or not isinstance(eta, (int, float)):
        raise SchemaError("config.eta: expected a number")
    if isinstance(descriptive, str):
        if descriptive != "nondiscriminatory":
            raise SchemaError(
                "config.descriptive: expected \"nondiscriminatory\" or {\"targets\": ...}"
            )
        targets = None
    else:
        raw = _require(descriptive, "targets", list, "config.descriptive")
        targets = tuple(
            Description(tuple(_number_list(t, f"config.descriptive.targets[{i}]")))
            for i, t in enumerate(raw)
        )
    try:
        return UnionConfig(spatial, targets, float(eta))
    except ValueError as exc:
        raise SchemaError(f"config: {exc}") from exc


def union_config_to_json(cfg: UnionConfig) -> dict:
    descriptive = (
        {"targets": [list(t.values) for t in cfg.targets]}
        if cfg.discriminatory
        else "nondiscriminatory"
    )
    return {"spatial": cfg.spatial, "descriptive": descriptive, "eta": cfg.eta}


def result_to_json(res: DescriptiveResult) -> dict:
    return {"ids": sorted(res.elements), "includes_empty_set": res.includes_empty_set}


def collection_from_json(obj: dict, g: Optional[Glossa] = None) -> list[frozenset]:
    members = _require(obj, "members", list, "collection")
    out = []
    for i, m in enumerate(members):
        ids = _require(m, "ids", list, f"collection.members[{i}]")
        for j, eid in enumerate(ids):
            if not isinstance(eid, str):
                raise SchemaError(f"collection.members[{i}].ids[{j}]: expected a string id")
        s = frozenset(ids)
        if g is not None:
            try:
                s = g.validate_subset(s)
            except ValueError as exc:
                raise SchemaError(f"collection.members[{i}]: {exc}") from exc
        out.append(s)
    return out


def complex_from_json(obj: dict) -> SimplicialComplex:
    n = _require(obj, "n", int, "complex")
    faces = _require(obj, "faces", list, "complex")
    parsed = []
    for i, face in enumerate(faces):
        if not isinstance(face, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in face
        ):
            raise SchemaError(f"complex.faces[{i}]: expected a list of integers")
        parsed.append(frozenset(face))
    try:
        return SimplicialComplex(n, frozenset(parsed))
    except ValueError as exc:
        raise SchemaError(f"complex: {exc}") from exc


def complex_to_json(k: SimplicialComplex) -> dict:
    return {"n": k.n, "faces": [list(f) for f in k.sorted_faces()]}


def region_from_json(obj: dict) -> RegionSpec:
    shape = _require(obj, "shape", str, "region")
    if shape == "polygon":
        raw = _require(obj, "vertices", list, "region")
        verts = []
        for i, v in enumerate(raw):
            pt = _number_list(v, f"region.vertices[{i}]")
            if len(pt) != 2:
                raise SchemaError(f"region.vertices[{i}]: expected an [x, y] pair")
            verts.append((pt[0], pt[1]))
        try:
            return PolygonRegion(tuple(verts))
        except ValueError as exc:
            raise SchemaError(f"region: {exc}") from exc
    if shape == "hexagon":
        center = _number_list(_require(obj, "center", list, "region"), "region.center")
        if len(center) != 2:
            raise SchemaError("region.center: expected an [x, y] pair")
        radius = _require(obj, "circumradius", (int, float), "region")
        try:
            return HexagonRegion((center[0], center[1]), float(radius))
        except ValueError as exc:
            raise SchemaError(f"region: {exc}") from exc
    if shape == "disc":
        center = _number_list(_require(obj, "center", list, "region"), "region.center")
        if len(center) != 2:
            raise SchemaError("region.center: expected an [x, y] pair")
        radius = _require(obj, "radius", (int, float), "region")
        try:
            return DiscRegion((center[0], center[1]), float(radius))
        except ValueError as exc:
            raise SchemaError(f"region: {exc}") from exc
    raise SchemaError(f"region.shape: unknown shape {shape!r}")


def region_to_json(spec: RegionSpec) -> dict:
    if isinstance(spec, PolygonRegion):
        return {"shape": "polygon", "vertices": [list(v) for v in spec.vertices]}
    if isinstance(spec, HexagonRegion):
        return {
            "shape": "hexagon",
            "center": list(spec.center),
            "circumradius": spec.circumradius,
        }
    if isinstance(spec, DiscRegion):
        return {"shape": "disc", "center": list(spec.center), "radius": spec.radius}
    raise TypeError(f"not a region spec: {spec!r}")
