"""JSON scene files: a dimension, a list of bodies, and optional extras.

Example::

    {
      "dimension": 2,
      "bodies": [
        {"type": "ball", "params": {"center": [0, 0], "radius": 1}},
        {"type": "halfspace", "params": {"normal": [0, 1], "offset": -1}}
      ],
      "delta": 0.1,
      "depletant": {"R": 1, "delta": 0.1, "rho_p": 1, "kT": 1},
      "seed": 42
    }

Unknown keys anywhere are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .bodies import Ball, ConvexPolygon, Ellipsoid, HalfSpace, RoundedPolygon, check_bodies_disjoint
from .errors import InputError
from .potential import AOParameters

_TOP_KEYS = {"dimension", "bodies", "delta", "depletant", "seed"}
_PARAMS = {
    "ball": ({"center", "radius"}, set()),
    "halfspace": ({"normal", "offset"}, set()),
    "ellipsoid": ({"center", "semi_axes"}, {"rotation"}),
    "polygon": ({"vertices"}, set()),
    "rounded_polygon": ({"vertices", "rho"}, set()),
}


@dataclass(eq=False)
class SceneFile:
    dimension: int
    bodies: list
    delta: float | None = None
    depletant: AOParameters | None = None
    seed: int | None = None

    @property
    def balls(self) -> list[Ball]:
        return [b for b in self.bodies if isinstance(b, Ball)]

    @property
    def walls(self) -> list[HalfSpace]:
        return [b for b in self.bodies if isinstance(b, HalfSpace)]


def _check_keys(obj: dict, required: set, optional: set, where: str) -> None:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    unknown = set(obj) - required - optional
    if unknown:
        raise InputError(f"{where}: unknown keys {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise InputError(f"{where}: missing keys {sorted(missing)}")


def body_from_dict(d: dict, where: str = "body"):
    _check_keys(d, {"type", "params"}, set(), where)
    kind = d["type"]
    if kind not in _PARAMS:
        raise InputError(f"{where}: unknown body type {kind!r}")
    req, opt = _PARAMS[kind]
    p = d["params"]
    _check_keys(p, req, opt, f"{where}.params")
    try:
        if kind == "ball":
            return Ball(p["center"], p["radius"])
        if kind == "halfspace":
            return HalfSpace(p["normal"], p["offset"])
        if kind == "ellipsoid":
            return Ellipsoid(p["center"], p["semi_axes"], p.get("rotation"))
        if kind == "polygon":
            return ConvexPolygon(p["vertices"])
        return RoundedPolygon(p["vertices"], p["rho"])
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None
    except (TypeError, ValueError) as exc:
        raise InputError(f"{where}: {exc}") from exc


def body_to_dict(b) -> dict:
    if isinstance(b, Ball):
        return {"type": "ball", "params": {"center": b.center.tolist(), "radius": b.radius}}
    if isinstance(b, HalfSpace):
        return {"type": "halfspace", "params": {"normal": b.normal.tolist(), "offset": b.offset}}
    if isinstance(b, Ellipsoid):
        return {"type": "ellipsoid", "params": {"center": b.center.tolist(),
                                                "semi_axes": b.semi_axes.tolist(),
                                                "rotation": b.rotation.tolist()}}
    if isinstance(b, RoundedPolygon):
        return {"type": "rounded_polygon",
                "params": {"vertices": b.vertices.tolist(), "rho": b.rho}}
    if isinstance(b, ConvexPolygon):
        return {"type": "polygon", "params": {"vertices": b.vertices.tolist()}}
    raise InputError(f"cannot serialize {type(b).__name__}")


def scene_from_dict(d: dict, tol: float | None = None) -> SceneFile:
    _check_keys(d, {"dimension", "bodies"}, _TOP_KEYS - {"dimension", "bodies"}, "scene")
    dim = d["dimension"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 2:
        raise InputError("scene: dimension must be an integer >= 2")
    if not isinstance(d["bodies"], list) or not d["bodies"]:
        raise InputError("scene: bodies must be a nonempty list")
    bodies = [body_from_dict(b, f"bodies[{i}]") for i, b in enumerate(d["bodies"])]
    for i, b in enumerate(bodies):
        if b.dim != dim:
            raise InputError(f"bodies[{i}]: dimension {b.dim} does not match scene dimension {dim}")
    check_bodies_disjoint(bodies, tol)
    delta = d.get("delta")
    if delta is not None:
        delta = float(delta)
        if delta < 0:
            raise InputError("scene: delta must be nonnegative")
    dep = d.get("depletant")
    if dep is not None:
        _check_keys(dep, {"R", "delta"}, {"rho_p", "kT"}, "depletant")
        dep = AOParameters(**{k: float(v) for k, v in dep.items()})
    seed = d.get("seed")
    if seed is not None and (not isinstance(seed, int) or not 0 <= seed < 2**64):
        raise InputError("scene: seed must be an unsigned 64-bit integer")
    return SceneFile(dim, bodies, delta, dep, seed)


def scene_to_dict(scene: SceneFile) -> dict:
    out = {"dimension": scene.dimension, "bodies": [body_to_dict(b) for b in scene.bodies]}
    if scene.delta is not None:
        out["delta"] = scene.delta
    if scene.depletant is not None:
        p = scene.depletant
        out["depletant"] = {"R": p.R, "delta": p.delta, "rho_p": p.rho_p, "kT": p.kT}
    if scene.seed is not None:
        out["seed"] = scene.seed
    return out


def loads(text: str, tol: float | None = None) -> SceneFile:
    def no_constants(name):
        raise InputError(f"non-finite number {name} in scene")

    try:
        data = json.loads(text, parse_constant=no_constants)
    except json.JSONDecodeError as exc:
        raise InputError(f"scene is not valid JSON: {exc}") from exc
    return scene_from_dict(data, tol)


def dumps(scene: SceneFile) -> str:
    # json writes the shortest repr that round-trips each double exactly
    return json.dumps(scene_to_dict(scene), indent=2) + "\n"


def load(path, tol: float | None = None) -> SceneFile:
    return loads(Path(path).read_text(encoding="utf-8"), tol)


def dump(scene: SceneFile, path) -> None:
    Path(path).write_text(dumps(scene), encoding="utf-8", newline="\n")
