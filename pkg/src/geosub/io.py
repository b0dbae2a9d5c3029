"""JSON documents for instances, digraphs and hypergraphs.

Instance layout::

    {"kind": "boxes" | "segments" | "fat" | "orthants", "d": int,
     "objects": [...], "colors": [...]}

Coordinates are written as ``[numerator, denominator]`` pairs; plain ints,
floats and ``"a/b"`` strings are accepted on input. Boxes and orthants are
``{"lo": [...], "hi": [...]}``, segments ``{"p": [x, y], "q": [x, y]}``,
disks ``{"shape": "disk", "center": [x, y], "r": r}`` and polygons
``{"shape": "polygon", "vertices": [[x, y], ...]}``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .geometry import Box, Segment, to_rational

KINDS = ("boxes", "segments", "fat", "orthants")


def rat_out(v) -> list:
    v = Fraction(v)
    return [v.numerator, v.denominator]


def rat_in(v):
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, int) for x in v):
        if v[1] == 0:
            raise ValueError("zero denominator")
        return to_rational(Fraction(v[0], v[1]))
    if isinstance(v, (int, float, str)) and not isinstance(v, bool):
        return to_rational(v)
    raise ValueError(f"not a rational: {v!r}")


def _pt_out(p) -> list:
    return [rat_out(x) for x in p]


def _pt_in(p) -> tuple:
    if not isinstance(p, list):
        raise ValueError(f"not a point: {p!r}")
    return tuple(rat_in(x) for x in p)


def kind_of(objects: Sequence) -> str:
    from .fat import FatObject

    if not objects or isinstance(objects[0], Box):
        return "boxes"
    if isinstance(objects[0], Segment):
        return "segments"
    if isinstance(objects[0], FatObject):
        return "fat"
    raise TypeError(f"cannot serialize {type(objects[0]).__name__}")


def instance_to_json(objects: Sequence, kind: str | None = None) -> dict:
    kind = kind or kind_of(objects)
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    out = []
    for o in objects:
        if kind in ("boxes", "orthants"):
            out.append({"lo": _pt_out(o.lo), "hi": _pt_out(o.hi)})
        elif kind == "segments":
            out.append({"p": _pt_out(o.p), "q": _pt_out(o.q)})
        elif o.shape == "disk":
            cx, cy, r = o.params
            out.append({"shape": "disk", "center": _pt_out((cx, cy)), "r": rat_out(r)})
        else:
            out.append({"shape": "polygon", "vertices": [_pt_out(p) for p in o.params]})
    if kind in ("boxes", "orthants"):
        d = objects[0].d if objects else 0
    else:
        d = 2
    return {"kind": kind, "d": d, "objects": out, "colors": [o.color for o in objects]}


def instance_from_json(doc: dict) -> tuple[str, list]:
    """``(kind, objects)``; raises ValueError on malformed input."""
    from .fat import FatObject

    if not isinstance(doc, dict):
        raise ValueError("instance must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    objs = doc.get("objects")
    if not isinstance(objs, list):
        raise ValueError("objects must be a list")
    colors = doc.get("colors") or [0] * len(objs)
    if len(colors) != len(objs):
        raise ValueError("colors and objects differ in length")
    d = doc.get("d")
    out = []
    try:
        for o, c in zip(objs, colors):
            if kind in ("boxes", "orthants"):
                b = Box(_pt_in(o["lo"]), _pt_in(o["hi"]), int(c))
                if d is not None and b.d != d:
                    raise ValueError(f"box of dimension {b.d} in a d={d} instance")
                out.append(b)
            elif kind == "segments":
                out.append(Segment(_pt_in(o["p"]), _pt_in(o["q"]), int(c)))
            elif o.get("shape") == "disk":
                cx, cy = _pt_in(o["center"])
                out.append(FatObject.disk(cx, cy, rat_in(o["r"]), int(c)))
            elif o.get("shape") == "polygon":
                out.append(FatObject.polygon([_pt_in(p) for p in o["vertices"]], int(c)))
            else:
                raise ValueError(f"unknown fat shape {o.get('shape')!r}")
    except (KeyError, TypeError) as e:
        raise ValueError(f"malformed object: {e}") from None
    return kind, out


def read_json(path) -> dict:
    if str(path) == "-":
        import sys

        return json.load(sys.stdin)
    return json.loads(Path(path).read_text())


def write_json(doc: dict, path=None) -> str:
    text = json.dumps(doc, separators=(",", ":")) + "\n"
    if path is None or str(path) == "-":
        import sys

        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
    return text


def load_instance(path) -> tuple[str, list]:
    return instance_from_json(read_json(path))


def save_instance(objects: Sequence, path=None, kind: str | None = None) -> str:
    return write_json(instance_to_json(objects, kind), path)


def digraph_from_json(doc: dict) -> tuple[int, list]:
    """``{"n": n, "edges": [[u, v], ...]}`` with vertices ``1..n``."""
    try:
        return int(doc["n"]), [(int(u), int(v)) for u, v in doc["edges"]]
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"malformed digraph: {e}") from None


def hypergraph_from_json(doc: dict) -> tuple[int, list]:
    """``{"N": N, "edges": [[x, y, z, null], ...]}``: one index per part
    x, y, z, w in ``1..N`` and ``null`` for the missing part."""
    try:
        return int(doc["N"]), [tuple(None if v is None else int(v) for v in e) for e in doc["edges"]]
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"malformed hypergraph: {e}") from None
