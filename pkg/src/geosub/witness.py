"""Witnesses for detected patterns and their geometric re-validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

CYCLE = "cycle"
CLIQUE = "clique"
INDEPENDENT = "independent-set"
SUBGRAPH = "subgraph"
PAIR = "pair"


@dataclass(frozen=True)
class Witness:
    """Object indices in pattern order. For ``subgraph`` witnesses
    ``indices[i]`` is the object playing pattern vertex ``i``."""

    kind: str
    indices: tuple
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))

    def __len__(self) -> int:
        return len(self.indices)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "indices": list(self.indices)}
        if self.info:
            out["info"] = self.info
        return out

    @classmethod
    def from_json(cls, doc: dict) -> "Witness":
        return cls(doc["kind"], tuple(doc["indices"]), dict(doc.get("info", {})))


def validate(
    w: Witness,
    objects: Sequence,
    meets: Callable,
    *,
    pattern_edges: Sequence | None = None,
    distinct_colors: bool = False,
) -> tuple[bool, str]:
    """Check ``w`` against raw geometry; returns ``(ok, reason)``."""
    idx = w.indices
    n = len(objects)
    if any(not 0 <= i < n for i in idx):
        return False, "index out of range"
    if len(set(idx)) != len(idx):
        return False, "repeated object"
    if distinct_colors and len({objects[i].color for i in idx}) != len(idx):
        return False, "colors not distinct"
    if w.kind == CYCLE:
        if len(idx) < 3:
            return False, "cycle shorter than 3"
        for a, b in zip(idx, idx[1:] + idx[:1]):
            if not meets(objects[a], objects[b]):
                return False, f"objects {a} and {b} do not intersect"
    elif w.kind == CLIQUE:
        for a, b in combinations(idx, 2):
            if not meets(objects[a], objects[b]):
                return False, f"objects {a} and {b} do not intersect"
    elif w.kind in (INDEPENDENT, PAIR):
        for a, b in combinations(idx, 2):
            if meets(objects[a], objects[b]):
                return False, f"objects {a} and {b} intersect"
    elif w.kind == SUBGRAPH:
        if pattern_edges is None:
            return False, "pattern edges required"
        for a, b in pattern_edges:
            if not meets(objects[idx[a]], objects[idx[b]]):
                return False, f"pattern edge ({a}, {b}) missing"
    else:
        return False, f"unknown witness kind {w.kind!r}"
    return True, "ok"
