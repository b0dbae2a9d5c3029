"""Seeded random corpora and cached detector-versus-brute-force sweeps.

Each sweep runs one detector on 50 seeded instances (100 for the
independent-set detectors), compares presence with the exhaustive oracle
and re-validates every witness. Results are cached per
session so module tests and the acceptance suite share the work.
"""

from __future__ import annotations

import functools
import random
import time
from dataclasses import dataclass, field

from geosub.boxes import find_Ck_boxes, find_Ck_even_boxes, find_K4_boxrange, find_Kk_boxes
from geosub.fat import FatObject, detect_pattern_fat
from geosub.geometry import Box, Segment
from geosub.independent import find_I3_boxes, find_I4_boxes, find_I4_boxes_5d, find_I5_rects_2d
from geosub.oracles import brute_detect, explicit_graph, girth, predicate_for
from geosub.rangegraph import from_boxes
from geosub.registry import FAT_PATTERNS
from geosub.segments import (
    find_C4_segments,
    find_Ck_even_segments,
    find_Ck_segments,
    find_disjoint_pair,
    girth_segments,
)
from geosub.witness import PAIR, Witness, validate

SEEDS = range(1, 51)
INDEP_SEEDS = range(1, 101)


def rand_boxes(rng, n, d, L, W, colors=1, wmin=0):
    out = []
    for _ in range(n):
        lo = [rng.randint(0, L) for _ in range(d)]
        out.append(Box(tuple(lo), tuple(x + rng.randint(wmin, W) for x in lo), rng.randrange(colors)))
    return out


def rand_segments(rng, n, L, span, colors=1):
    out = []
    while len(out) < n:
        x, y = rng.randint(0, L), rng.randint(0, L)
        dx, dy = rng.randint(-span, span), rng.randint(-span, span)
        if (dx, dy) != (0, 0):
            out.append(Segment((x, y), (x + dx, y + dy), rng.randrange(colors)))
    return out


def rand_fat(rng, n, L=100, rmax=8):
    out = []
    for _ in range(n):
        if rng.random() < 0.7:
            out.append(FatObject.disk(rng.randint(0, L), rng.randint(0, L), rng.randint(1, rmax)))
        else:
            out.append(FatObject.square(rng.randint(0, L), rng.randint(0, L), rng.randint(1, 2 * rmax)))
    return out


@dataclass
class Sweep:
    name: str
    instances: int = 0
    positives: int = 0
    disagreements: list = field(default_factory=list)
    invalid: list = field(default_factory=list)
    witnesses: int = 0
    seconds: float = 0.0
    max_n: int = 0

    @property
    def clean(self) -> bool:
        return not self.disagreements and not self.invalid

    def line(self) -> str:
        return (
            f"{self.name}: {self.instances} instances (n <= {self.max_n}), {self.positives} positive, "
            f"{len(self.disagreements)} disagreements, {len(self.invalid)} invalid of {self.witnesses} witnesses, "
            f"{self.seconds:.1f}s"
        )


def _record(sw: Sweep, seed, objects, got: Witness | None, ref: Witness | None, *, distinct=False, edges=None, length=None):
    sw.instances += 1
    sw.max_n = max(sw.max_n, len(objects))
    sw.positives += ref is not None
    if (got is None) != (ref is None):
        sw.disagreements.append((seed, got, ref))
    if got is not None:
        sw.witnesses += 1
        ok, why = validate(got, objects, predicate_for(objects), pattern_edges=edges, distinct_colors=distinct)
        if ok and length is not None and len(got) != length:
            ok, why = False, f"length {len(got)} != {length}"
        if not ok:
            sw.invalid.append((seed, got, why))


def _colors(objs):
    return [o.color for o in objs]


# ---------------------------------------------------------------- boxes


def _ck_boxes(sw, k):
    for seed in SEEDS:
        rng = random.Random(1000 * k + seed)
        bs = rand_boxes(rng, 40, 3, 40, {3: 9, 4: 13, 5: 14}[k])
        ref = brute_detect(explicit_graph(bs), "cycle", k)
        _record(sw, seed, bs, find_Ck_boxes(bs, k, seed=seed), ref, length=k)


def _ck_boxes_chromatic(sw, k):
    for seed in SEEDS:
        rng = random.Random(1100 * k + seed)
        bs = rand_boxes(rng, 40, 3, {3: 30, 5: 20}[k], {3: 9, 5: 10}[k], colors=k)
        ref = brute_detect(explicit_graph(bs), "cycle", k, colors=_colors(bs))
        _record(sw, seed, bs, find_Ck_boxes(bs, k, chromatic=True), ref, distinct=True, length=k)


def _ck_even_boxes(sw, k):
    n = 60 if k == 4 else 40
    for seed in SEEDS:
        rng = random.Random(1200 * k + seed)
        bs = rand_boxes(rng, n, 2, 100, {4: 11, 6: 20}[k])
        ref = brute_detect(explicit_graph(bs), "cycle", k)
        _record(sw, seed, bs, find_Ck_even_boxes(bs, k, seed=seed), ref, length=k)


def _k4_boxrange(sw):
    for seed in SEEDS:
        rng = random.Random(1300 + seed)
        bs = rand_boxes(rng, 32, 2, 20, 8, colors=4)
        ref = brute_detect(explicit_graph(bs), "clique", 4, colors=_colors(bs))
        G = from_boxes(bs, 4)
        got = None
        if all(G.size(a) for a in range(4)):
            loc = find_K4_boxrange(G)
            if loc is not None:
                got = Witness("clique", tuple(G.labels[a][loc[a]] for a in range(4)))
        _record(sw, seed, bs, got, ref, distinct=True, length=4)


def _k8_boxes(sw):
    for seed in SEEDS:
        rng = random.Random(1400 + seed)
        bs = rand_boxes(rng, 16, 1, 2, 12, colors=8)
        ref = brute_detect(explicit_graph(bs), "clique", 8, colors=_colors(bs))
        _record(sw, seed, bs, find_Kk_boxes(bs, 8, chromatic=True), ref, distinct=True, length=8)


def _indep(sw, fn, k, n, d, L, W, wmins):
    # the minimum side length straddles the threshold where independent sets vanish
    for seed in INDEP_SEEDS:
        rng = random.Random(1500 + 10 * k + d + 100 * seed)
        bs = rand_boxes(rng, n, d, L, W, colors=k, wmin=rng.choice(wmins))
        ref = brute_detect(explicit_graph(bs), "indep", k, colors=_colors(bs))
        _record(sw, seed, bs, fn(bs), ref, distinct=True, length=k)


# ---------------------------------------------------------------- segments


def _ck_segments(sw, k):
    for seed in SEEDS:
        rng = random.Random(2000 + 10 * k + 100 * seed)
        S = rand_segments(rng, 40, 100, {3: 15, 4: 25, 5: 35}[k])
        ref = brute_detect(explicit_graph(S), "cycle", k)
        _record(sw, seed, S, find_Ck_segments(S, k, seed=seed), ref, length=k)


def _ck_segments_chromatic(sw, k):
    for seed in SEEDS:
        rng = random.Random(2100 + 10 * k + 100 * seed)
        S = rand_segments(rng, 40, 100, {3: 30, 4: 45, 5: 60}[k], colors=k)
        ref = brute_detect(explicit_graph(S), "cycle", k, colors=_colors(S))
        _record(sw, seed, S, find_Ck_segments(S, k, chromatic=True), ref, distinct=True, length=k)


def _c4_segments(sw):
    for seed in SEEDS:
        rng = random.Random(2200 + seed)
        S = rand_segments(rng, 60, 100, rng.choice([16, 20, 24]))
        ref = brute_detect(explicit_graph(S), "cycle", 4)
        _record(sw, seed, S, find_C4_segments(S), ref, length=4)


def _c6_segments(sw):
    for seed in SEEDS:
        rng = random.Random(2300 + seed)
        S = rand_segments(rng, 30, 100, rng.choice([40, 55, 70]))
        ref = brute_detect(explicit_graph(S), "cycle", 6)
        _record(sw, seed, S, find_Ck_even_segments(S, 6, seed=seed), ref, length=6)


def _c6_segments_separator(sw):
    # a small base case forces the separator recursion
    for seed in SEEDS:
        rng = random.Random(2400 + seed)
        S = rand_segments(rng, 30, 100, rng.choice([70, 90, 110]), colors=6)
        ref = brute_detect(explicit_graph(S), "cycle", 6, colors=_colors(S))
        got = find_Ck_even_segments(S, 6, chromatic=True, base=6)
        _record(sw, seed, S, got, ref, distinct=True, length=6)


def _girth(sw):
    for seed in SEEDS:
        rng = random.Random(2500 + seed)
        S = rand_segments(rng, 50, 100, rng.choice([10, 14, 18]))
        ref = girth(explicit_graph(S))
        got = girth_segments(S, seed=seed, base=rng.choice([10, 64]))
        sw.instances += 1
        sw.max_n = max(sw.max_n, len(S))
        sw.positives += ref is not None
        if (got is None) != (ref is None) or (got is not None and got[0] != ref[0]):
            sw.disagreements.append((seed, got, ref))
        if got is not None:
            sw.witnesses += 1
            ok, why = validate(got[1], S, predicate_for(S))
            if ok and len(got[1]) != got[0]:
                ok, why = False, "witness length differs from girth"
            if not ok:
                sw.invalid.append((seed, got, why))


def _disjoint(sw):
    for seed in SEEDS:
        rng = random.Random(2600 + seed)
        n = rng.randint(2, 40)
        if rng.random() < 0.5:
            S = rand_segments(rng, n, 20, 20, colors=2)
        else:
            # long horizontal reds against long vertical blues: mostly crossing
            S = []
            for i in range(n):
                a, b = rng.randint(0, 10), rng.randint(0, 3)
                S.append(Segment((-b, a), (20 + b, a), 0) if i % 2 == 0 else Segment((a, -b), (a, 20 + b), 1))
        red = [i for i, s in enumerate(S) if s.color == 0]
        blue = [i for i, s in enumerate(S) if s.color == 1]
        got = find_disjoint_pair([S[i] for i in red], [S[i] for i in blue])
        got = None if got is None else Witness(PAIR, (red[got[0]], blue[got[1]]))
        ref = brute_detect(explicit_graph(S), "indep", 2, colors=_colors(S)) if red and blue else None
        _record(sw, seed, S, got, ref, distinct=True)


# ---------------------------------------------------------------- fat


def _fat(sw, pattern):
    k, edges = FAT_PATTERNS[pattern]
    for seed in SEEDS:
        rng = random.Random(seed)
        objs = rand_fat(rng, 40, rmax=rng.choice([5, 8, 11]))
        ref = brute_detect(explicit_graph(objs), "subgraph", k, pattern_edges=edges)
        _record(sw, seed, objs, detect_pattern_fat(objs, k, edges), ref, edges=edges, length=k)


SWEEPS = {
    "C3 boxes (color coding)": lambda sw: _ck_boxes(sw, 3),
    "C4 boxes (color coding)": lambda sw: _ck_boxes(sw, 4),
    "C5 boxes (color coding)": lambda sw: _ck_boxes(sw, 5),
    "C3 boxes (chromatic)": lambda sw: _ck_boxes_chromatic(sw, 3),
    "C5 boxes (chromatic)": lambda sw: _ck_boxes_chromatic(sw, 5),
    "even C4 boxes": lambda sw: _ck_even_boxes(sw, 4),
    "even C6 boxes": lambda sw: _ck_even_boxes(sw, 6),
    "K4 boxes": _k4_boxrange,
    "K8 boxes": _k8_boxes,
    "I3 boxes": lambda sw: _indep(sw, find_I3_boxes, 3, 50, 3, 20, 30, [11, 12, 13, 14]),
    "I4 boxes": lambda sw: _indep(sw, find_I4_boxes, 4, 40, 2, 20, 24, [4, 6, 8, 10]),
    "I4 boxes 5-D": lambda sw: _indep(sw, find_I4_boxes_5d, 4, 40, 5, 20, 30, [10, 11, 12, 13, 14]),
    "I5 rectangles": lambda sw: _indep(sw, find_I5_rects_2d, 5, 35, 2, 20, 20, [0, 2, 4, 6]),
    "C3 segments": lambda sw: _ck_segments(sw, 3),
    "C4 segments (color coding)": lambda sw: _ck_segments(sw, 4),
    "C5 segments": lambda sw: _ck_segments(sw, 5),
    "C3 segments (chromatic)": lambda sw: _ck_segments_chromatic(sw, 3),
    "C5 segments (chromatic)": lambda sw: _ck_segments_chromatic(sw, 5),
    "C4 segments": _c4_segments,
    "C6 segments": _c6_segments,
    "C6 segments (separator recursion)": _c6_segments_separator,
    "girth segments": _girth,
    "disjoint pair": _disjoint,
    "fat C3": lambda sw: _fat(sw, "C3"),
    "fat C4": lambda sw: _fat(sw, "C4"),
    "fat K4": lambda sw: _fat(sw, "K4"),
    "fat P4": lambda sw: _fat(sw, "P4"),
}


@functools.lru_cache(maxsize=None)
def sweep(name: str) -> Sweep:
    sw = Sweep(name)
    t0 = time.perf_counter()
    SWEEPS[name](sw)
    sw.seconds = time.perf_counter() - t0
    return sw
