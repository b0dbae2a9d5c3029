"""Named detectors with their brute-force counterparts, witness checks and
benchmark instance ladders, shared by the command line and the tests."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .geometry import Box, Segment
from .oracles import brute_detect, explicit_graph, girth as brute_girth, predicate_for
from .witness import PAIR, Witness, validate

FAT_PATTERNS = {
    "C3": (3, [(0, 1), (1, 2), (2, 0)]),
    "C4": (4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
    "K4": (4, [(a, b) for a in range(4) for b in range(a + 1, 4)]),
    "P4": (4, [(0, 1), (1, 2), (2, 3)]),
}


@dataclass
class Options:
    k: int | None = None
    pattern: str | None = None
    edges: list | None = None
    seed: int = 0
    delta: float = 0.01
    trials: int | None = None
    r: float | None = None
    chromatic: bool | None = None


@dataclass
class Outcome:
    witness: Witness | None
    stats: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)


@dataclass
class Algorithm:
    name: str
    kinds: tuple
    run: Callable  # (objects, Options) -> Outcome
    brute: Callable  # (objects, Options) -> Outcome
    check: Callable  # (objects, Options, Witness) -> (ok, reason)
    ladder: Callable | None = None  # (n, rng) -> objects
    informational: bool = False
    needs_k: bool = False
    fixed_k: int | None = None

    def prepare(self, opts: Options) -> Options:
        """Fill in the pattern size implied by the algorithm."""
        if self.fixed_k is not None:
            opts.k = self.fixed_k
        elif self.name == "fat-pattern":
            opts.k = _fat_pattern(opts)[0]
        elif not self.needs_k:
            opts.k = None
        return opts

    def params(self, out: Outcome, opts: Options) -> dict:
        info = dict(out.stats)
        if out.witness is not None:
            info.update(out.witness.info)
        return {
            "r": info.get("r", opts.r),
            "Delta": info.get("threshold"),
            "trials": info.get("trials", opts.trials),
        }


def _chromatic(objects, opts: Options) -> bool:
    if opts.chromatic is not None:
        return opts.chromatic
    return len({o.color for o in objects}) > 1


def _colors(objects):
    return [o.color for o in objects]


def _need_k(opts: Options, lo: int = 3) -> int:
    if opts.k is None or opts.k < lo:
        raise ValueError(f"this algorithm needs --k >= {lo}")
    return opts.k


def _brute(pattern: str, colored: Callable | bool = False):
    def run(objects, opts):
        k = opts.k
        adj = explicit_graph(objects)
        use = colored(objects, opts) if callable(colored) else colored
        w = brute_detect(adj, pattern, k, colors=_colors(objects) if use else None, cap=len(objects))
        return Outcome(w)

    return run


def _check(distinct: bool | Callable = False, edges: Callable | None = None):
    def run(objects, opts, w):
        dc = distinct(objects, opts) if callable(distinct) else distinct
        pe = edges(opts) if edges else None
        if w.kind != PAIR and opts.k is not None and len(w) != opts.k:
            return False, f"witness has {len(w)} objects, expected {opts.k}"
        return validate(w, objects, predicate_for(objects), pattern_edges=pe, distinct_colors=dc)

    return run


# ---------------------------------------------------------------- runners


def _ck_boxes(objects, opts):
    from .boxes import find_Ck_boxes

    k = _need_k(opts)
    w = find_Ck_boxes(objects, k, chromatic=_chromatic(objects, opts), seed=opts.seed, delta=opts.delta, trials=opts.trials)
    return Outcome(w)


def _ck_even_boxes(objects, opts):
    from .boxes import find_Ck_even_boxes

    k = _need_k(opts, 4)
    st: dict = {}
    w = find_Ck_even_boxes(objects, k, seed=opts.seed, delta=opts.delta, stats=st)
    return Outcome(w, st)


def _kk_boxes(objects, opts):
    from .boxes import find_Kk_boxes

    k = _need_k(opts, 4)
    w = find_Kk_boxes(objects, k, r=opts.r, chromatic=_chromatic(objects, opts), seed=opts.seed, delta=opts.delta, trials=opts.trials)
    return Outcome(w)


def _indep(fn_name: str, takes_r: bool):
    def run(objects, opts):
        from . import independent

        st: dict = {}
        kw = {"r": opts.r} if takes_r else {}
        w = getattr(independent, fn_name)(objects, stats=st, **kw)
        return Outcome(w, st)

    return run


def _ck_segments(objects, opts):
    from .segments import find_Ck_segments

    k = _need_k(opts)
    w = find_Ck_segments(objects, k, chromatic=_chromatic(objects, opts), seed=opts.seed, delta=opts.delta, trials=opts.trials)
    return Outcome(w)


def _ck_even_segments(objects, opts):
    from .segments import find_Ck_even_segments

    k = _need_k(opts, 6)
    st: dict = {}
    w = find_Ck_even_segments(
        objects, k, chromatic=_chromatic(objects, opts), seed=opts.seed, delta=opts.delta, trials=opts.trials, stats=st
    )
    return Outcome(w, st)


def _c4_segments(objects, opts):
    from .segments import find_C4_segments

    st: dict = {}
    return Outcome(find_C4_segments(objects, stats=st), st)


def _girth(objects, opts):
    from .segments import girth_segments

    st: dict = {}
    got = girth_segments(objects, seed=opts.seed, delta=opts.delta, stats=st)
    if got is None:
        return Outcome(None, st, {"girth": None})
    g, w = got
    return Outcome(w, st, {"girth": g})


def _girth_brute(objects, opts):
    got = brute_girth(explicit_graph(objects))
    if got is None:
        return Outcome(None, {}, {"girth": None})
    g, cyc = got
    return Outcome(Witness("cycle", cyc), {}, {"girth": g})


def _split_red_blue(objects):
    colors = sorted({o.color for o in objects})
    if len(colors) > 2:
        raise ValueError("disjoint-pair expects at most two colors")
    red = [i for i, o in enumerate(objects) if o.color == colors[0]] if colors else []
    blue = [i for i, o in enumerate(objects) if len(colors) == 2 and o.color == colors[1]]
    return red, blue


def _disjoint_pair(objects, opts):
    from .segments import find_disjoint_pair

    red, blue = _split_red_blue(objects)
    got = find_disjoint_pair([objects[i] for i in red], [objects[i] for i in blue])
    if got is None:
        return Outcome(None)
    return Outcome(Witness(PAIR, (red[got[0]], blue[got[1]])))


def _disjoint_brute(objects, opts):
    red, blue = _split_red_blue(objects)
    if not red or not blue:
        return Outcome(None)
    w = brute_detect(explicit_graph(objects), "indep", 2, colors=_colors(objects), cap=len(objects))
    return Outcome(None if w is None else Witness(PAIR, w.indices))


def _fat_pattern(opts: Options):
    if opts.edges is not None:
        k = opts.k if opts.k is not None else 1 + max(max(e) for e in opts.edges)
        return k, [tuple(e) for e in opts.edges]
    name = (opts.pattern or "C3").upper()
    if name not in FAT_PATTERNS:
        raise ValueError(f"unknown pattern {opts.pattern!r}; expected one of {sorted(FAT_PATTERNS)}")
    return FAT_PATTERNS[name]


def _fat(objects, opts):
    from .fat import detect_pattern_fat

    k, edges = _fat_pattern(opts)
    st: dict = {}
    return Outcome(detect_pattern_fat(objects, k, edges, stats=st), st)


def _fat_brute(objects, opts):
    k, edges = _fat_pattern(opts)
    w = brute_detect(explicit_graph(objects), "subgraph", k, pattern_edges=edges, cap=len(objects))
    return Outcome(w)


# ---------------------------------------------------------------- ladders


def ladder_i3(n: int, rng: random.Random) -> list:
    """Heavily overlapping squares in two clusters; usually no independent triple."""
    out = []
    for i in range(n):
        cx = 0 if rng.random() < 0.5 else 5
        x, y = Fraction(rng.randrange(cx * 1024, (cx + 6) * 1024), 1024), Fraction(rng.randrange(6 * 1024), 1024)
        out.append(Box((x, y), (x + 8, y + 8), i % 3))
    return out


def ladder_i4(n: int, rng: random.Random) -> list:
    """Short intervals (colors 0, 1) against long ones (colors 2, 3) that cover
    nearly everything; no independent 4-set survives."""
    out = []
    for i in range(n):
        c = i % 4
        if c < 2:
            x = rng.randint(0, 10 * n)
            out.append(Box((x,), (x + rng.randint(0, 5),), c))
        else:
            x = rng.randint(0, n)
            out.append(Box((x,), (x + 10 * n,), c))
    return out


def ladder_c4_segments(n: int, rng: random.Random) -> list:
    """A zigzag chain: each segment crosses its neighbors only."""
    out = []
    for i in range(n):
        x, lo, hi = 4 * i, rng.randint(0, 2), rng.randint(6, 8)
        out.append(Segment((x, lo), (x + 8, hi)) if i % 2 == 0 else Segment((x, hi), (x + 8, lo)))
    return out


def ladder_fat(n: int, rng: random.Random) -> list:
    """A chain of disks, each meeting the next; a triangle-free path."""
    from .fat import FatObject

    return [FatObject.disk(3 * i, (i % 7) * 2, 2) for i in range(n)]


def _random_ladder(kind: str, colors: int, d: int = 2, density: float = 1.0):
    def gen(n, rng):
        from .hardness import gen_random

        return gen_random(kind, {"n": n, "density": density, "colors": colors, "d": d}, seed=rng.randrange(1 << 30))

    return gen


_is_chrom = lambda objects, opts: _chromatic(objects, opts)  # noqa: E731

ALGORITHMS: dict[str, Algorithm] = {
    a.name: a
    for a in [
        Algorithm("ck-boxes", ("boxes", "orthants"), _ck_boxes, _brute("cycle", _is_chrom), _check(_is_chrom),
                  _random_ladder("boxes", 1), informational=True, needs_k=True),
        Algorithm("ck-even-boxes", ("boxes", "orthants"), _ck_even_boxes, _brute("cycle"), _check(),
                  _random_ladder("boxes", 1), informational=True, needs_k=True),
        Algorithm("kk-boxes", ("boxes", "orthants"), _kk_boxes, _brute("clique", _is_chrom), _check(_is_chrom),
                  _random_ladder("boxes", 4), informational=True, needs_k=True),
        Algorithm("i3-boxes", ("boxes", "orthants"), _indep("find_I3_boxes", False), _brute("indep", True),
                  _check(True), ladder_i3, fixed_k=3),
        Algorithm("i4-boxes", ("boxes", "orthants"), _indep("find_I4_boxes", True), _brute("indep", True),
                  _check(True), ladder_i4, fixed_k=4),
        Algorithm("i4-boxes-5d", ("boxes", "orthants"), _indep("find_I4_boxes_5d", False), _brute("indep", True),
                  _check(True), _random_ladder("boxes", 4, d=5), informational=True, fixed_k=4),
        Algorithm("i5-rects", ("boxes",), _indep("find_I5_rects_2d", True), _brute("indep", True),
                  _check(True), _random_ladder("boxes", 5), informational=True, fixed_k=5),
        Algorithm("ck-segments", ("segments",), _ck_segments, _brute("cycle", _is_chrom), _check(_is_chrom),
                  _random_ladder("segments", 1), informational=True, needs_k=True),
        Algorithm("ck-even-segments", ("segments",), _ck_even_segments, _brute("cycle", _is_chrom),
                  _check(_is_chrom), _random_ladder("segments", 1), informational=True, needs_k=True),
        Algorithm("c4-segments", ("segments",), _c4_segments, _brute("cycle"), _check(), ladder_c4_segments,
                  fixed_k=4),
        Algorithm("girth-segments", ("segments",), _girth, _girth_brute, _check(),
                  _random_ladder("segments", 1), informational=True),
        Algorithm("disjoint-pair", ("segments",), _disjoint_pair, _disjoint_brute, _check(True),
                  _random_ladder("segments", 2, density=8.0)),
        Algorithm("fat-pattern", ("fat",), _fat, _fat_brute,
                  _check(False, lambda opts: _fat_pattern(opts)[1]), ladder_fat),
    ]
}

# ladder slope bounds the benchmark must meet; other rows are informational
SLOPE_BOUNDS = {"i3-boxes": 1.25, "c4-segments": 1.25, "i4-boxes": 1.75, "fat-pattern": 1.25}


def get(name: str) -> Algorithm:
    if name not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {name!r}; expected one of {sorted(ALGORITHMS)}")
    return ALGORITHMS[name]


def run(name: str, objects, opts: Options, kind: str | None = None) -> Outcome:
    alg = get(name)
    if kind is not None and kind not in alg.kinds:
        raise ValueError(f"{name} does not accept {kind} instances")
    return alg.run(objects, alg.prepare(opts))


def fit_slope(ns, times) -> float:
    """Least-squares slope of log(time) against log(n)."""
    import numpy as np

    x, y = np.log(np.asarray(ns, float)), np.log(np.maximum(np.asarray(times, float), 1e-9))
    if len(x) < 2:
        return math.nan
    return float(np.polyfit(x, y, 1)[0])
