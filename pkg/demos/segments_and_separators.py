# # Segments: cycles, girth and planar separators
#
# Segment intersection graphs are dense in general, yet the detectors only
# touch a near-linear number of pairs through biclique covers.

# %%
import math
import random

from geosub import (
    Segment,
    build_arrangement,
    find_C4_segments,
    find_disjoint_pair,
    girth_segments,
    weighted_separator,
)

# %% [markdown]
# A hexagonal ring: six segments, each crossing its two neighbours.

# %%
pts = [(math.cos(i * math.pi / 3), math.sin(i * math.pi / 3)) for i in range(6)]
pts = [(round(40 * x), round(40 * y)) for x, y in pts]


def stretch(p, q):
    # a little past both endpoints, so only neighbours cross
    dx, dy = (q[0] - p[0]) // 8, (q[1] - p[1]) // 8
    return Segment((p[0] - dx, p[1] - dy), (q[0] + dx, q[1] + dy))


ring = [stretch(pts[i], pts[(i + 1) % 6]) for i in range(6)]
print("girth:", girth_segments(ring))
print("C4:", find_C4_segments(ring))

# %% [markdown]
# Red and blue segments: a disjoint pair, or None when every red meets
# every blue.

# %%
red = [Segment((0, 0), (10, 10)), Segment((0, 10), (10, 0))]
blue = [Segment((5, -1), (5, 11)), Segment((20, 0), (20, 5))]
print("disjoint pair:", find_disjoint_pair(red, blue))
print("all crossing:", find_disjoint_pair(red, blue[:1]))

# %% [markdown]
# The arrangement of crowded random segments is a planar graph. Its
# separator has O(sqrt N) vertices and splits the weight 2/3 : 1/3.

# %%
rng = random.Random(3)
segs = []
while len(segs) < 80:
    x, y, dx, dy = rng.randint(0, 30), rng.randint(0, 30), rng.randint(-30, 30), rng.randint(-30, 30)
    if dx or dy:
        segs.append(Segment((x, y), (x + dx, y + dy)))
H = build_arrangement(segs)
V1, V2, VB = weighted_separator(H)
print(f"N = {H.N}, |VB| = {len(VB)}, 4 sqrt(N) = {4 * math.sqrt(H.N):.1f}")
