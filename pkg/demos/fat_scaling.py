# # Fat objects: patterns and a doubling experiment
#
# Disks and squares of comparable size. Any fixed pattern is found in
# near-linear time through shifted quadtrees.

# %%
import random
import time

import numpy as np

from geosub import FatObject, brute_detect, detect_pattern_fat, explicit_graph
from geosub.registry import FAT_PATTERNS, ladder_fat

# %% [markdown]
# Patterns are given by vertex count and edge list. A path on four vertices
# must appear as a subgraph, not necessarily induced.

# %%
chain = [FatObject.disk(3 * i, 0, 2) for i in range(5)]
print("P4 in a chain of disks:", detect_pattern_fat(chain, *FAT_PATTERNS["P4"]))
print("K4 in the same chain:", detect_pattern_fat(chain, *FAT_PATTERNS["K4"]))

# %% [markdown]
# Check against exhaustive search on small random inputs.

# %%
rng = random.Random(5)
bad = 0
for _ in range(20):
    objs = [FatObject.disk(rng.randint(0, 60), rng.randint(0, 60), rng.randint(1, 8)) for _ in range(25)]
    k, edges = FAT_PATTERNS["C4"]
    got = detect_pattern_fat(objs, k, edges) is not None
    want = brute_detect(explicit_graph(objs), "subgraph", k, pattern_edges=edges) is not None
    bad += got != want
print("disagreements:", bad)

# %% [markdown]
# Doubling n and fitting log time against log n. A slope near 1 means
# near-linear growth. Small sizes keep this demo quick; `geosub bench`
# runs the full ladder.

# %%
ns, ts = [256, 512, 1024], []
for n in ns:
    objs = ladder_fat(n, random.Random(n))
    t0 = time.perf_counter()
    detect_pattern_fat(objs, *FAT_PATTERNS["C3"])
    ts.append(time.perf_counter() - t0)
slope = np.polyfit(np.log(ns), np.log(ts), 1)[0]
print("times:", [f"{t:.2f}s" for t in ts], "slope:", round(slope, 2))
