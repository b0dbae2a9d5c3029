# # Cycles and cliques among boxes
#
# A quick tour: random boxes, the detectors, and the brute-force oracle on
# the explicit intersection graph. Run with `python3 demos/box_cycles.py`.

# %%
from geosub import (
    Box,
    brute_detect,
    explicit_graph,
    find_Ck_boxes,
    find_Ck_even_boxes,
    find_Kk_boxes,
    gen_random,
    validate,
)
from geosub.oracles import predicate_for

# %% [markdown]
# Four rectangles placed as a ring: each overlaps its two neighbours only.

# %%
ring = [
    Box((0, 0), (4, 1)),
    Box((3, 0), (4, 4)),
    Box((0, 3), (4, 4)),
    Box((0, 0), (1, 4)),
]
w = find_Ck_boxes(ring, 4)
print("C4 in the ring:", w)
print("triangle in the ring:", find_Ck_boxes(ring, 3))

# %% [markdown]
# Every witness can be checked against raw geometry, independently of the
# algorithm that found it.

# %%
print("re-validated:", validate(w, ring, predicate_for(ring)))

# %% [markdown]
# Random instances: compare each detector with exhaustive search. The two
# answers must agree on existence; the witnesses may differ.

# %%
disagree = 0
for seed in range(20):
    boxes = gen_random("boxes", {"n": 30, "density": 1.5, "d": 2}, seed=seed)
    adj = explicit_graph(boxes)
    for k in (4, 6):
        fast = find_Ck_even_boxes(boxes, k) is not None
        slow = brute_detect(adj, "cycle", k) is not None
        disagree += fast != slow
    fast = find_Kk_boxes(boxes, 4) is not None
    disagree += fast != (brute_detect(adj, "clique", 4) is not None)
print("disagreements over 20 instances:", disagree)
