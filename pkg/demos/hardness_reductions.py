# # Hardness reductions as instance generators
#
# Directed triangles become box triangles; 4-hypercliques become
# independent quadruples of orthants. Both directions are checked here on
# small random inputs.

# %%
import random

from geosub import find_Ck_boxes, find_I4_boxes, gen_boxes_from_digraph, gen_orthants_from_hypergraph
from geosub.hardness import directed_triangle, hyperclique

# %% [markdown]
# A digraph on 5 vertices with one directed 3-cycle 1 -> 2 -> 3 -> 1.

# %%
arcs = [(1, 2), (2, 3), (3, 1), (3, 4), (4, 5)]
boxes = gen_boxes_from_digraph(5, arcs)
print(len(boxes), "boxes; directed triangle:", directed_triangle(5, arcs))
print("box triangle:", find_Ck_boxes(boxes, 3))

# %% [markdown]
# Random digraphs: the box triangle exists exactly when the directed one does.

# %%
rng = random.Random(1)
agree = 0
for _ in range(50):
    n = rng.randint(3, 6)
    arcs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v and rng.random() < 0.3]
    want = directed_triangle(n, arcs) is not None
    got = find_Ck_boxes(gen_boxes_from_digraph(n, arcs), 3) is not None
    agree += want == got
print("digraphs in agreement:", agree, "/ 50")

# %% [markdown]
# Hyperedges are triples over four parts, written with `None` in the
# missing part. Part labels run from 1 to N.

# %%
N = 2
quad = (1, 2, 1, 2)
edges = [tuple(None if i == skip else quad[i] for i in range(4)) for skip in range(4)]
orthants = gen_orthants_from_hypergraph(edges, N)
print("hyperclique:", hyperclique(edges, N))
print("independent quadruple:", find_I4_boxes(orthants))
print("after dropping one hyperedge:", find_I4_boxes(gen_orthants_from_hypergraph(edges[1:], N)))
