"""Subgraph detection in intersection graphs of boxes, segments and fat
objects, with brute-force oracles and hardness-reduction generators."""

from .biclique import BicliqueCover, cover_boxes, cover_segments, verify_cover
from .boxes import find_Ck_boxes, find_Ck_even_boxes, find_K4_boxrange, find_Kk_boxes
from .fat import FatObject, detect_pattern_fat, fat_intersects
from .geometry import Box, Segment, box_intersects, segment_intersects, to_rational
from .hardness import gen_boxes_from_digraph, gen_orthants_from_hypergraph, gen_random
from .independent import find_I3_boxes, find_I4_boxes, find_I4_boxes_5d, find_I5_rects_2d
from .oracles import brute_detect, explicit_graph, girth
from .rangegraph import KPartiteRangeGraph, from_boxes
from .segments import (
    find_C4_segments,
    find_Ck_even_segments,
    find_Ck_segments,
    find_disjoint_pair,
    girth_segments,
)
from .separator import build_arrangement, weighted_separator
from .sparse import SparseDigraph
from .witness import Witness, validate

__all__ = [
    "BicliqueCover",
    "Box",
    "FatObject",
    "KPartiteRangeGraph",
    "Segment",
    "SparseDigraph",
    "Witness",
    "box_intersects",
    "brute_detect",
    "build_arrangement",
    "cover_boxes",
    "cover_segments",
    "detect_pattern_fat",
    "explicit_graph",
    "fat_intersects",
    "find_C4_segments",
    "find_Ck_boxes",
    "find_Ck_even_boxes",
    "find_Ck_even_segments",
    "find_Ck_segments",
    "find_I3_boxes",
    "find_I4_boxes",
    "find_I4_boxes_5d",
    "find_I5_rects_2d",
    "find_K4_boxrange",
    "find_Kk_boxes",
    "find_disjoint_pair",
    "from_boxes",
    "gen_boxes_from_digraph",
    "gen_orthants_from_hypergraph",
    "gen_random",
    "girth",
    "girth_segments",
    "segment_intersects",
    "to_rational",
    "validate",
    "verify_cover",
    "weighted_separator",
]
