"""Ground-truth edge cover counting by exhaustive subset enumeration.

The value of this module is its obviousness: every subset of edges is
checked against the covering condition directly, so the estimator can be
judged against it.  Counts are exact integers and marginals exact
rationals; no floating point enters here.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .graph import Graph

DEFAULT_EDGE_CAP = 24
_CHUNK = 1 << 20


class OracleSizeError(ValueError):
    """The instance is over the brute-force edge cap."""


class NoEdgeCoverError(ValueError):
    """The graph has no edge cover, so the marginal is undefined."""


def exact_count(g: Graph, cap: int = DEFAULT_EDGE_CAP) -> int:
    """Number of edge subsets that cover every vertex.

    A dangling edge covers its single endpoint; a free edge constrains
    nothing and doubles the count.  Subsets are enumerated by a binary
    counter over edges in ascending id order; bit i of the counter is
    the i-th smallest edge id.
    """
    m = g.edge_count
    if m > cap:
        raise OracleSizeError(f"oracle too large: {m} edges exceeds the cap of {cap}")

    bit = {e: i for i, e in enumerate(g.edge_ids)}
    masks = []
    for v in sorted(g.vertices):
        mask = 0
        for e in g.incident_edges(v):
            mask |= 1 << bit[e]
        if mask == 0:
            return 0  # isolated vertex: no subset can cover it
        masks.append(np.uint64(mask))

    total = 0
    limit = 1 << m
    for lo in range(0, limit, _CHUNK):
        subsets = np.arange(lo, min(lo + _CHUNK, limit), dtype=np.uint64)
        covered = np.ones(subsets.shape, dtype=bool)
        for mask in masks:
            covered &= (subsets & mask) != 0
        total += int(np.count_nonzero(covered))
    return total


def exact_marginal(g: Graph, e: int, cap: int = DEFAULT_EDGE_CAP) -> Fraction:
    """Exact probability that a uniformly random edge cover omits edge e.

    Covers of g that omit e are in bijection with covers of g minus e,
    so the marginal is ``|EC(g - e)| / |EC(g)|``.
    """
    denom = exact_count(g, cap)
    if denom == 0:
        raise NoEdgeCoverError("graph has no edge covers; marginal undefined")
    num = exact_count(g.remove_edge(e), cap)
    return Fraction(num, denom)
