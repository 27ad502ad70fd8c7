"""Approximate edge-cover counting via a telescoping product of marginals.

Walking the edges in ascending id order, each one contributes a factor
(1 - p), where p estimates its absence marginal in the graph left after
conditioning all earlier edges into the cover (drop the edge, detach
whichever of its endpoints still exist); the count is the reciprocal of
the product.  A depth budget derived from the edge count and the
requested accuracy makes the result a (1 +/- eps) approximation of the
true count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .estimator import TraceFn, estimate_marginal
from .graph import Graph


def _check_epsilon(eps: float) -> None:
    if not 0.0 < eps < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {eps!r}")


def depth_for(m: int, eps: float) -> int:
    """Depth budget ceil(log2(m) + log2(6/eps)) for an m-edge instance.

    The analysis allows a real-valued budget; rounding up only tightens
    the guarantee.
    """
    if m < 1:
        raise ValueError(f"edge count must be positive, got {m}")
    _check_epsilon(eps)
    return math.ceil(math.log2(m) + math.log2(6.0 / eps))


def elimination_chain(g: Graph) -> list[tuple[Graph, int]]:
    """(working graph, edge) pairs in ascending edge-id order.

    The first working graph is g itself; each later one drops the
    previous edge and detaches its remaining endpoints (one for a
    dangling edge, none for a free one).
    """
    out = []
    cur = g
    for e in g.edge_ids:
        out.append((cur, e))
        ends = cur.endpoints(e)
        cur = cur.remove_edge(e)
        for v in ends:
            cur = cur.detach_vertex(v)
    return out


def worker_count() -> int:
    """Parallelism cap from EC_THREADS; 0 or unset selects auto.

    Auto is single-threaded: the recursion is pure-Python CPU work, so
    extra threads add no speed under the GIL.  Results are identical for
    any setting because marginals are pure and combined in a fixed order.
    """
    raw = os.environ.get("EC_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"EC_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError(f"EC_THREADS must be nonnegative, got {n}")
    return n if n > 0 else 1


@dataclass(frozen=True)
class ApproxCount:
    """Approximate count with its natural log and the per-edge estimates."""

    value: float
    log_value: float
    depth_used: int
    marginals: tuple[tuple[int, float], ...]


def estimate_count(g: Graph, eps: float, on_node: Optional[TraceFn] = None) -> ApproxCount:
    """Estimate the number of edge covers to relative accuracy eps.

    A graph with an isolated vertex has no covers and yields 0; the empty
    graph has exactly the empty cover and yields 1.
    """
    _check_epsilon(eps)
    if g.has_isolated_vertex():
        return ApproxCount(0.0, -math.inf, 0, ())
    m = g.edge_count
    if m == 0:
        return ApproxCount(1.0, 0.0, 0, ())

    depth = depth_for(m, eps)
    chain = elimination_chain(g)
    workers = worker_count()
    if workers > 1 and on_node is None:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            ps = list(pool.map(lambda ge: estimate_marginal(ge[0], ge[1], depth), chain))
    else:
        ps = [estimate_marginal(gi, ei, depth, on_node) for gi, ei in chain]

    # log-space sum is the robust record; the direct product (exact while it
    # stays normal, every factor being >= 1/2) preserves identities such as
    # free-edge doubling bit-for-bit.
    log_value = -math.fsum(math.log1p(-p) for p in ps)
    prod = 1.0
    for p in ps:
        prod *= 1.0 - p
    value = 1.0 / prod if prod > 0.0 else math.exp(log_value)
    return ApproxCount(value, log_value, depth, tuple(zip((e for _, e in chain), ps)))
