"""Oracle-vs-estimator verification suites behind the `verify` command.

Each suite sweeps a seeded corpus (every labeled simple graph on up to 4
vertices, plus seeded random multigraphs with dangling and free edges)
and reports its worst observed error against the guaranteed bound.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .counter import estimate_count
from .estimator import dangling_combine, estimate_marginal, normal_combine
from .generate import random_multigraph
from .graph import EdgeKind, Graph
from .oracle import exact_count, exact_marginal

FLOAT_SLACK = 1e-9
HALF_SLACK = 1e-12
DEPTHS = range(0, 13)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str


def exhaustive_small_graphs(max_vertices: int = 4) -> list[Graph]:
    """Every labeled simple graph on 1..max_vertices vertices."""
    out = []
    for n in range(1, max_vertices + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for bits in range(1 << len(pairs)):
            chosen = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
            out.append(Graph(range(n), list(enumerate(chosen))))
    return out


def verification_corpus(max_edges: int, seed: int, instances: int) -> list[Graph]:
    corpus = exhaustive_small_graphs()
    for i in range(instances):
        corpus.append(random_multigraph(seed * 1_000_003 + i, max_edges=max_edges))
    return [g for g in corpus if g.edge_count <= max_edges]


def _marginal_sweep(corpus):
    """Yield (graph, edge, exact marginal, {depth: estimate}) over covered graphs."""
    for g in corpus:
        if exact_count(g) == 0:
            continue
        for e in g.edge_ids:
            exact = exact_marginal(g, e)
            estimates = {L: estimate_marginal(g, e, L) for L in DEPTHS}
            yield g, e, exact, estimates


def decay_suite(corpus) -> list[SuiteResult]:
    worst = -1.0
    worst_bound = 0.0
    worst_sharp = -1.0
    worst_sharp_bound = 0.0
    ok = True
    ok_sharp = True
    for g, e, exact, estimates in _marginal_sweep(corpus):
        sharp = g.classify(e) is not EdgeKind.NORMAL
        for L, est in estimates.items():
            err = abs(est - float(exact))
            bound = 3.0 * 0.5 ** (L + 1)
            if err > worst:
                worst, worst_bound = err, bound
            if err > bound + FLOAT_SLACK:
                ok = False
            if sharp:
                bound1 = 0.5 ** (L + 1)
                if err > worst_sharp:
                    worst_sharp, worst_sharp_bound = err, bound1
                if err > bound1 + FLOAT_SLACK:
                    ok_sharp = False
    return [
        SuiteResult("decay-bound", ok, f"worst_err={worst:.3e} bound_at_worst={worst_bound:.3e}"),
        SuiteResult(
            "decay-bound-dangling-free",
            ok_sharp,
            f"worst_err={worst_sharp:.3e} bound_at_worst={worst_sharp_bound:.3e}",
        ),
    ]


def half_bound_suite(corpus) -> SuiteResult:
    hi = 0.0
    lo = 0.0
    ok = True
    for g, e, exact, estimates in _marginal_sweep(corpus):
        if exact < 0 or exact * 2 > 1:
            ok = False
        for est in estimates.values():
            hi = max(hi, est)
            lo = min(lo, est)
            if not 0.0 <= est <= 0.5 + HALF_SLACK:
                ok = False
    return SuiteResult("half-bound", ok, f"max_estimate={hi!r} min_estimate={lo!r}")


def fptas_suite(corpus, epsilons) -> list[SuiteResult]:
    results = []
    for eps in epsilons:
        worst = 0.0
        ok = True
        for g in corpus:
            exact = exact_count(g)
            approx = estimate_count(g, eps)
            if exact == 0:
                if approx.value != 0.0:
                    ok = False
                continue
            rel = abs(approx.value / exact - 1.0)
            worst = max(worst, rel)
            if rel > eps:
                ok = False
        results.append(SuiteResult(f"fptas-eps={eps}", ok, f"worst_rel_err={worst:.3e} allowed={eps}"))
    return results


def identity_suite(corpus) -> SuiteResult:
    violations = 0
    checked = 0
    for g in corpus:
        z = exact_count(g)
        # a free edge appended with a fresh largest id doubles the count
        free_id = (max(g.edge_ids) + 1) if g.edge_count else 0
        doubled = Graph(g.vertices, [(e, g.endpoints(e)) for e in g.edge_ids] + [(free_id, ())])
        checked += 1
        if exact_count(doubled) != 2 * z:
            violations += 1
        # split over any normal edge: covers without e plus covers with e
        for e in g.edge_ids:
            if g.classify(e) is not EdgeKind.NORMAL:
                continue
            u, v = g.endpoints(e)
            rest = g.remove_edge(e)
            conditioned = rest.detach_vertex(u).detach_vertex(v)
            checked += 1
            if z != exact_count(rest) + exact_count(conditioned):
                violations += 1
    # forced single-edge cases
    for g in (Graph.from_edges([(0, 1)]), Graph.from_edges([(0,)])):
        checked += 1
        if exact_count(g) != 1 or exact_marginal(g, 0) != 0:
            violations += 1
    return SuiteResult("exact-identities", violations == 0, f"checked={checked} violations={violations}")


def sensitivity_bounds_suite(seed: int, trials: int) -> list[SuiteResult]:
    rng = random.Random(seed)
    worst_margin_f = -1.0
    ok_f = True
    for _ in range(trials):
        d = rng.randint(0, 8)
        xs = [rng.uniform(0.0, 0.5) for _ in range(d)]
        xhat = [rng.uniform(0.0, 0.5) for _ in range(d)]
        eps = max((abs(a - b) for a, b in zip(xs, xhat)), default=0.0)
        bound = min(0.5, d * 0.5 ** (d - 1)) * eps
        diff = abs(dangling_combine(xhat) - dangling_combine(xs))
        worst_margin_f = max(worst_margin_f, diff - bound)
        if diff > bound + FLOAT_SLACK:
            ok_f = False

    worst_margin_g = -1.0
    ok_g = True
    for _ in range(trials):
        d1 = rng.randint(0, 8)
        d2 = rng.randint(0, 8)
        xs = [rng.uniform(0.0, 0.5) for _ in range(d1)]
        xhat = [rng.uniform(0.0, 0.5) for _ in range(d1)]
        ys = [rng.uniform(0.0, 0.5) for _ in range(d2)]
        yhat = [rng.uniform(0.0, 0.5) for _ in range(d2)]
        if d1 == 0:
            # with no edges on the first side, the second and third chains
            # coincide, so their products are coupled
            zs, zhat = ys, yhat
        else:
            zs = [rng.uniform(0.0, 0.5) for _ in range(d2)]
            zhat = [rng.uniform(0.0, 0.5) for _ in range(d2)]
        eps = max(
            (abs(a - b) for a, b in zip(xs + ys + zs, xhat + yhat + zhat)),
            default=0.0,
        )

        def prod(vals):
            p = 1.0
            for t in vals:
                p *= t
            return p

        diff = abs(
            normal_combine(prod(xhat), prod(yhat), prod(zhat))
            - normal_combine(prod(xs), prod(ys), prod(zs))
        )
        bound = 3.0 * eps
        worst_margin_g = max(worst_margin_g, diff - bound)
        if diff > bound + FLOAT_SLACK:
            ok_g = False

    return [
        SuiteResult("dangling-combine-sensitivity", ok_f, f"trials={trials} worst_margin={worst_margin_f:.3e}"),
        SuiteResult("normal-combine-sensitivity", ok_g, f"trials={trials} worst_margin={worst_margin_g:.3e}"),
    ]


def run_verification(
    max_edges: int = 12,
    epsilons: tuple[float, ...] = (0.5, 0.2, 0.1),
    seed: int = 0,
    instances: int = 120,
    trials: int = 20_000,
) -> list[SuiteResult]:
    corpus = verification_corpus(max_edges, seed, instances)
    results = decay_suite(corpus)
    results.append(half_bound_suite(corpus))
    results.extend(fptas_suite(corpus, epsilons))
    results.append(identity_suite(corpus))
    results.extend(sensitivity_bounds_suite(seed + 1, trials))
    return results
