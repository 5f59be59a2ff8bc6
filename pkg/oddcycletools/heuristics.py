import logging
import warnings
from dataclasses import dataclass
from concurrent.futures import ThreadPoolExecutor
import numpy as np
from ._constants import (DEFAULT_RESTARTS, DEFAULT_BIPARTITE_DENSITY,
                         MAX_BEST_GRAPHS)
from .graph_utils import Graph, build_graph, cycle_blowup, balanced_blobs
from .gen_utils import ConstraintClass
from .api import (SearchReport, HILLCLIMB, cycle_counter, canonical_graph6,
                  check_theorem_bound)

logger = logging.getLogger(__name__)


@dataclass
class _Branch:
    best_count: int
    best_graphs: dict[Graph, None]
    graphs_examined: int


def branch_rng(seed: int, branch: int, phase: int = 0) -> np.random.Generator:
    """Independent stream fixed by (seed, branch, phase); phase 0 builds
    the seed graph of a restart and phase 1 drives its climb."""
    return np.random.default_rng(np.random.SeedSequence([seed, branch, phase]))


def random_bipartite_graph(n: int, rng: np.random.Generator, *,
                           density: float = DEFAULT_BIPARTITE_DENSITY) -> Graph:
    """Random sides of sizes ceil(n/2) and floor(n/2); each cross pair is
    an edge with probability density."""
    order = rng.permutation(n)
    left, right = order[:(n + 1) // 2], order[(n + 1) // 2:]
    coins = rng.random((len(left), len(right))) < density
    edges = [(int(u), int(v)) for i, u in enumerate(left)
             for j, v in enumerate(right) if coins[i, j]]
    return build_graph(n, edges)


def seed_graphs(n: int, k: int, constraint: ConstraintClass, *,
                seed: int, restarts: int) -> list[Graph]:
    """Starting graph of each restart: the balanced blow-up of C_k for
    the first when n >= k and the class admits it, random bipartite
    graphs otherwise.  A seed outside the class is replaced by the empty
    graph."""
    seeds = []
    for branch in range(restarts):
        if branch == 0 and n >= k:
            g = cycle_blowup(k, balanced_blobs(n, k))
        else:
            g = random_bipartite_graph(n, branch_rng(seed, branch))
        if not constraint.admits(g):
            g = Graph(n, [0] * n)
        seeds.append(g)
    return seeds


def _climb(start: Graph, k: int, constraint: ConstraintClass,
           rng: np.random.Generator, budget: int) -> _Branch:
    counter = cycle_counter(constraint)
    current = start
    current_count = counter(current, k)
    best_count, best_graphs = current_count, {current: None}
    examined = 1
    if current.n < 2:
        return _Branch(best_count, best_graphs, examined)
    for _ in range(budget):
        u, v = (int(x) for x in rng.choice(current.n, size=2, replace=False))
        candidate = current.with_edge_toggled(u, v)
        # every structure the toggle creates contains u:
        if not constraint.admits_at(candidate, u):
            continue
        count = counter(candidate, k)
        examined += 1
        if count < current_count:
            continue
        current, current_count = candidate, count
        if count > best_count:
            best_count, best_graphs = count, {candidate: None}
        elif count == best_count and len(best_graphs) < MAX_BEST_GRAPHS:
            best_graphs.setdefault(candidate, None)
    return _Branch(best_count, best_graphs, examined)


def hill_climb(n: int, k: int, constraint: ConstraintClass, *, seed: int,
               budget: int, restarts: int = DEFAULT_RESTARTS,
               workers: int = 1) -> SearchReport:
    """Seeded local search over single edge toggles.

    Each restart climbs from its own seed graph: a toggle that leaves the
    class is rejected, one that lowers the count is rejected, and
    plateau moves are accepted.  The budget (number of proposed toggles)
    is split over the restarts.  Every restart draws from its own stream
    derived from (seed, restart index), so the report does not depend on
    the number of workers.  With budget 0 the best seed graph is
    returned unchanged.  A count above (n/k)^k in a class covered by the
    odd-girth theorem raises RuntimeError, as in ExtremalSearch.evaluate.

    Args:
        n (int): number of vertices.
        k (int): cycle length.
        constraint (ConstraintClass)
        seed (int): nonnegative seed.
        budget (int): total number of proposed toggles.
        restarts (int, optional): number of seed graphs.  Defaults to
            DEFAULT_RESTARTS.
        workers (int, optional): threads running restarts.  Defaults to 1.

    Returns:
        SearchReport
    """
    if budget < 0:
        raise ValueError('Budget must be nonnegative, got {}.'.format(budget))
    if seed < 0:
        raise ValueError('Seed must be nonnegative, got {}.'.format(seed))
    if restarts < 1:
        raise ValueError('Need at least one restart, got {}.'.format(restarts))
    if workers < 1:
        raise ValueError('Worker count must be at least 1, got {}.'.format(workers))
    if workers > restarts:
        warnings.warn('{} workers for {} restarts; the extra workers stay idle.'.format(
            workers, restarts))

    starts = seed_graphs(n, k, constraint, seed=seed, restarts=restarts)
    shares = [budget // restarts + (1 if b < budget % restarts else 0)
              for b in range(restarts)]

    def run_branch(branch: int) -> _Branch:
        rng = branch_rng(seed, branch, phase=1)
        result = _climb(starts[branch], k, constraint, rng, shares[branch])
        logger.info('restart %d: best %d after %d graphs', branch,
                    result.best_count, result.graphs_examined)
        return result

    if workers == 1:
        results = [run_branch(b) for b in range(restarts)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_branch, range(restarts)))

    best = max(r.best_count for r in results)
    check_theorem_bound(n, k, constraint, best)
    extremal = {}
    for r in results:
        if r.best_count == best:
            for g in r.best_graphs:
                extremal.setdefault(canonical_graph6(g), None)
    return SearchReport(n=n, k=k, constraint=constraint, best_count=best,
                        mode=HILLCLIMB, extremal_graphs=list(extremal),
                        graphs_examined=sum(r.graphs_examined for r in results),
                        seed=seed, budget=budget)
