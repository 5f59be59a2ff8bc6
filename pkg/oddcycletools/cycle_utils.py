import itertools
import warnings
from dataclasses import dataclass
from concurrent.futures import ThreadPoolExecutor
from collections.abc import Iterable, Iterator, Sequence
from ._constants import (MIN_CYCLE_LENGTH, MAX_CYCLE_LENGTH,
                         MIN_OBSERVATION_CYCLE_LENGTH, ORACLE_MAX_N)
from ._kernels import count_rooted_cycles
from .graph_utils import Graph, iter_bits, bits_to_mask


@dataclass(frozen=True)
class CycleInstance:
    """A k-cycle as its vertices in traversal order, in canonical form:
    the minimum vertex first, then the smaller of its two cycle
    neighbours."""
    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        object.__setattr__(self, 'vertices', vs)
        if len(vs) < MIN_CYCLE_LENGTH:
            raise ValueError('A cycle needs at least {} vertices, got {}.'.format(
                MIN_CYCLE_LENGTH, len(vs)))
        if len(set(vs)) != len(vs):
            raise ValueError('Repeated vertex in cycle {}.'.format(list(vs)))
        if vs[0] != min(vs) or vs[1] > vs[-1]:
            raise ValueError('Cycle {} is not in canonical order; use CycleInstance.from_vertices.'.format(list(vs)))

    @classmethod
    def from_vertices(cls, vertices: Sequence[int]) -> 'CycleInstance':
        """Canonical instance of the cycle traversed in the given order
        (any rotation or direction)."""
        vs = list(vertices)
        if not vs:
            raise ValueError('A cycle needs at least {} vertices, got 0.'.format(
                MIN_CYCLE_LENGTH))
        start = vs.index(min(vs))
        vs = vs[start:] + vs[:start]
        if len(vs) > 1 and vs[1] > vs[-1]:
            vs = [vs[0]] + vs[:0:-1]
        return cls(tuple(vs))

    @property
    def k(self) -> int:
        return len(self.vertices)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @property
    def mask(self) -> int:
        return bits_to_mask(self.vertices)

    def is_cycle_of(self, g: Graph) -> bool:
        return all(g.has_edge(u, v) for u, v in self.cycle_edges())

    def is_induced_in(self, g: Graph) -> bool:
        """True if the vertex set spans no edge other than the cycle's."""
        mask = self.mask
        n_edges = sum((g.rows[v] & mask).bit_count() for v in self.vertices) // 2
        return self.is_cycle_of(g) and n_edges == self.k

    def cycle_edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


@dataclass(frozen=True)
class PatternWitness:
    """A forbidden structure found in a graph: its name and vertices (in
    cycle order for cycles)."""
    pattern: str
    vertices: tuple[int, ...]


def _check_length(k: int):
    if k < MIN_CYCLE_LENGTH:
        raise ValueError('Cycle length must be at least {}, got {}.'.format(
            MIN_CYCLE_LENGTH, k))
    if k > MAX_CYCLE_LENGTH:
        raise ValueError('Cycle lengths above {} are not supported, got {}.'.format(
            MAX_CYCLE_LENGTH, k))


def enumerate_cycles(g: Graph, k: int, *,
                     induced_only: bool = False) -> Iterator[CycleInstance]:
    """Stream every k-cycle of g exactly once, in lexicographic order of
    the canonical vertex lists.

    The search is depth first from each root r (the minimum vertex of the
    cycle): extensions must exceed r, must be close enough to r to close
    the cycle with the remaining steps, and the cycle is accepted only
    when its second vertex is smaller than its last.

    Args:
        g (Graph)
        k (int): cycle length, 3 <= k <= 20.
        induced_only (bool, optional): only chordless cycles.  Defaults to
            False.

    Returns:
        generator of CycleInstance
    """
    _check_length(k)
    for r in range(g.n):
        above = g.vertex_mask & ~((1 << (r + 1)) - 1)
        dist = _distances_within(g, r, above | 1 << r)
        yield from _extend_path(g, k, induced_only, [r], 1 << r, above, dist)


def _distances_within(g: Graph, r: int, allowed: int) -> dict[int, int]:
    dist = {r: 0}
    frontier, seen, level = 1 << r, 1 << r, 0
    while frontier:
        level += 1
        reached = 0
        for u in iter_bits(frontier):
            reached |= g.rows[u]
        frontier = reached & allowed & ~seen
        seen |= frontier
        for w in iter_bits(frontier):
            dist[w] = level
    return dist


def _extend_path(g: Graph, k: int, induced_only: bool, path: list[int],
                 path_mask: int, above: int,
                 dist: dict[int, int]) -> Iterator[CycleInstance]:
    depth = len(path)
    r, u = path[0], path[-1]
    earlier = path_mask & ~(1 << u)
    for w in iter_bits(g.rows[u] & above & ~path_mask):
        if dist.get(w, k) > k - depth:
            continue
        if depth == k - 1:
            if not g.rows[w] >> r & 1 or w < path[1]:
                continue
            if induced_only and g.rows[w] & earlier & ~(1 << r):
                continue
            yield CycleInstance(tuple(path) + (w,))
            continue
        if induced_only and g.rows[w] & earlier:
            continue
        path.append(w)
        yield from _extend_path(g, k, induced_only, path,
                                path_mask | 1 << w, above, dist)
        path.pop()


def count_cycles(g: Graph, k: int, *, workers: int = 1) -> int:
    """Number of k-cycle subgraphs of g.

    Args:
        g (Graph)
        k (int): cycle length, 3 <= k <= 20.
        workers (int, optional): threads sharing the root vertices.  The
            result does not depend on it.  Defaults to 1.

    Returns:
        int
    """
    return _count(g, k, induced=False, workers=workers)


def count_induced_cycles(g: Graph, k: int, *, workers: int = 1) -> int:
    """Number of chordless k-cycles of g (for k = 3 the same as
    count_cycles)."""
    return _count(g, k, induced=True, workers=workers)


def _count(g: Graph, k: int, *, induced: bool, workers: int) -> int:
    _check_length(k)
    if workers < 1:
        raise ValueError('Worker count must be at least 1, got {}.'.format(workers))
    if k > g.n:
        return 0
    adj = g.adjacency_matrix()
    indptr, indices = g.to_csr()

    def count_roots(bounds: tuple[int, int]) -> int:
        lo, hi = bounds
        return int(count_rooted_cycles(adj, indptr, indices, k, induced, lo, hi))

    if workers == 1:
        return count_roots((0, g.n))
    # one root per task: low roots carry most of the work
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(count_roots, [(r, r + 1) for r in range(g.n)]))


def brute_force_cycle_count(g: Graph, k: int, *,
                            induced_only: bool = False) -> int:
    """Independent oracle: for every k-subset of vertices, count the
    Hamiltonian cycles of the induced subgraph (only chordless subsets
    when induced_only).  Exponential; meant for n <= 14.
    """
    if k < MIN_CYCLE_LENGTH:
        raise ValueError('Cycle length must be at least {}, got {}.'.format(
            MIN_CYCLE_LENGTH, k))
    if g.n > ORACLE_MAX_N:
        warnings.warn('Brute-force cycle count on {} vertices may take very long.'.format(g.n))
    total = 0
    for subset in itertools.combinations(range(g.n), k):
        sub = g.induced_subgraph(subset)
        m = sub.number_of_edges()
        if m < k or (induced_only and m != k):
            continue
        if min(sub.degrees()) < 2:
            continue
        total += _hamiltonian_cycle_count(sub)
    return total


def _hamiltonian_cycle_count(h: Graph) -> int:
    # paths[mask][v]: paths from vertex 0 through exactly mask, ending at v
    k = h.n
    full = (1 << k) - 1
    paths = [[0] * k for _ in range(1 << k)]
    paths[1][0] = 1
    for mask in range(1, 1 << k, 2):
        for v in range(k):
            ways = paths[mask][v]
            if not ways:
                continue
            for w in range(1, k):
                if not mask >> w & 1 and h.has_edge(v, w):
                    paths[mask | 1 << w][w] += ways
    closing = sum(paths[full][v] for v in range(1, k) if h.has_edge(v, 0))
    # each cycle is traversed in both directions
    return closing // 2


def find_induced_cycle(g: Graph, lengths: Iterable[int], *,
                       through: int | None = None) -> CycleInstance | None:
    """First chordless cycle whose length is in lengths, or None.  With
    through, only cycles containing that vertex are searched."""
    lengths = sorted(set(lengths))
    if not lengths:
        return None
    if through is None:
        for length in lengths:
            if length <= g.n:
                found = next(enumerate_cycles(g, length, induced_only=True), None)
                if found is not None:
                    return found
        return None
    return _induced_cycle_through(g, through, [through], 1 << through,
                                  set(lengths), max(lengths))


def _induced_cycle_through(g: Graph, v: int, path: list[int], path_mask: int,
                           lengths: set[int], longest: int) -> CycleInstance | None:
    depth = len(path)
    u = path[-1]
    earlier = path_mask & ~(1 << u)
    inner = earlier & ~(1 << v)
    for w in iter_bits(g.rows[u] & ~path_mask):
        closes = bool(g.rows[w] >> v & 1) and depth >= 2
        if closes:
            if depth + 1 in lengths and not g.rows[w] & inner:
                return CycleInstance.from_vertices(path + [w])
            continue
        if g.rows[w] & earlier or depth + 1 >= longest:
            continue
        path.append(w)
        found = _induced_cycle_through(g, v, path, path_mask | 1 << w,
                                       lengths, longest)
        path.pop()
        if found is not None:
            return found
    return None


# cyclic orders of a hexagon on positions 0..5, one per undirected cycle:
_HEXAGON_ORDERS = [(0,) + p for p in itertools.permutations(range(1, 6))
                   if p[0] < p[-1]]


def _hexagon_with_diagonals(h: Graph) -> tuple[int, ...] | None:
    """Cycle order of a 6-vertex graph that is a hexagon plus one or two
    main diagonals, else None."""
    edges = set(h.edges())
    if len(edges) not in (7, 8):
        return None
    for order in _HEXAGON_ORDERS:
        ring = {tuple(sorted((order[i], order[(i + 1) % 6]))) for i in range(6)}
        if not ring <= edges:
            continue
        diagonals = {tuple(sorted((order[i], order[i + 3]))) for i in range(3)}
        if edges - ring <= diagonals:
            return order
    return None


def find_induced_c6_with_diagonals(g: Graph, *,
                                   through: int | None = None) -> PatternWitness | None:
    others = [v for v in range(g.n) if v != through]
    size = 6 if through is None else 5
    for subset in itertools.combinations(others, size):
        if through is not None:
            subset = (through,) + subset
        mask = bits_to_mask(subset)
        degrees = [(g.rows[v] & mask).bit_count() for v in subset]
        # hexagon plus one or two diagonals: degrees 2 or 3, 7 or 8 edges
        if min(degrees) < 2 or max(degrees) > 3 or sum(degrees) not in (14, 16):
            continue
        order = _hexagon_with_diagonals(g.induced_subgraph(subset))
        if order is not None:
            return PatternWitness('induced C6 with main diagonals',
                                  tuple(subset[i] for i in order))
    return None


def has_induced_c6_with_diagonals(g: Graph) -> tuple[bool, PatternWitness | None]:
    """Does some 6-vertex set induce a 6-cycle plus exactly one or two of
    its three main diagonals?

    Returns:
        (bool, witness or None): the witness lists the hexagon in cycle
        order.
    """
    witness = find_induced_c6_with_diagonals(g)
    return witness is not None, witness


def observation_forbidden_lengths(k: int) -> list[int]:
    """Induced cycle lengths excluded from the Observation class for even
    k: 3 and 5..k-1."""
    return [3] + list(range(5, k))


def observation_class_check(g: Graph, k: int, *,
                            through: int | None = None) -> tuple[bool, PatternWitness | None]:
    """Is g in the class with no induced C_3, no induced C_l for
    5 <= l <= k-1 and no induced C6 with one or two main diagonals?

    Args:
        g (Graph)
        k (int): even cycle length, at least 8.
        through (int, optional): only look at structures containing this
            vertex (the rest of g is already known to be in the class).

    Returns:
        (bool, first violation found or None)
    """
    if k % 2 or k < MIN_OBSERVATION_CYCLE_LENGTH:
        raise ValueError('The Observation class needs an even k >= {}, got {}.'.format(
            MIN_OBSERVATION_CYCLE_LENGTH, k))
    for length in observation_forbidden_lengths(k):
        cycle = find_induced_cycle(g, [length], through=through)
        if cycle is not None:
            name = 'triangle' if length == 3 else 'induced C{}'.format(length)
            return False, PatternWitness(name, cycle.vertices)
    witness = find_induced_c6_with_diagonals(g, through=through)
    if witness is not None:
        return False, witness
    return True, None

