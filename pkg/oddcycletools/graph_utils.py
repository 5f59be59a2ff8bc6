import enum
from dataclasses import dataclass
from collections.abc import Iterable, Iterator, Sequence
import numpy as np
import networkx as nx
from ._constants import MAX_VERTICES


class Unbounded(enum.Enum):
    """Sentinel for an unreachable vertex, or for the odd girth of a
    bipartite graph."""
    INFINITE = 'inf'

    def __str__(self) -> str:
        return self.value


INFINITE = Unbounded.INFINITE

# odd girth is a finite odd int >= 3 or INFINITE:
OddGirth = int | Unbounded


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of mask, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    def __init__(self, n: int, rows: Sequence[int]):
        """An immutable simple undirected graph on the vertices 0..n-1.

        Row v is a bit-vector of the neighbours of v, so neighbourhood
        intersections are single integer operations.  Use build_graph to
        make a graph from an edge list; this constructor validates rows
        that are built directly (symmetric, no loops, indices < n).

        Args:
            n (int): number of vertices, at most MAX_VERTICES.
            rows (sequence of int): adjacency bit-vector of every vertex.
        """
        if n < 0:
            raise ValueError('Vertex count must be nonnegative, got {}.'.format(n))
        if n > MAX_VERTICES:
            raise ValueError('Graphs are capped at {} vertices, got {}.'.format(
                MAX_VERTICES, n))
        if len(rows) != n:
            raise ValueError('Expected {} adjacency rows, got {}.'.format(
                n, len(rows)))
        full = (1 << n) - 1
        for v, row in enumerate(rows):
            if row & ~full:
                raise ValueError('Row {} has a neighbour index >= {}.'.format(v, n))
            if row >> v & 1:
                raise ValueError('Vertex {} has a loop.'.format(v))
            for w in iter_bits(row):
                if not rows[w] >> v & 1:
                    raise ValueError(
                        'Adjacency is not symmetric at ({}, {}).'.format(v, w))
        self._n = n
        self._rows = tuple(rows)

    @property
    def n(self) -> int:
        """int: number of vertices"""
        return self._n

    @property
    def rows(self) -> tuple[int, ...]:
        """tuple of int: adjacency bit-vector of each vertex"""
        return self._rows

    @property
    def vertex_mask(self) -> int:
        """int: bit-vector with all n vertices set"""
        return (1 << self._n) - 1

    def __len__(self) -> int:
        return self._n

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._n, self._rows))

    def __repr__(self) -> str:
        return 'Graph(n={}, m={})'.format(self._n, self.number_of_edges())

    def neighbors(self, v: int) -> list[int]:
        """Sorted neighbours of v."""
        self._check_vertex(v)
        return list(iter_bits(self._rows[v]))

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self._rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self._rows]

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self._rows[u] >> v & 1)

    def number_of_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges (u, v) with u < v, sorted."""
        return [(u, v) for u, row in enumerate(self._rows)
                for v in iter_bits(row >> (u + 1) << (u + 1))]

    def induced_subgraph(self, vertices: Sequence[int]) -> 'Graph':
        """Subgraph induced on vertices; vertex i of the result is
        vertices[i]."""
        position = {v: i for i, v in enumerate(vertices)}
        if len(position) != len(vertices):
            raise ValueError('Repeated vertex in {}.'.format(list(vertices)))
        rows = []
        for v in vertices:
            self._check_vertex(v)
            rows.append(bits_to_mask(position[w] for w in iter_bits(self._rows[v])
                                     if w in position))
        return Graph(len(vertices), rows)

    def relabel(self, order: Sequence[int]) -> 'Graph':
        """Graph in which new vertex i is old vertex order[i]."""
        if sorted(order) != list(range(self._n)):
            raise ValueError('order must be a permutation of range({}).'.format(
                self._n))
        return self.induced_subgraph(order)

    def with_edge_toggled(self, u: int, v: int) -> 'Graph':
        """Copy of the graph with the edge uv added or removed."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise ValueError('Cannot toggle a loop at {}.'.format(u))
        rows = list(self._rows)
        rows[u] ^= 1 << v
        rows[v] ^= 1 << u
        return Graph(self._n, rows)

    def with_new_vertex(self, neighbor_mask: int) -> 'Graph':
        """Copy of the graph with vertex n added, adjacent to neighbor_mask."""
        if neighbor_mask & ~self.vertex_mask:
            raise ValueError('Neighbour mask refers to missing vertices.')
        rows = [row | ((neighbor_mask >> v & 1) << self._n)
                for v, row in enumerate(self._rows)]
        rows.append(neighbor_mask)
        return Graph(self._n + 1, rows)

    def adjacency_matrix(self) -> np.ndarray:
        """n x n uint8 numpy adjacency matrix."""
        mat = np.zeros((self._n, self._n), dtype=np.uint8)
        for u, v in self.edges():
            mat[u, v] = mat[v, u] = 1
        return mat

    def to_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Compressed sparse rows (indptr, indices), neighbours ascending."""
        indptr = np.zeros(self._n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum(self.degrees(), dtype=np.int64)
        indices = np.fromiter(
            (w for row in self._rows for w in iter_bits(row)),
            dtype=np.int64, count=int(indptr[-1]))
        return indptr, indices

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self._n))
        G.add_edges_from(self.edges())
        return G

    @classmethod
    def from_networkx(cls, G: nx.Graph) -> 'Graph':
        """Graph from a networkx graph; nodes are relabelled 0..n-1 in
        sorted order when they are sortable, else in iteration order."""
        nodes = list(G.nodes)
        try:
            nodes = sorted(nodes)
        except TypeError:
            pass
        index = {node: i for i, node in enumerate(nodes)}
        return build_graph(len(nodes),
                           [(index[u], index[v]) for u, v in G.edges()])

    def _check_vertex(self, v: int):
        if not 0 <= v < self._n:
            raise ValueError('Vertex {} out of range for n = {}.'.format(v, self._n))


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a Graph with exactly the given edges.  Repeated edges (in
    either orientation) are merged.

    Args:
        n (int): number of vertices.
        edges (iterable of pairs): endpoints are 0-based vertex indices.

    Returns:
        Graph
    """
    if not 0 <= n <= MAX_VERTICES:
        raise ValueError('Vertex count must be in 0..{}, got {}.'.format(
            MAX_VERTICES, n))
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError('Edge ({}, {}) has an endpoint out of range for n = {}.'.format(u, v, n))
        if u == v:
            raise ValueError('Loop edge ({}, {}) is not allowed.'.format(u, v))
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, rows)


def cycle_graph(m: int) -> Graph:
    """The cycle C_m on vertices 0..m-1 in order."""
    if m < 3:
        raise ValueError('A cycle needs at least 3 vertices, got {}.'.format(m))
    return build_graph(m, [(i, (i + 1) % m) for i in range(m)])


def distances_from(g: Graph, v: int) -> list[int | Unbounded]:
    """Breadth-first distances from v.  Unreachable vertices get INFINITE.

    Args:
        g (Graph)
        v (int): source vertex.

    Returns:
        list with one entry per vertex
    """
    if not 0 <= v < g.n:
        raise ValueError('Vertex {} out of range for n = {}.'.format(v, g.n))
    dist = [INFINITE] * g.n
    dist[v] = 0
    frontier = 1 << v
    seen = frontier
    level = 0
    while frontier:
        level += 1
        reached = 0
        for u in iter_bits(frontier):
            reached |= g.rows[u]
        frontier = reached & ~seen
        seen |= frontier
        for w in iter_bits(frontier):
            dist[w] = level
    return dist


def sphere(g: Graph, v: int, radius: int) -> int:
    """Bit-vector of the vertices at distance exactly radius from v."""
    frontier = 1 << v
    seen = frontier
    for _ in range(radius):
        reached = 0
        for u in iter_bits(frontier):
            reached |= g.rows[u]
        frontier = reached & ~seen
        seen |= frontier
        if not frontier:
            break
    return frontier


def shortest_odd_closed_walk(g: Graph, v: int) -> int | Unbounded:
    """Length of the shortest closed walk of odd length through v, via a
    layered search of the bipartite double cover from (v, even) to
    (v, odd).  INFINITE if the component of v is bipartite.
    """
    even, odd = 1 << v, 0
    frontier_even, frontier_odd = even, 0
    length = 0
    while frontier_even or frontier_odd:
        length += 1
        # a step flips parity:
        reached_from_even = 0
        for u in iter_bits(frontier_even):
            reached_from_even |= g.rows[u]
        reached_from_odd = 0
        for u in iter_bits(frontier_odd):
            reached_from_odd |= g.rows[u]
        frontier_odd = reached_from_even & ~odd
        frontier_even = reached_from_odd & ~even
        if frontier_odd >> v & 1:
            return length
        odd |= frontier_odd
        even |= frontier_even
    return INFINITE


def odd_girth(g: Graph) -> OddGirth:
    """Length of a shortest odd cycle of g, or INFINITE when g is
    bipartite.  The shortest odd closed walk through any vertex is a cycle,
    so this is the minimum of the per-source double-cover searches.
    """
    best = INFINITE
    for v in range(g.n):
        if not g.rows[v]:
            continue
        walk = shortest_odd_closed_walk(g, v)
        if walk is not INFINITE and (best is INFINITE or walk < best):
            best = walk
            if best == 3:
                break
    return best


def odd_girth_at_least(g: Graph, k: int) -> bool:
    """True if g has no odd cycle shorter than k."""
    girth = odd_girth(g)
    return girth is INFINITE or girth >= k


@dataclass(frozen=True)
class BlowupSpec:
    """Pattern graph plus one blob size per pattern vertex."""
    pattern: Graph
    blobs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'blobs', tuple(self.blobs))
        if len(self.blobs) != self.pattern.n:
            raise ValueError('Expected {} blob sizes, got {}.'.format(
                self.pattern.n, len(self.blobs)))
        if any(b < 0 for b in self.blobs):
            raise ValueError('Blob sizes must be nonnegative: {}.'.format(
                list(self.blobs)))

    @property
    def n(self) -> int:
        return sum(self.blobs)


def blowup(spec: BlowupSpec) -> Graph:
    """Replace each pattern vertex by an independent set of its blob size
    and each pattern edge by a complete bipartite graph.  Vertices are
    numbered blob by blob (all of blob 0 first).

    Args:
        spec (BlowupSpec)

    Returns:
        Graph
    """
    offsets = np.concatenate(([0], np.cumsum(spec.blobs, dtype=np.int64)))
    blob_masks = [((1 << int(offsets[i + 1])) - 1) ^ ((1 << int(offsets[i])) - 1)
                  for i in range(spec.pattern.n)]
    rows = []
    for a in range(spec.pattern.n):
        row = 0
        for b in iter_bits(spec.pattern.rows[a]):
            row |= blob_masks[b]
        rows.extend([row] * spec.blobs[a])
    return Graph(spec.n, rows)


def cycle_blowup(m: int, blobs: Sequence[int]) -> Graph:
    """Blow-up of C_m with the given blob sizes."""
    return blowup(BlowupSpec(cycle_graph(m), tuple(blobs)))


def balanced_blobs(n: int, m: int) -> list[int]:
    """m blob sizes that differ by at most one and sum to n, larger
    blobs first."""
    if m < 1:
        raise ValueError('Need at least one blob, got m = {}.'.format(m))
    if n < 0:
        raise ValueError('Vertex count must be nonnegative, got {}.'.format(n))
    q, r = divmod(n, m)
    return [q + 1] * r + [q] * (m - r)


def blowup_structure(g: Graph) -> tuple[Graph, list[list[int]]] | None:
    """Split g into twin classes (vertices with equal neighbourhoods).

    If g is a blow-up of some pattern without empty blobs, the classes are
    its blobs.  Returns (quotient pattern, classes) or None if g has an
    isolated vertex, which no blow-up of a pattern without isolated
    vertices can have.
    """
    classes: dict[int, list[int]] = {}
    for v, row in enumerate(g.rows):
        if not row:
            return None
        classes.setdefault(row, []).append(v)
    blobs = list(classes.values())
    # classes are independent (equal neighbourhoods, no loops) and fully
    # joined whenever one edge joins them:
    index = {v: i for i, blob in enumerate(blobs) for v in blob}
    edges = {(min(index[u], index[v]), max(index[u], index[v]))
             for u, v in g.edges()}
    return build_graph(len(blobs), edges), blobs


def is_balanced_blowup(g: Graph, m: int) -> bool:
    """True if g is a blow-up of C_m whose m blob sizes differ by at most
    one (all blobs nonempty)."""
    if m < 3 or g.n < m:
        return False
    structure = blowup_structure(g)
    if structure is None:
        return False
    pattern, blobs = structure
    if pattern.n != m or any(d != 2 for d in pattern.degrees()):
        return False
    # 2-regular on m vertices is C_m iff connected:
    if distances_from(pattern, 0).count(INFINITE):
        return False
    sizes = [len(b) for b in blobs]
    return max(sizes) - min(sizes) <= 1
