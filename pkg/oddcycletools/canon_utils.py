from dataclasses import dataclass
from ._io import write_graph6
from .graph_utils import Graph, iter_bits, bits_to_mask


@dataclass(frozen=True)
class CanonicalForm:
    """labeling[i] is the vertex of the input placed at canonical position
    i; certificate is the graph6 record of the relabelled graph, so two
    graphs have equal certificates iff they are isomorphic."""
    labeling: tuple[int, ...]
    certificate: bytes


def canonical_form(g: Graph) -> CanonicalForm:
    """Canonical labelling by equitable partition refinement and
    backtracking over individualised vertices.

    Components are labelled independently and concatenated in order of
    their certificates.  Inside a component, a target cell whose vertices
    are pairwise interchangeable (twins) is branched on one vertex only,
    which keeps empty graphs, cliques and blow-ups linear.  Adequate for
    the small graphs of this package (n up to CANONICAL_MAX_N and a bit
    beyond).

    Args:
        g (Graph)

    Returns:
        CanonicalForm
    """
    labelled = sorted(
        (_canonical_component(g, comp) for comp in _components(g)),
        key=lambda item: (len(item[1]), item[0]))
    labeling = tuple(v for _, order in labelled for v in order)
    return CanonicalForm(labeling=labeling,
                         certificate=write_graph6(g.relabel(labeling)))


def certificate(g: Graph) -> bytes:
    return canonical_form(g).certificate


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return certificate(g) == certificate(h)


def _components(g: Graph) -> list[list[int]]:
    unseen = g.vertex_mask
    comps = []
    while unseen:
        start = unseen & -unseen
        comp, frontier = start, start
        while frontier:
            reached = 0
            for u in iter_bits(frontier):
                reached |= g.rows[u]
            frontier = reached & ~comp
            comp |= frontier
        comps.append(list(iter_bits(comp)))
        unseen &= ~comp
    return comps


def _canonical_component(g: Graph, comp: list[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Best (leaf certificate, ordering) over the search tree of one
    connected component.  The leaf certificate lists, position by
    position, the adjacency bit-vector in canonical positions."""
    comp_mask = bits_to_mask(comp)
    rows = {v: g.rows[v] & comp_mask for v in comp}
    best: list = [None, None]

    def search(partition: list[list[int]]):
        partition = _refine(rows, partition)
        target = next((i for i, cell in enumerate(partition) if len(cell) > 1),
                      None)
        if target is None:
            order = tuple(cell[0] for cell in partition)
            leaf = _leaf_certificate(rows, order)
            if best[0] is None or leaf > best[0]:
                best[0], best[1] = leaf, order
            return
        cell = partition[target]
        branches = cell[:1] if _is_twin_cell(rows, cell) else cell
        for v in branches:
            rest = [w for w in cell if w != v]
            search(partition[:target] + [[v], rest] + partition[target + 1:])

    search([sorted(comp)])
    return best[0], best[1]


def _refine(rows: dict[int, int], partition: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition.  A cell is
    split by the number of neighbours in a splitter cell, and the pieces
    keep the cell's position, ordered by that number."""
    partition = [list(cell) for cell in partition]
    changed = True
    while changed:
        changed = False
        for splitter in list(partition):
            mask = bits_to_mask(splitter)
            refined = []
            for cell in partition:
                if len(cell) == 1:
                    refined.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault((rows[v] & mask).bit_count(), []).append(v)
                if len(groups) > 1:
                    changed = True
                refined.extend(groups[c] for c in sorted(groups))
            partition = refined
            if changed:
                break
    return partition


def _is_twin_cell(rows: dict[int, int], cell: list[int]) -> bool:
    # every transposition inside the cell is an automorphism:
    for i, u in enumerate(cell):
        for v in cell[i + 1:]:
            if rows[u] & ~(1 << v) != rows[v] & ~(1 << u):
                return False
    return True


def _leaf_certificate(rows: dict[int, int], order: tuple[int, ...]) -> tuple[int, ...]:
    position = {v: i for i, v in enumerate(order)}
    return tuple(bits_to_mask(position[w] for w in iter_bits(rows[v]))
                 for v in order)
