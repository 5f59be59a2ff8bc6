import logging
from dataclasses import dataclass
from collections.abc import Iterable, Iterator
from ._constants import (EXHAUSTIVE_MAX_N, MIN_CYCLE_LENGTH,
                         MIN_OBSERVATION_CYCLE_LENGTH)
from ._io import iter_graph6_lines
from .canon_utils import canonical_form
from .graph_utils import (Graph, iter_bits, odd_girth_at_least,
                          shortest_odd_closed_walk, INFINITE)
from .cycle_utils import observation_class_check

logger = logging.getLogger(__name__)

# constraint kinds:
ODD_GIRTH = 'odd-girth'
TRIANGLE_FREE = 'triangle-free'
OBSERVATION = 'observation'
UNCONSTRAINED = 'unconstrained'
CONSTRAINT_KINDS = (ODD_GIRTH, TRIANGLE_FREE, OBSERVATION, UNCONSTRAINED)


@dataclass(frozen=True)
class ConstraintClass:
    """A hereditary graph class plus the counting mode used when searching
    it (every cycle, or chordless cycles only).

    Build one with the classmethods: odd_girth_at_least(k),
    triangle_free(), observation(k) or unconstrained().
    """
    kind: str
    parameter: int | None = None
    induced: bool = False

    def __post_init__(self):
        if self.kind not in CONSTRAINT_KINDS:
            raise ValueError('Value for kind is one of {}.'.format(
                ', '.join('"{}"'.format(k) for k in CONSTRAINT_KINDS)))
        if self.kind == ODD_GIRTH and (self.parameter is None
                                       or self.parameter < MIN_CYCLE_LENGTH):
            raise ValueError('Odd girth bound must be at least {}, got {}.'.format(
                MIN_CYCLE_LENGTH, self.parameter))
        if self.kind == OBSERVATION and (
                self.parameter is None or self.parameter % 2
                or self.parameter < MIN_OBSERVATION_CYCLE_LENGTH):
            raise ValueError('The Observation class needs an even k >= {}, got {}.'.format(
                MIN_OBSERVATION_CYCLE_LENGTH, self.parameter))

    @classmethod
    def odd_girth_at_least(cls, k: int, *, induced: bool = False) -> 'ConstraintClass':
        return cls(ODD_GIRTH, k, induced)

    @classmethod
    def triangle_free(cls, *, induced: bool = False) -> 'ConstraintClass':
        return cls(TRIANGLE_FREE, None, induced)

    @classmethod
    def observation(cls, k: int, *, induced: bool = True) -> 'ConstraintClass':
        return cls(OBSERVATION, k, induced)

    @classmethod
    def unconstrained(cls, *, induced: bool = False) -> 'ConstraintClass':
        return cls(UNCONSTRAINED, None, induced)

    def implies_odd_girth(self, k: int) -> bool:
        """True if every graph of the class has no odd cycle shorter
        than k."""
        if self.kind == ODD_GIRTH:
            return self.parameter >= k
        if self.kind == TRIANGLE_FREE:
            return k <= 5
        return False

    def admits(self, g: Graph) -> bool:
        """Full membership test."""
        if self.kind == UNCONSTRAINED:
            return True
        if self.kind == TRIANGLE_FREE:
            return all(not g.rows[v] & g.rows[w] for v, w in g.edges())
        if self.kind == ODD_GIRTH:
            return odd_girth_at_least(g, self.parameter)
        return observation_class_check(g, self.parameter)[0]

    def admits_at(self, g: Graph, v: int) -> bool:
        """Membership test for a graph whose every forbidden structure,
        if any, must contain v: true for a new vertex added to a member
        of the class, and for an edge at v toggled in one.

        Args:
            g (Graph)
            v (int): the vertex every violation would go through.

        Returns:
            bool
        """
        if self.kind == UNCONSTRAINED:
            return True
        if self.kind == TRIANGLE_FREE:
            row = g.rows[v]
            return all(not g.rows[w] & row for w in iter_bits(row))
        if self.kind == ODD_GIRTH:
            # a short odd closed walk through v contains a short odd cycle,
            # and the only new odd cycles pass through v
            walk = shortest_odd_closed_walk(g, v)
            return walk is INFINITE or walk >= self.parameter
        return observation_class_check(g, self.parameter, through=v)[0]

    def __str__(self) -> str:
        text = self.kind
        if self.parameter is not None:
            text += '({})'.format(self.parameter)
        return text + (', induced' if self.induced else '')

    def to_dict(self) -> dict:
        return {'kind': self.kind, 'parameter': self.parameter,
                'induced': self.induced}


def generate_constrained_graphs(n: int, constraint: ConstraintClass) -> Iterator[Graph]:
    """One representative of every isomorphism class of graphs on n
    vertices in a hereditary class.

    Graphs are grown one vertex at a time.  Every member on l+1 vertices
    is a member on l vertices plus a vertex, so each level extends the
    representatives of the previous level by every neighbour set of the
    new vertex, keeps the extensions the constraint admits at that vertex
    and deduplicates them by canonical certificate.  Representatives are
    yielded in canonical labelling, in order of first discovery.

    Args:
        n (int): number of vertices, 0 <= n <= EXHAUSTIVE_MAX_N.
        constraint (ConstraintClass)

    Returns:
        generator of Graph
    """
    if not 0 <= n <= EXHAUSTIVE_MAX_N:
        raise ValueError('Exhaustive generation supports 0 <= n <= {}, got {}.'.format(
            EXHAUSTIVE_MAX_N, n))
    return _generate_levels(n, constraint)


def _generate_levels(n: int, constraint: ConstraintClass) -> Iterator[Graph]:
    level = [Graph(0, [])]
    for size in range(1, n + 1):
        found: dict[bytes, Graph] = {}
        n_candidates = 0
        for parent in level:
            for neighbor_mask in range(1 << parent.n):
                child = parent.with_new_vertex(neighbor_mask)
                n_candidates += 1
                if not constraint.admits_at(child, parent.n):
                    continue
                form = canonical_form(child)
                if form.certificate not in found:
                    found[form.certificate] = child.relabel(form.labeling)
        level = list(found.values())
        logger.info('%s: %d classes on %d vertices from %d candidates',
                    constraint, len(level), size, n_candidates)
    yield from level


def filter_graph6_stream(lines: Iterable[bytes | str],
                         constraint: ConstraintClass) -> Iterator[Graph]:
    """Graphs of a graph6 stream (one record per line) that belong to the
    class.  No deduplication: an external generator is trusted to emit
    one graph per isomorphism class."""
    for g in iter_graph6_lines(lines):
        if constraint.admits(g):
            yield g
