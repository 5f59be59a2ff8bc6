import logging
from dataclasses import dataclass, field
from collections.abc import Iterable
import numpy as np
import pandas as pd
from ._constants import GRAPH_METADATA_DF_COLS, MIN_PROOF_CYCLE_LENGTH
from ._io import write_graph6
from .canon_utils import canonical_form
from .graph_utils import Graph, odd_girth
from .cycle_utils import count_cycles, count_induced_cycles
from .gen_utils import ConstraintClass, generate_constrained_graphs

logger = logging.getLogger(__name__)

EXHAUSTIVE = 'exhaustive'
HILLCLIMB = 'hillclimb'


def theorem_applies(k: int, constraint: ConstraintClass) -> bool:
    """True if every graph of the class has at most (n/k)^k k-cycles by
    the odd-girth theorem: k odd, k >= 7 and no odd cycle shorter than k
    in the class."""
    return (k % 2 == 1 and k >= MIN_PROOF_CYCLE_LENGTH
            and constraint.implies_odd_girth(k))


@dataclass
class SearchReport:
    """Outcome of an exhaustive or heuristic search for graphs with the
    most k-cycles in a class.

    extremal_graphs holds graph6 strings of canonical representatives,
    one per isomorphism class attaining best_count.
    """
    n: int
    k: int
    constraint: ConstraintClass
    best_count: int
    mode: str
    extremal_graphs: list[str] = field(default_factory=list)
    graphs_examined: int = 0
    seed: int | None = None
    budget: int | None = None

    @property
    def bound_floor(self) -> int:
        """floor(n^k / k^k)"""
        return self.n ** self.k // self.k ** self.k

    @property
    def theorem_applies(self) -> bool:
        return theorem_applies(self.k, self.constraint)

    @property
    def reached_bound(self) -> bool:
        return self.best_count == self.bound_floor

    def to_dict(self) -> dict:
        out = {'n': self.n, 'k': self.k,
               'constraint': self.constraint.to_dict(),
               'mode': self.mode,
               'best_count': str(self.best_count),
               'bound_floor': str(self.bound_floor),
               'reached_bound': self.reached_bound,
               'theorem_applies': self.theorem_applies,
               'extremal_graphs': list(self.extremal_graphs),
               'graphs_examined': str(self.graphs_examined)}
        if self.mode == HILLCLIMB:
            out['seed'] = self.seed
            out['budget'] = str(self.budget)
        return out


def check_theorem_bound(n: int, k: int, constraint: ConstraintClass, best: int):
    if theorem_applies(k, constraint) and k ** k * best > n ** k:
        raise RuntimeError('{} cycles of length {} on {} vertices exceed (n/k)^k.'.format(
            best, k, n))


def cycle_counter(constraint: ConstraintClass):
    """count_induced_cycles or count_cycles, by the class's counting
    mode."""
    return count_induced_cycles if constraint.induced else count_cycles


def canonical_graph6(g: Graph) -> str:
    form = canonical_form(g)
    return form.certificate.decode('ascii')


class ExtremalSearch:
    def __init__(self, n: int, k: int, *,
                 constraint: ConstraintClass | None = None, workers: int = 1):
        """An ExtremalSearch finds the graphs on n vertices of a hereditary
        class with the most k-cycles, by looking at every isomorphism
        class.

        By calling GENERATE you list one representative per isomorphism
        class, either with the built-in orderly generator or from graphs
        you pass in (e.g. a graph6 stream from an external generator).

        By calling EVALUATE you count the k-cycles of every
        representative (chordless ones only if the constraint says so).

        The API is fluent:

        search = ExtremalSearch(8, 5, constraint=ConstraintClass.triangle_free()).generate().evaluate()

        Args:
            n (int): number of vertices.
            k (int): cycle length.
            constraint (ConstraintClass, optional): the class to search.
                Defaults to ConstraintClass.odd_girth_at_least(k).
            workers (int, optional): threads for cycle counting.  Results
                do not depend on it.  Defaults to 1.

        Methods for setup:
            generate
            evaluate
        Methods for analysis:
            get_extremal_graphs
            get_graph_metadata
            to_report

        Attributes:
            n (arg)
            k (arg)
            constraint (kwarg)
            workers (kwarg)
            graphs
            counts
            is_generated
            is_evaluated
        """
        if workers < 1:
            raise ValueError('Worker count must be at least 1, got {}.'.format(workers))
        self._n = n
        self._k = k
        self._constraint = (constraint if constraint is not None
                            else ConstraintClass.odd_girth_at_least(k))
        self._workers = workers

        self._graphs = []
        self._counts = []
        self._is_generated = False
        self._is_evaluated = False

    @property
    def n(self) -> int:
        """int"""
        return self._n

    @property
    def k(self) -> int:
        """int"""
        return self._k

    @property
    def constraint(self) -> ConstraintClass:
        """ConstraintClass"""
        return self._constraint

    @property
    def workers(self) -> int:
        """int: threads used by evaluate"""
        return self._workers

    @workers.setter
    def workers(self, value) -> int:
        self._workers = value

    @property
    def graphs(self) -> list[Graph]:
        """list: one canonical representative per isomorphism class"""
        return self._graphs

    @graphs.setter
    def graphs(self, value) -> list[Graph]:
        self._graphs = value

    @property
    def counts(self) -> list[int]:
        """list: cycle count of each graph, in the order of graphs"""
        return self._counts

    @counts.setter
    def counts(self, value) -> list[int]:
        self._counts = value

    @property
    def is_generated(self) -> bool:
        """bool: has generate been called?"""
        return self._is_generated

    @is_generated.setter
    def is_generated(self, value) -> bool:
        self._is_generated = value

    @property
    def is_evaluated(self) -> bool:
        """bool: has evaluate been called?"""
        return self._is_evaluated

    @is_evaluated.setter
    def is_evaluated(self, value) -> bool:
        self._is_evaluated = value

    def generate(self, *, graphs: Iterable[Graph] | None = None):
        """List the isomorphism classes to search.

        Args:
            graphs (iterable of Graph, optional): candidate graphs, e.g.
                from filter_graph6_stream.  Graphs outside the class are
                skipped and isomorphic copies are merged.  Defaults to None,
                which runs the built-in generator.
        """
        if graphs is None:
            self._graphs = list(generate_constrained_graphs(self._n,
                                                            self._constraint))
        else:
            self._graphs = self._dedupe(graphs)
        self._counts = []
        self._is_generated = True
        self._is_evaluated = False
        logger.info('%d classes to search for n=%d, k=%d, %s',
                    len(self._graphs), self._n, self._k, self._constraint)
        return self

    def _dedupe(self, graphs: Iterable[Graph]) -> list[Graph]:
        found: dict[bytes, Graph] = {}
        for g in graphs:
            if g.n != self._n:
                raise ValueError('Expected graphs on {} vertices, got {}.'.format(
                    self._n, g.n))
            if not self._constraint.admits(g):
                continue
            form = canonical_form(g)
            found.setdefault(form.certificate, g.relabel(form.labeling))
        return list(found.values())

    def evaluate(self):
        """Count the k-cycles of every generated graph.  Raises
        RuntimeError if a class covered by the odd-girth theorem has a
        graph above (n/k)^k, which can only be a defect."""
        if not self._is_generated:
            raise AttributeError('Generate graphs before calling the function')
        counter = cycle_counter(self._constraint)
        self._counts = [counter(g, self._k, workers=self._workers)
                        for g in self._graphs]
        self._is_evaluated = True
        check_theorem_bound(self._n, self._k, self._constraint,
                            max(self._counts, default=0))
        return self

    def get_extremal_graphs(self) -> list[Graph]:
        """Representatives attaining the largest count.

        Returns:
            list of Graph
        """
        if not self._is_evaluated:
            raise AttributeError('Evaluate graphs before calling the function')
        best = max(self._counts, default=0)
        return [g for g, c in zip(self._graphs, self._counts) if c == best]

    def get_graph_metadata(self) -> pd.DataFrame:
        """Structured dataset on the searched classes: size, odd girth,
        cycle count and whether the class is extremal.

        The df is indexed by 'graph6' (canonical record of each class).

        Returns:
            pd.DataFrame
        """
        if not self._is_evaluated:
            raise AttributeError('Evaluate graphs before calling the function')
        df = (pd.DataFrame(index=[write_graph6(g).decode('ascii')
                                  for g in self._graphs],
                           columns=GRAPH_METADATA_DF_COLS)
              .rename_axis('graph6'))
        df = df.pipe(self._create_graph_metadata_columns)
        return df

    def _create_graph_metadata_columns(self,
                                       df: pd.DataFrame) -> pd.DataFrame:
        """pipe func for mutating df"""
        df['n_vertices'] = [g.n for g in self._graphs]
        df['n_edges'] = [g.number_of_edges() for g in self._graphs]
        df['odd_girth'] = [str(odd_girth(g)) for g in self._graphs]
        # counts can exceed int64 on big inputs:
        df['count'] = pd.Series(self._counts, index=df.index, dtype=object)
        best = max(self._counts, default=0)
        df['is_extremal'] = np.array(self._counts, dtype=object) == best
        df['n_vertices'] = df['n_vertices'].astype(int)
        df['n_edges'] = df['n_edges'].astype(int)
        df['is_extremal'] = df['is_extremal'].astype(bool)
        return df

    def to_report(self) -> SearchReport:
        if not self._is_evaluated:
            raise AttributeError('Evaluate graphs before calling the function')
        return SearchReport(
            n=self._n, k=self._k, constraint=self._constraint,
            best_count=max(self._counts, default=0), mode=EXHAUSTIVE,
            extremal_graphs=[write_graph6(g).decode('ascii')
                             for g in self.get_extremal_graphs()],
            graphs_examined=len(self._graphs))


def exhaustive_search(n: int, k: int, constraint: ConstraintClass, *,
                      workers: int = 1,
                      graphs: Iterable[Graph] | None = None) -> SearchReport:
    """Largest number of k-cycles over all graphs on n vertices of the
    class, with every extremal isomorphism class.

    Args:
        n (int): number of vertices (at most EXHAUSTIVE_MAX_N for the
            built-in generator).
        k (int): cycle length.
        constraint (ConstraintClass)
        workers (int, optional): threads for cycle counting.  Defaults to 1.
        graphs (iterable of Graph, optional): search these instead of
            generating.  Defaults to None.

    Returns:
        SearchReport
    """
    return (ExtremalSearch(n, k, constraint=constraint, workers=workers)
            .generate(graphs=graphs)
            .evaluate()
            .to_report())
