import logging
from math import comb
from dataclasses import dataclass, field
from fractions import Fraction
from collections.abc import Iterable
import pandas as pd
from ._constants import (BLOWUP_FIT_DF_COLS, CONJECTURE1_MAX_N,
                         OBSERVATION_MAX_N, MAX_VERTICES)
from ._io import write_graph6
from .graph_utils import cycle_blowup
from .cycle_utils import count_cycles, _check_length
from .gen_utils import ConstraintClass
from .api import ExtremalSearch
from .proof_utils import fraction_str

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Conjecture2Coefficient:
    """Two reference values for the leading coefficient of the number of
    C_k in the balanced blow-up of C_{l+2} with blob size t (count / t^k
    as t grows).

    binomial_sum is the conjectured coefficient.  walk_reference is
    (l+2) * binomial_sum / k, the value that follows from counting closed
    walks of length k around C_{l+2}.
    """
    k: int
    l: int
    binomial_sum: int
    walk_reference: Fraction

    @property
    def agree(self) -> bool:
        return self.binomial_sum == self.walk_reference

    def to_dict(self) -> dict:
        return {'k': self.k, 'l': self.l,
                'binomial_sum': str(self.binomial_sum),
                'walk_reference': fraction_str(self.walk_reference),
                'agree': self.agree}


def conjecture2_coefficient(k: int, l: int) -> Conjecture2Coefficient:
    """Sum of C(k, (k - w(l+2))/2) over odd windings w >= 1 with
    w(l+2) <= k, and the walk-count reference next to it.

    Args:
        k (int): odd cycle length.
        l (int): odd, 3 <= l < k.

    Returns:
        Conjecture2Coefficient
    """
    if k % 2 == 0 or l % 2 == 0:
        raise ValueError('k and l must both be odd, got k = {}, l = {}.'.format(k, l))
    if not 3 <= l < k:
        raise ValueError('Need 3 <= l < k, got k = {}, l = {}.'.format(k, l))
    m = l + 2
    binomial_sum = sum(comb(k, (k - w * m) // 2)
                       for w in range(1, k // m + 1, 2))
    return Conjecture2Coefficient(k=k, l=l, binomial_sum=binomial_sum,
                                  walk_reference=Fraction(m * binomial_sum, k))


def _falling(t: int, c: int) -> int:
    out = 1
    for j in range(c):
        out *= t - j
    return out


def blowup_walk_count(k: int, m: int, t: int) -> int:
    """Exact number of k-cycles in the blow-up of C_m with every blob of
    size t, counted through closed walks on C_m.

    A k-cycle of the blow-up reads as a closed walk of length k on C_m.
    A walk visiting blob b c_b times has prod_b t(t-1)...(t-c_b+1)
    realisations with distinct vertices, and every cycle arises from 2k
    rooted directed walks.  Walks are grown one step at a time, keyed by
    position and visit counts; by symmetry they start in blob 0.

    Args:
        k (int): cycle length, 3 <= k <= 20.
        m (int): pattern cycle length, at least 3.
        t (int): blob size, nonnegative.

    Returns:
        int
    """
    _check_length(k)
    if m < 3:
        raise ValueError('A cycle needs at least 3 vertices, got m = {}.'.format(m))
    if t < 0:
        raise ValueError('Blob size must be nonnegative, got {}.'.format(t))
    start = tuple(1 if b == 0 else 0 for b in range(m))
    walks: dict[tuple[int, tuple[int, ...]], int] = {(0, start): 1}
    for _ in range(k - 1):
        grown: dict[tuple[int, tuple[int, ...]], int] = {}
        for (position, visits), mult in walks.items():
            for step in (1, -1):
                nxt = (position + step) % m
                if visits[nxt] == t:
                    continue
                key = (nxt, visits[:nxt] + (visits[nxt] + 1,) + visits[nxt + 1:])
                grown[key] = grown.get(key, 0) + mult
        walks = grown
    rooted = 0
    for (position, visits), mult in walks.items():
        # the closing step back to blob 0:
        if position in (1, m - 1):
            realisations = 1
            for c in visits:
                realisations *= _falling(t, c)
            rooted += mult * realisations
    total, remainder = divmod(m * rooted, 2 * k)
    if remainder:
        raise RuntimeError('Walk count {} is not divisible by 2k = {}.'.format(
            m * rooted, 2 * k))
    return total


def blowup_leading_fit(k: int, m: int, t_range: Iterable[int], *,
                       workers: int = 1) -> pd.DataFrame:
    """Exact k-cycle counts of balanced blow-ups of C_m for each blob size
    t, next to the closed-walk count and the ratio count / t^k.

    The df has one row per t, columns t, n, exact_count, walk_count and
    ratio (a Fraction).

    Args:
        k (int): cycle length.
        m (int): pattern cycle length.
        t_range (iterable of int): blob sizes, each >= 1.
        workers (int, optional): threads for counting.  Defaults to 1.

    Returns:
        pd.DataFrame
    """
    rows = []
    for t in t_range:
        if t < 1:
            raise ValueError('Blob size must be at least 1, got {}.'.format(t))
        if m * t > MAX_VERTICES:
            raise ValueError('Blow-up on {} vertices is above the cap of {}.'.format(
                m * t, MAX_VERTICES))
        exact = count_cycles(cycle_blowup(m, [t] * m), k, workers=workers)
        rows.append({'t': t, 'n': m * t, 'exact_count': exact,
                     'walk_count': blowup_walk_count(k, m, t),
                     'ratio': Fraction(exact, t ** k)})
        logger.info('C_%d in blow-up of C_%d, t=%d: %d', k, m, t, exact)
    df = pd.DataFrame(rows, columns=BLOWUP_FIT_DF_COLS)
    # exact integers and rationals, no int64 wraparound:
    df['exact_count'] = df['exact_count'].astype(object)
    df['walk_count'] = df['walk_count'].astype(object)
    return df


def induced_cycle_reference_bound(n: int, k: int) -> Fraction:
    """n^k / (k^k - k), the conjectured maximum number of induced k-cycles
    in a graph with no further restriction (approached by iterated
    blow-ups of C_k)."""
    if k < 3:
        raise ValueError('Cycle length must be at least 3, got {}.'.format(k))
    return Fraction(n ** k, k ** k - k)


@dataclass
class ProbeReport:
    """Outcome of a conjecture probe.  holds is None when the probe only
    measures (conjecture 2); findings list counterexamples."""
    conjecture: str
    params: dict
    holds: bool | None
    findings: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {'conjecture': self.conjecture, 'params': dict(self.params),
                'holds': self.holds, 'findings': list(self.findings),
                'details': dict(self.details)}


PROBE_KINDS = ('1', '2', 'observation')


def conjecture_probe(conjecture: str, **params) -> ProbeReport:
    """Test a conjecture at desk scale and report, never raise, what is
    found.

    '1' (n, k): the most induced C_k over all triangle-free graphs on n
    vertices against floor((n/k)^k), n <= CONJECTURE1_MAX_N.

    'observation' (n, k): the same over the class with no induced C_3, no
    induced C_l for 5 <= l < k and no induced C6 with one or two main
    diagonals, k even, n <= OBSERVATION_MAX_N.

    '2' (k, l, t_max): both reference coefficients beside the measured
    ratios of blow-ups of C_{l+2} with t = 1..t_max.

    Args:
        conjecture (str): '1', '2' or 'observation'.
        **params: as above; workers (int) is accepted by every kind.

    Returns:
        ProbeReport
    """
    conjecture = str(conjecture)
    workers = params.get('workers', 1)
    if conjecture == '2':
        k, l = params['k'], params['l']
        t_max = params.get('t_max', 3)
        coefficient = conjecture2_coefficient(k, l)
        fit = blowup_leading_fit(k, l + 2, range(1, t_max + 1), workers=workers)
        details = coefficient.to_dict()
        details['fit'] = [{'t': int(r.t), 'n': int(r.n),
                           'exact_count': str(r.exact_count),
                           'walk_count': str(r.walk_count),
                           'ratio': fraction_str(r.ratio)}
                          for r in fit.itertuples()]
        if not coefficient.agree:
            details['note'] = ('binomial sum {} and walk-derived coefficient {} '
                               'differ by the factor (l+2)/k = {}'.format(
                                   coefficient.binomial_sum,
                                   fraction_str(coefficient.walk_reference),
                                   fraction_str(Fraction(l + 2, k))))
        return ProbeReport(conjecture, {'k': k, 'l': l, 't_max': t_max},
                           None, [], details)

    if conjecture == '1':
        n, k = params['n'], params['k']
        cap = CONJECTURE1_MAX_N
        constraint = ConstraintClass.triangle_free(induced=True)
    elif conjecture == 'observation':
        n, k = params['n'], params['k']
        cap = OBSERVATION_MAX_N
        constraint = ConstraintClass.observation(k)
    else:
        raise ValueError('Value for conjecture is one of "1", "2" or "observation".')
    if n > cap:
        raise ValueError('Conjecture {} probes support n <= {}, got {}.'.format(
            conjecture, cap, n))

    search = (ExtremalSearch(n, k, constraint=constraint, workers=workers)
              .generate()
              .evaluate())
    bound_floor = n ** k // k ** k
    findings = [{'graph6': write_graph6(g).decode('ascii'), 'count': str(c)}
                for g, c in zip(search.graphs, search.counts)
                if c > bound_floor]
    for finding in findings:
        logger.warning('conjecture %s: %s has %s induced C_%d, above %d',
                       conjecture, finding['graph6'], finding['count'], k,
                       bound_floor)
    best = max(search.counts, default=0)
    details = {'max_count': str(best), 'bound_floor': str(bound_floor),
               'reference_bound': fraction_str(induced_cycle_reference_bound(n, k)),
               'classes_examined': str(len(search.graphs)),
               'extremal_graphs': [write_graph6(g).decode('ascii')
                                   for g in search.get_extremal_graphs()]}
    return ProbeReport(conjecture, {'n': n, 'k': k}, not findings,
                       findings, details)
