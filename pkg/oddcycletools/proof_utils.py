import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from collections.abc import Sequence
import numpy as np
import pandas as pd
from ._constants import MIN_PROOF_CYCLE_LENGTH
from .graph_utils import (Graph, iter_bits, bits_to_mask, sphere,
                          distances_from, odd_girth, is_balanced_blowup,
                          INFINITE, OddGirth)
from .cycle_utils import (CycleInstance, enumerate_cycles,
                          count_cycles, count_induced_cycles)


class EmptyASetError(ValueError):
    """A good sequence has an empty A-set, so its weight is undefined.
    This happens for sequences of non-induced cycles."""

    def __init__(self, sequence: 'GoodSequence | tuple[int, ...]', index: int):
        self.sequence = sequence
        self.index = index
        z = sequence.z if isinstance(sequence, GoodSequence) else tuple(sequence)
        super().__init__('A_{} is empty for the sequence {}.'.format(index, list(z)))


def fraction_str(value: Fraction) -> str:
    """Exact 'num/den' string (den is 1 for integers)."""
    value = Fraction(value)
    return '{}/{}'.format(value.numerator, value.denominator)


def _check_proof_length(k: int):
    if k % 2 == 0 or k < MIN_PROOF_CYCLE_LENGTH:
        raise ValueError('The weight machinery needs an odd k >= {}, got {}.'.format(
            MIN_PROOF_CYCLE_LENGTH, k))


@dataclass(frozen=True)
class GoodSequence:
    """A cycle read from one vertex in one direction, with the third and
    fourth entries swapped: z = (u0, u1, u3, u2, u4, ..., u_{k-1}).

    rotation is the index of the starting vertex in the cycle's canonical
    order; orientation is +1 along that order and -1 against it.  The k
    sequences with orientation +1 are D_0, ..., D_{k-1}.
    """
    z: tuple[int, ...]
    cycle: CycleInstance | None = None
    rotation: int = 0
    orientation: int = 1

    @property
    def k(self) -> int:
        return len(self.z)


def good_sequences(c: CycleInstance) -> list[GoodSequence]:
    """All 2k good sequences of an odd cycle with k >= 7: the k rotations
    along the canonical direction (D_0..D_{k-1}) followed by the k against
    it."""
    _check_proof_length(c.k)
    k = c.k
    out = []
    for orientation in (1, -1):
        for j in range(k):
            u = [c.vertices[(j + orientation * i) % k] for i in range(k)]
            z = (u[0], u[1], u[3], u[2]) + tuple(u[4:])
            out.append(GoodSequence(z, c, j, orientation))
    return out


def _path_order(z: Sequence[int], length: int) -> list[int]:
    """First `length` vertices of the traversal z0 z1 z3 z2 z4 z5 ..."""
    order = list(z[:length])
    if length >= 4:
        order[2], order[3] = order[3], order[2]
    return order


def _is_induced_path(g: Graph, path: Sequence[int]) -> bool:
    mask = bits_to_mask(path)
    if mask.bit_count() != len(path):
        return False
    for u, v in zip(path, path[1:]):
        if not g.rows[u] >> v & 1:
            return False
    n_edges = sum((g.rows[v] & mask).bit_count() for v in path) // 2
    return n_edges == len(path) - 1


def _a_set_mask(g: Graph, z: Sequence[int], i: int, k: int) -> int:
    """Bit-vector of A_i(D); only z[0..i-1] is read."""
    if i == 0:
        return g.vertex_mask
    if i == 1:
        return g.rows[z[0]]
    if i == 2:
        return sphere(g, z[1], 2) & ~g.rows[z[0]]
    if i == 3:
        return g.rows[z[1]] & g.rows[z[2]]
    path = _path_order(z, i)
    if not _is_induced_path(g, path):
        return 0
    path_mask = bits_to_mask(path)
    last = path[-1]
    # no neighbours among the path except the end(s) it attaches to:
    if i < k - 1:
        allowed = g.rows[last] & ~path_mask
        for v in path[:-1]:
            allowed &= ~g.rows[v]
        return allowed
    first = path[0]
    allowed = g.rows[last] & g.rows[first] & ~path_mask
    for v in path[1:-1]:
        allowed &= ~g.rows[v]
    return allowed


def _a_set_masks(g: Graph, z: Sequence[int], k: int) -> list[int]:
    return [_a_set_mask(g, z, i, k) for i in range(k)]


def _check_sequence(g: Graph, z: Sequence[int]):
    if len(set(z)) != len(z):
        raise ValueError('Repeated vertex in sequence {}.'.format(list(z)))
    for v in z:
        if not 0 <= v < g.n:
            raise ValueError('Vertex {} out of range for n = {}.'.format(v, g.n))


@dataclass(frozen=True)
class ASetProfile:
    """A_0(D), ..., A_{k-1}(D) for one good sequence D."""
    sets: tuple[frozenset[int], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)


def a_sets(g: Graph, d: GoodSequence) -> ASetProfile:
    """The nested candidate sets of a good sequence D = (z_0, ..., z_{k-1}):

    A_0 = V(G); A_1 = N(z_0); A_2 = {w not in N(z_0) : d(z_1, w) = 2};
    A_3 = N(z_1) & N(z_2); for 4 <= i <= k-2, A_i = {w : z_0 z_1 z_3 z_2
    z_4 ... z_{i-1} w is an induced path}; A_{k-1} = {w : z_0 z_1 z_3 z_2
    z_4 ... z_{k-2} w is an induced cycle}.

    Args:
        g (Graph)
        d (GoodSequence): k distinct vertices of g.

    Returns:
        ASetProfile
    """
    _check_sequence(g, d.z)
    _check_proof_length(d.k)
    masks = _a_set_masks(g, d.z, d.k)
    return ASetProfile(tuple(frozenset(iter_bits(m)) for m in masks))


def weight(g: Graph, d: GoodSequence) -> Fraction:
    """w(D): the product of 1/|A_i(D)| over i = 0..k-1."""
    _check_sequence(g, d.z)
    _check_proof_length(d.k)
    return _weight_from_masks(d, _a_set_masks(g, d.z, d.k))


def _weight_from_masks(d: GoodSequence, masks: list[int]) -> Fraction:
    denominator = 1
    for i, mask in enumerate(masks):
        size = mask.bit_count()
        if not size:
            raise EmptyASetError(d, i)
        denominator *= size
    return Fraction(1, denominator)


@dataclass(frozen=True)
class Claim1Report:
    """Total weight of all good sequences of all k-cycles; Claim 1 says
    it is at most one."""
    k: int
    total: Fraction
    holds: bool
    precondition_met: bool
    n_cycles: int
    per_cycle: tuple[tuple[CycleInstance, Fraction], ...] = field(repr=False)

    def to_dict(self, *, per_cycle: bool = False) -> dict:
        out = {'k': self.k, 'total': fraction_str(self.total),
               'holds': self.holds, 'precondition_met': self.precondition_met,
               'n_cycles': str(self.n_cycles)}
        if per_cycle:
            out['per_cycle'] = [{'cycle': list(c.vertices), 'weight': fraction_str(w)}
                                for c, w in self.per_cycle]
        return out


def claim1_report(g: Graph, k: int) -> Claim1Report:
    """Sum the weights of the 2k good sequences of every k-cycle of g,
    in exact arithmetic.

    The odd-girth precondition is reported, not enforced.  A k-cycle
    with a chord has a sequence with an empty A-set; EmptyASetError is
    raised with that sequence attached.

    Args:
        g (Graph)
        k (int): odd cycle length >= 7.

    Returns:
        Claim1Report
    """
    _check_proof_length(k)
    total = Fraction(0)
    per_cycle = []
    for c in enumerate_cycles(g, k):
        cycle_total = sum((_weight_from_masks(d, _a_set_masks(g, d.z, k))
                           for d in good_sequences(c)), Fraction(0))
        per_cycle.append((c, cycle_total))
        total += cycle_total
    girth = odd_girth(g)
    return Claim1Report(k=k, total=total, holds=total <= 1,
                        precondition_met=girth is INFINITE or girth >= k,
                        n_cycles=len(per_cycle), per_cycle=tuple(per_cycle))


@dataclass(frozen=True)
class PrefixBound:
    """Inductive invariant of Claim 1 for one prefix z_0..z_l: the weight
    of the good sequences starting with it is at most the product of
    1/|A_i| for i <= l."""
    prefix: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction
    holds: bool
    n_sequences: int


def claim1_prefix_bound(g: Graph, prefix: Sequence[int], k: int) -> PrefixBound:
    """Check the prefix bound for prefix = (z_0, ..., z_l), 0 <= l+1 <= k.

    The empty prefix is Claim 1 itself (rhs = 1).  Only w in A_l(D) can
    extend a prefix to a good sequence of some cycle, which is how the
    "at most |A_l(D)| choices" step is read here.

    Args:
        g (Graph)
        prefix (sequence of int): the first l+1 entries of a good sequence.
        k (int): odd cycle length >= 7.

    Returns:
        PrefixBound
    """
    _check_proof_length(k)
    prefix = tuple(prefix)
    if len(prefix) > k:
        raise ValueError('Prefix of length {} is longer than k = {}.'.format(
            len(prefix), k))
    _check_sequence(g, prefix)
    rhs_denominator = 1
    for i in range(len(prefix)):
        size = _a_set_mask(g, prefix, i, k).bit_count()
        if not size:
            raise EmptyASetError(prefix, i)
        rhs_denominator *= size

    lhs = Fraction(0)
    n_sequences = 0
    for c in enumerate_cycles(g, k):
        if not set(prefix) <= c.vertex_set:
            continue
        for d in good_sequences(c):
            if d.z[:len(prefix)] == prefix:
                lhs += _weight_from_masks(d, _a_set_masks(g, d.z, k))
                n_sequences += 1
    rhs = Fraction(1, rhs_denominator)
    return PrefixBound(prefix=prefix, lhs=lhs, rhs=rhs, holds=lhs <= rhs,
                       n_sequences=n_sequences)


@dataclass(frozen=True)
class SizeMatrix:
    """entries[i][j] = |A_i(D_j)| for the k same-orientation good
    sequences D_j of one cycle."""
    n: int
    entries: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self.entries]

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def to_frame(self) -> pd.DataFrame:
        """Rows A_0..A_{k-1}, columns D_0..D_{k-1}."""
        return pd.DataFrame(
            self.to_array(),
            index=['A_{}'.format(i) for i in range(self.k)],
            columns=['D_{}'.format(j) for j in range(self.k)])


def _forward_masks(g: Graph, c: CycleInstance) -> list[list[int]]:
    """masks[j][i] = A_i(D_j) as a bit-vector."""
    _check_proof_length(c.k)
    if not c.is_cycle_of(g):
        raise ValueError('{} is not a cycle of the graph.'.format(list(c.vertices)))
    if not c.is_induced_in(g):
        raise ValueError('Cycle {} has a chord.'.format(list(c.vertices)))
    forward = good_sequences(c)[:c.k]
    return [_a_set_masks(g, d.z, c.k) for d in forward]


def size_matrix(g: Graph, c: CycleInstance) -> SizeMatrix:
    """n_{i,j} = |A_i(D_j)| for an induced odd cycle c with k >= 7.
    Row 0 is constantly n and row 1 lists the degrees of v_j."""
    masks = _forward_masks(g, c)
    k = c.k
    entries = tuple(tuple(masks[j][i].bit_count() for j in range(k))
                    for i in range(k))
    return SizeMatrix(n=g.n, entries=entries)


def contribution_bound(neighbor_class: int, k: int) -> Fraction | None:
    """Largest contribution a vertex with that many neighbours on the
    cycle can make, or None when it has three or more."""
    return {0: Fraction(k - 2),
            1: Fraction(2 * k - 5, 2),
            2: Fraction(k - 1)}.get(neighbor_class)


@dataclass(frozen=True)
class VertexContribution:
    """What one vertex adds to the sum of Claim 2."""
    vertex: int
    value: Fraction
    neighbor_class: int
    bound: Fraction | None
    within_bound: bool
    precondition_violated: bool
    # (i, j) with w in A_i(D_j), i >= 1:
    memberships: tuple[tuple[int, int], ...] = field(repr=False)

    def to_dict(self) -> dict:
        return {'vertex': self.vertex, 'value': fraction_str(self.value),
                'class': self.neighbor_class,
                'bound': None if self.bound is None else fraction_str(self.bound),
                'within_bound': self.within_bound,
                'precondition_violated': self.precondition_violated}


def _contribution(g: Graph, c: CycleInstance, masks: list[list[int]],
                  w: int) -> VertexContribution:
    k = c.k
    memberships = tuple((i, j) for j in range(k) for i in range(1, k)
                        if masks[j][i] >> w & 1)
    doubled = sum(1 if i == 1 else 2 for i, _ in memberships)
    value = Fraction(doubled, 2)
    neighbor_class = (g.rows[w] & c.mask).bit_count()
    bound = contribution_bound(neighbor_class, k)
    return VertexContribution(
        vertex=w, value=value, neighbor_class=neighbor_class, bound=bound,
        within_bound=bound is not None and value <= bound,
        precondition_violated=bound is None, memberships=memberships)


def vertex_contribution(g: Graph, c: CycleInstance, w: int) -> VertexContribution:
    """Contribution of w to the sum over j of n_{1,j}/2 + sum_{i>=2}
    n_{i,j}: one half for each A_1(D_j) containing w, one for each other
    A_i(D_j), i >= 2.

    The class is the number of neighbours of w on the cycle; the case
    bounds are k-2 (none), k-3+1/2 (one) and k-1 (two).  Three or more
    neighbours cannot happen without a shorter odd cycle and is flagged.

    Args:
        g (Graph)
        c (CycleInstance): an induced odd cycle, k >= 7.
        w (int): any vertex of g.

    Returns:
        VertexContribution
    """
    if not 0 <= w < g.n:
        raise ValueError('Vertex {} out of range for n = {}.'.format(w, g.n))
    return _contribution(g, c, _forward_masks(g, c), w)


@dataclass(frozen=True)
class StarCheck:
    """Vertices of C at distance exactly two from w, and the neighbours of
    w on C."""
    holds: bool
    distance_two: tuple[int, ...]
    cycle_neighbors: tuple[int, ...]


def star_property(g: Graph, c: CycleInstance, w: int) -> StarCheck:
    """At most three vertices of C lie at distance exactly two from w,
    no two of them adjacent, and w has at most two neighbours on C."""
    dist = distances_from(g, w)
    distance_two = tuple(u for u in c.vertices if dist[u] == 2)
    cycle_neighbors = tuple(u for u in c.vertices if g.rows[w] >> u & 1)
    independent = not any(g.rows[u] & bits_to_mask(distance_two)
                          for u in distance_two)
    holds = (len(distance_two) <= 3 and independent
             and len(cycle_neighbors) <= 2)
    return StarCheck(holds=holds, distance_two=distance_two,
                     cycle_neighbors=cycle_neighbors)


@dataclass(frozen=True)
class Claim2Report:
    """Claim 2 for one cycle: lhs <= rhs = n(k-1), with equality iff every
    vertex has exactly two neighbours on C at distance two along C."""
    cycle: CycleInstance
    lhs: Fraction
    rhs: int
    holds: bool
    equality: bool
    equality_condition_holds: bool
    ledger_matches: bool
    per_vertex: tuple[VertexContribution, ...] = field(repr=False)

    def to_dict(self, *, per_vertex: bool = False) -> dict:
        out = {'cycle': list(self.cycle.vertices), 'lhs': fraction_str(self.lhs),
               'rhs': str(self.rhs), 'holds': self.holds,
               'equality': self.equality,
               'equality_condition_holds': self.equality_condition_holds,
               'ledger_matches': self.ledger_matches}
        if per_vertex:
            out['per_vertex'] = [v.to_dict() for v in self.per_vertex]
        return out


def claim2_report(g: Graph, c: CycleInstance) -> Claim2Report:
    """Evaluate sum_j (n_{1,j}/2 + sum_{i>=2} n_{i,j}) against n(k-1) and
    cross-check it against the per-vertex contributions.

    Args:
        g (Graph)
        c (CycleInstance): an induced odd cycle, k >= 7.

    Returns:
        Claim2Report
    """
    masks = _forward_masks(g, c)
    k = c.k
    doubled = sum(masks[j][1].bit_count()
                  + 2 * sum(masks[j][i].bit_count() for i in range(2, k))
                  for j in range(k))
    lhs = Fraction(doubled, 2)
    rhs = g.n * (k - 1)
    per_vertex = tuple(_contribution(g, c, masks, w) for w in range(g.n))
    position = {v: p for p, v in enumerate(c.vertices)}

    def two_apart(w: int) -> bool:
        ends = [position[u] for u in iter_bits(g.rows[w] & c.mask)]
        return len(ends) == 2 and (ends[1] - ends[0]) % k in (2, k - 2)

    return Claim2Report(
        cycle=c, lhs=lhs, rhs=rhs, holds=lhs <= rhs, equality=lhs == rhs,
        equality_condition_holds=all(two_apart(w) for w in range(g.n)),
        ledger_matches=sum((v.value for v in per_vertex), Fraction(0)) == lhs,
        per_vertex=per_vertex)


@dataclass(frozen=True)
class CycleBound:
    """The chain expr1 <= amgm1 <= amgm2 <= (n/k)^k for one cycle.

    amgm1 is a k-th root in general, so amgm1_pow_k = amgm1^k is stored
    and both comparisons around it are made between k-th powers.
    """
    cycle: CycleInstance
    expr1: Fraction
    amgm1_pow_k: Fraction
    amgm2: Fraction
    final: Fraction
    step1_ok: bool
    step2_ok: bool
    step3_ok: bool
    tight: bool

    @property
    def chain_ok(self) -> bool:
        return self.step1_ok and self.step2_ok and self.step3_ok

    def to_dict(self) -> dict:
        return {'cycle': list(self.cycle.vertices),
                'expr1': fraction_str(self.expr1),
                'amgm1_pow_k': fraction_str(self.amgm1_pow_k),
                'amgm2': fraction_str(self.amgm2),
                'final': fraction_str(self.final),
                'chain_ok': self.chain_ok, 'tight': self.tight}


def cycle_bound(g: Graph, c: CycleInstance) -> CycleBound:
    """Evaluate the per-cycle bound and the two AM-GM steps exactly.

    expr1 = n / sum_j 1/P_j with P_j = (n_{1,j}/2) prod_{i>=2} n_{i,j};
    amgm1 = (n/k) (prod_j P_j)^(1/k);
    amgm2 = (n/k) (S / (k(k-1)))^(k-1) with S the Claim 2 sum;
    final = (n/k)^k.

    Args:
        g (Graph)
        c (CycleInstance): an induced odd cycle, k >= 7.

    Returns:
        CycleBound
    """
    matrix = size_matrix(g, c)
    k, n = matrix.k, matrix.n
    if any(size == 0 for row in matrix.entries for size in row):
        raise ValueError('Zero entry in the size matrix of {}.'.format(
            list(c.vertices)))
    products = []
    contribution_sum = Fraction(0)
    for j in range(k):
        column = matrix.column(j)
        half_degree = Fraction(column[1], 2)
        product = half_degree
        for size in column[2:]:
            product *= size
        products.append(product)
        contribution_sum += half_degree + sum(column[2:])
    scale = Fraction(n, k)
    expr1 = n / sum(1 / p for p in products)
    amgm1_pow_k = scale ** k
    for p in products:
        amgm1_pow_k *= p
    amgm2 = scale * (contribution_sum / (k * (k - 1))) ** (k - 1)
    final = scale ** k
    return CycleBound(
        cycle=c, expr1=expr1, amgm1_pow_k=amgm1_pow_k, amgm2=amgm2,
        final=final,
        step1_ok=expr1 ** k <= amgm1_pow_k,
        step2_ok=amgm1_pow_k <= amgm2 ** k,
        step3_ok=amgm2 <= final,
        tight=expr1 == final)


@dataclass(frozen=True)
class TheoremReport:
    """Every check behind the (n/k)^k bound on one graph."""
    n: int
    k: int
    odd_girth: OddGirth
    precondition_met: bool
    all_cycles_induced: bool
    count: int
    bound_holds: bool
    bound_equality: bool
    bound_floor: int
    attains_floor: bool
    is_balanced_blowup: bool | None
    claim1: Claim1Report | None
    claim1_error: str | None
    claim2_all_hold: bool
    chains_all_ok: bool
    claim2: tuple[Claim2Report, ...] = field(repr=False)
    bounds: tuple[CycleBound, ...] = field(repr=False)

    @property
    def bound(self) -> Fraction:
        return Fraction(self.n, self.k) ** self.k

    @property
    def verdict(self) -> str:
        """'pass', 'fail' or 'precondition-unmet'."""
        if not self.precondition_met:
            return 'precondition-unmet'
        checks = (self.bound_holds, self.all_cycles_induced,
                  self.claim1 is not None and self.claim1.holds,
                  self.claim2_all_hold, self.chains_all_ok)
        return 'pass' if all(checks) else 'fail'

    def to_dict(self, *, per_cycle: bool = False) -> dict:
        out = {'n': self.n, 'k': self.k, 'odd_girth': str(self.odd_girth),
               'precondition_met': self.precondition_met,
               'all_cycles_induced': self.all_cycles_induced,
               'count': str(self.count), 'bound': fraction_str(self.bound),
               'bound_floor': str(self.bound_floor),
               'bound_holds': self.bound_holds,
               'bound_equality': self.bound_equality,
               'attains_floor': self.attains_floor,
               'is_balanced_blowup': self.is_balanced_blowup,
               'claim1': (None if self.claim1 is None
                          else self.claim1.to_dict(per_cycle=per_cycle)),
               'claim1_error': self.claim1_error,
               'claim2_all_hold': self.claim2_all_hold,
               'chains_all_ok': self.chains_all_ok,
               'verdict': self.verdict}
        if per_cycle:
            out['claim2'] = [r.to_dict() for r in self.claim2]
            out['bounds'] = [b.to_dict() for b in self.bounds]
        return out


def verify_theorem(g: Graph, k: int, *, workers: int = 1) -> TheoremReport:
    """Run the whole argument on g: precondition, cycle count against
    (n/k)^k in exact integers, Claim 1, and Claim 2 plus the bound chain
    on every induced k-cycle.  Failures are report fields, never
    exceptions.

    When the count equals floor(n^k / k^k) the report also says whether
    g is a balanced blow-up of C_k.

    Args:
        g (Graph)
        k (int): odd cycle length >= 7.
        workers (int, optional): threads for the cycle counts.  Defaults
            to 1.

    Returns:
        TheoremReport
    """
    _check_proof_length(k)
    girth = odd_girth(g)
    precondition_met = girth is INFINITE or girth >= k
    if not precondition_met:
        warnings.warn('Odd girth {} is below k = {}; the bound is not guaranteed.'.format(girth, k))
    count = count_cycles(g, k, workers=workers)
    n_induced = count_induced_cycles(g, k, workers=workers)
    bound_floor = g.n ** k // k ** k
    attains_floor = count > 0 and count == bound_floor

    try:
        claim1, claim1_error = claim1_report(g, k), None
    except EmptyASetError as e:
        claim1, claim1_error = None, str(e)

    claim2, bounds = [], []
    for c in enumerate_cycles(g, k, induced_only=True):
        claim2.append(claim2_report(g, c))
        bounds.append(cycle_bound(g, c))

    return TheoremReport(
        n=g.n, k=k, odd_girth=girth, precondition_met=precondition_met,
        all_cycles_induced=n_induced == count, count=count,
        bound_holds=k ** k * count <= g.n ** k,
        bound_equality=k ** k * count == g.n ** k,
        bound_floor=bound_floor, attains_floor=attains_floor,
        is_balanced_blowup=is_balanced_blowup(g, k) if attains_floor else None,
        claim1=claim1, claim1_error=claim1_error,
        claim2_all_hold=all(r.holds and r.ledger_matches for r in claim2),
        chains_all_ok=all(b.chain_ok for b in bounds),
        claim2=tuple(claim2), bounds=tuple(bounds))
