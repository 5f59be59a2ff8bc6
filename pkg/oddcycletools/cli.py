import argparse
import hashlib
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from collections.abc import Sequence
from ._constants import VERSION
from ._io import read_graphs, write_graph6, write_edge_list
from .graph_utils import Graph, odd_girth, cycle_blowup, balanced_blobs
from .cycle_utils import count_cycles, count_induced_cycles
from .proof_utils import verify_theorem
from .gen_utils import ConstraintClass, CONSTRAINT_KINDS
from .api import exhaustive_search
from .heuristics import hill_climb
from .conjecture_utils import conjecture_probe, PROBE_KINDS

TOOL = 'oddcycletools'
EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


@dataclass(frozen=True)
class RunConfig:
    """Validated command line: subcommand, global flags and the options of
    the subcommand."""
    subcommand: str
    json: bool = False
    workers: int = 1
    input: Path | None = None
    fmt: str = 'g6'
    verbose: bool = False
    strict: bool = False
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError('--workers must be at least 1, got {}.'.format(self.workers))
        for name in ('k', 'n', 'cycle', 'budget', 'seed', 'restarts', 'l', 't_max'):
            value = self.options.get(name)
            if value is not None and value < 0:
                raise ValueError('--{} must be nonnegative, got {}.'.format(
                    name.replace('_', '-'), value))
        if self.options.get('restarts') == 0:
            raise ValueError('--restarts must be at least 1.')

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> 'RunConfig':
        values = vars(ns).copy()
        subcommand = values.pop('subcommand')
        if values.get('mode'):
            subcommand = '{} {}'.format(subcommand, values.pop('mode'))
        return cls(subcommand=subcommand,
                   json=values.pop('json'), workers=values.pop('workers'),
                   input=values.pop('input'), fmt=values.pop('format'),
                   verbose=values.pop('verbose'), strict=values.pop('strict'),
                   options=values)

    def digest(self, graphs: Sequence[Graph]) -> str:
        """sha256 over the subcommand, its options, the input format and the
        graph6 records of the input graphs."""
        payload = json.dumps({'subcommand': self.subcommand, 'format': self.fmt,
                              'options': self.options}, sort_keys=True)
        h = hashlib.sha256(payload.encode('utf-8'))
        for g in graphs:
            h.update(b'\n' + write_graph6(g))
        return h.hexdigest()


def _global_flags(parser: argparse.ArgumentParser, *, suppress: bool):
    """Global flags, accepted before or after the subcommand."""
    def default(value):
        return argparse.SUPPRESS if suppress else value
    parser.add_argument('--json', action='store_true', default=default(False),
                        help='emit one JSON document')
    parser.add_argument('--workers', type=int, default=default(1),
                        help='worker threads (default 1)')
    parser.add_argument('--input', type=Path, default=default(None),
                        help='read graphs from FILE instead of standard input')
    parser.add_argument('--format', choices=('g6', 'edges'), default=default('g6'),
                        help='graph format: graph6 lines or edge-list blocks')
    parser.add_argument('--verbose', action='store_true', default=default(False),
                        help='progress messages on standard error')
    parser.add_argument('--strict', action='store_true', default=default(False),
                        help='exit 1 when a conjecture probe reports a finding')


def _blob_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError(
            'expected comma-separated integers, got {!r}'.format(text)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)

    parser = argparse.ArgumentParser(
        prog=TOOL,
        description='Count cycles, verify the (n/k)^k bound for graphs without '
                    'short odd cycles, and search for extremal graphs.')
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest='subcommand', required=True)

    p = sub.add_parser('count', parents=[common], help='k-cycles per input graph')
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--induced', action='store_true', help='chordless cycles only')

    sub.add_parser('odd-girth', parents=[common], help='odd girth per input graph')

    p = sub.add_parser('blowup', parents=[common], help='emit a blow-up of C_M')
    p.add_argument('--cycle', type=int, required=True)
    blobs = p.add_mutually_exclusive_group(required=True)
    blobs.add_argument('--blobs', type=_blob_list, help='blob sizes a,b,c,...')
    blobs.add_argument('--balanced', type=int, help='balanced blow-up on N vertices')

    p = sub.add_parser('verify', parents=[common], help='check the bound and its proof')
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--per-cycle', action='store_true',
                   help='report Claim 2 and the bound chain per cycle')

    p = sub.add_parser('search', help='exhaustive or heuristic extremal search')
    modes = p.add_subparsers(dest='mode', required=True)
    for mode in ('exhaustive', 'hillclimb'):
        m = modes.add_parser(mode, parents=[common])
        m.add_argument('--n', type=int, required=True)
        m.add_argument('--k', type=int, required=True)
        m.add_argument('--constraint', choices=CONSTRAINT_KINDS, default='odd-girth')
        m.add_argument('--induced', action='store_true', help='count chordless cycles')
        if mode == 'exhaustive':
            m.add_argument('--from-input', action='store_true',
                           help='search graph6 input instead of generating')
        else:
            m.add_argument('--seed', type=int, required=True)
            m.add_argument('--budget', type=int, required=True)
            m.add_argument('--restarts', type=int, default=None)

    p = sub.add_parser('conjecture', parents=[common], help='probe a conjecture')
    p.add_argument('which', choices=PROBE_KINDS)
    p.add_argument('--n', type=int)
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--l', type=int)
    p.add_argument('--t-max', type=int, default=3)
    return parser


def _constraint(config: RunConfig) -> ConstraintClass:
    kind, k = config.options['constraint'], config.options['k']
    induced = config.options['induced']
    if kind == 'odd-girth':
        return ConstraintClass.odd_girth_at_least(k, induced=induced)
    if kind == 'triangle-free':
        return ConstraintClass.triangle_free(induced=induced)
    if kind == 'observation':
        return ConstraintClass.observation(k, induced=True)
    return ConstraintClass.unconstrained(induced=induced)


def _read_input(config: RunConfig, stdin) -> list[Graph]:
    if config.input is not None:
        return read_graphs(config.input, fmt=config.fmt)
    return read_graphs(stdin.read().splitlines(), fmt=config.fmt)


def _dispatch(config: RunConfig, stdin) -> tuple[object, list[str], int, list[Graph]]:
    """Run the subcommand: (JSON results, human lines, exit code, input
    graphs)."""
    opts = config.options
    sub = config.subcommand

    if sub == 'count':
        graphs = _read_input(config, stdin)
        counter = count_induced_cycles if opts['induced'] else count_cycles
        counts = [counter(g, opts['k'], workers=config.workers) for g in graphs]
        return ([{'graph': i, 'count': str(c)} for i, c in enumerate(counts)],
                [str(c) for c in counts], EXIT_OK, graphs)

    if sub == 'odd-girth':
        graphs = _read_input(config, stdin)
        girths = [str(odd_girth(g)) for g in graphs]
        return ([{'graph': i, 'odd_girth': s} for i, s in enumerate(girths)],
                girths, EXIT_OK, graphs)

    if sub == 'blowup':
        m = opts['cycle']
        blobs = opts['blobs'] if opts['blobs'] is not None else balanced_blobs(opts['balanced'], m)
        g = cycle_blowup(m, blobs)
        text = (write_edge_list(g).rstrip('\n') if config.fmt == 'edges'
                else write_graph6(g).decode('ascii'))
        return ({'cycle': m, 'blobs': blobs, 'n': g.n, 'graph': text},
                [text], EXIT_OK, [])

    if sub == 'verify':
        graphs = _read_input(config, stdin)
        reports = [verify_theorem(g, opts['k'], workers=config.workers) for g in graphs]
        lines = []
        for i, r in enumerate(reports):
            claim1 = (r.claim1_error if r.claim1 is None
                      else '{}/{}'.format(r.claim1.total.numerator,
                                          r.claim1.total.denominator))
            lines.append('graph {}: {} (odd girth {}, count {}, floor {}, claim1 {})'.format(
                i, r.verdict, r.odd_girth, r.count, r.bound_floor, claim1))
            if r.verdict == 'precondition-unmet':
                lines.append('  precondition failed: odd girth {} < k = {}'.format(
                    r.odd_girth, r.k))
        code = (EXIT_OK if all(r.verdict == 'pass' for r in reports)
                else EXIT_VIOLATION)
        return ([r.to_dict(per_cycle=opts['per_cycle']) for r in reports],
                lines, code, graphs)

    if sub == 'search exhaustive':
        constraint = _constraint(config)
        graphs, candidates = [], None
        if opts['from_input']:
            graphs = _read_input(config, stdin)
            candidates = [g for g in graphs if constraint.admits(g)]
        report = exhaustive_search(opts['n'], opts['k'], constraint,
                                   workers=config.workers, graphs=candidates)
        return report.to_dict(), _search_lines(report), EXIT_OK, graphs

    if sub == 'search hillclimb':
        kwargs = {} if opts['restarts'] is None else {'restarts': opts['restarts']}
        report = hill_climb(opts['n'], opts['k'], _constraint(config),
                            seed=opts['seed'], budget=opts['budget'],
                            workers=config.workers, **kwargs)
        return report.to_dict(), _search_lines(report), EXIT_OK, []

    if sub == 'conjecture':
        which = opts['which']
        if which == '2':
            if opts['l'] is None:
                raise ValueError('conjecture 2 needs --l.')
            params = {'k': opts['k'], 'l': opts['l'], 't_max': opts['t_max']}
        else:
            if opts['n'] is None:
                raise ValueError('conjecture {} needs --n.'.format(which))
            params = {'n': opts['n'], 'k': opts['k']}
        report = conjecture_probe(which, workers=config.workers, **params)
        lines = ['conjecture {}: {}'.format(
            which, {True: 'holds', False: 'violated', None: 'measured'}[report.holds])]
        lines += ['  {}: {}'.format(key, value)
                  for key, value in sorted(report.details.items())]
        lines += ['  finding: {}'.format(f) for f in report.findings]
        code = EXIT_VIOLATION if config.strict and report.findings else EXIT_OK
        return report.to_dict(), lines, code, []

    raise ValueError('Unknown subcommand {!r}.'.format(sub))


def _search_lines(report) -> list[str]:
    lines = ['best {} (floor {}, {} graphs examined, {})'.format(
        report.best_count, report.bound_floor, report.graphs_examined,
        report.mode)]
    if report.reached_bound:
        lines.append('reached floor((n/k)^k)')
    lines += report.extremal_graphs
    return lines


def run(argv: Sequence[str] | None = None, *, stdin=None, stdout=None) -> int:
    """Entry point of the command line: parse argv, run one subcommand,
    print its report.

    Exit codes: 0 on success, 1 when a verified claim or bound fails (or a
    conjecture finding under --strict), 2 on usage or input errors.

    Args:
        argv (list of str, optional): arguments without the program name.
            Defaults to sys.argv[1:].
        stdin (file, optional): defaults to sys.stdin.
        stdout (file, optional): defaults to sys.stdout.

    Returns:
        int
    """
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        config = RunConfig.from_namespace(ns)
    except ValueError as e:
        parser.print_usage(sys.stderr)
        print('{}: error: {}'.format(TOOL, e), file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(stream=sys.stderr,
                        level=logging.INFO if config.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        results, lines, code, graphs = _dispatch(config, stdin)
    except (ValueError, OSError) as e:
        print('{}: error: {}'.format(TOOL, e), file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as e:
        print('{}: {}'.format(TOOL, e), file=sys.stderr)
        return EXIT_VIOLATION

    if config.json:
        document = {'tool': TOOL, 'version': VERSION,
                    'subcommand': config.subcommand,
                    'inputs_digest': config.digest(graphs),
                    'results': results}
        print(json.dumps(document, sort_keys=True, indent=2), file=stdout)
    else:
        for line in lines:
            print(line, file=stdout)
    return code


def main():
    sys.exit(run())
