import networkx as nx
from pathlib import Path
from collections.abc import Iterable, Iterator
from ._constants import (GRAPH6_HEADER, GRAPH6_MEDIUM_MAX,
                         GRAPH6_MEDIUM_MARKER,
                         GRAPH6_MIN_BYTE, GRAPH6_MAX_BYTE)
from .graph_utils import Graph, build_graph


def _as_bytes(text: bytes | str) -> bytes:
    if isinstance(text, str):
        return text.encode('ascii')
    return bytes(text)


def _check_record(record: bytes):
    # networkx indexes past the end on short size fields and reads
    # bytes below 63 as negative bits
    if not record:
        raise ValueError('Empty graph6 record.')
    for byte in record:
        if not GRAPH6_MIN_BYTE <= byte <= GRAPH6_MAX_BYTE:
            raise ValueError('Byte {} outside 63..126 in graph6 record.'.format(byte))
    if record[0] == GRAPH6_MEDIUM_MARKER:
        if len(record) > 1 and record[1] == GRAPH6_MEDIUM_MARKER:
            raise ValueError('Unsupported graph6 size encoding (n > {}).'.format(
                GRAPH6_MEDIUM_MAX))
        if len(record) < 4:
            raise ValueError('Truncated graph6 size field.')


def parse_graph6(text: bytes | str) -> Graph:
    """Decode one graph6 record.  A leading '>>graph6<<' header and
    surrounding whitespace are ignored.

    Args:
        text (bytes or str): the record.

    Returns:
        Graph
    """
    record = _as_bytes(text).strip()
    if record.startswith(GRAPH6_HEADER):
        record = record[len(GRAPH6_HEADER):]
    _check_record(record)
    try:
        G = nx.from_graph6_bytes(record)
    except nx.NetworkXError as e:
        raise ValueError('Malformed graph6 record {!r}: {}'.format(record, e)) from None
    return Graph.from_networkx(G)


def write_graph6(g: Graph, *, header: bool = False) -> bytes:
    """Encode g as a graph6 record (no trailing newline).

    Args:
        g (Graph)
        header (bool, optional): prefix '>>graph6<<'.  Defaults to False.

    Returns:
        bytes
    """
    if g.n > GRAPH6_MEDIUM_MAX:
        raise ValueError('graph6 supports 0 <= n <= {}, got {}.'.format(
            GRAPH6_MEDIUM_MAX, g.n))
    return nx.to_graph6_bytes(g.to_networkx(), header=header).rstrip(b'\n')


def parse_edge_list(text: str) -> Graph:
    """Read one graph from edge-list text: a line 'n m' followed by m
    lines 'u v' (0-based).  Blank lines are skipped."""
    graphs = list(iter_edge_list_graphs(text.splitlines()))
    if len(graphs) != 1:
        raise ValueError('Expected exactly one graph, found {}.'.format(len(graphs)))
    return graphs[0]


def iter_edge_list_graphs(lines: Iterable[str]) -> Iterator[Graph]:
    """Read consecutive edge-list blocks ('n m' then m edge lines)."""
    tokens = (line.split() for line in lines)
    tokens = (t for t in tokens if t)
    for header in tokens:
        if len(header) != 2:
            raise ValueError('Expected a header line "n m", got {!r}.'.format(
                ' '.join(header)))
        n, m = (_parse_int(t) for t in header)
        edges = []
        for _ in range(m):
            pair = next(tokens, None)
            if pair is None:
                raise ValueError('Edge list ended after {} of {} edges.'.format(
                    len(edges), m))
            if len(pair) != 2:
                raise ValueError('Expected an edge line "u v", got {!r}.'.format(
                    ' '.join(pair)))
            edges.append(tuple(_parse_int(t) for t in pair))
        yield build_graph(n, edges)


def write_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = ['{} {}'.format(g.n, len(edges))]
    lines += ['{} {}'.format(u, v) for u, v in edges]
    return '\n'.join(lines) + '\n'


def iter_graph6_lines(lines: Iterable[bytes | str]) -> Iterator[Graph]:
    """Decode a graph6 stream, one record per line; blank lines are
    skipped."""
    for line in lines:
        record = _as_bytes(line).strip()
        if record:
            yield parse_graph6(record)


def read_graphs(source: Path | Iterable[str], *, fmt: str = 'g6') -> list[Graph]:
    """Read every graph from a file path or an iterable of text lines.

    Args:
        source (pathlib Path or iterable of str): where to read from.
        fmt (str): 'g6' for graph6 (one per line) or 'edges' for edge-list
            blocks.  Defaults to 'g6'.

    Returns:
        list of Graph
    """
    if isinstance(source, Path):
        with open(source, encoding='ascii') as f:
            return read_graphs(f.read().splitlines(), fmt=fmt)
    if fmt == 'g6':
        return list(iter_graph6_lines(source))
    elif fmt == 'edges':
        return list(iter_edge_list_graphs(source))
    else:
        raise ValueError('Value for fmt is either "g6" or "edges".')


def _parse_int(token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ValueError('Expected an integer, got {!r}.'.format(token)) from None

