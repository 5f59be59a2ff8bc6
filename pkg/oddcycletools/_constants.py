# PACKAGE
VERSION = "0.1.0"

# GRAPH REPRESENTATION
# adjacency rows are bit-vectors; graphs above this size are rejected
MAX_VERTICES = 512

# GRAPH6: https://users.cecs.anu.edu.au/~bdm/data/formats.txt
GRAPH6_HEADER = b'>>graph6<<'
GRAPH6_MEDIUM_MAX = 2 ** 18 - 1
GRAPH6_MEDIUM_MARKER = 126
# bytes allowed in a graph6 body:
GRAPH6_MIN_BYTE = 63
GRAPH6_MAX_BYTE = 126

# CYCLES
MIN_CYCLE_LENGTH = 3
MAX_CYCLE_LENGTH = 20
# weight machinery needs A_4 .. A_{k-2} to be distinct from A_{k-1}:
MIN_PROOF_CYCLE_LENGTH = 7
# the Observation class starts at k = 8:
MIN_OBSERVATION_CYCLE_LENGTH = 8

# FEASIBILITY CAPS (documented, desk scale)
ORACLE_MAX_N = 14
CANONICAL_MAX_N = 16
EXHAUSTIVE_MAX_N = 12
CONJECTURE1_MAX_N = 9
OBSERVATION_MAX_N = 10

# HEURISTIC SEARCH
DEFAULT_RESTARTS = 4
DEFAULT_BIPARTITE_DENSITY = 0.5

# report cols order:
GRAPH_METADATA_DF_COLS = [
    'n_vertices', 'n_edges', 'odd_girth', 'count', 'is_extremal']
BLOWUP_FIT_DF_COLS = ['t', 'n', 'exact_count', 'walk_count', 'ratio']
# distinct best graphs kept per restart:
MAX_BEST_GRAPHS = 100
