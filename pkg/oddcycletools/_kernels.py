import numba
import numpy as np


@numba.njit(cache=True, nogil=True)
def _distances_above_root(indptr, indices, root, dist, queue):
    """BFS distances from root inside the vertices >= root; -1 elsewhere."""
    n = dist.shape[0]
    for v in range(n):
        dist[v] = -1
    dist[root] = 0
    head = 0
    tail = 1
    queue[0] = root
    while head < tail:
        u = queue[head]
        head += 1
        for e in range(indptr[u], indptr[u + 1]):
            w = indices[e]
            if w > root and dist[w] < 0:
                dist[w] = dist[u] + 1
                queue[tail] = w
                tail += 1


@numba.njit(cache=True, nogil=True)
def count_rooted_cycles(adj, indptr, indices, k, induced, root_lo, root_hi):
    """Number of k-cycles (chordless ones if induced) whose minimum vertex
    lies in [root_lo, root_hi).

    Each cycle is counted once, as the path r, v1, ..., v_{k-1} with r its
    minimum vertex and v1 < v_{k-1}.  A vertex placed at position i must be
    within distance k - i of r, otherwise the path cannot close in time.
    """
    n = adj.shape[0]
    total = 0
    path = np.empty(k, dtype=np.int64)
    ptr = np.empty(k + 1, dtype=np.int64)
    on_path = np.zeros(n, dtype=np.bool_)
    dist = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)

    for r in range(root_lo, root_hi):
        _distances_above_root(indptr, indices, r, dist, queue)
        path[0] = r
        depth = 1
        ptr[1] = indptr[r]
        while depth >= 1:
            u = path[depth - 1]
            if ptr[depth] >= indptr[u + 1]:
                depth -= 1
                if depth >= 1:
                    on_path[path[depth]] = False
                continue
            w = indices[ptr[depth]]
            ptr[depth] += 1
            if w <= r or on_path[w] or dist[w] < 0 or dist[w] > k - depth:
                continue
            if depth == k - 1:
                if adj[w, r] and w > path[1]:
                    ok = True
                    if induced:
                        for i in range(1, depth - 1):
                            if adj[w, path[i]]:
                                ok = False
                                break
                    if ok:
                        total += 1
                continue
            if induced:
                chord = False
                for i in range(depth - 1):
                    if adj[w, path[i]]:
                        chord = True
                        break
                if chord:
                    continue
            path[depth] = w
            on_path[w] = True
            depth += 1
            ptr[depth] = indptr[w]
    return total
