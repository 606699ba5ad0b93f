"""Compiled inner loops over CSR adjacency arrays.

Every kernel takes ``indptr``/``indices`` as produced by
:meth:`logdiam.embedded.EmbeddedGraph.csr`.  Ties between equally distant
vertices are always broken towards the smallest vertex id so that results do
not depend on thread scheduling.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange


@njit(cache=True)
def _bfs_into(indptr, indices, src, dist, queue):
    """BFS writing into ``dist`` (must be all -1 on entry).

    Returns (eccentricity, smallest farthest vertex, number reached).
    """
    dist[src] = 0
    queue[0] = src
    lo = 0
    hi = 1
    ecc = 0
    far = src
    while lo < hi:
        v = queue[lo]
        lo += 1
        dv = dist[v]
        if dv > ecc:
            ecc = dv
            far = v
        elif dv == ecc and v < far:
            far = v
        for t in range(indptr[v], indptr[v + 1]):
            w = indices[t]
            if dist[w] < 0:
                dist[w] = dv + 1
                queue[hi] = w
                hi += 1
    return ecc, far, hi


@njit(cache=True)
def bfs_distances(indptr, indices, src):
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int32)
    queue = np.empty(n, dtype=np.int32)
    _bfs_into(indptr, indices, src, dist, queue)
    return dist


@njit(cache=True)
def bfs_farthest(indptr, indices, src):
    """(distances, eccentricity, smallest farthest vertex, reached count)."""
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int32)
    queue = np.empty(n, dtype=np.int32)
    ecc, far, reached = _bfs_into(indptr, indices, src, dist, queue)
    return dist, ecc, far, reached


@njit(parallel=True, cache=True)
def eccentricities(indptr, indices, sources, nblocks):
    """Eccentricity and smallest farthest vertex for each source.

    Sources are split into ``nblocks`` contiguous blocks; each block owns its
    distance and queue buffers.  ``reached`` lets callers detect
    disconnection.
    """
    n = indptr.shape[0] - 1
    m = sources.shape[0]
    ecc = np.empty(m, dtype=np.int64)
    far = np.empty(m, dtype=np.int64)
    reached = np.empty(m, dtype=np.int64)
    for b in prange(nblocks):
        lo = b * m // nblocks
        hi = (b + 1) * m // nblocks
        if lo == hi:
            continue
        dist = np.full(n, -1, dtype=np.int32)
        queue = np.empty(n, dtype=np.int32)
        for t in range(lo, hi):
            e, f, r = _bfs_into(indptr, indices, sources[t], dist, queue)
            ecc[t] = e
            far[t] = f
            reached[t] = r
            for i in range(r):
                dist[queue[i]] = -1
    return ecc, far, reached


@njit(cache=True)
def orbit_lengths(perm):
    """Cycle lengths of a permutation, cycles ordered by smallest element."""
    n = perm.shape[0]
    seen = np.zeros(n, dtype=np.bool_)
    out = np.empty(n, dtype=np.int64)
    k = 0
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        d = s
        while not seen[d]:
            seen[d] = True
            length += 1
            d = perm[d]
        out[k] = length
        k += 1
    return out[:k]


@njit(cache=True)
def component_labels(indptr, indices):
    n = indptr.shape[0] - 1
    comp = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    c = 0
    for s in range(n):
        if comp[s] >= 0:
            continue
        comp[s] = c
        queue[0] = s
        lo = 0
        hi = 1
        while lo < hi:
            v = queue[lo]
            lo += 1
            for t in range(indptr[v], indptr[v + 1]):
                w = indices[t]
                if comp[w] < 0:
                    comp[w] = c
                    queue[hi] = w
                    hi += 1
        c += 1
    return comp


@njit(cache=True)
def _connected_without(indptr, indices, removed):
    n = indptr.shape[0] - 1
    seen = removed.copy()
    left = n - int(removed.sum())
    if left <= 1:
        return True
    s = 0
    while removed[s]:
        s += 1
    queue = np.empty(n, dtype=np.int64)
    queue[0] = s
    seen[s] = True
    lo = 0
    hi = 1
    while lo < hi:
        v = queue[lo]
        lo += 1
        for t in range(indptr[v], indptr[v + 1]):
            w = indices[t]
            if not seen[w]:
                seen[w] = True
                queue[hi] = w
                hi += 1
    return hi == left


@njit(cache=True)
def find_vertex_cut(indptr, indices, size):
    """First vertex subset of ``size`` (lexicographic) whose removal disconnects.

    Returns an empty array when no such subset exists.
    """
    n = indptr.shape[0] - 1
    removed = np.zeros(n, dtype=np.bool_)
    if size < 1 or size > n - 2:
        return np.empty(0, dtype=np.int64)
    idx = np.arange(size)
    while True:
        for i in range(size):
            removed[idx[i]] = True
        ok = _connected_without(indptr, indices, removed)
        for i in range(size):
            removed[idx[i]] = False
        if not ok:
            return idx.astype(np.int64)
        # next combination
        i = size - 1
        while i >= 0 and idx[i] == n - size + i:
            i -= 1
        if i < 0:
            return np.empty(0, dtype=np.int64)
        idx[i] += 1
        for j in range(i + 1, size):
            idx[j] = idx[j - 1] + 1


@njit(cache=True)
def pair_bound_exceeds(profiles, limit):
    """True if some pair of rows has ``min_t (p[i, t] + p[j, t]) > limit``.

    Rows are distance profiles (one column per BFS source); ``i == j`` is
    included, which can only overestimate.
    """
    m, s = profiles.shape
    for i in range(m):
        for j in range(i, m):
            best = profiles[i, 0] + profiles[j, 0]
            for t in range(1, s):
                c = profiles[i, t] + profiles[j, t]
                if c < best:
                    best = c
            if best > limit:
                return True
    return False
