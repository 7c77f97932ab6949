"""Compiled inner loops: BFS over partial graphs and the sequential conditional sampler.

Everything here works on plain arrays so the functions can be jitted with
``nogil=True`` and driven from worker threads.
"""
import numpy as np
from numba import njit

# distance of an unreachable node
INF_DIST = np.int64(2**31 - 1)
# a bound meaning "any finite distance", i.e. plain connectivity
UNBOUNDED = np.int64(2**31 - 2)


@njit(cache=True, nogil=True)
def bfs(indptr, nbr, eid, up, source, dist, queue):
    """Hop distances from ``source`` using only edges with ``up[e]`` set.

    ``dist`` and ``queue`` are caller-owned scratch arrays of length n.
    """
    n = indptr.shape[0] - 1
    for v in range(n):
        dist[v] = INF_DIST
    dist[source] = 0
    queue[0] = source
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u] + 1
        for k in range(indptr[u], indptr[u + 1]):
            if up[eid[k]]:
                v = nbr[k]
                if dist[v] == INF_DIST:
                    dist[v] = du
                    queue[tail] = v
                    tail += 1


@njit(cache=True, nogil=True)
def max_terminal_distance(indptr, nbr, eid, up, terminals, dist, queue):
    worst = 0
    nt = terminals.shape[0]
    # BFS from all terminals but the last covers every pair
    for i in range(nt - 1):
        bfs(indptr, nbr, eid, up, terminals[i], dist, queue)
        for j in range(i + 1, nt):
            d = dist[terminals[j]]
            if d == INF_DIST:
                return INF_DIST
            if d > worst:
                worst = d
    return worst


@njit(cache=True, nogil=True)
def batch_max_distance(indptr, nbr, eid, ups, terminals):
    n = indptr.shape[0] - 1
    dist = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    out = np.empty(ups.shape[0], dtype=np.int64)
    for b in range(ups.shape[0]):
        out[b] = max_terminal_distance(indptr, nbr, eid, ups[b], terminals, dist, queue)
    return out


@njit(cache=True, nogil=True)
def _not_z(q, set_ptr, set_members, set_is_cut, set_region, region_kind, tfail, kfail):
    # tfail[i] = prod over pathsets of (1 - P(all up)); kfail likewise for cutsets
    nreg = region_kind.shape[0]
    for i in range(nreg):
        tfail[i] = 1.0
        kfail[i] = 1.0
    for s in range(set_ptr.shape[0] - 1):
        prod = 1.0
        if set_is_cut[s]:
            for k in range(set_ptr[s], set_ptr[s + 1]):
                prod *= 1.0 - q[set_members[k]]
            kfail[set_region[s]] *= 1.0 - prod
        else:
            for k in range(set_ptr[s], set_ptr[s + 1]):
                prod *= q[set_members[k]]
            tfail[set_region[s]] *= 1.0 - prod
    z = 0.0
    for i in range(nreg):
        kind = region_kind[i]
        if kind == 0:
            z += 1.0 - tfail[i]
        elif kind == 1:
            z += (1.0 - tfail[i]) * (1.0 - kfail[i])
        else:
            z += 1.0 - kfail[i]
    return 1.0 - z


@njit(cache=True, nogil=True)
def sequential_sample(rho, set_ptr, set_members, set_is_cut, set_region, region_kind,
                      uniforms, out):
    """Draw Omega sub-configurations edge by edge from the law conditioned on not-Z.

    Returns -1 on success, otherwise the row index where the conditioning
    probability vanished.
    """
    k_omega = rho.shape[0]
    nreg = region_kind.shape[0]
    q = np.empty(k_omega)
    tfail = np.empty(nreg)
    kfail = np.empty(nreg)
    for b in range(uniforms.shape[0]):
        for j in range(k_omega):
            q[j] = rho[j]
        denom = _not_z(q, set_ptr, set_members, set_is_cut, set_region, region_kind,
                       tfail, kfail)
        for j in range(k_omega):
            if denom < 1e-300:
                return b
            q[j] = 1.0
            num_up = _not_z(q, set_ptr, set_members, set_is_cut, set_region, region_kind,
                            tfail, kfail)
            p_up = rho[j] * num_up / denom
            if uniforms[b, j] < p_up:
                out[b, j] = True
                denom = num_up
            else:
                out[b, j] = False
                q[j] = 0.0
                denom = _not_z(q, set_ptr, set_members, set_is_cut, set_region,
                               region_kind, tfail, kfail)
    return -1
