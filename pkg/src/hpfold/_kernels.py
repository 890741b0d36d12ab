"""Compiled inner loops for the genetic search.

Move vectors are int64 arrays of direction codes 1..6, hydrophobicity is
a uint8 mask. Positions live on a dense occupancy grid of side 2n+1
centred on the origin; a cell holds 1 + rank of its residue, or 0.
The random stream is numba's own generator, reseeded at every entry
point from a seed drawn by the caller.
"""
import numpy as np
from numba import njit

DU = np.array([0, 1, 0, -1, -1, 0, 1], dtype=np.int64)
DV = np.array([0, 0, 1, 1, 0, -1, -1], dtype=np.int64)


@njit(cache=True)
def seed(s):
    np.random.seed(s)


@njit(cache=True)
def _walk(moves, us, vs):
    us[0] = 0
    vs[0] = 0
    for k in range(moves.shape[0]):
        us[k + 1] = us[k] + DU[moves[k]]
        vs[k + 1] = vs[k] + DV[moves[k]]


@njit(cache=True)
def _place(us, vs, n, grid, off):
    """Write ranks 0..n-1 into the grid; on collision undo and return False."""
    for k in range(n):
        a = us[k] + off
        b = vs[k] + off
        if grid[a, b] != 0:
            for r in range(k):
                grid[us[r] + off, vs[r] + off] = 0
            return False
        grid[a, b] = k + 1
    return True


@njit(cache=True)
def _clear(us, vs, n, grid, off):
    for k in range(n):
        grid[us[k] + off, vs[k] + off] = 0


@njit(cache=True)
def _contacts(us, vs, hmask, grid, off):
    n = hmask.shape[0]
    c = 0
    for i in range(n):
        if hmask[i]:
            for d in range(1, 7):
                j = grid[us[i] + DU[d] + off, vs[i] + DV[d] + off] - 1
                if j >= i + 2 and hmask[j]:
                    c += 1
    return c


@njit(cache=True)
def _evaluate(moves, hmask, grid, off, us, vs):
    """Energy of a move vector, or 1 if it self-intersects."""
    n = hmask.shape[0]
    _walk(moves, us, vs)
    if not _place(us, vs, n, grid, off):
        return 1
    e = -_contacts(us, vs, hmask, grid, off)
    _clear(us, vs, n, grid, off)
    return e


@njit(cache=True)
def evaluate(moves, hmask):
    n = hmask.shape[0]
    grid = np.zeros((2 * n + 1, 2 * n + 1), dtype=np.int32)
    us = np.empty(n, dtype=np.int64)
    vs = np.empty(n, dtype=np.int64)
    return _evaluate(moves, hmask, grid, n, us, vs)


@njit(cache=True)
def _local_search(moves, hmask, e0, budget, grid, off, us, vs):
    """Improvement-only single-move search; ``moves`` is updated in place.

    Each iteration picks a move index, then tries the five other
    directions in random order and keeps the first one that gives a
    self-avoiding walk; the mutant replaces the current solution only if
    its energy is strictly lower. Once every (index, direction) pair has
    been seen since the last improvement the walk is a strict local
    optimum and the remaining iterations are skipped, as none could
    change the outcome.
    """
    n = hmask.shape[0]
    nm = n - 1
    if nm < 1 or budget < 1:
        return e0, 0
    _walk(moves, us, vs)
    _place(us, vs, n, grid, off)
    tried = np.zeros((nm, 7), dtype=np.bool_)
    ntried = 0
    full = 5 * nm
    alts = np.empty(5, dtype=np.int64)
    e = e0
    it = 0
    while it < budget:
        it += 1
        u = np.random.randint(0, nm)
        old = moves[u]
        t = 0
        for d in range(1, 7):
            if d != old:
                alts[t] = d
                t += 1
        for a in range(5):
            r = a + np.random.randint(0, 5 - a)
            d = alts[r]
            alts[r] = alts[a]
            alts[a] = d
            if not tried[u, d]:
                tried[u, d] = True
                ntried += 1
            ddu = DU[d] - DU[old]
            ddv = DV[d] - DV[old]
            ok = True
            for j in range(u + 1, n):
                occ = grid[us[j] + ddu + off, vs[j] + ddv + off]
                if occ != 0 and occ - 1 <= u:
                    ok = False
                    break
            if not ok:
                continue
            # only contacts across the mutation point change
            gained = 0
            lost = 0
            for j in range(u + 1, n):
                if not hmask[j]:
                    continue
                for dd in range(1, 7):
                    i = grid[us[j] + DU[dd] + off, vs[j] + DV[dd] + off] - 1
                    if i >= 0 and i <= u and i <= j - 2 and hmask[i]:
                        lost += 1
                    i = grid[us[j] + ddu + DU[dd] + off, vs[j] + ddv + DV[dd] + off] - 1
                    if i >= 0 and i <= u and i <= j - 2 and hmask[i]:
                        gained += 1
            e_new = e - gained + lost
            if e_new < e:
                for j in range(u + 1, n):
                    grid[us[j] + off, vs[j] + off] = 0
                for j in range(u + 1, n):
                    us[j] += ddu
                    vs[j] += ddv
                    grid[us[j] + off, vs[j] + off] = j + 1
                moves[u] = d
                e = e_new
                tried[:, :] = False
                ntried = 0
            break
        if ntried == full:
            break
    _clear(us, vs, n, grid, off)
    return e, it


@njit(cache=True)
def local_search(moves, hmask, e0, budget, s):
    np.random.seed(s)
    n = hmask.shape[0]
    grid = np.zeros((2 * n + 1, 2 * n + 1), dtype=np.int32)
    us = np.empty(n, dtype=np.int64)
    vs = np.empty(n, dtype=np.int64)
    out = moves.copy()
    e, it = _local_search(out, hmask, e0, budget, grid, n, us, vs)
    return out, e, it


@njit(cache=True)
def reproduce(p1, e1, p2, e2, hmask, kmax, ls_budget, pm, s):
    """Tabu-guided crossover with optional local search on each child.

    Returns the best child for each parent slot (the parent itself if
    nothing strictly better was produced) and the cut points processed,
    in order.
    """
    np.random.seed(s)
    n = hmask.shape[0]
    best1 = p1.copy()
    best2 = p2.copy()
    ncut = n - 2
    if ncut < 1:
        return best1, e1, best2, e2, np.empty(0, dtype=np.int64)
    cuts = np.empty(ncut, dtype=np.int64)
    ncuts = 0
    tabu = np.zeros(n, dtype=np.bool_)
    grid = np.zeros((2 * n + 1, 2 * n + 1), dtype=np.int32)
    us = np.empty(n, dtype=np.int64)
    vs = np.empty(n, dtype=np.int64)
    o1 = np.empty(n - 1, dtype=np.int64)
    o2 = np.empty(n - 1, dtype=np.int64)
    E1 = e1
    E2 = e2
    for _ in range(kmax):
        c = np.random.randint(2, n)
        if not tabu[c]:
            k = c - 1
            o1[:k] = p1[:k]
            o1[k:] = p2[k:]
            o2[:k] = p2[:k]
            o2[k:] = p1[k:]
            f1 = _evaluate(o1, hmask, grid, n, us, vs)
            f2 = _evaluate(o2, hmask, grid, n, us, vs)
            if np.random.random() <= pm:
                if f1 <= 0:
                    f1, _ = _local_search(o1, hmask, f1, ls_budget, grid, n, us, vs)
                if f2 <= 0:
                    f2, _ = _local_search(o2, hmask, f2, ls_budget, grid, n, us, vs)
            if f1 <= 0 and f1 < E1:
                best1[:] = o1
                E1 = f1
            if f2 <= 0 and f2 < E2:
                best2[:] = o2
                E2 = f2
            cuts[ncuts] = c
            ncuts += 1
            tabu[c] = True
            if ncuts == ncut:
                break
    return best1, E1, best2, E2, cuts[:ncuts]
