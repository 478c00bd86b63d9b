"""Compiled per-slot version of the A-good basis update.

Same data layout and the same steps as ``GoodBasisStack._update_numpy``; the
numpy version stays as the fallback and as a differential check.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _inverse(a, p):
    t, new_t = 0, 1
    r, new_r = p, a
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    return t % p


@njit(cache=True)
def _combine(vec, colnz, rownz, k, x, y, c, p, m):
    """vec[k, x] -= c * vec[k, y] (mod p), keeping nonzero counts current."""
    for r in range(vec.shape[2]):
        old = vec[k, x, r]
        new = (old - c * vec[k, y, r]) % p
        vec[k, x, r] = new
        if r >= m and (old != 0) != (new != 0):
            step = 1 if new != 0 else -1
            colnz[k, x] += step
            rownz[k, r - m] += step


@njit(cache=True)
def update_slots(A, vec, colnz, rownz, primes, i, j, vals, replacements):
    nslots, m, _ = vec.shape
    ai = m + i
    for k in range(nslots):
        p = primes[k]
        a = vals[k]
        replacements[k] = 0
        if a == A[k, i, j]:
            continue
        delta = (a - A[k, i, j]) % p
        A[k, i, j] = a

        u = -1
        if rownz[k, i] == 1:
            for v in range(m):
                if vec[k, v, ai] != 0:
                    u = v
                    break
            for r in range(i):
                if vec[k, u, m + r] != 0 and rownz[k, r] == 1:
                    u = -1
                    break

        vhat = -1
        hits = 0
        for v in range(m):
            before = vec[k, v, ai]
            after = (before + delta * vec[k, v, j]) % p
            vec[k, v, ai] = after
            if after != 0:
                hits += 1
                if colnz[k, v] == 0 and vhat < 0:
                    vhat = v
                if before == 0:
                    colnz[k, v] += 1
            elif before != 0:
                colnz[k, v] -= 1
        rownz[k, i] = hits
        has_v = vhat >= 0
        u_hit = u >= 0 and vec[k, u, ai] != 0
        if not has_v and u_hit:
            vhat = u

        count = 0
        if vhat >= 0:
            inv = _inverse(vec[k, vhat, ai], p)
            for x in range(m):
                if x != vhat and vec[k, x, ai] != 0:
                    _combine(vec, colnz, rownz, k, x, vhat, vec[k, x, ai] * inv % p, p, m)
                    count += 1

        if u >= 0 and (has_v or not u_hit) and colnz[k, u] > 0:
            kk = m
            while vec[k, u, kk] == 0:
                kk += 1
            inv = _inverse(vec[k, u, kk], p)
            for x in range(m):
                if x != u and vec[k, x, kk] != 0:
                    _combine(vec, colnz, rownz, k, x, u, vec[k, x, kk] * inv % p, p, m)
                    count += 1
        replacements[k] = count


def warm_up() -> None:
    """Trigger compilation (or cache load) on a tiny instance."""
    A = np.zeros((1, 1, 1), dtype=np.int64)
    vec = np.ones((1, 1, 2), dtype=np.int64)
    vec[0, 0, 1] = 0
    zeros = np.zeros((1, 1), dtype=np.int64)
    update_slots(A, vec, zeros.copy(), zeros.copy(), np.array([3]), 0, 0, np.array([1]), np.zeros(1, dtype=np.int64))
