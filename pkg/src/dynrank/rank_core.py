"""Rank of a matrix over Z_p under single-entry changes via A-good bases.

A basis ``B`` of Z_p^m is *A-good* when every basis vector ``v`` outside the
kernel of ``A`` is *i-unique* for some row ``i``: ``(Av)_i != 0`` while
``(Aw)_i == 0`` for every other basis vector ``w``.  For such a basis the
kernel vectors of ``B`` span the kernel of ``A``, so

    rank(A) = m - #{v in B : Av = 0}.

Each entry change repairs the basis with at most ``2m`` elementary column
replacements ``x <- x - c * y``, and the cached products ``A @ B`` are
repaired by the same replacements.

:class:`GoodBasisStack` holds many independent states (one prime each) of a
common shape and updates all of them with the same position in one batched
step; this is how the multi-prime, all-pairs and multi-trial trackers get
their parallelism.  :class:`GoodBasisState` is the single-prime case.

Row and column indices in the public API are 1-based.
"""

from __future__ import annotations

from typing import Dict, List, Sequence

import numpy as np

from .modp import MAX_PRIME, InverseTable, rank_mod_p

try:
    from . import _compiled
except ImportError:  # numba missing
    _compiled = None

BACKENDS = ("numpy",) if _compiled is None else ("compiled", "numpy")
DEFAULT_BACKEND = BACKENDS[0]


class GoodBasisStack:
    """``K`` independent A-good bases of ``n x m`` matrices, slot ``k`` modulo ``primes[k]``.

    Each basis vector is stored together with its product: ``_vec[k, v]`` is
    the length ``m + n`` vector ``(B[:, v], A @ B[:, v])``, so one column
    replacement updates both.  Nonzero counts of every row and column of
    ``A @ B`` are kept alongside; they make the kernel test, the rank and
    the search for the vector with principal component ``i`` cost
    ``O(n + m)`` per slot instead of a full scan.

    ``A``, ``B`` and ``AB`` expose ``(K, n, m)``, ``(K, m, m)`` and
    ``(K, n, m)`` views (leading axis = slot).

    ``backend`` picks the update kernel: ``"compiled"`` (a numba loop over
    slots) or ``"numpy"`` (vectorized across slots).  Both produce
    bit-identical states.
    """

    def __init__(self, n: int, m: int, primes: Sequence[int], backend: str | None = None):
        if n < 1 or m < 1:
            raise ValueError("matrix dimensions must be positive")
        primes = [int(q) for q in primes]
        if not primes:
            raise ValueError("at least one prime is required")
        if max(primes) >= MAX_PRIME or min(primes) < 2:
            raise ValueError("primes must lie in [2, 2**31)")
        backend = backend or DEFAULT_BACKEND
        if backend not in BACKENDS:
            raise ValueError(f"unknown or unavailable backend {backend!r}; have {BACKENDS}")
        self.backend = backend
        self.n, self.m = n, m
        self.p = np.array(primes, dtype=np.int64)
        k = len(primes)
        self.A = np.zeros((k, n, m), dtype=np.int64)
        self._vec = np.zeros((k, m, m + n), dtype=np.int64)
        self._vec[:, :, :m] = np.eye(m, dtype=np.int64)
        self._colnz = np.zeros((k, m), dtype=np.int64)
        self._rownz = np.zeros((k, n), dtype=np.int64)
        self._inv = InverseTable(primes)
        self._at = np.arange(k)
        self.updates = 0
        # per-slot column replacements made by the most recent set_entry
        self.replacements = np.zeros(k, dtype=np.int64)

    @property
    def B(self) -> np.ndarray:
        return self._vec[:, :, : self.m].transpose(0, 2, 1)

    @property
    def AB(self) -> np.ndarray:
        return self._vec[:, :, self.m :].transpose(0, 2, 1)

    @property
    def size(self) -> int:
        return len(self.p)

    def set_entry(self, i: int, j: int, values) -> None:
        """Set entry ``(i, j)`` of every slot to ``values`` (scalar or one per slot).

        Values are reduced modulo each slot's prime.  A slot whose entry does
        not change passes through the update untouched.
        """
        if not (1 <= i <= self.n and 1 <= j <= self.m):
            raise IndexError(f"entry ({i}, {j}) outside {self.n}x{self.m} matrix")
        vals = np.broadcast_to(np.asarray(values, dtype=np.int64), (self.size,)) % self.p
        self.updates += 1
        if self.backend == "compiled":
            vals = np.ascontiguousarray(vals)
            _compiled.update_slots(
                self.A, self._vec, self._colnz, self._rownz, self.p, i - 1, j - 1, vals, self.replacements
            )
        else:
            self.replacements = self._update_numpy(i - 1, j - 1, vals)

    def _update_numpy(self, i: int, j: int, vals: np.ndarray) -> np.ndarray:
        m = self.m
        vec, p, at = self._vec, self.p, self._at
        ai = m + i  # coordinate of (A v)_i inside a stored vector

        # u: the vector whose principal component is i, if any.  It is the
        # only vector nonzero at row i and is not unique at an earlier row.
        old_hit = vec[:, :, ai] != 0
        u = old_hit.argmax(axis=1)
        has_u = self._rownz[:, i] == 1
        if i:
            earlier = (vec[at, u, m:ai] != 0) & (self._rownz[:, :i] == 1)
            has_u &= ~earlier.any(axis=1)
        in_kernel = self._colnz == 0

        # only row i of A v changes: (A'v)_i = (Av)_i + delta * v_j
        delta = (vals - self.A[:, i, j]) % p
        self.A[:, i, j] = vals
        row = (vec[:, :, ai] + delta[:, None] * vec[:, :, j]) % p[:, None]
        vec[:, :, ai] = row
        hit = row != 0
        self._colnz += hit
        self._colnz -= old_hit
        self._rownz[:, i] = hit.sum(axis=1)

        V = in_kernel & hit
        has_v = V.any(axis=1)
        u_hit = has_u & hit[at, u]
        vhat = np.where(has_v, V.argmax(axis=1), u)

        # phase 1: make vhat i-unique; everything else with i in S'(x) is reduced by it
        X = hit & (has_v | u_hit)[:, None]
        X[at, vhat] = False
        done = self._eliminate(X, vhat, row)

        # phase 2: u (or its phase-1 replacement) gets a new principal component k
        uhat = has_u & (has_v | ~u_hit)
        unz = vec[at, u, m:] != 0
        phase2 = uhat & unz.any(axis=1)
        if phase2.any():
            krow = vec[at, :, m + unz.argmax(axis=1)]
            Y = (krow != 0) & phase2[:, None]
            Y[at, u] = False
            done += self._eliminate(Y, u, krow)
        return done

    def _eliminate(self, mask: np.ndarray, pivot: np.ndarray, row: np.ndarray) -> np.ndarray:
        """Replace vector x by ``x - row[x] / row[pivot] * pivot`` wherever ``mask`` is set.

        Returns the number of replacements per slot.
        """
        counts = mask.sum(axis=1)
        ks, xs = np.nonzero(mask)
        if ks.size == 0:
            return counts
        m, vec = self.m, self._vec
        pk = self.p[ks]
        piv = pivot[ks]
        coef = row[ks, xs] * self._inv(row[ks, piv], ks) % pk
        old = vec[ks, xs]
        new = (old - coef[:, None] * vec[ks, piv]) % pk[:, None]
        vec[ks, xs] = new

        new_nz = new[:, m:] != 0
        self._colnz[ks, xs] = new_nz.sum(axis=1)
        diff = new_nz.astype(np.int64) - (old[:, m:] != 0)
        # ks is sorted, so per-slot row-count changes are segment sums
        starts = np.flatnonzero(np.r_[True, ks[1:] != ks[:-1]])
        self._rownz[ks[starts]] += np.add.reduceat(diff, starts, axis=0)
        return counts

    def _recount(self) -> None:
        nz = self._vec[:, :, self.m :] != 0
        self._colnz = nz.sum(axis=2)
        self._rownz = nz.sum(axis=1)

    def kernel_mask(self) -> np.ndarray:
        """``(K, m)`` boolean mask of basis vectors lying in the kernel."""
        return self._colnz == 0

    def ranks(self) -> np.ndarray:
        return self.m - self.kernel_mask().sum(axis=1)

    def kernel_columns(self, slot: int = 0) -> List[int]:
        return [int(v) + 1 for v in np.flatnonzero(self.kernel_mask()[slot])]

    def principal_components(self, slot: int = 0) -> Dict[int, int]:
        """Map each non-kernel basis column to the smallest row where it is unique."""
        nz = self.AB[slot] != 0
        unique = nz & (nz.sum(axis=1) == 1)[:, None]
        out = {}
        for v in range(self.m):
            rows = np.flatnonzero(unique[:, v])
            if rows.size:
                out[v + 1] = int(rows[0]) + 1
        return out

    def is_a_good(self, slot: int | None = None) -> bool:
        """Check basis invertibility, cache coherence and uniqueness from scratch."""
        slots = range(self.size) if slot is None else [slot]
        return all(self._check_slot(k) for k in slots)

    def _check_slot(self, k: int) -> bool:
        p = int(self.p[k])
        A, B, AB = self.A[k], self.B[k], self.AB[k]
        if rank_mod_p(B, p) != self.m:
            return False
        if p < (1 << 26):
            product = (A @ B) % p
        else:
            product = (A.astype(object) @ B.astype(object)) % p
        if not np.array_equal(product, AB):
            return False
        nz = AB != 0
        # the nonzero counts are part of the cache too
        if not (np.array_equal(self._colnz[k], nz.sum(axis=0)) and np.array_equal(self._rownz[k], nz.sum(axis=1))):
            return False
        unique = nz & (nz.sum(axis=1) == 1)[:, None]
        outside_kernel = nz.any(axis=0)
        return bool(np.all(unique.any(axis=0) | ~outside_kernel))


class GoodBasisState(GoodBasisStack):
    """A-good basis for a single ``n x m`` matrix over Z_p."""

    def __init__(self, n: int, m: int, p: int, backend: str | None = None):
        super().__init__(n, m, [p], backend)

    @property
    def prime(self) -> int:
        return int(self.p[0])

    def rank(self) -> int:
        return int(self.ranks()[0])

    @property
    def matrix(self) -> np.ndarray:
        return self.A[0]

    @property
    def basis(self) -> np.ndarray:
        return self.B[0]

    @property
    def products(self) -> np.ndarray:
        return self.AB[0]

    @classmethod
    def from_matrices(cls, A, B, p: int, backend: str | None = None) -> "GoodBasisState":
        """Load a given matrix and basis; the caller vouches for A-goodness (see is_a_good)."""
        A = np.asarray(A, dtype=np.int64) % p
        B = np.asarray(B, dtype=np.int64) % p
        n, m = A.shape
        if B.shape != (m, m):
            raise ValueError(f"basis must be {m}x{m}, got {B.shape}")
        state = cls(n, m, p, backend)
        state.A[0] = A
        state.B[0] = B
        state.AB[0] = (A @ B) % p
        state._recount()
        return state
