"""Integer multiplication-table kernels.

These are the only hot numeric loops in the package (everything else is
exact Fraction/cyclotomic arithmetic).  Each kernel has a numba @njit
implementation and a pure-numpy fallback; set ``SKV_PURE_NUMPY=1`` to force
the fallback.  ``benchmarks/bench_kernels.py`` compares the two paths.
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("SKV_PURE_NUMPY", "0") != "1"

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False


def _closure_numpy(table: np.ndarray, gens: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    mask[gens] = True
    while True:
        members = np.flatnonzero(mask)
        prods = table[np.ix_(members, members)]
        new = np.zeros(n, dtype=bool)
        new[prods.ravel()] = True
        if np.array_equal(new, mask):
            return mask
        mask = new


def _conj_classes_numpy(table: np.ndarray, inv: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    ids = np.full(n, -1, dtype=np.int64)
    next_id = 0
    xs = np.arange(n)
    for g in range(n):
        if ids[g] >= 0:
            continue
        conj = table[table[xs, g], inv[xs]]
        ids[conj] = next_id
        next_id += 1
    return ids


if USE_NUMBA:

    @njit(cache=True)
    def _closure_numba(table, gens):  # pragma: no cover - jitted
        n = table.shape[0]
        mask = np.zeros(n, dtype=np.bool_)
        mask[0] = True
        queue = np.empty(n, dtype=np.int64)
        queue[0] = 0
        size = 1
        for g in gens:
            if not mask[g]:
                mask[g] = True
                queue[size] = g
                size += 1
        head = 0
        while head < size:
            a = queue[head]
            head += 1
            for i in range(size):
                b = queue[i]
                for p in (table[a, b], table[b, a]):
                    if not mask[p]:
                        mask[p] = True
                        queue[size] = p
                        size += 1
        return mask

    @njit(cache=True)
    def _conj_classes_numba(table, inv):  # pragma: no cover - jitted
        n = table.shape[0]
        ids = np.full(n, -1, dtype=np.int64)
        next_id = 0
        for g in range(n):
            if ids[g] >= 0:
                continue
            for x in range(n):
                ids[table[table[x, g], inv[x]]] = next_id
            next_id += 1
        return ids


def closure_mask(table: np.ndarray, gens) -> np.ndarray:
    """Boolean membership mask of the subgroup generated by ``gens``."""
    gens = np.asarray(list(gens), dtype=np.int64)
    if USE_NUMBA:
        return np.asarray(_closure_numba(table, gens))
    return _closure_numpy(table, gens)


def conjugacy_class_ids(table: np.ndarray, inv: np.ndarray) -> np.ndarray:
    """Class id per element; ids are assigned in order of minimal member."""
    if USE_NUMBA:
        return np.asarray(_conj_classes_numba(table, inv))
    return _conj_classes_numpy(table, inv)
