"""Symmetric-group kernels: numba-compiled when available, numpy otherwise.

Set ``GW_KIT_DISABLE_NUMBA=1`` to force the numpy implementations.
``GW_KIT_THREADS`` caps the numba thread pool.
"""

from __future__ import annotations

import os
import warnings
from itertools import permutations

import numpy as np

DISABLED = os.environ.get("GW_KIT_DISABLE_NUMBA", "").strip() not in ("", "0", "false", "False")

try:
    if DISABLED:
        raise ImportError
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        import numba
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised with the env flag
    HAVE_NUMBA = False

if HAVE_NUMBA and numba.config.THREADING_LAYER == "default":
    numba.config.THREADING_LAYER = "workqueue"

if HAVE_NUMBA and os.environ.get("GW_KIT_THREADS"):
    numba.set_num_threads(max(1, min(int(os.environ["GW_KIT_THREADS"]), numba.config.NUMBA_NUM_THREADS)))

BACKEND = "numba" if HAVE_NUMBA else "numpy"

__all__ = ["BACKEND", "all_permutations", "transpositions", "action_table", "walk",
           "cycle_types", "rank_permutations"]


def all_permutations(m: int) -> np.ndarray:
    """All permutations of range(m) in lexicographic order, one per row."""
    return np.array(list(permutations(range(m))), dtype=np.int64).reshape(-1, m)


def transpositions(m: int) -> np.ndarray:
    return np.array([(a, b) for a in range(m) for b in range(a + 1, m)], dtype=np.int64).reshape(-1, 2)


def _rank_np(perms: np.ndarray) -> np.ndarray:
    n, m = perms.shape
    ranks = np.zeros(n, dtype=np.int64)
    fact = 1
    for i in range(m - 1, -1, -1):
        smaller = (perms[:, i + 1:] < perms[:, i:i + 1]).sum(axis=1)
        ranks += smaller * fact
        fact *= m - i
    return ranks


def _table_np(perms: np.ndarray, trans: np.ndarray) -> np.ndarray:
    n = perms.shape[0]
    table = np.empty((n, trans.shape[0]), dtype=np.int64)
    for k, (a, b) in enumerate(trans):
        moved = perms.copy()
        moved[:, [a, b]] = moved[:, [b, a]]
        table[:, k] = _rank_np(moved)
    return table


def _walk_np(table: np.ndarray, counts: np.ndarray, steps: int) -> np.ndarray:
    cur = counts.copy()
    nt = table.shape[1]
    flat = table.ravel()
    for _ in range(steps):
        nxt = np.zeros_like(cur)
        np.add.at(nxt, flat, np.repeat(cur, nt))
        cur = nxt
    return cur


def _cycles_np(perms: np.ndarray) -> np.ndarray:
    n, m = perms.shape
    out = np.zeros((n, m), dtype=np.int64)
    for row in range(n):
        p = perms[row]
        seen = np.zeros(m, dtype=bool)
        lens = []
        for s in range(m):
            if not seen[s]:
                length = 0
                j = s
                while not seen[j]:
                    seen[j] = True
                    j = p[j]
                    length += 1
                lens.append(length)
        lens.sort(reverse=True)
        out[row, :len(lens)] = lens
    return out


if HAVE_NUMBA:

    @njit(cache=True)
    def _rank_one(p):
        m = p.shape[0]
        r = 0
        for i in range(m):
            smaller = 0
            for j in range(i + 1, m):
                if p[j] < p[i]:
                    smaller += 1
            r = r * (m - i) + smaller
        return r

    @njit(cache=True)
    def _rank_nb(perms):
        n = perms.shape[0]
        out = np.empty(n, dtype=np.int64)
        for k in range(n):
            out[k] = _rank_one(perms[k])
        return out

    @njit(parallel=True, cache=True)
    def _table_nb(perms, trans):
        n, m = perms.shape
        nt = trans.shape[0]
        table = np.empty((n, nt), dtype=np.int64)
        for row in prange(n):
            q = perms[row].copy()
            for k in range(nt):
                a = trans[k, 0]
                b = trans[k, 1]
                q[a], q[b] = q[b], q[a]
                table[row, k] = _rank_one(q)
                q[a], q[b] = q[b], q[a]
        return table

    @njit(cache=True)
    def _walk_nb(table, counts, steps):
        n, nt = table.shape
        cur = counts.copy()
        for _ in range(steps):
            nxt = np.zeros(n, dtype=np.int64)
            for p in range(n):
                c = cur[p]
                if c != 0:
                    for k in range(nt):
                        nxt[table[p, k]] += c
            cur = nxt
        return cur

    @njit(cache=True)
    def _cycles_nb(perms):
        n, m = perms.shape
        out = np.zeros((n, m), dtype=np.int64)
        seen = np.zeros(m, dtype=np.bool_)
        for row in range(n):
            seen[:] = False
            cnt = 0
            for s in range(m):
                if not seen[s]:
                    length = 0
                    j = s
                    while not seen[j]:
                        seen[j] = True
                        j = perms[row, j]
                        length += 1
                    out[row, cnt] = length
                    cnt += 1
            out[row, :cnt] = -np.sort(-out[row, :cnt])
        return out


def rank_permutations(perms: np.ndarray) -> np.ndarray:
    """Lehmer-code ranks (lexicographic index) of each row."""
    return _rank_nb(perms) if HAVE_NUMBA else _rank_np(perms)


def action_table(perms: np.ndarray, trans: np.ndarray) -> np.ndarray:
    """table[p, k] = rank of perms[p] composed with the k-th transposition."""
    return _table_nb(perms, trans) if HAVE_NUMBA else _table_np(perms, trans)


def walk(table: np.ndarray, counts: np.ndarray, steps: int) -> np.ndarray:
    """Push integer weights ``steps`` times along every transposition edge."""
    if counts.dtype == object:
        return _walk_np(table, counts, steps)
    return _walk_nb(table, counts, steps) if HAVE_NUMBA else _walk_np(table, counts, steps)


def cycle_types(perms: np.ndarray) -> np.ndarray:
    """Row k holds the cycle lengths of perms[k], non-increasing and zero padded."""
    return _cycles_nb(perms) if HAVE_NUMBA else _cycles_np(perms)
