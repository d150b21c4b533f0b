"""Element-table kernels.

A finite permutation group is enumerated once into an ``(order, degree)``
table of image rows sorted lexicographically. An element is then identified
by its row index, and a row is located from the images of the group's base
points: inside a group those images determine the element, so the integer
key ``sum(row[base[t]] * degree**t)`` is unique among members.

Each kernel exists twice: a numba ``@njit`` loop and a vectorised numpy
path. ``REGCOMPLEX_NO_NUMBA=1`` (or numba being absent) selects numpy.
Both paths return identical arrays; ``tests/test_kernels.py`` checks it and
``benchmarks/bench_kernels.py`` times them against each other.
"""
import os

import numpy as np

try:
    import numba as _nb
except ImportError:  # pragma: no cover - numba is an optional extra
    _nb = None


def _flag_set(name):
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes", "on"}


HAVE_NUMBA = _nb is not None
USE_NUMBA = HAVE_NUMBA and not _flag_set("REGCOMPLEX_NO_NUMBA")
BACKEND = "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------- numpy path

def _np_keys(rows, base, pows):
    return rows[..., base].astype(np.int64) @ pows


def _np_locate(keys, sorted_keys, key_pos):
    pos = np.searchsorted(sorted_keys, keys)
    pos = np.minimum(pos, len(sorted_keys) - 1)
    found = sorted_keys[pos] == keys
    return np.where(found, key_pos[pos], -1)


def np_mul(elems, base, pows, sorted_keys, key_pos, a, b):
    """Indices of ``elems[a[k]] * elems[b[k]]`` (apply a first, then b)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.size == 0:
        return np.empty(0, dtype=np.int64)
    # only the base columns of the product are needed for its key
    pb = elems[a][:, base]
    img = elems[b[:, None], pb]
    keys = img.astype(np.int64) @ pows
    return _np_locate(keys, sorted_keys, key_pos)


def np_lookup(elems, base, pows, sorted_keys, key_pos, rows):
    rows = np.asarray(rows, dtype=elems.dtype)
    if rows.shape[0] == 0:
        return np.empty(0, dtype=np.int64)
    idx = _np_locate(_np_keys(rows, base, pows), sorted_keys, key_pos)
    hit = idx >= 0
    same = np.zeros(len(rows), dtype=bool)
    same[hit] = np.all(elems[idx[hit]] == rows[hit], axis=1)
    return np.where(same, idx, -1)


def np_coset_labels(elems, base, pows, sorted_keys, key_pos, sub):
    """Label every element by the right coset ``sub * g`` containing it.

    Cosets are numbered in order of their least element, which is also the
    canonical (lexicographically least) representative.
    """
    n = elems.shape[0]
    labels = np.full(n, -1, dtype=np.int64)
    reps = []
    sub = np.asarray(sub, dtype=np.int64)
    g = 0
    while g < n:
        if labels[g] < 0:
            members = np_mul(elems, base, pows, sorted_keys, key_pos,
                             sub, np.full(len(sub), g, dtype=np.int64))
            labels[members] = len(reps)
            reps.append(g)
        g += 1
    return labels, np.asarray(reps, dtype=np.int64)


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:
    _jit = _nb.njit(cache=True, nogil=True)

    @_jit
    def _nb_find(sorted_keys, key_pos, key):
        lo = 0
        hi = sorted_keys.shape[0]
        while lo < hi:
            mid = (lo + hi) >> 1
            if sorted_keys[mid] < key:
                lo = mid + 1
            else:
                hi = mid
        if lo < sorted_keys.shape[0] and sorted_keys[lo] == key:
            return key_pos[lo]
        return -1

    @_jit
    def _nb_mul_one(elems, base, pows, sorted_keys, key_pos, x, y):
        key = 0
        for t in range(base.shape[0]):
            key += np.int64(elems[y, elems[x, base[t]]]) * pows[t]
        return _nb_find(sorted_keys, key_pos, key)

    @_jit
    def nb_mul(elems, base, pows, sorted_keys, key_pos, a, b):
        out = np.empty(a.shape[0], dtype=np.int64)
        for k in range(a.shape[0]):
            out[k] = _nb_mul_one(elems, base, pows, sorted_keys, key_pos, a[k], b[k])
        return out

    @_jit
    def nb_lookup(elems, base, pows, sorted_keys, key_pos, rows):
        out = np.empty(rows.shape[0], dtype=np.int64)
        for k in range(rows.shape[0]):
            key = 0
            for t in range(base.shape[0]):
                key += np.int64(rows[k, base[t]]) * pows[t]
            idx = _nb_find(sorted_keys, key_pos, key)
            if idx >= 0:
                for x in range(rows.shape[1]):
                    if rows[k, x] != elems[idx, x]:
                        idx = -1
                        break
            out[k] = idx
        return out

    @_jit
    def nb_coset_labels(elems, base, pows, sorted_keys, key_pos, sub):
        n = elems.shape[0]
        labels = np.full(n, -1, dtype=np.int64)
        reps = np.empty(n, dtype=np.int64)
        count = 0
        for g in range(n):
            if labels[g] < 0:
                for k in range(sub.shape[0]):
                    labels[_nb_mul_one(elems, base, pows, sorted_keys, key_pos, sub[k], g)] = count
                reps[count] = g
                count += 1
        return labels, reps[:count].copy()


# ---------------------------------------------------------------- dispatch

def _i64(x):
    return np.ascontiguousarray(x, dtype=np.int64)


def mul(table, a, b):
    """Pairwise products inside ``table`` (an ``ElementTable``)."""
    a = _i64(a)
    b = _i64(b)
    if USE_NUMBA:
        return nb_mul(table.elems, table.base, table.pows, table.sorted_keys,
                      table.key_pos, a, b)
    return np_mul(table.elems, table.base, table.pows, table.sorted_keys,
                  table.key_pos, a, b)


def lookup(table, rows):
    rows = np.ascontiguousarray(rows, dtype=table.elems.dtype)
    if rows.ndim == 1:
        rows = rows[None, :]
    if USE_NUMBA:
        return nb_lookup(table.elems, table.base, table.pows, table.sorted_keys,
                         table.key_pos, rows)
    return np_lookup(table.elems, table.base, table.pows, table.sorted_keys,
                     table.key_pos, rows)


def coset_labels(table, sub):
    sub = _i64(sub)
    if USE_NUMBA:
        return nb_coset_labels(table.elems, table.base, table.pows,
                               table.sorted_keys, table.key_pos, sub)
    return np_coset_labels(table.elems, table.base, table.pows,
                           table.sorted_keys, table.key_pos, sub)
