"""Numeric inner loops with a numba backend and a pure-numpy fallback.

The numba kernels are used when numba imports and ``WIKIMAP_DISABLE_NUMBA``
is unset (or ``0``). Both backends are deterministic; they agree exactly on
integer results and to rounding on floating point ones, since summation
order differs.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLE = os.environ.get("WIKIMAP_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLE:
        raise ImportError("numba disabled by WIKIMAP_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


# ---------------------------------------------------------------- numpy

def _pair_keys_numpy(indptr, indices, n_cols):
    """Keys ``i * n_cols + j`` for every category pair i < j within each row."""
    degree = np.diff(indptr)
    parts = []
    for d in np.unique(degree):
        if d < 2:
            continue
        rows = np.flatnonzero(degree == d)
        block = indices[indptr[rows][:, None] + np.arange(d)]
        a, b = np.triu_indices(d, 1)
        parts.append((block[:, a] * n_cols + block[:, b]).ravel())
    if not parts:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(parts).astype(np.int64, copy=False)


def _repulsion_pairs_numpy(pos, src, dst, k, min_sep, cutoff):
    delta = pos[src] - pos[dst]
    d = np.hypot(delta[:, 0], delta[:, 1])
    zero = d == 0.0
    if zero.any():
        sign = np.where(src[zero] > dst[zero], 1.0, -1.0)
        delta[zero, 0] = sign * min_sep
        delta[zero, 1] = 0.0
        d[zero] = min_sep
    close = d < min_sep
    if close.any():
        delta[close] *= (min_sep / d[close])[:, None]
        d[close] = min_sep
    factor = k * k / (d * d)
    if cutoff > 0.0:
        factor = np.where(d < cutoff, factor, 0.0)
    n = len(pos)
    fx = np.bincount(src, weights=delta[:, 0] * factor, minlength=n)
    fy = np.bincount(src, weights=delta[:, 1] * factor, minlength=n)
    return np.column_stack((fx, fy))


def _all_pairs(n):
    src, dst = np.nonzero(~np.eye(n, dtype=bool))
    return src, dst


def _grid_pairs(pos, cell):
    lo = pos.min(axis=0)
    cxy = np.floor((pos - lo) / cell).astype(np.int64) + 1
    height = cxy[:, 1].max() + 2
    key = cxy[:, 0] * height + cxy[:, 1]
    order = np.argsort(key, kind="stable")
    skey = key[order]
    n = len(pos)
    srcs, dsts = [], []
    for dx in (-1, 0, 1):
        for dy in (-1, 0, 1):
            nk = (cxy[:, 0] + dx) * height + (cxy[:, 1] + dy)
            start = np.searchsorted(skey, nk, "left")
            stop = np.searchsorted(skey, nk, "right")
            counts = stop - start
            total = counts.sum()
            if total == 0:
                continue
            src = np.repeat(np.arange(n), counts)
            first = np.repeat(np.cumsum(counts) - counts, counts)
            dst = order[np.repeat(start, counts) + np.arange(total) - first]
            keep = src != dst
            srcs.append(src[keep])
            dsts.append(dst[keep])
    if not srcs:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    src = np.concatenate(srcs)
    dst = np.concatenate(dsts)
    # fixed pair order independent of the neighbour sweep
    o = np.lexsort((dst, src))
    return src[o], dst[o]


def _attraction_numpy(pos, ei, ej, w, k):
    delta = pos[ei] - pos[ej]
    d = np.hypot(delta[:, 0], delta[:, 1])
    f = delta * (d * w / k)[:, None]
    n = len(pos)
    fx = np.bincount(ej, weights=f[:, 0], minlength=n) - np.bincount(ei, weights=f[:, 0], minlength=n)
    fy = np.bincount(ej, weights=f[:, 1], minlength=n) - np.bincount(ei, weights=f[:, 1], minlength=n)
    return np.column_stack((fx, fy))


def _move_numpy(pos, disp, temp):
    length = np.hypot(disp[:, 0], disp[:, 1])
    scale = np.where(length > 0, np.minimum(length, temp) / np.where(length > 0, length, 1.0), 0.0)
    step = disp * scale[:, None]
    moved = np.hypot(step[:, 0], step[:, 1])
    return pos + step, float(moved.max()) if len(moved) else 0.0


def _fr_step_exact_numpy(pos, ei, ej, w, k, temp, min_sep):
    src, dst = _all_pairs(len(pos))
    disp = _repulsion_pairs_numpy(pos, src, dst, k, min_sep, 0.0)
    disp += _attraction_numpy(pos, ei, ej, w, k)
    return _move_numpy(pos, disp, temp)


def _fr_step_grid_numpy(pos, ei, ej, w, k, temp, min_sep):
    cell = 2.0 * k
    src, dst = _grid_pairs(pos, cell)
    disp = _repulsion_pairs_numpy(pos, src, dst, k, min_sep, cell)
    disp += _attraction_numpy(pos, ei, ej, w, k)
    return _move_numpy(pos, disp, temp)


# ---------------------------------------------------------------- numba

if HAVE_NUMBA:

    @njit(cache=True)
    def _pair_keys_numba(indptr, indices, n_cols):
        n_rows = len(indptr) - 1
        total = 0
        for r in range(n_rows):
            d = indptr[r + 1] - indptr[r]
            total += d * (d - 1) // 2
        out = np.empty(total, dtype=np.int64)
        pos = 0
        for r in range(n_rows):
            lo = indptr[r]
            hi = indptr[r + 1]
            for a in range(lo, hi):
                base = indices[a] * n_cols
                for b in range(a + 1, hi):
                    out[pos] = base + indices[b]
                    pos += 1
        return out

    @njit(cache=True)
    def _repel(pos, v, u, k, min_sep, cutoff, disp):
        dx = pos[v, 0] - pos[u, 0]
        dy = pos[v, 1] - pos[u, 1]
        d = np.sqrt(dx * dx + dy * dy)
        if d == 0.0:
            dx = min_sep if v > u else -min_sep
            dy = 0.0
            d = min_sep
        elif d < min_sep:
            dx *= min_sep / d
            dy *= min_sep / d
            d = min_sep
        if cutoff > 0.0 and d >= cutoff:
            return
        f = k * k / (d * d)
        disp[v, 0] += dx * f
        disp[v, 1] += dy * f

    @njit(cache=True)
    def _attract_and_move(pos, disp, ei, ej, w, k, temp):
        for e in range(len(ei)):
            i = ei[e]
            j = ej[e]
            dx = pos[i, 0] - pos[j, 0]
            dy = pos[i, 1] - pos[j, 1]
            d = np.sqrt(dx * dx + dy * dy)
            s = d * w[e] / k
            disp[i, 0] -= dx * s
            disp[i, 1] -= dy * s
            disp[j, 0] += dx * s
            disp[j, 1] += dy * s
        out = pos.copy()
        max_moved = 0.0
        for v in range(len(pos)):
            length = np.sqrt(disp[v, 0] ** 2 + disp[v, 1] ** 2)
            if length > 0.0:
                scale = min(length, temp) / length
                sx = disp[v, 0] * scale
                sy = disp[v, 1] * scale
                out[v, 0] += sx
                out[v, 1] += sy
                moved = np.sqrt(sx * sx + sy * sy)
                if moved > max_moved:
                    max_moved = moved
        return out, max_moved

    @njit(cache=True)
    def _fr_step_exact_numba(pos, ei, ej, w, k, temp, min_sep):
        n = len(pos)
        disp = np.zeros((n, 2))
        for v in range(n):
            for u in range(n):
                if u != v:
                    _repel(pos, v, u, k, min_sep, 0.0, disp)
        return _attract_and_move(pos, disp, ei, ej, w, k, temp)

    @njit(cache=True)
    def _fr_step_grid_numba(pos, ei, ej, w, k, temp, min_sep):
        n = len(pos)
        cell = 2.0 * k
        lox = pos[:, 0].min()
        loy = pos[:, 1].min()
        cx = np.empty(n, dtype=np.int64)
        cy = np.empty(n, dtype=np.int64)
        for v in range(n):
            cx[v] = np.int64(np.floor((pos[v, 0] - lox) / cell)) + 1
            cy[v] = np.int64(np.floor((pos[v, 1] - loy) / cell)) + 1
        height = cy.max() + 2
        key = cx * height + cy
        order = np.argsort(key, kind="mergesort")
        skey = key[order]
        disp = np.zeros((n, 2))
        for v in range(n):
            for dx in range(-1, 2):
                for dy in range(-1, 2):
                    nk = (cx[v] + dx) * height + (cy[v] + dy)
                    a = np.searchsorted(skey, nk)
                    while a < n and skey[a] == nk:
                        u = order[a]
                        if u != v:
                            _repel(pos, v, u, k, min_sep, cell, disp)
                        a += 1
        return _attract_and_move(pos, disp, ei, ej, w, k, temp)


# ---------------------------------------------------------------- dispatch

class _Backend:
    def __init__(self, name, pair_keys, fr_step_exact, fr_step_grid):
        self.name = name
        self.pair_keys = pair_keys
        self.fr_step_exact = fr_step_exact
        self.fr_step_grid = fr_step_grid


BACKENDS = {"numpy": _Backend("numpy", _pair_keys_numpy, _fr_step_exact_numpy, _fr_step_grid_numpy)}
if HAVE_NUMBA:
    BACKENDS["numba"] = _Backend("numba", _pair_keys_numba, _fr_step_exact_numba, _fr_step_grid_numba)

_active = BACKENDS["numba" if HAVE_NUMBA else "numpy"]


def active() -> _Backend:
    return _active


def set_backend(name: str) -> _Backend:
    """Switch backends at runtime (benchmarks and cross-checks)."""
    global _active
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}")
    previous = _active
    _active = BACKENDS[name]
    return previous
