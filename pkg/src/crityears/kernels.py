"""Hot numeric kernels: numba-jitted loops with a pure-numpy fallback.

Backend selection: the jitted path is used when numba imports cleanly and the
environment variable ``CRITYEARS_NO_NUMBA`` is unset (or "0"). Set
``CRITYEARS_NO_NUMBA=1`` to force the numpy path.

Both backends are required to produce bit-identical arrays, including under
fractional weights: pair expansion emits in (edge, citing-subject,
cited-subject) order on both paths, and keyed reduction accumulates runs of a
stably sorted key array in sequential order. Do not replace the sequential
accumulations with pairwise reductions; cross-backend determinism is load
bearing for the test suite and for thread-count invariance.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only on broken installs
    njit = None
    HAVE_NUMBA = False


def numba_disabled_by_env() -> bool:
    return os.environ.get("CRITYEARS_NO_NUMBA", "0") not in ("", "0")


USE_NUMBA = HAVE_NUMBA and not numba_disabled_by_env()

_EMPTY_KEYS = np.empty(0, dtype=np.int64)
_EMPTY_WTS = np.empty(0, dtype=np.float64)


# ---------------------------------------------------------------------------
# pair expansion: edges -> ordered subject-pair/year keys
#
# key encoding: ((x * n_subjects) + y) * n_years + year_offset, with x, y the
# citing/cited subject codes. Same-code pairs are dropped. Weight is 1.0 per
# ordered pair, or 1 / (deg_citing * deg_cited) under fractional counting.
# ---------------------------------------------------------------------------


def _expand_pairs_numpy(citing, cited, year_off, offsets, codes, n_subjects, n_years, fractional):
    if citing.size == 0:
        return _EMPTY_KEYS, _EMPTY_WTS
    deg_x = offsets[citing + 1] - offsets[citing]
    deg_y = offsets[cited + 1] - offsets[cited]
    per_edge = deg_x * deg_y
    total = int(per_edge.sum())
    edge = np.repeat(np.arange(citing.size, dtype=np.int64), per_edge)
    starts = np.zeros(citing.size, dtype=np.int64)
    np.cumsum(per_edge[:-1], out=starts[1:])
    local = np.arange(total, dtype=np.int64) - np.repeat(starts, per_edge)
    dy = deg_y[edge]
    x = codes[offsets[citing[edge]] + local // dy].astype(np.int64)
    y = codes[offsets[cited[edge]] + local % dy].astype(np.int64)
    keep = x != y
    keys = ((x * n_subjects + y) * n_years + year_off[edge])[keep]
    if fractional:
        weights = (1.0 / per_edge.astype(np.float64))[edge][keep]
    else:
        weights = np.ones(keys.size, dtype=np.float64)
    return keys, weights


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _expand_pairs_jit(citing, cited, year_off, offsets, codes, n_subjects, n_years, fractional):
        total = 0
        for e in range(citing.size):
            total += (offsets[citing[e] + 1] - offsets[citing[e]]) * (
                offsets[cited[e] + 1] - offsets[cited[e]]
            )
        keys = np.empty(total, dtype=np.int64)
        weights = np.empty(total, dtype=np.float64)
        pos = 0
        for e in range(citing.size):
            x0 = offsets[citing[e]]
            x1 = offsets[citing[e] + 1]
            y0 = offsets[cited[e]]
            y1 = offsets[cited[e] + 1]
            w = 1.0
            if fractional:
                w = 1.0 / ((x1 - x0) * (y1 - y0))
            yo = year_off[e]
            for i in range(x0, x1):
                x = np.int64(codes[i])
                for j in range(y0, y1):
                    y = np.int64(codes[j])
                    if x == y:
                        continue
                    keys[pos] = (x * n_subjects + y) * n_years + yo
                    weights[pos] = w
                    pos += 1
        return keys[:pos].copy(), weights[:pos].copy()

    def _expand_pairs_numba(citing, cited, year_off, offsets, codes, n_subjects, n_years, fractional):
        if citing.size == 0:
            return _EMPTY_KEYS, _EMPTY_WTS
        return _expand_pairs_jit(
            citing, cited, year_off, offsets, codes,
            np.int64(n_subjects), np.int64(n_years), fractional,
        )

else:
    _expand_pairs_numba = None


# ---------------------------------------------------------------------------
# keyed reduction: sum weights per distinct key
# ---------------------------------------------------------------------------


def _reduce_sorted_numpy(ks, ws):
    boundaries = np.empty(ks.size, dtype=bool)
    boundaries[0] = True
    np.not_equal(ks[1:], ks[:-1], out=boundaries[1:])
    group = np.cumsum(boundaries) - 1
    sums = np.zeros(int(group[-1]) + 1, dtype=np.float64)
    np.add.at(sums, group, ws)  # sequential in sorted order, matches the jit loop
    return ks[boundaries], sums


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _reduce_sorted_jit(ks, ws):
        n = ks.size
        m = 1
        for i in range(1, n):
            if ks[i] != ks[i - 1]:
                m += 1
        out_keys = np.empty(m, dtype=np.int64)
        out_sums = np.empty(m, dtype=np.float64)
        j = 0
        out_keys[0] = ks[0]
        acc = ws[0]
        for i in range(1, n):
            if ks[i] != ks[i - 1]:
                out_sums[j] = acc
                j += 1
                out_keys[j] = ks[i]
                acc = ws[i]
            else:
                acc += ws[i]
        out_sums[j] = acc
        return out_keys, out_sums

else:
    _reduce_sorted_jit = None


def _reduce_keyed(keys, weights, use_numba):
    if keys.size == 0:
        return _EMPTY_KEYS, _EMPTY_WTS
    order = np.argsort(keys, kind="stable")
    ks = keys[order]
    ws = weights[order]
    if use_numba:
        return _reduce_sorted_jit(ks, ws)
    return _reduce_sorted_numpy(ks, ws)


def _reduce_keyed_numpy(keys, weights):
    return _reduce_keyed(keys, weights, False)


def _reduce_keyed_numba(keys, weights):
    return _reduce_keyed(keys, weights, True)


# ---------------------------------------------------------------------------
# metric arrays: elementwise balance / volume / signal
#
# balance is evaluated as the literal 1 - |ir - ic| / max(ir, ic) so the
# rounding sequence matches the scalar reference implementation exactly.
# ---------------------------------------------------------------------------


def _metric_arrays_numpy(ir, ic):
    hi = np.maximum(ir, ic)
    ib = np.zeros_like(hi)
    nz = hi > 0
    ib[nz] = 1.0 - np.abs(ir[nz] - ic[nz]) / hi[nz]
    kf = 0.5 * ir + 0.5 * ic
    return ib, kf, ib * kf


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _metric_arrays_jit(ir, ic):
        ib = np.zeros_like(ir)
        kf = np.empty_like(ir)
        z = np.empty_like(ir)
        flat_ir = ir.ravel()
        flat_ic = ic.ravel()
        flat_ib = ib.ravel()
        flat_kf = kf.ravel()
        flat_z = z.ravel()
        for i in range(flat_ir.size):
            a = flat_ir[i]
            b = flat_ic[i]
            hi = a if a > b else b
            if hi > 0:
                d = a - b
                if d < 0:
                    d = -d
                flat_ib[i] = 1.0 - d / hi
            flat_kf[i] = 0.5 * a + 0.5 * b
            flat_z[i] = flat_ib[i] * flat_kf[i]
        return ib, kf, z

    def _metric_arrays_numba(ir, ic):
        return _metric_arrays_jit(
            np.ascontiguousarray(ir), np.ascontiguousarray(ic)
        )

else:
    _metric_arrays_numba = None


# public dispatchers ---------------------------------------------------------

if USE_NUMBA:
    expand_pairs = _expand_pairs_numba
    reduce_keyed = _reduce_keyed_numba
    metric_arrays = _metric_arrays_numba
else:
    expand_pairs = _expand_pairs_numpy
    reduce_keyed = _reduce_keyed_numpy
    metric_arrays = _metric_arrays_numpy


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
