"""Pure Python/numpy versions of the compiled kernels in ``_ckernels.pyx``.

Same signatures and same outputs; selected automatically when the extension
is not built.
"""
from __future__ import annotations

import numpy as np


def _rows(indptr: np.ndarray) -> np.ndarray:
    return np.repeat(np.arange(len(indptr) - 1, dtype=np.int64), np.diff(indptr))


def csr_sum_f64(indptr, indices, x):
    n = len(indptr) - 1
    return np.bincount(_rows(indptr), weights=np.asarray(x)[indices], minlength=n).astype(np.float64)


def csr_sum_i64(indptr, indices, x):
    # prefix sums are exact in int64 as long as the caller's total bound holds
    vals = np.asarray(x, dtype=np.int64)[indices]
    cs = np.zeros(len(vals) + 1, dtype=np.int64)
    np.cumsum(vals, out=cs[1:])
    return cs[indptr[1:]] - cs[indptr[:-1]]


def refine(indptr, indices, colors):
    n = len(indptr) - 1
    colors = np.asarray(colors, dtype=np.int64)
    out = np.empty(n, dtype=np.int64)
    if n == 0:
        return out
    rows = _rows(indptr)
    nc = colors[indices]
    nc = nc[np.lexsort((nc, rows))].tolist()
    ptr = indptr.tolist()
    own = colors.tolist()
    sigs = [(own[v], tuple(nc[ptr[v]:ptr[v + 1]])) for v in range(n)]
    rank = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
    remap: dict[int, int] = {}
    for v, sig in enumerate(sigs):
        out[v] = remap.setdefault(rank[sig], len(remap))
    return out
