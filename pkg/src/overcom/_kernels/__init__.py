"""Kernel backend selection.

The hot loops in ``core`` compile with numba when it is available. Setting
``OVERCOM_PURE_NUMPY=1`` forces the interpreted fallback; the same source
runs either way, so results match across backends. ``BACKEND`` names the
active path ("numba" or "numpy").
"""

import os

import numpy as np

from . import core

__all__ = [
    "BACKEND",
    "push_step",
    "walk_matrix",
    "louvain_sweep",
    "overlap_pass_undirected",
    "overlap_pass_directed",
    "overlap_pass_sd",
    "warmup",
]


def _pick_backend() -> str:
    flag = os.environ.get("OVERCOM_PURE_NUMPY", "").strip().lower()
    if flag not in ("", "0", "false"):
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        return "numpy"
    return "numba"


BACKEND = _pick_backend()

if BACKEND == "numba":
    from numba import njit

    _jit = njit(cache=True)
    _push_step = _jit(core.push_step)
    # walk_matrix calls push_step through the module global, so the compiled
    # dispatcher has to be visible there before its caller is compiled
    core.push_step = _push_step
    walk_matrix = _jit(core.walk_matrix)
    louvain_sweep = _jit(core.louvain_sweep)
    overlap_pass_undirected = _jit(core.overlap_pass_undirected)
    overlap_pass_directed = _jit(core.overlap_pass_directed)
    overlap_pass_sd = _jit(core.overlap_pass_sd)

    def push_step(indptr, indices, invd, x):
        out = np.empty_like(x)
        _push_step(indptr, indices, invd, x, out)
        return out
else:
    louvain_sweep = core.louvain_sweep
    overlap_pass_undirected = core.overlap_pass_undirected
    overlap_pass_directed = core.overlap_pass_directed
    overlap_pass_sd = core.overlap_pass_sd

    def push_step(indptr, indices, invd, x):
        # bincount accumulates in arc order, matching the scalar loop exactly
        contrib = np.repeat(x * invd, np.diff(indptr))
        return np.bincount(indices, weights=contrib, minlength=x.shape[0])

    def walk_matrix(indptr, indices, invd, t, out):
        n = invd.shape[0]
        if out.shape[1] != n or out.shape[0] > n:
            raise ValueError("out must be (rows, n) with rows <= n")
        for u in range(out.shape[0]):
            x = np.zeros(n, dtype=np.float64)
            x[u] = 1.0
            for _ in range(t):
                x = push_step(indptr, indices, invd, x)
            out[u] = x
        return out


def warmup() -> str:
    """Run every kernel once on a toy graph so JIT cost lands here."""
    indptr = np.array([0, 1, 2], dtype=np.int64)
    indices = np.array([1, 0], dtype=np.int64)
    ones = np.ones(2, dtype=np.float64)
    push_step(indptr, indices, ones, ones.copy())
    walk_matrix(indptr, indices, ones, 1, np.zeros((2, 2)))
    louvain_sweep(indptr, indices, ones, indptr, indices, ones.copy(),
                  ones.copy(), ones.copy(), ones.copy(), ones.copy(),
                  np.arange(2, dtype=np.int64), np.arange(2, dtype=np.int64), 2.0)
    member = np.zeros((2, 2), dtype=np.uint8)
    member[0, 0] = 1
    member[1, 1] = 1
    buf_i = np.zeros(4, dtype=np.int64)
    buf_f = np.zeros(4, dtype=np.float64)
    buf_b = np.zeros(4, dtype=np.uint8)
    overlap_pass_undirected(indptr, indices, ones, 2.0, 1.0, member.copy(),
                            ones.copy(), buf_i.copy(), buf_i.copy(),
                            buf_f.copy(), buf_f.copy(), buf_b.copy())
    overlap_pass_directed(indptr, indices, indptr, indices, ones, ones, 2.0,
                          1.0, member.copy(), ones.copy(), ones.copy(),
                          buf_i.copy(), buf_i.copy(), buf_f.copy(),
                          buf_f.copy(), buf_b.copy())
    overlap_pass_sd(indptr, indices, indptr, indices, ones * 0.5, ones, 1.0,
                    member.copy(), ones.copy(), buf_i.copy(), buf_i.copy(),
                    buf_f.copy(), buf_f.copy(), buf_b.copy())
    return BACKEND
