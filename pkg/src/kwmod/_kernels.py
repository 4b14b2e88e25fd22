"""Row reduction kernels over F_p.

Two interchangeable implementations of in-place reduced row echelon form:
a numba ``@njit`` loop and a vectorised numpy fallback.  The backend is
chosen once at import time; set ``KWMOD_NO_NUMBA=1`` to force numpy.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


def _env_disables_numba() -> bool:
    return os.environ.get("KWMOD_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


def rref_numpy(A: np.ndarray, p: int, inv: np.ndarray) -> tuple[int, np.ndarray]:
    """Reduce ``A`` (int64, entries in [0, p)) to RREF in place.

    Returns ``(rank, pivot_columns)``.  Pivots are the leftmost nonzero
    entries, scanned column by column, and are normalised to 1.
    """
    rows, cols = A.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * inv[A[r, c]] % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots[r] = c
        r += 1
    return r, pivots[:r].copy()


if HAVE_NUMBA:

    @njit(cache=True)
    def rref_numba(A, p, inv):  # pragma: no cover - exercised via backend tests
        rows, cols = A.shape
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            k = -1
            for i in range(r, rows):
                if A[i, c] != 0:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(cols):
                    t = A[r, j]
                    A[r, j] = A[k, j]
                    A[k, j] = t
            a = inv[A[r, c]]
            for j in range(c, cols):
                A[r, j] = A[r, j] * a % p
            for i in range(rows):
                if i != r:
                    f = A[i, c]
                    if f != 0:
                        for j in range(c, cols):
                            A[i, j] = (A[i, j] - f * A[r, j]) % p
            pivots[r] = c
            r += 1
        return r, pivots[:r].copy()

else:  # pragma: no cover
    rref_numba = None


def active_backend() -> str:
    """Name of the kernel used by :func:`rref_inplace`."""
    if HAVE_NUMBA and not _env_disables_numba():
        return "numba"
    return "numpy"


BACKEND = active_backend()
_RREF = rref_numba if BACKEND == "numba" else rref_numpy


def rref_inplace(A: np.ndarray, p: int, inv: np.ndarray) -> tuple[int, np.ndarray]:
    return _RREF(A, p, inv)
