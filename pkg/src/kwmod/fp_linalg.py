"""Exact linear algebra over the prime field F_p.

Matrices are dense ``int64`` numpy arrays with entries reduced into
``[0, p)``.  Vectors are rows: a basis of a subspace is a 2-D array whose
rows span it, and ``kernel(M)`` returns the right null space of ``M`` as
rows (``M @ v == 0`` for each row ``v``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from ._kernels import rref_inplace

__all__ = [
    "FpMatrix",
    "KernelBasis",
    "ImageEscapesCodomain",
    "check_prime",
    "inverse_table",
    "reduce_mod",
    "rref",
    "rank",
    "kernel",
    "solve_in_span",
    "restrict_map",
]

MAX_PRIME = 1 << 16


class ImageEscapesCodomain(ValueError):
    """Raised when a linear map sends a domain vector outside the codomain."""


def check_prime(p: int) -> int:
    p = int(p)
    if p < 2 or p >= MAX_PRIME:
        raise ValueError(f"prime {p} outside supported range [2, {MAX_PRIME})")
    if any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return p


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    """``inv[a] * a == 1 (mod p)`` for ``a`` in ``1..p-1``; ``inv[0] == 0``."""
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
    inv.setflags(write=False)
    return inv


def reduce_mod(a, p: int) -> np.ndarray:
    return np.mod(np.asarray(a, dtype=np.int64), p)


@dataclass(frozen=True)
class FpMatrix:
    """A dense matrix over F_p."""

    data: np.ndarray
    p: int

    def __post_init__(self):
        arr = reduce_mod(self.data, self.p)
        if arr.ndim != 2:
            raise ValueError("FpMatrix needs a 2-D array")
        object.__setattr__(self, "data", arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def T(self) -> "FpMatrix":
        return FpMatrix(self.data.T, self.p)

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        return FpMatrix(self.data @ other.data % self.p, self.p)

    def rank(self) -> int:
        return rank(self)

    def kernel(self) -> "KernelBasis":
        return kernel(self)


@dataclass(frozen=True)
class KernelBasis:
    """Echelonised basis of a null space, one vector per row."""

    vectors: np.ndarray
    p: int

    def __len__(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]


def _unwrap(M, p: int | None) -> tuple[np.ndarray, int]:
    if isinstance(M, FpMatrix):
        return M.data, M.p if p is None else p
    if p is None:
        raise TypeError("a prime p is required for raw arrays")
    arr = np.asarray(M, dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return reduce_mod(arr, p), p


def rref(M, p: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    arr, p = _unwrap(M, p)
    A = np.array(arr, dtype=np.int64, copy=True, order="C")
    if A.size == 0:
        return A[:0], np.zeros(0, dtype=np.int64)
    r, pivots = rref_inplace(A, p, inverse_table(p))
    return A[:r], pivots


def rank(M, p: int | None = None) -> int:
    arr, p = _unwrap(M, p)
    if arr.size == 0:
        return 0
    return rref(arr, p)[1].size


def kernel(M, p: int | None = None) -> KernelBasis:
    """Right null space of ``M``, echelonised in the free columns."""
    arr, p = _unwrap(M, p)
    cols = arr.shape[1]
    R, pivots = rref(arr, p)
    free = np.setdiff1d(np.arange(cols), pivots)
    K = np.zeros((free.size, cols), dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = 1
        if pivots.size:
            K[t, pivots] = (-R[:, f]) % p
    return KernelBasis(K, p)


def solve_in_span(basis: np.ndarray, pivots: np.ndarray, vectors: np.ndarray, p: int) -> np.ndarray | None:
    """Coordinates of ``vectors`` (rows) in an RREF ``basis`` with ``pivots``.

    Returns ``None`` if some vector is not in the span.
    """
    vectors = reduce_mod(vectors, p)
    if vectors.ndim == 1:
        vectors = vectors.reshape(1, -1)
    if basis.shape[0] == 0:
        return np.zeros((vectors.shape[0], 0), dtype=np.int64) if not vectors.any() else None
    coords = vectors[:, pivots]
    if not np.array_equal(coords @ basis % p, vectors):
        return None
    return coords


def _basis_of(space) -> np.ndarray:
    mat = getattr(space, "matrix", space)
    return np.asarray(mat, dtype=np.int64)


def restrict_map(
    f: Callable[[np.ndarray], np.ndarray],
    domain,
    codomain,
    p: int | None = None,
) -> FpMatrix:
    """Matrix of ``f`` from ``domain`` to ``codomain`` in their given bases.

    ``domain`` and ``codomain`` are subspaces (anything exposing a
    ``matrix`` of basis rows) or raw basis arrays.  The codomain basis
    must be in reduced row echelon form.  Column ``t`` of the result holds
    the coordinates of ``f(domain_basis[t])``.
    """
    if p is None:
        p = getattr(domain, "p", None) or getattr(codomain, "p", None)
    if p is None:
        raise TypeError("a prime p is required")
    D = _basis_of(domain)
    C = _basis_of(codomain)
    if D.shape[0] == 0:
        return FpMatrix(np.zeros((C.shape[0], 0), dtype=np.int64), p)
    images = reduce_mod(f(D), p)
    if C.shape[0] == 0:
        if images.any():
            raise ImageEscapesCodomain("nonzero image in the zero codomain")
        return FpMatrix(np.zeros((0, D.shape[0]), dtype=np.int64), p)
    pivots = np.array([np.flatnonzero(row)[0] for row in C], dtype=np.int64)
    coords = solve_in_span(C, pivots, images, p)
    if coords is None:
        raise ImageEscapesCodomain("image of the domain is not contained in the codomain")
    return FpMatrix(coords.T, p)
