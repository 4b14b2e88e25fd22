"""gl(m|n) and sl(m|n) over F_p in the matrix-unit basis.

Elements live in coordinates: the matrix unit ``e_{a,b}`` (flat box
positions ``a``, ``b``) is coordinate ``a * N + b`` with ``N = m + n``.
A :class:`Subspace` keeps one echelonised basis per parity, so every
subspace built here is Z_2-graded by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .fp_linalg import check_prime, kernel, rank, reduce_mod, rref, solve_in_span
from .partitions import Parity, PartitionPair
from .pyramid import BoxId, Pyramid, dynkin_pyramid

__all__ = [
    "AlgebraContext",
    "InvalidContext",
    "MixedParityInput",
    "SuperMatrix",
    "Subspace",
    "unit",
    "supercommutator",
    "supertrace_form",
    "ad",
    "bracket_rows",
    "form_matrix",
    "nilpotent_e",
    "jordan_e",
    "jordan_strings",
    "grading_subspace",
    "parabolic",
    "cocharacter_weights",
    "dynkin_grading",
    "ChiFunctional",
    "chi_functional",
    "is_closed_under_bracket",
    "is_ideal",
    "is_restricted",
]


class InvalidContext(ValueError):
    pass


class MixedParityInput(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraContext:
    m: int
    n: int
    p: int
    kind: str = "gl"

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or self.m + self.n == 0:
            raise InvalidContext(f"bad size ({self.m}|{self.n})")
        try:
            check_prime(self.p)
        except ValueError as exc:
            raise InvalidContext(str(exc)) from None
        if self.p == 2:
            raise InvalidContext("characteristic 2 is excluded")
        if self.kind not in ("gl", "sl"):
            raise InvalidContext(f"unknown kind {self.kind!r}")
        if self.kind == "sl" and (self.m - self.n) % self.p == 0:
            raise InvalidContext(f"sl({self.m}|{self.n}) needs p not dividing m - n (p={self.p})")

    @property
    def N(self) -> int:
        return self.m + self.n

    @property
    def dim(self) -> int:
        return self.N * self.N

    def gl(self) -> "AlgebraContext":
        return AlgebraContext(self.m, self.n, self.p, "gl")

    def sdim(self) -> tuple[int, int]:
        m, n = self.m, self.n
        even = m * m + n * n - (1 if self.kind == "sl" else 0)
        return even, 2 * m * n

    @cached_property
    def box_parity(self) -> np.ndarray:
        par = np.zeros(self.N, dtype=np.int64)
        par[self.m :] = 1
        return par

    @cached_property
    def unit_parity(self) -> np.ndarray:
        par = self.box_parity
        return ((par[:, None] + par[None, :]) % 2).reshape(-1)

    @cached_property
    def sign(self) -> np.ndarray:
        """+1 on even boxes, -1 on odd boxes."""
        return 1 - 2 * self.box_parity

    @cached_property
    def supertrace_vector(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        idx = np.arange(self.N)
        v[idx * self.N + idx] = self.sign % self.p
        return v

    @cached_property
    def transpose_perm(self) -> np.ndarray:
        N = self.N
        return np.arange(N * N).reshape(N, N).T.reshape(-1)

    def boxes(self) -> list[BoxId]:
        return [BoxId.from_flat(a, self.m) for a in range(self.N)]

    def flat(self, box: BoxId) -> int:
        if box.parity is Parity.EVEN and box.index > self.m or box.parity is Parity.ODD and box.index > self.n:
            raise KeyError(f"box {box} not in gl({self.m}|{self.n})")
        return box.flat(self.m)

    def unit_index(self, i: BoxId, j: BoxId) -> int:
        return self.flat(i) * self.N + self.flat(j)

    def unit_label(self, idx: int) -> str:
        a, b = divmod(int(idx), self.N)
        return f"e[{BoxId.from_flat(a, self.m)},{BoxId.from_flat(b, self.m)}]"


class SuperMatrix:
    """Sparse element of gl(m|n): ``{(row BoxId, col BoxId): scalar}``."""

    __slots__ = ("ctx", "_vec")

    def __init__(self, ctx: AlgebraContext, entries: Mapping[tuple[BoxId, BoxId], int] | None = None):
        self.ctx = ctx
        vec = np.zeros(ctx.dim, dtype=np.int64)
        for (i, j), val in (entries or {}).items():
            vec[ctx.unit_index(i, j)] += int(val)
        self._vec = vec % ctx.p
        self._vec.setflags(write=False)

    @classmethod
    def from_vector(cls, ctx: AlgebraContext, vec) -> "SuperMatrix":
        obj = cls.__new__(cls)
        obj.ctx = ctx
        v = reduce_mod(np.asarray(vec).reshape(-1), ctx.p)
        if v.size != ctx.dim:
            raise ValueError("vector has the wrong length")
        v.setflags(write=False)
        obj._vec = v
        return obj

    @classmethod
    def from_dense(cls, ctx: AlgebraContext, A) -> "SuperMatrix":
        return cls.from_vector(ctx, np.asarray(A).reshape(-1))

    @classmethod
    def zero(cls, ctx: AlgebraContext) -> "SuperMatrix":
        return cls.from_vector(ctx, np.zeros(ctx.dim, dtype=np.int64))

    @property
    def entries(self) -> dict[tuple[BoxId, BoxId], int]:
        out = {}
        N, m = self.ctx.N, self.ctx.m
        for idx in np.flatnonzero(self._vec):
            a, b = divmod(int(idx), N)
            out[(BoxId.from_flat(a, m), BoxId.from_flat(b, m))] = int(self._vec[idx])
        return out

    def to_vector(self) -> np.ndarray:
        return self._vec

    def to_dense(self) -> np.ndarray:
        return self._vec.reshape(self.ctx.N, self.ctx.N)

    @property
    def parity(self) -> str:
        """``"even"``, ``"odd"`` or ``"mixed"``; zero counts as even."""
        par = self.ctx.unit_parity[self._vec != 0]
        if par.size == 0 or not par.any():
            return "even"
        if par.all():
            return "odd"
        return "mixed"

    def is_zero(self) -> bool:
        return not self._vec.any()

    def supertrace(self) -> int:
        return int(self._vec @ self.ctx.supertrace_vector % self.ctx.p)

    def _check(self, other: "SuperMatrix"):
        if other.ctx.m != self.ctx.m or other.ctx.n != self.ctx.n or other.ctx.p != self.ctx.p:
            raise ValueError("matrices belong to different algebras")

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check(other)
        return SuperMatrix.from_vector(self.ctx, self._vec + other._vec)

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check(other)
        return SuperMatrix.from_vector(self.ctx, self._vec - other._vec)

    def __neg__(self) -> "SuperMatrix":
        return SuperMatrix.from_vector(self.ctx, -self._vec)

    def __rmul__(self, scalar: int) -> "SuperMatrix":
        return SuperMatrix.from_vector(self.ctx, self._vec * int(scalar))

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check(other)
        return SuperMatrix.from_dense(self.ctx, self.to_dense() @ other.to_dense())

    def power(self, k: int) -> "SuperMatrix":
        A = np.eye(self.ctx.N, dtype=np.int64)
        B = self.to_dense()
        while k:
            if k & 1:
                A = A @ B % self.ctx.p
            B = B @ B % self.ctx.p
            k >>= 1
        return SuperMatrix.from_dense(self.ctx, A)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (self.ctx.m, self.ctx.n, self.ctx.p) == (other.ctx.m, other.ctx.n, other.ctx.p) and bool(
            np.array_equal(self._vec, other._vec)
        )

    __hash__ = None

    def __repr__(self) -> str:
        terms = [f"{v}*e[{i},{j}]" if v != 1 else f"e[{i},{j}]" for (i, j), v in self.entries.items()]
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> list[dict]:
        return [{"row": str(i), "col": str(j), "val": v} for (i, j), v in self.entries.items()]

    @classmethod
    def from_json(cls, ctx: AlgebraContext, data: Iterable[Mapping]) -> "SuperMatrix":
        acc: dict[tuple[BoxId, BoxId], int] = {}
        for item in data:
            key = (BoxId.parse(item["row"]), BoxId.parse(item["col"]))
            acc[key] = acc.get(key, 0) + int(item["val"])
        return cls(ctx, acc)


def unit(ctx: AlgebraContext, i: BoxId, j: BoxId) -> SuperMatrix:
    return SuperMatrix(ctx, {(i, j): 1})


def _definite_parity(x: SuperMatrix) -> int:
    par = x.parity
    if par == "mixed":
        raise MixedParityInput(f"{x!r} is not homogeneous")
    return 0 if par == "even" else 1


def supercommutator(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    pa, pb = _definite_parity(a), _definite_parity(b)
    A, B = a.to_dense(), b.to_dense()
    sign = -1 if pa * pb else 1
    return SuperMatrix.from_dense(a.ctx, A @ B - sign * (B @ A))


def supertrace_form(a: SuperMatrix, b: SuperMatrix) -> int:
    return (a @ b).supertrace()


def _row_parities(ctx: AlgebraContext, V: np.ndarray) -> np.ndarray:
    """Parity of each homogeneous row; raises on mixed rows."""
    nz = V != 0
    odd = (nz & (ctx.unit_parity == 1)).any(axis=1)
    even = (nz & (ctx.unit_parity == 0)).any(axis=1)
    if np.any(odd & even):
        raise MixedParityInput("row vector mixes parities")
    return odd.astype(np.int64)


def bracket_rows(ctx: AlgebraContext, X: np.ndarray, V: np.ndarray) -> np.ndarray:
    """All brackets ``[X[s], V[t]]`` as rows, in ``s``-major order."""
    X = reduce_mod(np.atleast_2d(X), ctx.p)
    V = reduce_mod(np.atleast_2d(V), ctx.p)
    N = ctx.N
    px = _row_parities(ctx, X)
    pv = _row_parities(ctx, V)
    Xd = X.reshape(-1, 1, N, N)
    Vd = V.reshape(1, -1, N, N)
    sign = np.where(px[:, None] * pv[None, :] == 1, -1, 1)[:, :, None, None]
    out = Xd @ Vd - sign * (Vd @ Xd)
    return (out % ctx.p).reshape(-1, N * N)


def ad(x: SuperMatrix):
    """``ad x`` as a map on coordinate rows."""
    ctx = x.ctx
    _definite_parity(x)
    X = x.to_vector().reshape(1, -1)

    def apply(V: np.ndarray) -> np.ndarray:
        return bracket_rows(ctx, X, V)

    return apply


def form_matrix(ctx: AlgebraContext, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Gram matrix ``G[s, t] = str(A[s] B[t])``."""
    A = np.atleast_2d(A)
    B = np.atleast_2d(B)
    if A.shape[0] == 0 or B.shape[0] == 0:
        return np.zeros((A.shape[0], B.shape[0]), dtype=np.int64)
    row_sign = np.repeat(ctx.sign, ctx.N)
    return (A * row_sign) @ B[:, ctx.transpose_perm].T % ctx.p


@dataclass(frozen=True, eq=False)
class Subspace:
    """Graded subspace given by echelonised even and odd basis rows."""

    ctx: AlgebraContext
    even: np.ndarray
    odd: np.ndarray

    @classmethod
    def zero(cls, ctx: AlgebraContext) -> "Subspace":
        z = np.zeros((0, ctx.dim), dtype=np.int64)
        return cls(ctx, z, z)

    @classmethod
    def span(cls, ctx: AlgebraContext, vectors) -> "Subspace":
        V = reduce_mod(np.asarray(vectors, dtype=np.int64).reshape(-1, ctx.dim), ctx.p)
        V = V[V.any(axis=1)]
        par = _row_parities(ctx, V)
        even, _ = rref(V[par == 0], ctx.p) if (par == 0).any() else (V[:0], None)
        odd, _ = rref(V[par == 1], ctx.p) if (par == 1).any() else (V[:0], None)
        return cls(ctx, even, odd)

    @classmethod
    def from_elements(cls, ctx: AlgebraContext, elems: Iterable[SuperMatrix]) -> "Subspace":
        rows = [x.to_vector() for x in elems]
        if not rows:
            return cls.zero(ctx)
        return cls.span(ctx, np.vstack(rows))

    @classmethod
    def from_units(cls, ctx: AlgebraContext, indices) -> "Subspace":
        idx = np.unique(np.asarray(list(indices), dtype=np.int64))
        par = ctx.unit_parity[idx]
        out = []
        for want in (0, 1):
            sel = idx[par == want]
            rows = np.zeros((sel.size, ctx.dim), dtype=np.int64)
            rows[np.arange(sel.size), sel] = 1
            out.append(rows)
        return cls(ctx, out[0], out[1])

    @classmethod
    def ambient(cls, ctx: AlgebraContext) -> "Subspace":
        return cls.from_units(ctx, range(ctx.dim)).in_kind()

    def in_kind(self) -> "Subspace":
        """Intersect with sl when the context is sl; identity for gl."""
        if self.ctx.kind != "sl":
            return self
        return self.with_supertrace_zero()

    def with_supertrace_zero(self) -> "Subspace":
        f = self.even @ self.ctx.supertrace_vector % self.ctx.p
        if not f.any():
            return self
        combos = kernel(f.reshape(1, -1), self.ctx.p).vectors
        even, _ = rref(combos @ self.even % self.ctx.p, self.ctx.p) if combos.size else (self.even[:0], None)
        return Subspace(self.ctx, even, self.odd)

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def sdim(self) -> tuple[int, int]:
        return self.even.shape[0], self.odd.shape[0]

    @property
    def dim(self) -> int:
        return self.even.shape[0] + self.odd.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return np.vstack([self.even, self.odd])

    def part(self, parity: int) -> np.ndarray:
        return self.odd if parity else self.even

    @property
    def basis(self) -> list[SuperMatrix]:
        return [SuperMatrix.from_vector(self.ctx, row) for row in self.matrix]

    def is_zero(self) -> bool:
        return self.dim == 0

    def _solve(self, rows: np.ndarray, parity: int):
        B = self.part(parity)
        if B.shape[0] == 0:
            return None if np.asarray(rows).any() else np.zeros((len(rows), 0), dtype=np.int64)
        pivots = np.argmax(B != 0, axis=1)
        return solve_in_span(B, pivots, rows, self.p)

    def contains_rows(self, V: np.ndarray) -> bool:
        V = reduce_mod(np.atleast_2d(V), self.p)
        if V.shape[0] == 0:
            return True
        even_part = V * (self.ctx.unit_parity == 0)
        odd_part = V * (self.ctx.unit_parity == 1)
        return self._solve(even_part, 0) is not None and self._solve(odd_part, 1) is not None

    def __contains__(self, x: SuperMatrix) -> bool:
        return self.contains_rows(x.to_vector())

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_rows(self.matrix)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.sdim == other.sdim
            and np.array_equal(self.even, other.even)
            and np.array_equal(self.odd, other.odd)
        )

    __hash__ = None

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.ctx, np.vstack([self.matrix, other.matrix]))

    def __and__(self, other: "Subspace") -> "Subspace":
        parts = []
        for par in (0, 1):
            A, B = self.part(par), other.part(par)
            if A.shape[0] == 0 or B.shape[0] == 0:
                parts.append(A[:0])
                continue
            K = kernel(np.vstack([A, B]).T, self.p).vectors
            V = K[:, : A.shape[0]] @ A % self.p
            parts.append(rref(V, self.p)[0] if V.size else A[:0])
        return Subspace(self.ctx, parts[0], parts[1])

    def labels(self) -> list[str]:
        """Readable basis labels; exact for unit-spanned spaces."""
        out = []
        for row in self.matrix:
            nz = np.flatnonzero(row)
            out.append(" + ".join(self.ctx.unit_label(i) if row[i] == 1 else f"{row[i]}*{self.ctx.unit_label(i)}" for i in nz))
        return out

    def __repr__(self) -> str:
        return f"Subspace(sdim={self.sdim})"


def jordan_strings(pp: PartitionPair) -> list[list[int]]:
    """Flat box positions of each Jordan block, in standard order.

    Blocks are consecutive: even blocks follow ``r`` over ``1̄..m̄`` and odd
    blocks follow ``q`` over ``1..n``.
    """
    out = []
    start = 0
    for length in pp.r:
        out.append(list(range(start, start + length)))
        start += length
    start = pp.m
    for length in pp.q:
        out.append(list(range(start, start + length)))
        start += length
    return out


def jordan_e(ctx: AlgebraContext, pp: PartitionPair) -> SuperMatrix:
    """Standard Jordan form of type ``(r, q)`` built directly from the blocks."""
    _check_pp(ctx, pp)
    vec = np.zeros(ctx.dim, dtype=np.int64)
    for block in jordan_strings(pp):
        for a, b in zip(block, block[1:]):
            vec[a * ctx.N + b] = 1
    return SuperMatrix.from_vector(ctx, vec)


def _check_pp(ctx: AlgebraContext, pp: PartitionPair):
    if pp.m != ctx.m or pp.n != ctx.n:
        raise ValueError(f"{pp} is not a partition of ({ctx.m}|{ctx.n})")


def nilpotent_e(ctx: AlgebraContext, pp: PartitionPair, P: Pyramid | None = None) -> SuperMatrix:
    """``e(P)``: sum of ``e_{i,j}`` over same-row boxes at column distance 2."""
    _check_pp(ctx, pp)
    P = dynkin_pyramid(pp) if P is None else P
    vec = np.zeros(ctx.dim, dtype=np.int64)
    for (row, col), box in P.position_of.items():
        right = P.position_of.get((row, col + 2))
        if right is not None:
            vec[box.flat(ctx.m) * ctx.N + right.flat(ctx.m)] = 1
    return SuperMatrix.from_vector(ctx, vec)


def grading_subspace(ctx: AlgebraContext, P: Pyramid, k: int) -> Subspace:
    D = P.degree_matrix().reshape(-1)
    sub = Subspace.from_units(ctx, np.flatnonzero(D == k))
    return sub.in_kind() if k == 0 else sub


def parabolic(ctx: AlgebraContext, P: Pyramid) -> Subspace:
    """Span of ``e_{i,j}`` with ``col(i) <= col(j)``."""
    D = P.degree_matrix().reshape(-1)
    return Subspace.from_units(ctx, np.flatnonzero(D >= 0)).in_kind()


def _chains(ctx_m: int, N: int, e_vec: np.ndarray) -> list[list[int]]:
    """Jordan chains of a partial-permutation nilpotent, generator first."""
    E = e_vec.reshape(N, N)
    image_of = {}  # e v_b = v_a for each unit e_{a,b}
    for a, b in zip(*np.nonzero(E)):
        image_of[int(b)] = int(a)
    in_image = set(image_of.values())
    chains = []
    for b in range(N):
        if b in in_image:
            continue
        chain = [b]
        while chain[-1] in image_of:
            chain.append(image_of[chain[-1]])
        chains.append(chain)
    return chains


def cocharacter_weights(pp: PartitionPair) -> dict[BoxId, int]:
    """Weight ``2j + 1 - len`` of the Jordan vector ``e^j v`` in each string."""
    m, N = pp.m, pp.m + pp.n
    vec = np.zeros(N * N, dtype=np.int64)
    for block in jordan_strings(pp):
        for a, b in zip(block, block[1:]):
            vec[a * N + b] = 1
    weights = {}
    for chain in _chains(m, N, vec):
        L = len(chain)
        for j, a in enumerate(chain):
            weights[BoxId.from_flat(a, m)] = 2 * j + 1 - L
    return weights


def dynkin_grading(ctx: AlgebraContext, pp: PartitionPair) -> dict[int, Subspace]:
    """Nonzero pieces ``g(k)``: units ``e_{i,j}`` with ``w(i) - w(j) = k``."""
    _check_pp(ctx, pp)
    w = np.empty(ctx.N, dtype=np.int64)
    for box, val in cocharacter_weights(pp).items():
        w[ctx.flat(box)] = val
    D = (w[:, None] - w[None, :]).reshape(-1)
    out = {}
    for k in np.unique(D):
        sub = Subspace.from_units(ctx, np.flatnonzero(D == k))
        if k == 0:
            sub = sub.in_kind()
        if not sub.is_zero():
            out[int(k)] = sub
    return out


class ChiFunctional:
    """``y -> (e, y)`` for a fixed even ``e``."""

    def __init__(self, ctx: AlgebraContext, e: SuperMatrix):
        if e.parity != "even":
            raise MixedParityInput("the p-character must come from an even element")
        self.ctx = ctx
        self.e = e
        self._row = form_matrix(ctx, e.to_vector(), np.eye(ctx.dim, dtype=np.int64))[0]

    def __call__(self, y: SuperMatrix) -> int:
        return int(self._row @ y.to_vector() % self.ctx.p)

    def values(self, V: np.ndarray) -> np.ndarray:
        return np.atleast_2d(V) @ self._row % self.ctx.p

    def vanishes_on(self, sub: Subspace) -> bool:
        return not self.values(sub.matrix).any() if sub.dim else True


def chi_functional(ctx: AlgebraContext, e: SuperMatrix) -> ChiFunctional:
    return ChiFunctional(ctx, e)


def is_closed_under_bracket(sub: Subspace) -> bool:
    M = sub.matrix
    if M.shape[0] == 0:
        return True
    return sub.contains_rows(bracket_rows(sub.ctx, M, M))


def is_ideal(ideal: Subspace, algebra: Subspace) -> bool:
    """``[algebra, ideal] ⊆ ideal``."""
    if ideal.dim == 0 or algebra.dim == 0:
        return True
    return ideal.contains_rows(bracket_rows(ideal.ctx, algebra.matrix, ideal.matrix))


def is_restricted(sub: Subspace, trials: int = 8, seed: int = 0) -> bool:
    """Check ``x^p`` stays in ``sub`` for even basis vectors and random even combinations."""
    ctx = sub.ctx
    if sub.even.shape[0] == 0:
        return True
    rng = np.random.default_rng(seed)
    samples = list(sub.even)
    for _ in range(trials):
        coeffs = rng.integers(0, ctx.p, size=sub.even.shape[0])
        samples.append(coeffs @ sub.even % ctx.p)
    for v in samples:
        x = SuperMatrix.from_vector(ctx, v)
        if x.power(ctx.p) not in sub:
            return False
    return True
