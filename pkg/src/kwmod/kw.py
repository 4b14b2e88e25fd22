"""Kac-Weisfeiler dimension bookkeeping and the nilpotent-case battery."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .fp_linalg import FpMatrix, kernel, rank, restrict_map
from .partitions import PartitionPair, centralizer_dims_formula
from .pyramid import (
    ShapeViolation,
    dynkin_pyramid,
    is_even_pyramid,
    shift_pyramid,
    young_pyramid,
)
from .superalgebra import (
    AlgebraContext,
    SuperMatrix,
    Subspace,
    ad,
    chi_functional,
    dynkin_grading,
    form_matrix,
    grading_subspace,
    is_closed_under_bracket,
    is_restricted,
    nilpotent_e,
    parabolic,
)

__all__ = [
    "SCHEMA_VERSION",
    "ExponentDim",
    "KwDims",
    "OddD0",
    "ChiNonzeroOnParabolic",
    "CheckResult",
    "VerificationReport",
    "centralizer",
    "kw_dims",
    "kw_bound",
    "check_dynkin_properties",
    "check_dim_identity",
    "check_gradings_agree",
    "check_degree_shift",
    "check_parabolic_identity",
    "induced_dimension",
    "verify_instance",
]

SCHEMA_VERSION = 1


class OddD0(ValueError):
    pass


class ChiNonzeroOnParabolic(RuntimeError):
    pass


@dataclass(frozen=True)
class ExponentDim:
    """The number ``p**a * 2**b``, kept as its exponents."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("exponents must be non-negative")

    def __mul__(self, other: "ExponentDim") -> "ExponentDim":
        return ExponentDim(self.a + other.a, self.b + other.b)

    def __truediv__(self, other: "ExponentDim") -> "ExponentDim":
        return ExponentDim(self.a - other.a, self.b - other.b)

    def value(self, p: int) -> int:
        return p**self.a * 2**self.b

    def format(self, p: int | None = None) -> str:
        base = "p" if p is None else str(p)
        return f"{base}^{self.a}·2^{self.b}"

    def to_json(self) -> dict:
        return {"p_exp": self.a, "two_exp": self.b}


@dataclass(frozen=True)
class KwDims:
    d0: int
    d1: int

    def as_tuple(self) -> tuple[int, int]:
        return self.d0, self.d1


@dataclass(frozen=True)
class CheckResult:
    status: str
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class VerificationReport:
    """Named check outcomes for one instance; each name is recorded once."""

    instance: dict
    checks: dict[str, CheckResult] = field(default_factory=dict)
    kw_bound: ExponentDim | None = None
    metadata: dict = field(default_factory=dict)

    def record(self, name: str, ok: bool, detail: str = "") -> bool:
        if name in self.checks:
            raise KeyError(f"check {name!r} recorded twice")
        self.checks[name] = CheckResult("pass" if ok else "fail", detail)
        return ok

    def skip(self, name: str, reason: str):
        if name in self.checks:
            raise KeyError(f"check {name!r} recorded twice")
        self.checks[name] = CheckResult("skipped", reason)

    def run(self, name: str, fn: Callable[[], object]) -> bool:
        """Record ``fn()``; exceptions become failures so sweeps complete.

        ``fn`` may return a bool or a ``(bool, detail)`` pair.
        """
        try:
            out = fn()
        except Exception as exc:  # noqa: BLE001 - reported, never raised
            return self.record(name, False, f"{type(exc).__name__}: {exc}")
        if isinstance(out, tuple):
            return self.record(name, bool(out[0]), str(out[1]))
        return self.record(name, bool(out))

    def merge(self, other: "VerificationReport", prefix: str = ""):
        for name, res in other.checks.items():
            key = prefix + name
            if key in self.checks:
                raise KeyError(f"check {key!r} recorded twice")
            self.checks[key] = res

    @property
    def passed(self) -> bool:
        return all(res.status != "fail" for res in self.checks.values())

    @property
    def failures(self) -> dict[str, CheckResult]:
        return {k: v for k, v in self.checks.items() if v.status == "fail"}

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "instance": self.instance,
            "checks": {k: v.status for k, v in self.checks.items()},
        }
        details = {k: v.detail for k, v in self.checks.items() if v.detail}
        if details:
            out["details"] = details
        if self.kw_bound is not None:
            out["kw_bound"] = self.kw_bound.to_json()
        if self.metadata:
            out["metadata"] = self.metadata
        return out


def _instance(ctx: AlgebraContext, pp: PartitionPair | None = None) -> dict:
    inst = {"m": ctx.m, "n": ctx.n, "p": ctx.p, "kind": ctx.kind}
    if pp is not None:
        inst["r"] = list(pp.r.parts)
        inst["q"] = list(pp.q.parts)
    return inst


def _sub(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return a[0] - b[0], a[1] - b[1]


def _add(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return a[0] + b[0], a[1] + b[1]


def _scale(k: int, a: tuple[int, int]) -> tuple[int, int]:
    return k * a[0], k * a[1]


def kernel_in(x: SuperMatrix, domain: Subspace) -> Subspace:
    """Kernel of ``ad x`` restricted to ``domain``, parity by parity."""
    ctx = domain.ctx
    f = ad(x)
    parts = []
    for par in (0, 1):
        B = domain.part(par)
        if B.shape[0] == 0:
            parts.append(B)
            continue
        # gl coordinates are the identity basis, so the images are the matrix columns
        K = kernel(f(B).T, ctx.p).vectors
        parts.append(K @ B % ctx.p if K.size else B[:0])
    return Subspace.span(ctx, np.vstack(parts)) if any(p.size for p in parts) else Subspace.zero(ctx)


def centralizer(ctx: AlgebraContext, x: SuperMatrix) -> Subspace:
    """``g^x``: kernel of ``ad x`` inside gl or sl."""
    if x.parity != "even":
        raise ValueError("centralizers are taken of even elements")
    return kernel_in(x, Subspace.ambient(ctx))


def kw_dims(ctx: AlgebraContext, x: SuperMatrix) -> KwDims:
    d = _sub(ctx.sdim(), centralizer(ctx, x).sdim)
    return KwDims(*d)


def kw_bound(d: KwDims) -> ExponentDim:
    """``p^(d0/2) 2^ceil(d1/2)``."""
    if d.d0 % 2:
        raise OddD0(f"d0 = {d.d0} is odd")
    return ExponentDim(d.d0 // 2, math.ceil(d.d1 / 2))


def _map_rank(x: SuperMatrix, dom: Subspace, cod: Subspace) -> tuple[int, FpMatrix]:
    M = restrict_map(ad(x), dom, cod)
    return rank(M), M


def check_dynkin_properties(ctx: AlgebraContext, pp: PartitionPair) -> VerificationReport:
    rep = VerificationReport(_instance(ctx, pp))
    e = nilpotent_e(ctx, pp)
    grading = dynkin_grading(ctx, pp)
    zero = Subspace.zero(ctx)

    def g(k: int) -> Subspace:
        return grading.get(k, zero)

    top = max((abs(k) for k in grading), default=0)
    degrees = range(-top - 2, top + 3)

    def injective():
        bad = []
        for j in degrees:
            if j > -1:
                continue
            r, _ = _map_rank(e, g(j), g(j + 2))
            if r != g(j).dim:
                bad.append(j)
        return not bad, f"not injective at {bad}" if bad else ""

    def surjective():
        bad = []
        for j in degrees:
            if j < -1:
                continue
            r, _ = _map_rank(e, g(j), g(j + 2))
            if r != g(j + 2).dim:
                bad.append(j)
        return not bad, f"not surjective at {bad}" if bad else ""

    def parity_split():
        total = (0, 0)
        for k, sub in grading.items():
            # every basis row must be homogeneous and the pieces must fill the algebra
            if sub.even.any() and (sub.even * ctx.unit_parity).any():
                return False, f"odd coordinates in even part of g({k})"
            if sub.odd.any() and (sub.odd * (1 - ctx.unit_parity)).any():
                return False, f"even coordinates in odd part of g({k})"
            total = _add(total, sub.sdim)
        return total == ctx.sdim(), f"pieces sum to {total}"

    gx = centralizer(ctx, e)

    def e_in_g2():
        if e.parity != "even":
            return False, "e is not even"
        if not e.is_zero() and e not in g(2):
            return False, "e not in g(2)"
        neg = [s for s in degrees if s < 0 and kernel_in(e, g(s)).dim]
        return not neg, f"g^e(s) nonzero for s={neg}" if neg else ""

    def centralizer_dim():
        want = _add(g(0).sdim, g(1).sdim)
        graded = (0, 0)
        for k in grading:
            graded = _add(graded, kernel_in(e, g(k)).sdim)
        ok = gx.sdim == want and graded == gx.sdim
        return ok, f"sdim g^e={gx.sdim}, graded sum={graded}, g(0)+g(1)={want}"

    def form_orthogonal():
        keys = sorted(grading)
        for k in keys:
            for l in keys:
                G = form_matrix(ctx, g(k).matrix, g(l).matrix)
                if k + l != 0 and G.any():
                    return False, f"(g({k}), g({l})) != 0"
                if k + l == 0 and rank(G, ctx.p) != g(k).dim:
                    return False, f"pairing g({k}) x g({l}) degenerate"
            if g(k).sdim != g(-k).sdim:
                return False, f"sdim g({k}) != sdim g({-k})"
        return True

    rep.run("dynkin_1_injective", injective)
    rep.run("dynkin_2_surjective", surjective)
    rep.run("dynkin_3_parity_split", parity_split)
    rep.run("dynkin_4_e_in_g2", e_in_g2)
    rep.run("dynkin_5_centralizer_dim", centralizer_dim)
    rep.run("dynkin_6_form", form_orthogonal)
    return rep


def check_dim_identity(ctx: AlgebraContext, pp: PartitionPair) -> bool:
    """``sdim g - sdim g^e == sum_{k>=2} 2 sdim g(-k) + sdim g(-1)``."""
    e = nilpotent_e(ctx, pp)
    grading = dynkin_grading(ctx, pp)
    lhs = _sub(ctx.sdim(), centralizer(ctx, e).sdim)
    rhs = (0, 0)
    for k, sub in grading.items():
        if k <= -2:
            rhs = _add(rhs, _scale(2, sub.sdim))
        elif k == -1:
            rhs = _add(rhs, sub.sdim)
    return lhs == rhs


def check_gradings_agree(ctx: AlgebraContext, pp: PartitionPair) -> bool:
    grading = dynkin_grading(ctx, pp)
    P = dynkin_pyramid(pp)
    degrees = set(grading) | set(np.unique(P.degree_matrix()).tolist())
    for k in degrees:
        ours = grading.get(k, Subspace.zero(ctx))
        if ours != grading_subspace(ctx, P, k):
            return False
    return True


def check_degree_shift(ctx: AlgebraContext, pp: PartitionPair) -> bool:
    P = dynkin_pyramid(pp)
    D = P.degree_matrix()
    Dp = shift_pyramid(P).degree_matrix()
    even = D % 2 == 0
    if not np.array_equal(D[even], Dp[even]):
        return False
    return bool(np.all(np.abs(D[~even] - Dp[~even]) == 1))


def check_parabolic_identity(ctx: AlgebraContext, pp: PartitionPair) -> VerificationReport:
    rep = VerificationReport(_instance(ctx, pp))
    P = dynkin_pyramid(pp)
    try:
        Q = shift_pyramid(P)
    except ShapeViolation as exc:
        rep.record("shift_shape", False, str(exc))
        return rep
    rep.record("shift_shape", True)
    p_ = parabolic(ctx, P)
    pq = parabolic(ctx, Q)
    gm1 = grading_subspace(ctx, P, -1)
    l1 = gm1 & grading_subspace(ctx, Q, 0)
    l2 = gm1 & grading_subspace(ctx, Q, -2)
    half = (gm1.sdim[0] // 2, gm1.sdim[1] // 2)

    rep.run("p_subset_p_prime", lambda: p_ <= pq)
    rep.run(
        "p_prime_eq_p_plus_l1",
        lambda: ((p_ + l1) == pq and (p_ & l1).is_zero(), f"p+l1={(p_ + l1).sdim}, p'={pq.sdim}"),
    )
    rep.run(
        "g_minus1_eq_l1_plus_l2",
        lambda: ((l1 + l2) == gm1 and (l1 & l2).is_zero() and (pq & l2).is_zero(), ""),
    )
    rep.run("l1_l2_equal_half", lambda: (l1.sdim == l2.sdim == half and _scale(2, half) == gm1.sdim, f"l1={l1.sdim}, l2={l2.sdim}, g(-1)={gm1.sdim}"))
    rep.run("p_prime_dimension", lambda: (pq.sdim == _add(p_.sdim, half), f"p={p_.sdim}, p'={pq.sdim}, g(-1)={gm1.sdim}"))
    rep.run("parabolics_closed", lambda: is_closed_under_bracket(p_) and is_closed_under_bracket(pq))
    rep.run("parabolics_restricted", lambda: is_restricted(p_) and is_restricted(pq))
    rep.metadata.update({"sdim_p": list(p_.sdim), "sdim_p_prime": list(pq.sdim), "sdim_g_minus1": list(gm1.sdim)})
    return rep


def induced_dimension(ctx: AlgebraContext, pp: PartitionPair) -> ExponentDim:
    """``dim U_chi(g) / dim U_chi(p')`` as exponents."""
    e = nilpotent_e(ctx, pp)
    pq = parabolic(ctx, shift_pyramid(dynkin_pyramid(pp)))
    if not chi_functional(ctx, e).vanishes_on(pq):
        raise ChiNonzeroOnParabolic(f"chi does not vanish on p' for {pp}")
    a, b = _sub(ctx.sdim(), pq.sdim)
    return ExponentDim(a, b)


def verify_instance(ctx: AlgebraContext, pp: PartitionPair) -> VerificationReport:
    """Run the whole nilpotent-case battery on one ``(pp, p, kind)``."""
    rep = VerificationReport(_instance(ctx, pp))
    rep.merge(check_dynkin_properties(ctx, pp))
    rep.run("dim_identity", lambda: check_dim_identity(ctx, pp))
    rep.run("gradings_agree", lambda: check_gradings_agree(ctx, pp))
    P = dynkin_pyramid(pp)
    rep.run("shifted_even", lambda: is_even_pyramid(shift_pyramid(P)))
    rep.run("young_even", lambda: is_even_pyramid(young_pyramid(pp)))
    rep.run("degree_shift", lambda: check_degree_shift(ctx, pp))
    par = check_parabolic_identity(ctx, pp)
    rep.merge(par, prefix="parabolic_")
    rep.metadata.update(par.metadata)

    e = nilpotent_e(ctx, pp)
    chi = chi_functional(ctx, e)
    rep.run("chi_vanishes_p", lambda: chi.vanishes_on(parabolic(ctx, P)))
    rep.run("chi_vanishes_p_prime", lambda: chi.vanishes_on(parabolic(ctx, shift_pyramid(P))))

    gx = centralizer(ctx, e)
    d = KwDims(*_sub(ctx.sdim(), gx.sdim))
    rep.metadata["kw_dims"] = [d.d0, d.d1]
    rep.record("d0_even", d.d0 % 2 == 0, f"d0={d.d0}")
    rep.record("d1_even", d.d1 % 2 == 0, f"d1={d.d1}")

    oracle = centralizer_dims_formula(pp)
    if ctx.kind == "sl":
        oracle = (oracle[0] - 1, oracle[1])
    rep.record("centralizer_oracle", gx.sdim == oracle, f"kernel={gx.sdim}, formula={oracle}")

    bound = None
    try:
        bound = kw_bound(d)
    except OddD0 as exc:
        rep.record("kw_bound", False, str(exc))
    rep.run(
        "induced_dimension",
        lambda: (bound is not None and induced_dimension(ctx, pp) == bound, f"bound={bound}"),
    )

    def young_identity():
        Y = young_pyramid(pp)
        gm1 = grading_subspace(ctx, P, -1)
        want = _add(parabolic(ctx, P).sdim, (gm1.sdim[0] // 2, gm1.sdim[1] // 2))
        got = parabolic(ctx, Y).sdim
        return got == want, f"p_Y={got}, expected {want}"

    rep.run("young_parabolic_dimension", young_identity)
    rep.kw_bound = bound
    return rep
