import numpy as np
import pytest
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from kwmod.kw import (
    SCHEMA_VERSION,
    ExponentDim,
    KwDims,
    OddD0,
    VerificationReport,
    centralizer,
    check_degree_shift,
    check_dim_identity,
    check_dynkin_properties,
    check_gradings_agree,
    check_parabolic_identity,
    induced_dimension,
    kw_bound,
    kw_dims,
    verify_instance,
)
from kwmod.partitions import PartitionPair, all_partition_pairs, centralizer_dims_formula
from kwmod.pyramid import BoxId, dynkin_pyramid, shift_pyramid
from kwmod.superalgebra import (
    AlgebraContext,
    SuperMatrix,
    Subspace,
    dynkin_grading,
    grading_subspace,
    nilpotent_e,
    unit,
)

b, o = BoxId.even, BoxId.odd
DYNKIN_ITEMS = [f"dynkin_{i}" for i in ("1_injective", "2_surjective", "3_parity_split", "4_e_in_g2", "5_centralizer_dim", "6_form")]


def sympy_centralizer_sdim(ctx, e):
    """Per-parity kernel dimension of ad e, with the bracket built from dense products."""
    E = e.to_dense()
    N, p = ctx.N, ctx.p
    F = GF(p)
    dims = []
    for par in (0, 1):
        idx = [k for k in range(ctx.dim) if ctx.unit_parity[k] == par]
        if not idx:
            dims.append(0)
            continue
        cols = []
        for k in idx:
            U = np.zeros((N, N), dtype=np.int64)
            U[divmod(k, N)] = 1
            # e is even, so the supercommutator is the plain commutator
            cols.append(((E @ U - U @ E) % p).reshape(-1))
        rows = [[F(int(v)) for v in row] for row in np.array(cols).T]
        M = DomainMatrix(rows, (ctx.dim, len(idx)), F)
        dims.append(len(idx) - M.rank())
    if ctx.kind == "sl":
        # drop the supertrace-nonzero direction: the identity commutes with e
        dims[0] -= 1
    return tuple(dims)


def test_centralizer_examples(running_pp, gl43):
    e = nilpotent_e(gl43, running_pp)
    assert centralizer(gl43, e).sdim == (11, 10)
    assert centralizer(gl43, SuperMatrix.zero(gl43)).sdim == (25, 24)
    sl = AlgebraContext(4, 3, 5, "sl")
    assert centralizer(sl, nilpotent_e(sl, running_pp)).sdim == (10, 10)


@pytest.mark.parametrize("pp", list(all_partition_pairs(5)), ids=str)
@pytest.mark.parametrize("p", [3, 5])
def test_centralizer_matches_sympy_and_formula(pp, p):
    ctx = AlgebraContext(pp.m, pp.n, p)
    e = nilpotent_e(ctx, pp)
    got = centralizer(ctx, e).sdim
    assert got == sympy_centralizer_sdim(ctx, e)
    assert got == centralizer_dims_formula(pp)


def test_kw_dims_examples(running_pp, gl43):
    assert kw_dims(gl43, nilpotent_e(gl43, running_pp)) == KwDims(14, 14)
    assert kw_dims(gl43, SuperMatrix.zero(gl43)) == KwDims(0, 0)
    ctx = AlgebraContext(2, 1, 3)
    assert kw_dims(ctx, nilpotent_e(ctx, PartitionPair.of((2,), (1,)))) == KwDims(2, 2)


def test_kw_bound_examples():
    assert kw_bound(KwDims(14, 14)) == ExponentDim(7, 7)
    assert kw_bound(KwDims(0, 0)).value(5) == 1
    assert kw_bound(KwDims(2, 2)).value(3) == 6
    assert kw_bound(KwDims(2, 3)) == ExponentDim(1, 2)
    with pytest.raises(OddD0):
        kw_bound(KwDims(3, 2))


def test_exponent_dim():
    a = ExponentDim(1, 2)
    assert a * ExponentDim(3, 0) == ExponentDim(4, 2)
    assert (a * a) / a == a
    assert a.format() == "p^1·2^2" and a.format(5) == "5^1·2^2"
    assert a.to_json() == {"p_exp": 1, "two_exp": 2}
    with pytest.raises(ValueError):
        ExponentDim(-1, 0)


@pytest.mark.parametrize(
    "m, n, p, r, q",
    [(4, 3, 5, (3, 1), (2, 1)), (2, 1, 3, (1, 1), (1,)), (2, 1, 3, (2,), (1,))],
)
def test_check_dynkin_properties_examples(m, n, p, r, q):
    rep = check_dynkin_properties(AlgebraContext(m, n, p), PartitionPair.of(r, q))
    assert list(rep.checks) == DYNKIN_ITEMS
    assert rep.passed, rep.failures


def test_item5_reading_for_small_case():
    ctx = AlgebraContext(2, 1, 3)
    pp = PartitionPair.of((2,), (1,))
    g = dynkin_grading(ctx, pp)
    # odd units sit in degrees +-1, so the split is (3,0) + (0,2)
    assert g[0].sdim == (3, 0) and g[1].sdim == (0, 2)
    assert centralizer(ctx, nilpotent_e(ctx, pp)).sdim == (3, 2)


def test_check_dim_identity_examples(running_pp, gl43):
    assert check_dim_identity(gl43, running_pp)
    g = dynkin_grading(gl43, running_pp)
    below = (0, 0)
    for k, sub in g.items():
        if k <= -2:
            below = (below[0] + sub.sdim[0], below[1] + sub.sdim[1])
    assert below == (6, 4) and g[-1].sdim == (2, 6)
    ctx = AlgebraContext(2, 1, 3)
    assert check_dim_identity(ctx, PartitionPair.of((1, 1), (1,)))
    pp = PartitionPair.of((2,), (1,))
    g = dynkin_grading(ctx, pp)
    assert g[-2].sdim == (1, 0) and g[-1].sdim == (0, 2)
    assert check_dim_identity(ctx, pp)


@pytest.mark.parametrize("r, q", [((3, 1), (2, 1)), ((1,), (1,)), ((3,), (2,))])
def test_gradings_agree_examples(r, q):
    pp = PartitionPair.of(r, q)
    assert check_gradings_agree(AlgebraContext(pp.m, pp.n, 5), pp)


def test_degree_shift_examples(running_pp, gl43):
    assert check_degree_shift(gl43, running_pp)
    ctx = AlgebraContext(2, 1, 3)
    assert check_degree_shift(ctx, PartitionPair.of((2,), (1,)))
    assert check_degree_shift(AlgebraContext(1, 1, 3), PartitionPair.of((1,), (1,)))


def test_parabolic_identity_examples(running_pp, gl43):
    rep = check_parabolic_identity(gl43, running_pp)
    assert rep.passed, rep.failures
    assert rep.metadata == {"sdim_p": [17, 14], "sdim_p_prime": [18, 17], "sdim_g_minus1": [2, 6]}
    rep = check_parabolic_identity(AlgebraContext(1, 1, 3), PartitionPair.of((1,), (1,)))
    assert rep.passed and rep.metadata["sdim_g_minus1"] == [0, 0]
    assert rep.metadata["sdim_p"] == rep.metadata["sdim_p_prime"]
    rep = check_parabolic_identity(AlgebraContext(2, 1, 3), PartitionPair.of((2,), (1,)))
    assert rep.passed
    assert (rep.metadata["sdim_p"], rep.metadata["sdim_p_prime"]) == ([4, 2], [4, 3])


def test_l1_for_small_case():
    ctx = AlgebraContext(2, 1, 3)
    pp = PartitionPair.of((2,), (1,))
    P = dynkin_pyramid(pp)
    l1 = grading_subspace(ctx, P, -1) & grading_subspace(ctx, shift_pyramid(P), 0)
    assert l1 == Subspace.from_units(ctx, [ctx.unit_index(o(1), b(1))])


def test_induced_dimension_examples(running_pp, gl43):
    assert induced_dimension(gl43, running_pp) == ExponentDim(7, 7)
    ctx = AlgebraContext(2, 1, 3)
    assert induced_dimension(ctx, PartitionPair.of((1, 1), (1,))) == ExponentDim(0, 0)
    assert induced_dimension(ctx, PartitionPair.of((2,), (1,))) == kw_bound(KwDims(2, 2))


@pytest.mark.parametrize("kind", ["gl", "sl"])
def test_verify_running_example(running_pp, kind):
    ctx = AlgebraContext(4, 3, 5, kind)
    rep = verify_instance(ctx, running_pp)
    assert rep.passed, rep.failures
    assert rep.kw_bound == ExponentDim(7, 7)
    assert rep.metadata["kw_dims"] == [14, 14]


def test_report_json_schema(running_pp, gl43):
    data = verify_instance(gl43, running_pp).to_json()
    assert data["schema"] == SCHEMA_VERSION == 1
    assert data["instance"] == {"m": 4, "n": 3, "p": 5, "kind": "gl", "r": [3, 1], "q": [2, 1]}
    assert set(data["checks"].values()) == {"pass"}
    assert data["kw_bound"] == {"p_exp": 7, "two_exp": 7}
    for name in DYNKIN_ITEMS + ["dim_identity", "gradings_agree", "degree_shift", "induced_dimension"]:
        assert name in data["checks"]


def test_report_bookkeeping():
    rep = VerificationReport({})
    rep.record("a", True)
    rep.skip("b", "why")
    rep.run("c", lambda: 1 / 0)
    assert not rep.passed and list(rep.failures) == ["c"]
    assert "ZeroDivisionError" in rep.checks["c"].detail
    with pytest.raises(KeyError):
        rep.record("a", True)
    assert rep.to_json()["checks"] == {"a": "pass", "b": "skipped", "c": "fail"}


@pytest.mark.parametrize("pp", list(all_partition_pairs(5)), ids=str)
def test_gl_sl_kw_dims_agree(pp):
    for p in (3, 5, 7):
        if (pp.m - pp.n) % p == 0:
            continue
        gl = AlgebraContext(pp.m, pp.n, p, "gl")
        sl = AlgebraContext(pp.m, pp.n, p, "sl")
        assert kw_dims(gl, nilpotent_e(gl, pp)) == kw_dims(sl, nilpotent_e(sl, pp))


def test_centralizer_rejects_odd(gl21):
    with pytest.raises(ValueError):
        centralizer(gl21, unit(gl21, b(1), o(1)))
