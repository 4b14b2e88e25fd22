import pytest
from hypothesis import given, strategies as st

from kwmod.partitions import (
    InvalidPart,
    NotWeaklyDecreasing,
    Parity,
    Partition,
    PartitionPair,
    all_partition_pairs,
    centralizer_dims_formula,
    merge_shapes,
    parse_partition,
    partitions_of,
    validate_partition,
)

E, O = Parity.EVEN, Parity.ODD

partitions = st.lists(st.integers(1, 6), max_size=5).map(lambda xs: Partition(tuple(sorted(xs, reverse=True))))


def test_validate_examples():
    p = validate_partition((3, 1))
    assert p.parts == (3, 1) and p.total == 4
    assert validate_partition(()).total == 0
    with pytest.raises(NotWeaklyDecreasing):
        validate_partition((1, 2))
    with pytest.raises(InvalidPart):
        validate_partition((2, 0))
    with pytest.raises(InvalidPart):
        validate_partition((-1,))


def test_parse():
    assert parse_partition("3,1") == Partition((3, 1))
    assert parse_partition("") == Partition(())
    with pytest.raises(InvalidPart):
        parse_partition("3,x")


@pytest.mark.parametrize(
    "r, q, rows",
    [
        ((3, 1), (2, 1), [(3, E), (2, O), (1, O), (1, E)]),
        ((1,), (1,), [(1, O), (1, E)]),
        ((2, 2), (3,), [(3, O), (2, E), (2, E)]),
    ],
)
def test_merge_examples(r, q, rows):
    assert list(merge_shapes(Partition(r), Partition(q)).rows) == rows


@given(partitions, partitions)
def test_merge_invariants(r, q):
    shape = merge_shapes(r, q)
    assert len(shape) == len(r) + len(q)
    lengths = shape.lengths
    assert all(a >= b for a, b in zip(lengths, lengths[1:]))
    for (la, pa), (lb, pb) in zip(shape.rows, shape.rows[1:]):
        if la == lb:
            assert not (pa is E and pb is O)
    assert sorted(l for l, par in shape.rows if par is E) == sorted(r.parts)
    assert sorted(l for l, par in shape.rows if par is O) == sorted(q.parts)


@pytest.mark.parametrize(
    "r, q, expected",
    [((3, 1), (2, 1), (11, 10)), ((1,), (), (1, 0)), ((2,), (1,), (3, 2))],
)
def test_centralizer_formula_examples(r, q, expected):
    assert centralizer_dims_formula(PartitionPair.of(r, q)) == expected


@given(partitions, partitions)
def test_centralizer_odd_part_is_even(r, q):
    assert centralizer_dims_formula(PartitionPair(r, q))[1] % 2 == 0


def test_partition_counts():
    assert [len(partitions_of(k)) for k in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    pairs = list(all_partition_pairs(3))
    assert len(pairs) == len(set(pairs))
    assert all(1 <= pp.m + pp.n <= 3 for pp in pairs)
    # (1|0),(0|1): 2; size 2: 2+1+2; size 3: 3+2+2+3
    assert len(pairs) == 2 + 5 + 10
