import pytest
from hypothesis import given, strategies as st

from hilbkit.partitions import (ArmLeg, Box, Partition, add_box_set, arm_leg, corners, enumerate_partitions,
                                remove_box, remove_first_column)
from oracles import brute_partitions

partitions_st = st.integers(0, 9).flatmap(lambda n: st.sampled_from(enumerate_partitions(n)))


def test_enumeration_small_cases():
    assert enumerate_partitions(0) == (Partition(()),)
    assert [tuple(p) for p in enumerate_partitions(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(enumerate_partitions(8)) == 22


@pytest.mark.parametrize("n", range(0, 11))
def test_enumeration_matches_independent_generator(n):
    ours = [tuple(p) for p in enumerate_partitions(n)]
    assert sorted(ours) == sorted(brute_partitions(n))
    assert len(set(ours)) == len(ours)
    assert ours == sorted(ours, reverse=True)


def test_partition_validation_and_text():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    assert Partition.parse("3,1") == Partition((3, 1))
    assert Partition.parse("") == Partition(())
    assert str(Partition((2, 2, 1))) == "2,2,1"
    assert Partition((3, 1)).n == 4


@pytest.mark.parametrize("lam, box, expected", [
    ((2, 1), (0, 0), (1, 1)),
    ((2, 1), (1, 0), (0, 0)),
    ((3, 1), (0, 0), (1, 2)),
])
def test_arm_leg_examples(lam, box, expected):
    assert arm_leg(Partition(lam), Box(*box)) == ArmLeg(*expected)


def test_arm_leg_outside_diagram():
    with pytest.raises(ValueError):
        arm_leg(Partition((2, 1)), Box(1, 1))


@pytest.mark.parametrize("lam, expected", [
    ((2, 1), [(0, 1), (1, 0)]),
    ((5,), [(0, 4)]),
    ((2, 2, 1), [(1, 1), (2, 0)]),
    ((), []),
])
def test_corners_examples(lam, expected):
    assert [tuple(c) for c in corners(Partition(lam))] == expected


@pytest.mark.parametrize("lam, expected", [
    ((), [((1,), (0, 0))]),
    ((1,), [((2,), (0, 1)), ((1, 1), (1, 0))]),
    ((2, 1), [((3, 1), (0, 2)), ((2, 2), (1, 1)), ((2, 1, 1), (2, 0))]),
])
def test_add_box_examples(lam, expected):
    got = [(tuple(mu), tuple(b)) for mu, b in add_box_set(Partition(lam))]
    assert got == expected


def test_remove_first_column_examples():
    assert remove_first_column(Partition((3, 1))) == Partition((1,))
    assert remove_first_column(Partition((5,))) == Partition(())
    assert remove_first_column(Partition((2, 2, 1))) == Partition((2, 1))
    with pytest.raises(ValueError):
        remove_first_column(Partition(()))


def _brute_arm_leg(lam, box):
    cells = set(lam.boxes())
    a = sum(1 for c in cells if c.j == box.j and c.i > box.i)
    b = sum(1 for c in cells if c.i == box.i and c.j > box.j)
    return a, b


@given(partitions_st)
def test_box_and_corner_invariants(lam):
    boxes = list(lam.boxes())
    assert len(boxes) == lam.n
    for box in boxes:
        assert tuple(arm_leg(lam, box)) == _brute_arm_leg(lam, box)
    cs = corners(lam)
    assert all(c in lam for c in cs)
    assert all(arm_leg(lam, c) == (0, 0) for c in cs)
    assert len({c.i for c in cs}) == len(cs) == len({c.j for c in cs})
    assert [c.j for c in cs] == sorted((c.j for c in cs), reverse=True)
    if lam.n:
        assert remove_first_column(lam).n == lam.n - lam[0]


@given(partitions_st)
def test_adding_boxes(lam):
    added = add_box_set(lam)
    assert len(added) == len(set(lam)) + 1
    for mu, box in added:
        assert mu.n == lam.n + 1
        assert box in corners(mu)
        assert remove_box(mu, box) == lam


@given(st.integers(1, 9).flatmap(lambda n: st.sampled_from(enumerate_partitions(n))))
def test_removing_corners_round_trip(mu):
    for c in corners(mu):
        lam = remove_box(mu, c)
        assert (mu, c) in [(m, b) for m, b in add_box_set(lam)]
