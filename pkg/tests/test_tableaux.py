import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_partitions, brute_syt, lr_by_kostka
from subduce.tableaux import (
    Partition,
    SkewFilling,
    StandardTableau,
    count_skew_fillings,
    enumerate_skew_fillings,
    enumerate_syt,
    hook_dimension,
    lr_multiplicity,
    partitions,
)

T = StandardTableau


def tab(*rows):
    return T(tuple(tuple(r) for r in rows))


@st.composite
def shapes(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    return draw(st.sampled_from(partitions(n)))


@st.composite
def tableaux(draw, max_n=8):
    shape = draw(shapes(max_n=max_n))
    return draw(st.sampled_from(enumerate_syt(shape)))


def test_partition_validation():
    assert Partition((3, 1)).size == 4
    assert Partition.parse("4,3,2,1") == Partition((4, 3, 2, 1))
    assert str(Partition((4, 3, 2, 1))) == "4,3,2,1"
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    with pytest.raises(ValueError):
        Partition.parse("2,a")


def test_partitions_match_brute_force():
    for n in range(1, 9):
        assert [p.parts for p in partitions(n)] == brute_partitions(n)


def test_tableau_rejects_nonstandard():
    with pytest.raises(ValueError):
        tab([2, 1], [3])
    with pytest.raises(ValueError):
        tab([1, 2], [4], [3])
    with pytest.raises(ValueError):
        tab([1, 2], [2])


@pytest.mark.parametrize(
    "shape, count",
    [((1,), 1), ((2, 1), 2), ((3, 2, 1), 16), ((3, 1), 3), ((4, 2), 9)],
)
def test_enumerate_syt_counts(shape, count):
    assert len(enumerate_syt(shape)) == count


@pytest.mark.parametrize("shape, dim", [((1,), 1), ((4, 3, 2, 1), 768), ((3, 1), 3), ((5, 4, 3, 2, 1), 292864)])
def test_hook_dimension(shape, dim):
    assert hook_dimension(shape) == dim


def test_enumeration_matches_permutation_filter():
    for n in range(1, 8):
        for p in partitions(n):
            ours = sorted(t.rows for t in enumerate_syt(p))
            assert ours == sorted(brute_syt(p.parts)), p


def test_enumeration_matches_hooks_up_to_8():
    for n in range(1, 9):
        for p in partitions(n):
            tabs = enumerate_syt(p)
            assert len(tabs) == hook_dimension(p)
            assert len(set(tabs)) == len(tabs)


def test_canonical_order():
    # the tableau with the largest entry in the lower row comes first
    assert enumerate_syt((2, 1)) == [tab([1, 2], [3]), tab([1, 3], [2])]
    tabs = enumerate_syt((3, 2, 1))
    keys = [t.order_key() for t in tabs]
    assert keys == sorted(keys)


def test_axial_distance_examples():
    m = tab([1, 2], [3])
    assert m.axial_distance(1) == 1
    assert m.axial_distance(2) == -2
    assert tab([1, 3], [2]).axial_distance(2) == 2
    with pytest.raises(IndexError):
        m.axial_distance(3)
    with pytest.raises(IndexError):
        m.axial_distance(0)


def test_apply_generator_examples():
    m = tab([1, 2], [3])
    assert m.apply_generator(1) is m
    assert m.apply_generator(2) == tab([1, 3], [2])
    assert tab([1, 2, 3], [4]).apply_generator(3) == tab([1, 2, 4], [3])
    with pytest.raises(IndexError):
        m.apply_generator(3)


@settings(max_examples=200, deadline=None)
@given(tableaux())
def test_generator_involution_and_fixed_points(m):
    for i in range(1, m.size):
        g = m.apply_generator(i)
        assert g.apply_generator(i) == m
        assert (g == m) == (abs(m.axial_distance(i)) == 1)
        assert m.axial_distance(i) != 0
        d = m.axial_distance(i)
        if d == 1:
            assert m.positions[i][0] == m.positions[i + 1][0]
        if d == -1:
            assert m.positions[i][1] == m.positions[i + 1][1]


def test_restrict_examples():
    assert tab([1, 2], [3]).restrict(2) == tab([1, 2])
    assert tab([1, 3], [2]).restrict(2) == tab([1], [2])
    m = tab([1, 3], [2])
    assert m.restrict(3) == m
    with pytest.raises(ValueError):
        m.restrict(4)
    with pytest.raises(ValueError):
        m.restrict(0)


@settings(max_examples=100, deadline=None)
@given(tableaux())
def test_restriction_chain(m):
    prev = m
    for k in range(m.size - 1, 0, -1):
        r = m.restrict(k)
        assert r.size == k
        assert r == prev.restrict(k)
        removed = set(prev.positions) - set(r.positions)
        assert removed == {k + 1}
        prev = r


@pytest.mark.parametrize(
    "outer, inner, count",
    [((4, 3, 2, 1), (3, 2, 1), 24), ((4, 2), (2, 1), 3), ((3, 2), (3, 2), 1), ((5, 4, 3, 2), (4, 3, 2), 60)],
)
def test_skew_counts(outer, inner, count):
    fills = enumerate_skew_fillings(outer, inner)
    assert len(fills) == count
    assert count_skew_fillings(Partition(outer), Partition(inner)) == count


def test_skew_requires_containment():
    with pytest.raises(ValueError):
        enumerate_skew_fillings((2, 2), (3,))
    assert count_skew_fillings(Partition((2, 2)), Partition((3,))) == 0


def test_skew_fillings_extend_to_standard():
    outer, inner = Partition((4, 2, 1)), Partition((2, 1))
    for t in enumerate_skew_fillings(outer, inner):
        for m1 in enumerate_syt(inner):
            m = t.extend(m1)
            assert m.shape == outer
            assert m.restrict(inner.size) == m1
            assert m.skew_part(inner.size) == t


def test_skew_json_roundtrip():
    t = enumerate_skew_fillings((3, 1), (1, 1))[0]
    assert str(t).endswith("-")
    assert SkewFilling.from_json(t.to_json()) == t


def test_tableau_json_form():
    m = tab([1, 3], [2])
    assert m.to_json() == {"shape": [2, 1], "rows": [[1, 3], [2]]}
    assert T.from_json(m.to_json()) == m


def test_skew_count_independent_of_base():
    for outer in partitions(6):
        for f1 in range(1, 6):
            for inner in partitions(f1):
                if not outer.contains(inner):
                    continue
                expected = len(enumerate_skew_fillings(outer, inner))
                for m1 in enumerate_syt(inner):
                    n = sum(1 for m in enumerate_syt(outer) if m.restrict(f1) == m1)
                    assert n == expected


@pytest.mark.parametrize(
    "outer, p1, p2, value",
    [
        ((4, 2), (2, 1), (2, 1), 1),
        ((3, 2, 1), (2, 1), (2, 1), 2),
        ((4, 2, 1), (3, 1), (2, 1), 2),
        ((4, 3, 2), (3, 2), (3, 1), 2),
        ((4, 3, 2, 1), (3, 2, 1), (3, 1), 3),
        ((5, 4, 3, 2), (4, 3, 2), (3, 2), 3),
        ((5, 4, 3, 2, 1), (4, 3, 2, 1), (4, 1), 4),
    ],
)
def test_lr_reference_values(outer, p1, p2, value):
    assert lr_multiplicity(outer, p1, p2) == value


def test_lr_size_mismatch():
    with pytest.raises(ValueError):
        lr_multiplicity((3, 1), (2, 1), (3,))


def test_lr_matches_kostka_inversion():
    for n in range(2, 7):
        for lam in partitions(n):
            for f1 in range(1, n):
                for lam1 in partitions(f1):
                    for lam2 in partitions(n - f1):
                        assert lr_multiplicity(lam, lam1, lam2) == lr_by_kostka(
                            lam.parts, lam1.parts, lam2.parts
                        ), (lam, lam1, lam2)


def test_lr_symmetric_in_factors():
    for n in range(2, 8):
        for lam in partitions(n):
            for f1 in range(1, n):
                for lam1 in partitions(f1):
                    for lam2 in partitions(n - f1):
                        assert lr_multiplicity(lam, lam1, lam2) == lr_multiplicity(lam, lam2, lam1)


def test_branching_dimension_identity():
    for n in range(2, 9):
        for lam in partitions(n):
            for f1 in range(1, n):
                total = sum(
                    lr_multiplicity(lam, a, b) * hook_dimension(a) * hook_dimension(b)
                    for a in partitions(f1)
                    for b in partitions(n - f1)
                )
                assert total == hook_dimension(lam)
