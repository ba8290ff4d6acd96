"""Partition calculus: enumeration, orders, pi_q, rho_q."""

from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

import cobordlab.partitions as pt
from cobordlab.partitions import IndexSet, rho_q

# weakly decreasing tuples of small positive parts
partition_st = st.lists(st.integers(1, 8), min_size=0, max_size=5).map(
    lambda v: tuple(sorted(v, reverse=True))
)

# classical p(n) for n = 0..10
PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_partitions_of_counts():
    for n, count in enumerate(PARTITION_COUNTS):
        assert len(pt.partitions_of(n)) == count


def test_partitions_of_canonical_order():
    got = pt.partitions_of(4)
    assert got == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    # descending lexicographic throughout, and every entry sums to n
    for n in range(1, 9):
        ps = pt.partitions_of(n)
        assert ps == sorted(ps, reverse=True)
        assert all(sum(a) == n for a in ps)
        assert len(set(ps)) == len(ps)


def test_partitions_of_restricted_parts():
    assert pt.partitions_of(9, parts=[2, 5]) == [(5, 2, 2)]
    assert pt.partitions_of(7, parts={2, 4}) == []
    # IndexSet works as a parts filter
    n2 = IndexSet.np_minus(2)
    assert pt.partitions_of(4, parts=n2) == [(4,), (2, 2)]


def test_partitions_of_edges():
    assert pt.partitions_of(0) == [()]
    assert pt.partitions_of(-3) == []
    with pytest.raises(ValueError):
        pt.partitions_of(pt.DEFAULT_WEIGHT_CAP + 1)


def test_is_partition_and_as_partition():
    assert pt.is_partition(())
    assert pt.is_partition((3, 1, 1))
    assert not pt.is_partition((1, 3))
    assert not pt.is_partition((0,))
    assert not pt.is_partition([3, 1])
    assert pt.as_partition([1, 3, 1]) == (3, 1, 1)
    with pytest.raises(ValueError):
        pt.as_partition([0, 2])


def test_sub_multisets():
    subs = pt.sub_multisets((2, 1, 1))
    assert len(subs) == 6
    assert set(subs) == {(), (1,), (1, 1), (2,), (2, 1), (2, 1, 1)}


@given(partition_st)
def test_splittings_cover_exactly(alpha):
    pairs = pt.splittings(alpha)
    mults = dict(pt._runs(alpha))
    expected = 1
    for m in mults.values():
        expected *= m + 1
    assert len(pairs) == expected
    assert len(set(pairs)) == len(pairs)
    for beta, gamma in pairs:
        assert pt.union(beta, gamma) == alpha


def test_refines_basic():
    assert pt.refines((1, 1, 1, 1), (2, 2))
    assert pt.refines((2, 1, 1), (2, 2))
    assert not pt.refines((3, 1), (2, 2))
    assert not pt.refines((4,), (2, 2))
    assert pt.refines((2, 2), (4,))
    assert not pt.refines((2, 2), (2, 1, 1))  # coarse never refines fine
    assert pt.refines((), ())
    assert not pt.refines((2,), (3,))  # weight mismatch


def test_refines_reflexive_and_transitive():
    ps = pt.partitions_of(6)
    for a in ps:
        assert pt.refines(a, a)
    for a in ps:
        for b in ps:
            if not pt.refines(a, b):
                continue
            for c in ps:
                if pt.refines(b, c):
                    assert pt.refines(a, c)


def test_everything_refines_the_single_part():
    for alpha in pt.partitions_of(7):
        assert pt.refines(alpha, (7,))


def test_dominates():
    assert pt.dominates((3, 2), (2, 1))
    assert pt.dominates((3, 2), (3, 2))
    assert not pt.dominates((3,), (2, 1))
    assert pt.dominates((1, 1), ())


def test_pi_q_values():
    assert pt.pi_q((5, 3, 1), 2) == 3
    assert pt.pi_q((), 7) == 0
    assert pt.pi_q((9,), 1) == 9
    with pytest.raises(ValueError):
        pt.pi_q((2,), 0)


@given(partition_st, partition_st, st.integers(1, 5))
def test_pi_q_additive_under_union(alpha, beta, q):
    assert pt.pi_q(pt.union(alpha, beta), q) == pt.pi_q(alpha, q) + pt.pi_q(beta, q)


@given(partition_st, st.integers(1, 5))
def test_pi_q_weight_sandwich(alpha, q):
    # q*floor(a/q) <= a <= q*floor(a/q) + q - 1, summed over parts
    total = sum(alpha)
    assert q * pt.pi_q(alpha, q) <= total
    assert total <= q * pt.pi_q(alpha, q) + (q - 1) * len(alpha)


def test_in_np_tables():
    assert [i for i in range(1, 17) if pt.in_np(i, 2)] == [2, 4, 5, 6, 8, 9, 10, 11, 12, 13, 14, 16]
    assert [i for i in range(1, 10) if pt.in_np(i, 3)] == [1, 3, 4, 5, 6, 7, 9]
    assert not pt.in_np(0, 2)
    assert not pt.in_np(26, 3)  # 27 = 3^3


def test_is_power_of_and_is_prime():
    assert pt.is_power_of(1, 5)
    assert pt.is_power_of(8, 2)
    assert not pt.is_power_of(6, 2)
    assert not pt.is_power_of(0, 3)
    assert pt.is_prime(2) and pt.is_prime(13)
    assert not pt.is_prime(1) and not pt.is_prime(9)


def test_index_set_membership():
    fin = IndexSet.finite([3, 5])
    assert 3 in fin and 5 in fin and 4 not in fin
    assert not fin.is_empty()
    assert IndexSet.finite([]).is_empty()
    cof = IndexSet.np_minus(2, [5])
    assert 2 in cof and 4 in cof
    assert 5 not in cof  # excluded
    assert 7 not in cof  # not in N_2 to begin with
    assert not cof.is_empty()


def test_index_set_validation():
    with pytest.raises(ValueError):
        IndexSet.finite([0])
    with pytest.raises(ValueError):
        IndexSet.finite([-2, 3])
    with pytest.raises(ValueError):
        IndexSet.np_minus(4)


def test_rho_finite():
    assert rho_q(IndexSet.finite({6, 8}), 3) == Fraction(1, 4)
    assert rho_q(IndexSet.finite([]), 3) == Fraction(1, 3)
    assert rho_q(IndexSet.finite({1, 2}), 5) == 0


def test_rho_cofinite():
    assert rho_q(IndexSet.np_minus(2), 2) == Fraction(2, 5)
    assert rho_q(IndexSet.np_minus(2, [5]), 2) == Fraction(4, 9)
    # 1 is in N_3 and floor(1/3) = 0, so the infimum collapses
    assert rho_q(IndexSet.np_minus(3), 3) == 0
    with pytest.raises(ValueError):
        rho_q(IndexSet.np_minus(2), 0)


@given(st.sets(st.integers(1, 40), min_size=1, max_size=8), st.integers(1, 5))
def test_rho_is_the_min_ratio(members, q):
    val = rho_q(IndexSet.finite(members), q)
    assert val == min(Fraction(i // q, i) for i in members)
    # shrinking the set can only raise the infimum
    sub = set(list(members)[: max(1, len(members) // 2)])
    assert rho_q(IndexSet.finite(sub), q) >= val


def test_canonical_term_key_order():
    everything = [a for n in range(4) for a in pt.partitions_of(n)]
    got = sorted(everything, key=pt.canonical_term_key)
    assert got == [(), (1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1)]
