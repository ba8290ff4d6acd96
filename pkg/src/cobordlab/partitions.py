"""Integer partitions and the multiset calculus built on them.

A partition is a tuple of weakly decreasing positive integers; () is the
empty partition.  Canonical enumeration order is descending lexicographic,
so partitions_of(4) runs (4,), (3,1), (2,2), (2,1,1), (1,1,1,1).

Besides enumeration this module provides the two partial orders used by the
cobordism code (dominance and refinement), the floor-sum statistic pi_q, and
the exact ratio rho_q of an index set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Partition = tuple[int, ...]

# partitions_of refuses weights above this unless the caller raises the cap
DEFAULT_WEIGHT_CAP = 64

# large safety margin for the rho_q residue scan; the scan always terminates
# long before this because every residue class meets a cofinite index set
_RHO_SCAN_LIMIT = 10**6


def is_partition(alpha) -> bool:
    """True if alpha is a weakly decreasing tuple of positive integers."""
    if not isinstance(alpha, tuple):
        return False
    return all(isinstance(a, int) and a >= 1 for a in alpha) and all(
        alpha[i] >= alpha[i + 1] for i in range(len(alpha) - 1)
    )


def as_partition(parts) -> Partition:
    """Sort an iterable of positive integers into a partition."""
    alpha = tuple(sorted(parts, reverse=True))
    if not is_partition(alpha):
        raise ValueError(f"not a partition: {parts!r}")
    return alpha


def check_partition(alpha) -> Partition:
    if not is_partition(alpha):
        raise ValueError(f"not a partition: {alpha!r}")
    return alpha


def weight(alpha: Partition) -> int:
    return sum(alpha)


def union(alpha: Partition, beta: Partition) -> Partition:
    """Multiset union, re-sorted into partition form."""
    return tuple(sorted(alpha + beta, reverse=True))


def dominates(alpha: Partition, beta: Partition) -> bool:
    """Componentwise order: len(alpha) >= len(beta) and alpha_j >= beta_j."""
    if len(alpha) < len(beta):
        return False
    return all(alpha[j] >= beta[j] for j in range(len(beta)))


def pi_q(alpha: Partition, q: int) -> int:
    """Sum of floor(part / q) over the parts."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    return sum(a // q for a in alpha)


def partitions_of(n: int, parts=None, cap: int = DEFAULT_WEIGHT_CAP) -> list[Partition]:
    """All partitions of n in canonical order, optionally with restricted parts.

    parts may be None (no restriction), an IndexSet, or any container
    supporting membership tests for integers 1..n.
    """
    if n > cap:
        raise ValueError(f"weight {n} exceeds cap {cap}")
    if n < 0:
        return []
    if n == 0:
        return [()]
    allowed = None
    if parts is not None:
        allowed = [v for v in range(n, 0, -1) if v in parts]
    out: list[Partition] = []
    stack: list[int] = []

    def rec(rem: int, max_part: int):
        if rem == 0:
            out.append(tuple(stack))
            return
        if allowed is None:
            first = min(rem, max_part)
            for v in range(first, 0, -1):
                stack.append(v)
                rec(rem - v, v)
                stack.pop()
        else:
            for v in allowed:
                if v > max_part or v > rem:
                    continue
                stack.append(v)
                rec(rem - v, v)
                stack.pop()

    rec(n, n)
    return out


def _runs(alpha: Partition) -> list[tuple[int, int]]:
    """Distinct parts with multiplicities, largest part first."""
    runs: list[tuple[int, int]] = []
    for a in alpha:
        if runs and runs[-1][0] == a:
            runs[-1] = (a, runs[-1][1] + 1)
        else:
            runs.append((a, 1))
    return runs


def sub_multisets(alpha: Partition) -> list[Partition]:
    """All sub-multisets of alpha, as partitions, in a fixed order."""
    runs = _runs(alpha)
    subs: list[list[int]] = [[]]
    for part, mult in runs:
        subs = [s + [part] * k for s in subs for k in range(mult + 1)]
    return [tuple(s) for s in subs]


def splittings(alpha: Partition) -> list[tuple[Partition, Partition]]:
    """Ordered pairs (beta, gamma) of partitions with beta union gamma = alpha.

    Each pair appears exactly once; there are prod(mult_i + 1) of them.
    """
    pairs = []
    counts = _runs(alpha)
    for beta in sub_multisets(alpha):
        bruns = dict(_runs(beta))
        gamma = []
        for part, mult in counts:
            gamma.extend([part] * (mult - bruns.get(part, 0)))
        pairs.append((beta, tuple(gamma)))
    return pairs


@lru_cache(maxsize=200000)
def refines(alpha: Partition, beta: Partition) -> bool:
    """True if alpha refines beta: alpha splits into blocks summing to beta's parts."""
    if weight(alpha) != weight(beta):
        return False
    if not beta:
        return not alpha
    if len(alpha) < len(beta):
        return False
    target = beta[0]
    rest = beta[1:]
    for block in sub_multisets(alpha):
        if weight(block) != target or not block:
            continue
        remainder = _multiset_minus(alpha, block)
        if refines(remainder, rest):
            return True
    return False


def _multiset_minus(alpha: Partition, block: Partition) -> Partition:
    remaining = list(alpha)
    for b in block:
        remaining.remove(b)
    return tuple(remaining)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def is_power_of(n: int, p: int) -> bool:
    """True if n = p**k for some k >= 0."""
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def in_np(i: int, p: int) -> bool:
    """Membership in the generator index set: i >= 1 and i+1 not a power of p."""
    return i >= 1 and not is_power_of(i + 1, p)


@dataclass(frozen=True)
class IndexSet:
    """A set of generator indices: explicit and finite, or cofinite in N_p.

    The cofinite form is N_p minus a finite exclusion set, where N_p is the
    set of i >= 1 with i+1 not a power of p.
    """

    members: frozenset[int] | None = None
    p: int | None = None
    excluded: frozenset[int] = frozenset()

    @staticmethod
    def finite(members) -> "IndexSet":
        ms = frozenset(members)
        if any((not isinstance(m, int)) or m < 1 for m in ms):
            raise ValueError("index sets contain positive integers only")
        return IndexSet(members=ms)

    @staticmethod
    def np_minus(p: int, excluded=()) -> "IndexSet":
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return IndexSet(p=p, excluded=frozenset(excluded))

    def __contains__(self, i: int) -> bool:
        if self.members is not None:
            return i in self.members
        return in_np(i, self.p) and i not in self.excluded

    def is_empty(self) -> bool:
        return self.members is not None and not self.members


def rho_q(index_set: IndexSet, q: int) -> Fraction:
    """Exact infimum of floor(i/q)/i over the index set.

    For an empty set the value is 1/q.  For a cofinite set the infimum is
    attained on the smallest member of some residue class mod q, because
    a -> a/(aq+r) is increasing in a; scanning residue classes up to their
    first members is exact.
    """
    if q < 1:
        raise ValueError("q must be a positive integer")
    if index_set.members is not None:
        if not index_set.members:
            return Fraction(1, q)
        return min(Fraction(i // q, i) for i in index_set.members)
    best: Fraction | None = None
    seen_residues: set[int] = set()
    i = 1
    while len(seen_residues) < q:
        if i > _RHO_SCAN_LIMIT:
            raise AssertionError("rho_q residue scan failed to terminate")
        r = i % q
        if r not in seen_residues and i in index_set:
            seen_residues.add(r)
            ratio = Fraction(i // q, i)
            if best is None or ratio < best:
                best = ratio
        i += 1
    return best


def canonical_term_key(alpha: Partition):
    """Sort key ordering partitions by weight, then canonical order within weight."""
    return (sum(alpha), tuple(-a for a in alpha))
