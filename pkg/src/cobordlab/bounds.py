"""Fixed-locus dimension bounds and divisibility conclusions.

Everything here consumes exact mod-p classes.  The headline inequality says
a diagonalizable p-group action of order q on X forces dim of the fixed
locus to be at least dim_q [X]; the ratio and divisibility variants below
are its consequences, phrased so each one is checkable in generator
coordinates.

Bounds are returned as integers (or -inf when no constraint exists):
dimensions are integers, so fractional lower bounds are rounded up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from . import partitions as pt
from .cobordism import GeneratorFamily, NotInLp, dim_q_direct, express_in_generators, standard_generators
from .fpring import NEG_INF, BPoly
from .partitions import IndexSet, Partition, in_np, rho_q


def _check_order(p: int, q: int) -> None:
    if q < 1 or not pt.is_power_of(q, p):
        raise ValueError(f"q={q} is not a power of p={p}")


def main_bound(x: BPoly, q: int):
    """Lower bound for the fixed-locus dimension under any order-q action.

    q must be a power of the class's prime.  The zero class imposes no
    constraint (-inf).
    """
    _check_order(x.p, q)
    return dim_q_direct(x, q)


def partition_bound(alphas, q: int) -> int:
    """Additive bound: sum of pi_q over a list of partitions."""
    return sum(pt.pi_q(pt.check_partition(a), q) for a in alphas)


def np_complement(A, p: int) -> IndexSet:
    """N_p minus the given index collection, as an IndexSet."""
    if isinstance(A, IndexSet):
        if A.members is not None:
            return IndexSet.np_minus(p, excluded=A.members)
        if A.p != p:
            raise ValueError("index set belongs to a different prime")
        return IndexSet.finite({e for e in A.excluded if in_np(e, p)})
    return IndexSet.np_minus(p, excluded=frozenset(A))


def _describe_indices(A) -> object:
    if isinstance(A, IndexSet):
        if A.members is not None:
            return sorted(A.members)
        return {"cofiniteInNp": True, "excluded": sorted(A.excluded)}
    return sorted(set(A))


@dataclass(frozen=True)
class BoundReport:
    """Outcome of a hypothesis-checked bound.

    bound is -inf exactly when the hypothesis fails or the class is zero;
    certificate is the generator monomial witnessing the hypothesis.
    """

    bound: object  # int or NEG_INF
    hypothesis_checked: str
    certificate: Partition | None
    inputs: dict

    def to_json_dict(self) -> dict:
        return {
            "bound": None if self.bound == NEG_INF else self.bound,
            "hypothesisChecked": self.hypothesis_checked,
            "certificate": list(self.certificate) if self.certificate is not None else None,
            "inputs": self.inputs,
        }


def ratio_bound(x: BPoly, A, s: int, q: int, fam: GeneratorFamily | None = None) -> BoundReport:
    """Ratio-type bound from a monomial with few factors in the index set A.

    For homogeneous x of weight n: if its generator expression contains a
    monomial with at most s parts lying in A, then any order-q fixed locus
    has dimension at least rho_q(N_p minus A) * (n - (q-1)s), rounded up.
    The qualifying monomial is returned as the certificate.
    """
    p = x.p
    _check_order(p, q)
    if s < 0:
        raise ValueError("s must be nonnegative")
    inputs = {"p": p, "q": q, "s": s, "A": _describe_indices(A), "weight": None}
    if x.is_zero():
        return BoundReport(NEG_INF, "zero class: no constraint", None, inputs)
    if not x.is_homogeneous():
        raise ValueError("ratio_bound needs a homogeneous class")
    n = int(x.top_weight())
    inputs["weight"] = n
    if fam is None:
        fam = standard_generators(p)
    P = express_in_generators(x, fam)
    if isinstance(P, NotInLp):
        raise P
    certificate = None
    for beta in P.support():
        if sum(1 for part in beta if part in A) <= s:
            certificate = beta
            break
    if certificate is None:
        return BoundReport(
            NEG_INF, f"no monomial with at most {s} factors indexed in A", None, inputs
        )
    rho = rho_q(np_complement(A, p), q)
    bound = ceil(rho * (n - (q - 1) * s))
    return BoundReport(
        bound, f"monomial with at most {s} factors indexed in A", certificate, inputs
    )


def _low_part_weight(beta: Partition, q: int) -> int:
    return sum(part for part in beta if part <= q - 2)


def small_fixed_divisibility(x: BPoly, q: int, d: int, fam: GeneratorFamily | None = None) -> bool:
    """Check the low-degree divisibility forced by a small fixed locus.

    For homogeneous x of weight n with n >= (2q-1)d, an order-q action with
    fixed locus of dimension <= d forces every generator monomial of x to
    carry factors of index <= q-2 totalling weight >= n - (2q-1)d.  Returns
    that verdict; the precondition is an error, not a failure.
    """
    p = x.p
    _check_order(p, q)
    if x.is_zero() or not x.is_homogeneous():
        raise ValueError("a nonzero homogeneous class is required")
    n = int(x.top_weight())
    if n < (2 * q - 1) * d:
        raise ValueError(f"precondition n >= (2q-1)d fails: {n} < {(2 * q - 1) * d}")
    if fam is None:
        fam = standard_generators(p)
    P = express_in_generators(x, fam)
    if isinstance(P, NotInLp):
        raise P
    need = n - (2 * q - 1) * d
    return all(_low_part_weight(beta, q) >= need for beta in P.terms)


def milnor_divisibility_check(x: BPoly, d: int, fam: GeneratorFamily | None = None) -> bool:
    """Mod-2 divisibility by the weight-5 Milnor generator.

    For homogeneous x of weight n over p=2 with an order-2 fixed locus of
    dimension <= d, every generator monomial must carry the index-5 factor
    with exponent at least ceil((3n-7d)/15); vacuous when that is <= 0.
    """
    if x.p != 2:
        raise ValueError("this check is specific to p=2")
    if x.is_zero() or not x.is_homogeneous():
        raise ValueError("a nonzero homogeneous class is required")
    n = int(x.top_weight())
    need = ceil(Fraction(3 * n - 7 * d, 15))
    if need <= 0:
        return True
    if fam is None:
        fam = standard_generators(2)
    P = express_in_generators(x, fam)
    if isinstance(P, NotInLp):
        raise P
    return all(sum(1 for part in beta if part == 5) >= need for beta in P.terms)


def np_monomial_ratio_violations(p: int, q: int, max_weight: int) -> list[Partition]:
    """N_p-partitions violating pi_q >= rho_q(N_p) * weight, up to max_weight.

    Mathematically empty for every (p, q); the exhaustive scan is the
    machine check.  With p = q = 2 the threshold is ceil(2n/5).
    """
    rho = rho_q(IndexSet.np_minus(p), q)
    violations = []
    for n in range(1, max_weight + 1):
        allowed = [j for j in range(1, n + 1) if in_np(j, p)]
        for beta in pt.partitions_of(n, parts=allowed):
            if pt.pi_q(beta, q) < ceil(rho * n):
                violations.append(beta)
    return violations
