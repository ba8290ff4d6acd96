"""Sparse partition-indexed polynomials over a prime field.

BPoly models classes in the mod-p Lazard quotient: a finite sum of
b-monomials b_alpha with coefficients in F_p, multiplied by multiset union
of the indexing partitions.  A BPoly optionally carries a truncation weight;
coefficients above the truncation are unknown and reading them is an error.
max_weight None means the element is exact and everything unstored is zero.

GenPoly models polynomials in abstract generator symbols; a monomial
X_{i_1}...X_{i_k} is stored as the partition (i_1 >= ... >= i_k).
"""

from __future__ import annotations

from . import partitions as pt
from .partitions import Partition, canonical_term_key

NEG_INF = float("-inf")


class TruncationError(Exception):
    """Raised when a coefficient above the truncation weight is requested."""


def _check_prime(p: int):
    if not pt.is_prime(p):
        raise ValueError(f"{p} is not prime")


def _normalize(terms: dict, p: int, max_weight: int | None) -> dict:
    out = {}
    for alpha, c in terms.items():
        alpha = tuple(alpha)
        if max_weight is not None and sum(alpha) > max_weight:
            continue
        c %= p
        if c:
            out[alpha] = c
    return out


def _min_weight(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class BPoly:
    """Mod-p linear combination of b-monomials indexed by partitions."""

    __slots__ = ("p", "terms", "max_weight")

    def __init__(self, p: int, terms: dict | None = None, max_weight: int | None = None):
        _check_prime(p)
        if max_weight is not None and max_weight < 0:
            raise ValueError("max_weight must be nonnegative")
        self.p = p
        self.terms = _normalize(terms or {}, p, max_weight)
        self.max_weight = max_weight
        for alpha in self.terms:
            pt.check_partition(alpha)

    @classmethod
    def zero(cls, p: int, max_weight: int | None = None) -> "BPoly":
        return cls(p, {}, max_weight)

    @classmethod
    def one(cls, p: int, max_weight: int | None = None) -> "BPoly":
        return cls(p, {(): 1}, max_weight)

    @classmethod
    def monomial(cls, p: int, alpha, coeff: int = 1, max_weight: int | None = None) -> "BPoly":
        return cls(p, {tuple(alpha): coeff}, max_weight)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[Partition]:
        return sorted(self.terms, key=canonical_term_key)

    def coefficient(self, alpha) -> int:
        alpha = pt.check_partition(tuple(alpha))
        if self.max_weight is not None and sum(alpha) > self.max_weight:
            raise TruncationError(
                f"coefficient of weight {sum(alpha)} unknown beyond truncation {self.max_weight}"
            )
        return self.terms.get(alpha, 0)

    def top_weight(self):
        """Largest weight in the support; NEG_INF for zero."""
        return max((sum(a) for a in self.terms), default=NEG_INF)

    def is_homogeneous(self) -> bool:
        ws = {sum(a) for a in self.terms}
        return len(ws) <= 1

    def weight_components(self) -> dict[int, "BPoly"]:
        comps: dict[int, dict] = {}
        for alpha, c in self.terms.items():
            comps.setdefault(sum(alpha), {})[alpha] = c
        return {w: BPoly(self.p, t, self.max_weight) for w, t in sorted(comps.items())}

    def truncate(self, max_weight: int | None) -> "BPoly":
        mw = _min_weight(self.max_weight, max_weight)
        return BPoly(self.p, self.terms, mw)

    def _binop_check(self, other: "BPoly"):
        if not isinstance(other, BPoly):
            raise TypeError(f"expected BPoly, got {type(other).__name__}")
        if other.p != self.p:
            raise ValueError("mixed primes")

    def __add__(self, other: "BPoly") -> "BPoly":
        self._binop_check(other)
        mw = _min_weight(self.max_weight, other.max_weight)
        terms = dict(self.terms)
        for alpha, c in other.terms.items():
            terms[alpha] = terms.get(alpha, 0) + c
        return BPoly(self.p, terms, mw)

    def __neg__(self) -> "BPoly":
        return self.scale(-1)

    def __sub__(self, other: "BPoly") -> "BPoly":
        return self + (-other)

    def scale(self, k: int) -> "BPoly":
        k %= self.p
        return BPoly(self.p, {a: k * c for a, c in self.terms.items()}, self.max_weight)

    def __mul__(self, other: "BPoly") -> "BPoly":
        self._binop_check(other)
        p = self.p
        mw = _min_weight(self.max_weight, other.max_weight)
        groups: dict[int, list] = {}
        for gamma, cg in other.terms.items():
            groups.setdefault(sum(gamma), []).append((gamma, cg))
        out: dict[Partition, int] = {}
        for beta, cb in self.terms.items():
            wb = sum(beta)
            for wg, items in groups.items():
                if mw is not None and wb + wg > mw:
                    continue
                for gamma, cg in items:
                    u = tuple(sorted(beta + gamma, reverse=True))
                    out[u] = (out.get(u, 0) + cb * cg) % p
        return BPoly(p, out, mw)

    def __pow__(self, k: int) -> "BPoly":
        if k < 0:
            raise ValueError("negative powers not defined for BPoly")
        result = BPoly.one(self.p, self.max_weight)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BPoly)
            and self.p == other.p
            and self.max_weight == other.max_weight
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.p, self.max_weight, frozenset(self.terms.items())))

    def __repr__(self):
        return f"BPoly(p={self.p}, {format_bpoly(self)})"

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "maxWeight": self.max_weight,
            "terms": [
                {"partition": list(alpha), "coeff": self.terms[alpha]}
                for alpha in self.support()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "BPoly":
        terms = {tuple(t["partition"]): t["coeff"] for t in data["terms"]}
        return cls(data["p"], terms, data.get("maxWeight"))


def format_bpoly(x: BPoly) -> str:
    """Readable rendering like '1*b[4] + 1*b[2]^2'."""
    if x.is_zero():
        return "0"
    chunks = []
    for alpha in x.support():
        factors = []
        for part, mult in pt._runs(alpha):
            factors.append(f"b[{part}]" + (f"^{mult}" if mult > 1 else ""))
        mono = "*".join(factors) if factors else "1"
        chunks.append(f"{x.terms[alpha]}*{mono}" if factors else f"{x.terms[alpha]}")
    return " + ".join(chunks)


class GenPoly:
    """Mod-p polynomial in generator symbols, monomials stored as partitions."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: dict | None = None):
        _check_prime(p)
        self.p = p
        self.terms = _normalize(terms or {}, p, None)
        for alpha in self.terms:
            pt.check_partition(alpha)

    @classmethod
    def zero(cls, p: int) -> "GenPoly":
        return cls(p, {})

    @classmethod
    def monomial(cls, p: int, beta, coeff: int = 1) -> "GenPoly":
        return cls(p, {tuple(beta): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[Partition]:
        return sorted(self.terms, key=canonical_term_key)

    def coefficient(self, beta) -> int:
        return self.terms.get(tuple(beta), 0)

    def deg(self):
        """Top weight of the support, NEG_INF for the zero polynomial."""
        return max((sum(b) for b in self.terms), default=NEG_INF)

    def deg_q(self, q: int):
        """Degree where the symbol of index i counts floor(i/q); NEG_INF for zero."""
        return max((pt.pi_q(b, q) for b in self.terms), default=NEG_INF)

    def __add__(self, other: "GenPoly") -> "GenPoly":
        if not isinstance(other, GenPoly) or other.p != self.p:
            raise TypeError("mixed GenPoly operands")
        terms = dict(self.terms)
        for b, c in other.terms.items():
            terms[b] = terms.get(b, 0) + c
        return GenPoly(self.p, terms)

    def scale(self, k: int) -> "GenPoly":
        return GenPoly(self.p, {b: k * c for b, c in self.terms.items()})

    def __mul__(self, other: "GenPoly") -> "GenPoly":
        if not isinstance(other, GenPoly) or other.p != self.p:
            raise TypeError("mixed GenPoly operands")
        out: dict[Partition, int] = {}
        for beta, cb in self.terms.items():
            for gamma, cg in other.terms.items():
                u = tuple(sorted(beta + gamma, reverse=True))
                out[u] = (out.get(u, 0) + cb * cg) % self.p
        return GenPoly(self.p, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, GenPoly) and self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def __repr__(self):
        return f"GenPoly(p={self.p}, {format_genpoly(self)})"

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "terms": [
                {"monomial": list(beta), "coeff": self.terms[beta]}
                for beta in self.support()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "GenPoly":
        return cls(data["p"], {tuple(t["monomial"]): t["coeff"] for t in data["terms"]})


def format_genpoly(P: GenPoly) -> str:
    if P.is_zero():
        return "0"
    chunks = []
    for beta in P.support():
        factors = []
        for part, mult in pt._runs(beta):
            factors.append(f"X[{part}]" + (f"^{mult}" if mult > 1 else ""))
        mono = "*".join(factors) if factors else "1"
        chunks.append(f"{P.terms[beta]}*{mono}" if factors else f"{P.terms[beta]}")
    return " + ".join(chunks)
