"""Explicit diagonalizable p-group actions described by character weight data.

An action of a diagonalizable group on a projective space, a Milnor
hypersurface, or a product/disjoint union of those is encoded purely by
character multisets: every fixed-locus dimension formula used here depends
only on multiplicities and equality of characters.  Characters are tuples
of residues, one per invariant factor of the character group.

The constructors build the actions whose fixed loci have dimension exactly
floor(n/q) on P^n (and the matching two-case value on H(n, m)); realize
assembles them into a disjoint union of products achieving dim_q for any
class in the generator ring.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .chow import HAtom, PAtom, VExpr, VProduct, chern_numbers, make_h_atom
from .cobordism import GeneratorFamily, NotInLp, dim_q_direct, express_in_generators, standard_generators
from .fpring import NEG_INF, BPoly
from .partitions import in_np

Character = tuple[int, ...]


def _prime_power_root(f: int) -> tuple[int, int]:
    """(p, r) with f = p^r, r >= 1."""
    if f < 2:
        raise ValueError(f"invariant factor {f} is not a prime power")
    p = next(d for d in range(2, f + 1) if f % d == 0)
    r = 0
    rest = f
    while rest % p == 0:
        rest //= p
        r += 1
    if rest != 1:
        raise ValueError(f"invariant factor {f} is not a prime power")
    return p, r


@dataclass(frozen=True)
class CharacterGroup:
    """Finite abelian p-group presented by prime-power invariant factors."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        if not self.invariant_factors:
            raise ValueError("at least one invariant factor is required")
        primes = {_prime_power_root(f)[0] for f in self.invariant_factors}
        if len(primes) != 1:
            raise ValueError("all invariant factors must be powers of one prime")

    @staticmethod
    def cyclic(q: int) -> "CharacterGroup":
        return CharacterGroup((q,))

    @property
    def p(self) -> int:
        return _prime_power_root(self.invariant_factors[0])[0]

    @property
    def q(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    def characters(self) -> list[Character]:
        """All characters in a fixed deterministic order."""
        return list(itertools.product(*(range(f) for f in self.invariant_factors)))


@dataclass(frozen=True)
class PAct:
    """Action on P(V) given by the character multiset of V (sorted tuple)."""

    weights: tuple[Character, ...]

    def __post_init__(self):
        if not self.weights:
            raise ValueError("P(V) needs dim V >= 1")
        if tuple(sorted(self.weights)) != self.weights:
            raise ValueError("weights must be stored sorted")


@dataclass(frozen=True)
class HAct:
    """Action on the Milnor hypersurface in P(V) x P(W), V a sub-multiset of W."""

    V: tuple[Character, ...]
    W: tuple[Character, ...]

    def __post_init__(self):
        if not self.V or not self.W:
            raise ValueError("V and W must be nonempty")
        if tuple(sorted(self.V)) != self.V or tuple(sorted(self.W)) != self.W:
            raise ValueError("character multisets must be stored sorted")
        cv, cw = Counter(self.V), Counter(self.W)
        if any(cv[c] > cw[c] for c in cv):
            raise ValueError("V must be a sub-multiset of W")


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        for f in self.factors:
            if not isinstance(f, (PAct, HAct)):
                raise ValueError("product factors must be atomic actions")


@dataclass(frozen=True)
class Disjoint:
    parts: tuple[tuple[int, Product], ...]

    def __post_init__(self):
        for mult, node in self.parts:
            if mult < 1:
                raise ValueError("multiplicities must be positive")
            if not isinstance(node, Product):
                raise ValueError("disjoint parts must be products")


WeightedVariety = PAct | HAct | Product | Disjoint


def fixed_dim(a: WeightedVariety):
    """Exact dimension of the fixed locus; -inf when it is empty.

    P(V): one projective component per character c in V, of dimension
    mult(c) - 1.  Milnor case: components are projective bundles indexed by
    pairs (c, g), of dimension (mult_V(c) - 1) + (r - 1) where the fibre
    rank is r = mult_W(g), less one when g = c; empty unless r >= 1.
    """
    if isinstance(a, PAct):
        return max(Counter(a.weights).values()) - 1
    if isinstance(a, HAct):
        cv, cw = Counter(a.V), Counter(a.W)
        best = NEG_INF
        for c, mv in cv.items():
            for g, mw in cw.items():
                r = mw - (1 if g == c else 0)
                if r >= 1:
                    best = max(best, (mv - 1) + (r - 1))
        return best
    if isinstance(a, Product):
        total = 0
        for f in a.factors:
            d = fixed_dim(f)
            if d == NEG_INF:
                return NEG_INF
            total += d
        return total
    if isinstance(a, Disjoint):
        return max((fixed_dim(node) for _, node in a.parts), default=NEG_INF)
    raise TypeError(f"not an action node: {a!r}")


_ACTION_SINKS: list[list] = []


class record_actions:
    """Context manager collecting every action the constructors build.

    The soundness sweep replays all of them against the dimension bound, so
    the constructors report each finished action to any active sink.
    """

    def __enter__(self) -> list:
        self.log: list[tuple[WeightedVariety, CharacterGroup]] = []
        _ACTION_SINKS.append(self.log)
        return self.log

    def __exit__(self, *exc) -> bool:
        _ACTION_SINKS.remove(self.log)
        return False


def _record(action: WeightedVariety, G: CharacterGroup) -> None:
    for sink in _ACTION_SINKS:
        sink.append((action, G))


def construct_action_P(n: int, G: CharacterGroup) -> PAct:
    """Action on P^n with fixed locus of dimension exactly floor(n/q).

    Writing n + 1 = q*a + r with 1 <= r <= q, the first r characters get
    multiplicity a + 1 and the rest get a.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    q = G.q
    a = n // q
    r = n + 1 - q * a
    chars = G.characters()
    weights = []
    for idx, ch in enumerate(chars):
        weights.extend([ch] * (a + 1 if idx < r else a))
    action = PAct(tuple(sorted(weights)))
    assert fixed_dim(action) == n // q
    _record(action, G)
    return action


def construct_action_H(n: int, m: int, G: CharacterGroup) -> HAct:
    """Action on H(n, m), n <= m after normalization.

    V and W follow the same first-characters-get-one-more rule as the P^n
    case; with n <= m the prefix choice makes V a sub-multiset of W.  The
    fixed dimension is floor((n+m-1)/q) when q divides both n and m, and
    floor(n/q) + floor(m/q) otherwise; H(0,0) is empty (-inf).
    """
    if n < 0 or m < 0:
        raise ValueError("indices must be nonnegative")
    n, m = min(n, m), max(n, m)
    q = G.q
    chars = G.characters()

    def multiset(dim_plus_one: int) -> tuple[Character, ...]:
        a, r = dim_plus_one // q, dim_plus_one % q
        if r == 0:
            a, r = a - 1, q
        out = []
        for idx, ch in enumerate(chars):
            out.extend([ch] * (a + 1 if idx < r else a))
        return tuple(sorted(out))

    action = HAct(multiset(n + 1), multiset(m + 1))
    if n + m > 0:
        if n % q == 0 and m % q == 0:
            expected = (n + m - 1) // q
        else:
            expected = n // q + m // q
        assert fixed_dim(action) == expected
    else:
        assert fixed_dim(action) == NEG_INF
    _record(action, G)
    return action


def construct_action_L(i: int, G: CharacterGroup) -> PAct | HAct:
    """Action on the weight-i generator variety with fixed dimension floor(i/q)."""
    p = G.p
    if not in_np(i, p):
        raise ValueError(f"{i} is not a generator index for p={p}")
    if (i + 1) % p:
        action: PAct | HAct = construct_action_P(i, G)
    else:
        rest, s = i + 1, 0
        while rest % p == 0:
            rest //= p
            s += 1
        action = construct_action_H(p**s, (rest - 1) * p**s, G)
    assert fixed_dim(action) == i // G.q
    return action


def underlying_variety(a: WeightedVariety) -> VExpr:
    """The variety expression an action node acts on."""

    def atom(node) -> PAtom | HAtom:
        if isinstance(node, PAct):
            return PAtom(len(node.weights) - 1)
        if isinstance(node, HAct):
            return make_h_atom(len(node.V) - 1, len(node.W) - 1)[0]
        raise TypeError(f"not an atomic action: {node!r}")

    if isinstance(a, (PAct, HAct)):
        return VExpr(((1, VProduct((atom(a),))),))
    if isinstance(a, Product):
        return VExpr(((1, VProduct(tuple(atom(f) for f in a.factors))),))
    if isinstance(a, Disjoint):
        return VExpr(tuple((mult, VProduct(tuple(atom(f) for f in node.factors))) for mult, node in a.parts))
    raise TypeError(f"not an action node: {a!r}")


def realize(x: BPoly, G: CharacterGroup, fam: GeneratorFamily | None = None) -> tuple[Disjoint, object]:
    """An explicit action on a variety with class x whose fixed locus achieves dim_q.

    Expresses x in the standard generators and takes the disjoint union,
    with the expression's coefficients as multiplicities, of products of
    per-generator actions.  Asserts both halves of the contract: the
    achieved dimension equals dim_q(x) and the underlying variety's class
    reproduces x exactly.
    """
    p = x.p
    if G.p != p:
        raise ValueError("character group prime mismatch")
    if fam is None:
        fam = standard_generators(p)
    if not fam.kind.startswith("standard"):
        raise ValueError("realize needs the standard family: its atoms are the standard generator varieties")
    P = express_in_generators(x, fam)
    if isinstance(P, NotInLp):
        raise P
    parts = []
    for beta in P.support():
        node = Product(tuple(construct_action_L(part, G) for part in beta))
        parts.append((P.terms[beta], node))
    action = Disjoint(tuple(parts))
    achieved = fixed_dim(action)
    assert achieved == dim_q_direct(x, G.q)
    assert chern_numbers(underlying_variety(action), p) == x
    _record(action, G)
    return action, achieved


def action_to_json(a: WeightedVariety) -> dict:
    if isinstance(a, PAct):
        return {"type": "P", "weights": [list(c) for c in a.weights]}
    if isinstance(a, HAct):
        return {"type": "H", "V": [list(c) for c in a.V], "W": [list(c) for c in a.W]}
    if isinstance(a, Product):
        return {"type": "Product", "factors": [action_to_json(f) for f in a.factors]}
    if isinstance(a, Disjoint):
        return {
            "type": "Disjoint",
            "parts": [{"multiplicity": mult, "action": action_to_json(node)} for mult, node in a.parts],
        }
    raise TypeError(f"not an action node: {a!r}")
