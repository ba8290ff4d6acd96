"""Truncated polynomial models of Chow rings and the Conner-Floyd series engine.

A ChowModel is F_p[h_1..h_k] modulo h_i^(cap_i + 1), together with a degree
functional: deg(z) is the top-corner coefficient of degree_multiplier * z.
Elements are sparse dicts mapping exponent tuples to nonzero residues.

The series engine computes multiplicative characteristic series
P_g(E) = prod_j P_g(L_j)^(m_j) for split K-classes E, generically over any
coefficient ring implementing the small protocol used here (zero/one/add/
mul/neg/scalar/is_zero).  A series is a dict from partitions to ring
elements; multiplication convolves by partition union.

Variety expressions are disjoint unions, with multiplicities, of products of
two kinds of atoms: projective spaces P(n) and Milnor hypersurfaces H(n, m)
(the smooth (1,1)-divisor in P^n x P^m, canonically ordered n <= m).
chern_numbers maps an expression to its mod-p Chern-number class as a BPoly.

For speed, P^n classes come from a closed multinomial form and hypersurface
classes from shared per-prime tables of the inverse powers
(sum_i b_i x^i)^(-m); the generic engine recomputes both on small cases in
the tests so the fast routes never go unchecked.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from math import comb, factorial

from . import partitions as pt
from .fpring import BPoly
from .partitions import Partition


class ChowModel:
    """F_p[h_1..h_k] / (h_i^(cap_i+1)) with a degree functional."""

    def __init__(self, p: int, caps: tuple[int, ...], degree_multiplier=None, virtual_dim: int | None = None):
        if not pt.is_prime(p):
            raise ValueError(f"{p} is not prime")
        if any(c < 0 for c in caps):
            raise ValueError("caps must be nonnegative")
        self.p = p
        self.caps = tuple(caps)
        self.nvars = len(caps)
        # default degree functional: coefficient of the top corner monomial
        self.degree_multiplier = degree_multiplier if degree_multiplier is not None else self.one()
        self.virtual_dim = virtual_dim if virtual_dim is not None else sum(caps)

    # -- ring protocol -----------------------------------------------------

    def zero(self) -> dict:
        return {}

    def one(self) -> dict:
        return {(0,) * self.nvars: 1}

    def scalar(self, k: int) -> dict:
        k %= self.p
        return {(0,) * self.nvars: k} if k else {}

    def monomial(self, exps: tuple[int, ...], coeff: int = 1) -> dict:
        if len(exps) != self.nvars:
            raise ValueError("exponent arity mismatch")
        coeff %= self.p
        if not coeff or any(e > c for e, c in zip(exps, self.caps)):
            return {}
        return {tuple(exps): coeff}

    def var(self, i: int) -> dict:
        exps = [0] * self.nvars
        exps[i] = 1
        return self.monomial(tuple(exps))

    def linear_form(self, coeffs: tuple[int, ...]) -> dict:
        """sum coeffs_i * h_i"""
        out = self.zero()
        for i, c in enumerate(coeffs):
            out = self.add(out, self.monomial(tuple(1 if j == i else 0 for j in range(self.nvars)), c))
        return out

    def is_zero(self, a: dict) -> bool:
        return not a

    def is_one(self, a: dict) -> bool:
        return a == self.one()

    def add(self, a: dict, b: dict) -> dict:
        out = dict(a)
        for e, c in b.items():
            s = (out.get(e, 0) + c) % self.p
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return out

    def neg(self, a: dict) -> dict:
        return {e: self.p - c for e, c in a.items()}

    def sub(self, a: dict, b: dict) -> dict:
        return self.add(a, self.neg(b))

    def smul(self, k: int, a: dict) -> dict:
        k %= self.p
        if not k:
            return {}
        return {e: (k * c) % self.p for e, c in a.items() if (k * c) % self.p}

    def mul(self, a: dict, b: dict) -> dict:
        caps = self.caps
        p = self.p
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                if any(x > c for x, c in zip(e, caps)):
                    continue
                s = (out.get(e, 0) + c1 * c2) % p
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return out

    def power(self, a: dict, k: int) -> dict:
        result = self.one()
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def deg(self, z: dict) -> int:
        """Degree functional: top-corner coefficient of degree_multiplier * z."""
        return self.mul(self.degree_multiplier, z).get(self.caps, 0)

    def __repr__(self):
        return f"ChowModel(p={self.p}, caps={self.caps})"


@dataclass(frozen=True)
class KClass:
    """Split K-theory class: line bundles with integer multiplicities plus a trivial offset.

    Each line is (multiplicity, twist); the twist is the tuple of h_i
    exponents, so c_1 = sum twist_i * h_i in the model.
    """

    model: ChowModel
    lines: tuple[tuple[int, tuple[int, ...]], ...]
    offset: int = 0

    def rank(self) -> int:
        return sum(m for m, _ in self.lines) + self.offset

    def negate(self) -> "KClass":
        return KClass(self.model, tuple((-m, t) for m, t in self.lines), -self.offset)


class StandardFamily:
    """The multiplicative family with g_i(x) = x^i."""

    def values(self, ring, c1, max_weight: int):
        vals = [ring.one()]
        for _ in range(max_weight):
            vals.append(ring.mul(vals[-1], c1))
        return vals


STANDARD = StandardFamily()


# -- generic series algebra -----------------------------------------------


def series_one(ring) -> dict:
    return {(): ring.one()}


def line_series(ring, gvalues) -> dict:
    """P_g(L) = sum_i g_i(c_1(L)) b_i given the evaluated family values."""
    out = {}
    for i, v in enumerate(gvalues):
        if not ring.is_zero(v):
            out[(i,) if i else ()] = v
    return out


def series_mul(ring, s: dict, t: dict, max_weight: int) -> dict:
    groups: dict[int, list] = {}
    for gamma, cg in t.items():
        groups.setdefault(sum(gamma), []).append((gamma, cg))
    out: dict = {}
    for beta, cb in s.items():
        wb = sum(beta)
        for wg, items in groups.items():
            if wb + wg > max_weight:
                continue
            for gamma, cg in items:
                prod = ring.mul(cb, cg)
                if ring.is_zero(prod):
                    continue
                u = tuple(sorted(beta + gamma, reverse=True))
                if u in out:
                    acc = ring.add(out[u], prod)
                    if ring.is_zero(acc):
                        del out[u]
                    else:
                        out[u] = acc
                else:
                    out[u] = prod
    return out


def series_inv(ring, s: dict, max_weight: int) -> dict:
    """Inverse of a series with constant term 1, by weight recursion."""
    if () not in s or not ring.is_one(s[()]):
        raise ValueError("series is not invertible: constant term must be 1")
    u_by_w: dict[int, list] = {}
    for beta, c in s.items():
        w = sum(beta)
        if w:
            u_by_w.setdefault(w, []).append((beta, c))
    t_by_w: dict[int, dict] = {0: {(): ring.one()}}
    for w in range(1, max_weight + 1):
        acc: dict = {}
        for wu, items in u_by_w.items():
            if wu > w:
                continue
            lower = t_by_w.get(w - wu, {})
            for beta, ub in items:
                for gamma, tg in lower.items():
                    prod = ring.mul(ub, tg)
                    if ring.is_zero(prod):
                        continue
                    alpha = tuple(sorted(beta + gamma, reverse=True))
                    acc[alpha] = ring.add(acc.get(alpha, ring.zero()), prod)
        level = {}
        for alpha, v in acc.items():
            nv = ring.neg(v)
            if not ring.is_zero(nv):
                level[alpha] = nv
        t_by_w[w] = level
    out = {}
    for level in t_by_w.values():
        out.update(level)
    return out


def series_pow(ring, s: dict, k: int, max_weight: int) -> dict:
    if k < 0:
        return series_pow(ring, series_inv(ring, s, max_weight), -k, max_weight)
    result = series_one(ring)
    base = s
    while k:
        if k & 1:
            result = series_mul(ring, result, base, max_weight)
        base = series_mul(ring, base, base, max_weight)
        k >>= 1
    return result


def cf_series(E: KClass, g=STANDARD, max_weight: int | None = None) -> dict:
    """Characteristic series P_g(E) of a split K-class, truncated by weight."""
    ring = E.model
    if max_weight is None:
        max_weight = ring.virtual_dim
    result = series_one(ring)
    for mult, twist in E.lines:
        c1 = ring.linear_form(twist)
        s = line_series(ring, g.values(ring, c1, max_weight))
        result = series_mul(ring, result, series_pow(ring, s, mult, max_weight), max_weight)
    if E.offset:
        s0 = line_series(ring, g.values(ring, ring.zero(), max_weight))
        result = series_mul(ring, result, series_pow(ring, s0, E.offset, max_weight), max_weight)
    return result


def cf_class(E: KClass, alpha, g=STANDARD) -> dict:
    """Single coefficient g_alpha(E) of the characteristic series."""
    alpha = pt.check_partition(tuple(alpha))
    series = cf_series(E, g, max_weight=sum(alpha))
    return series.get(alpha, E.model.zero())


# -- variety expressions ---------------------------------------------------


@dataclass(frozen=True)
class PAtom:
    n: int

    def dim(self) -> int:
        return self.n

    def __str__(self):
        return f"P({self.n})"


@dataclass(frozen=True)
class HAtom:
    n: int
    m: int

    def __post_init__(self):
        if self.n > self.m:
            raise ValueError("HAtom stores n <= m; use make_h_atom to normalize")

    def dim(self) -> int:
        return self.n + self.m - 1

    def __str__(self):
        return f"H({self.n},{self.m})"


Atom = PAtom | HAtom


def make_h_atom(a: int, b: int) -> tuple[HAtom, bool]:
    """Normalized Milnor atom and whether the indices were swapped."""
    if a < 0 or b < 0:
        raise ValueError("H indices must be nonnegative")
    return (HAtom(a, b), False) if a <= b else (HAtom(b, a), True)


@dataclass(frozen=True)
class VProduct:
    atoms: tuple[Atom, ...]

    def dim(self) -> int:
        return sum(a.dim() for a in self.atoms)

    def __str__(self):
        return "*".join(str(a) for a in self.atoms)


@dataclass(frozen=True)
class VExpr:
    """Disjoint union of products, with positive integer multiplicities."""

    parts: tuple[tuple[int, VProduct], ...]

    def dim(self) -> int:
        """Top dimension across components; -1 for the empty expression."""
        return max((prod.dim() for _, prod in self.parts), default=-1)

    def __str__(self):
        if not self.parts:
            return "0"
        chunks = []
        for mult, prod in self.parts:
            chunks.append(f"{mult}.{prod}" if mult != 1 else str(prod))
        return " + ".join(chunks)


_TOKEN = re.compile(r"\s*(?:(\d+)|([PH*+,().])|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.group(3):
            raise ValueError(f"bad character in expression: {text[pos:]!r}")
        tokens.append(m.group(1) or m.group(2))
        pos = m.end()
    tokens.append(None)
    return tokens


def parse_variety(text: str) -> tuple[VExpr, list[str]]:
    """Parse 'expr := term (+ term)*; term := [uint .] atom (* atom)*'.

    Returns the expression and any normalization notes (H index swaps).
    """
    tokens = _tokenize(text)
    pos = 0
    notes: list[str] = []

    def peek():
        return tokens[pos]

    def take(expected=None):
        nonlocal pos
        tok = tokens[pos]
        if expected is not None and tok != expected:
            raise ValueError(f"expected {expected!r} at token {tok!r}")
        pos += 1
        return tok

    def parse_uint():
        tok = take()
        if tok is None or not tok.isdigit():
            raise ValueError(f"expected integer, got {tok!r}")
        return int(tok)

    def parse_atom():
        tok = take()
        if tok == "P":
            take("(")
            n = parse_uint()
            take(")")
            if n < 0:
                raise ValueError("P(n) needs n >= 0")
            return PAtom(n)
        if tok == "H":
            take("(")
            a = parse_uint()
            take(",")
            b = parse_uint()
            take(")")
            atom, swapped = make_h_atom(a, b)
            if swapped:
                notes.append(f"H({a},{b}) normalized to H({b},{a})")
            return atom
        raise ValueError(f"expected atom, got {tok!r}")

    def parse_term():
        mult = 1
        if peek() is not None and peek().isdigit():
            mult = parse_uint()
            take(".")
            if mult < 1:
                raise ValueError("multiplicity must be positive")
        atoms = [parse_atom()]
        while peek() == "*":
            take("*")
            atoms.append(parse_atom())
        return mult, VProduct(tuple(atoms))

    parts = [parse_term()]
    while peek() == "+":
        take("+")
        parts.append(parse_term())
    if peek() is not None:
        raise ValueError(f"trailing input at {peek()!r}")
    return VExpr(tuple(parts)), notes


# -- atom models and tangent classes ---------------------------------------


def atom_model(atom: Atom, p: int) -> ChowModel:
    if isinstance(atom, PAtom):
        return ChowModel(p, (atom.n,), None, atom.n)
    model = ChowModel(p, (atom.n, atom.m), None, atom.n + atom.m - 1)
    model.degree_multiplier = model.add(model.var(0), model.var(1))
    return model


def tangent_kclass(atom: Atom, p: int) -> KClass:
    """Tangent bundle of an atom in split K-theory form over its model."""
    model = atom_model(atom, p)
    if isinstance(atom, PAtom):
        return KClass(model, ((atom.n + 1, (1,)),), -1)
    lines = ((atom.n + 1, (1, 0)), (atom.m + 1, (0, 1)), (-1, (1, 1)))
    return KClass(model, lines, -2)


def class_from_tangent(tangent: KClass, max_weight: int | None = None) -> BPoly:
    """Chern-number class via the generic engine: deg of each P(-T) coefficient."""
    model = tangent.model
    W = model.virtual_dim if max_weight is None else max_weight
    series = cf_series(tangent.negate(), STANDARD, W)
    terms = {alpha: model.deg(c) for alpha, c in series.items()}
    return BPoly(model.p, terms, None if W >= model.virtual_dim else W)


# -- tuned atom classes via shared inverse-power tables ---------------------


def _conv(x: dict, y: dict, p: int, max_weight: int) -> dict:
    groups: dict[int, list] = {}
    for gamma, cg in y.items():
        groups.setdefault(sum(gamma), []).append((gamma, cg))
    out: dict = {}
    for beta, cb in x.items():
        wb = sum(beta)
        for wg, items in groups.items():
            if wb + wg > max_weight:
                continue
            for gamma, cg in items:
                u = tuple(sorted(beta + gamma, reverse=True))
                s = (out.get(u, 0) + cb * cg) % p
                if s:
                    out[u] = s
                else:
                    out.pop(u, None)
    return out


class _InvPowerTable:
    """Per-prime tables of (sum_i b_i x^i)^(-m), coefficients as scalars.

    The b_alpha coefficient of such a power is lambda * x^|alpha|; only the
    scalar lambda is stored, the x-power being implied by the weight.
    """

    def __init__(self, p: int):
        self.p = p
        self.weight = -1
        self.powers: list[dict] = []

    def _rebuild(self, max_weight: int):
        p = self.p
        # T = S^{-1} where S = sum_i b_i; recursion T = 1 - (S-1) T by weight
        t_by_w: dict[int, dict] = {0: {(): 1}}
        for w in range(1, max_weight + 1):
            acc: dict = {}
            for i in range(1, w + 1):
                for gamma, tg in t_by_w[w - i].items():
                    alpha = tuple(sorted((i,) + gamma, reverse=True))
                    acc[alpha] = (acc.get(alpha, 0) + tg) % p
            t_by_w[w] = {a: (p - c) % p for a, c in acc.items() if (p - c) % p}
        T = {}
        for level in t_by_w.values():
            T.update(level)
        self.powers = [{(): 1}, T]
        self.weight = max_weight

    def inverse_power(self, m: int, max_weight: int) -> dict:
        """Coefficients of S^(-m) up to the given weight."""
        if max_weight > self.weight:
            self._rebuild(max_weight)
        while len(self.powers) <= m:
            self.powers.append(_conv(self.powers[-1], self.powers[1], self.p, self.weight))
        return self.powers[m]


_TABLES: dict[int, _InvPowerTable] = {}


def _table(p: int) -> _InvPowerTable:
    if p not in _TABLES:
        _TABLES[p] = _InvPowerTable(p)
    return _TABLES[p]


def _pn_class(p: int, n: int) -> BPoly:
    """Mod-p class of P^n: weight-n slice of the (n+1)st inverse power.

    Expanding (1 + (S-1))^(-(n+1)) binomially gives the coefficient at a
    partition alpha with L parts and multiplicities m_j directly:
    (-1)^L * binom(n+L, L) * L! / prod(m_j!).  This closed form matches the
    table route term by term; the table stays in use for the hypersurface
    classes, whose weights stay small, while P^n is needed up to weight 30.
    """
    terms = {}
    for alpha in pt.partitions_of(n):
        L = len(alpha)
        c = comb(n + L, L) * factorial(L)
        for mult in Counter(alpha).values():
            c //= factorial(mult)
        c = (-c) % p if L % 2 else c % p
        if c:
            terms[alpha] = c
    return BPoly(p, terms, None)


def _h_class(p: int, n: int, m: int) -> BPoly:
    """Mod-p class of the Milnor hypersurface in P^n x P^m."""
    d = n + m - 1
    if d < 0:
        return BPoly.zero(p)  # H(0,0) is empty
    model = atom_model(HAtom(n, m) if n <= m else HAtom(m, n), p)
    if n > m:
        raise ValueError("normalized indices expected")
    tab = _table(p)
    a_scalars = tab.inverse_power(n + 1, d)
    b_scalars = tab.inverse_power(m + 1, d)
    # lift the two one-variable inverse powers into the product model
    A = {}
    for alpha, c in a_scalars.items():
        w = sum(alpha)
        if w <= n:
            A[alpha] = {(w, 0): c}
    B = {}
    for alpha, c in b_scalars.items():
        w = sum(alpha)
        if w <= m:
            B[alpha] = {(0, w): c}
    # line series of O(1,1)
    h11 = model.add(model.var(0), model.var(1))
    L = {(): model.one()}
    power = model.one()
    for i in range(1, d + 1):
        power = model.mul(power, h11)
        if model.is_zero(power):
            break
        L[(i,)] = power
    series = series_mul(model, series_mul(model, A, B, d), L, d)
    terms = {alpha: model.deg(c) for alpha, c in series.items()}
    return BPoly(p, terms, None)


_ATOM_CACHE: dict[tuple, BPoly] = {}


def atom_class(atom: Atom, p: int) -> BPoly:
    key = (p, atom)
    if key not in _ATOM_CACHE:
        if isinstance(atom, PAtom):
            _ATOM_CACHE[key] = _pn_class(p, atom.n)
        else:
            _ATOM_CACHE[key] = _h_class(p, atom.n, atom.m)
    return _ATOM_CACHE[key]


def chern_numbers(expr, p: int, max_weight: int | None = None) -> BPoly:
    """Mod-p Chern-number class of a variety expression.

    Accepts a VExpr, a VProduct, an atom, or a string in the expression
    grammar.  The result is exact unless max_weight truncates it.
    """
    if isinstance(expr, str):
        expr, _ = parse_variety(expr)
    if isinstance(expr, (PAtom, HAtom)):
        expr = VExpr(((1, VProduct((expr,))),))
    if isinstance(expr, VProduct):
        expr = VExpr(((1, expr),))
    total = BPoly.zero(p)
    for mult, prod in expr.parts:
        term = BPoly.one(p)
        for atom in prod.atoms:
            term = term * atom_class(atom, p)
        total = total + term.scale(mult)
    if max_weight is not None:
        total = total.truncate(max_weight)
    return total
