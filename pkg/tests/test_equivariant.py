"""Equivariant Chow model: dividing polynomials, localization, f-classes."""

import itertools

import pytest

from cobordlab.chow import ChowModel
from cobordlab.equivariant import (
    EqProjClass,
    FDividedFamily,
    TRing,
    epsilon_r,
    euler_inverse_eps,
    f_alpha_class,
    f_poly,
    localization_check,
    localization_sweep_violations,
    phi,
)


def test_phi_closed_form():
    # phi(p) = x^p - t^(p-1) x; the middle terms vanish by Fermat
    assert phi(2) == {(2, 0): 1, (1, 1): 1}
    assert phi(3) == {(3, 0): 1, (1, 2): 2}
    assert phi(5) == {(5, 0): 1, (1, 4): 4}
    with pytest.raises(ValueError):
        phi(4)


def test_f_poly_values():
    assert f_poly(2, 5) == {(5, 0): 1, (3, 2): 1}
    assert f_poly(3, 4) == {(4, 0): 1, (2, 2): 2}
    assert f_poly(5, 7) == {(7, 0): 1, (3, 4): 4}
    assert f_poly(3, 0) == {(0, 0): 1}


def test_f_poly_structure():
    for p in (2, 3, 5):
        for i in range(13):
            f = f_poly(p, i)
            # specializes to x^i at t = 0
            assert {k: v for k, v in f.items() if k[1] == 0} == {(i, 0): 1}
            # homogeneous of degree i, and x^floor(i/p) divides
            assert all(x + t == i for x, t in f)
            assert min(x for x, _ in f) >= i // p


def test_tring_is_a_ring():
    base = ChowModel(3, (2,))
    ring = TRing(base)
    xi = base.var(0)
    a = ring.add(ring.t_term(1, xi), ring.from_base(base.one()))
    b = ring.t_term(2, base.power(xi, 2))
    c = ring.scalar(2)
    assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
    assert ring.mul(a, ring.one()) == a
    assert ring.mul(a, ring.zero()) == ring.zero()
    assert ring.power(a, 2) == ring.mul(a, a)
    assert ring.mul(ring.t_term(1, base.one()), ring.t_term(2, xi)) == ring.t_term(3, xi)


def test_epsilon_r_is_a_homomorphism():
    base = ChowModel(3, (2,))
    ring = TRing(base)
    xi = base.var(0)
    elems = [
        ring.from_base(xi),
        ring.t_term(1, base.one()),
        ring.add(ring.t_term(2, xi), ring.scalar(2)),
    ]
    for a, b in itertools.product(elems, repeat=2):
        for r in (0, 1, 2):
            assert epsilon_r(ring.mul(a, b), r, base) == base.mul(
                epsilon_r(a, r, base), epsilon_r(b, r, base)
            )
            assert epsilon_r(ring.add(a, b), r, base) == base.add(
                epsilon_r(a, r, base), epsilon_r(b, r, base)
            )
    # r = 0 keeps only the t-free layer
    assert epsilon_r(ring.t_term(1, xi), 0, base) == base.zero()


def test_euler_inverse_eps():
    p = 3
    base = ChowModel(p, (2,))
    xi = base.var(0)
    chern = [base.smul(2, xi), base.power(xi, 2)]
    for c in (1, 2):
        for r in (1, 2):
            inv = euler_inverse_eps(base, chern, c, r)
            n = len(chern)
            val = base.scalar(pow(r * c, n, p))
            for k, ck in enumerate(chern, start=1):
                val = base.add(val, base.smul(pow(r * c, n - k, p), ck))
            assert base.mul(inv, val) == base.one()
    with pytest.raises(ValueError):
        euler_inverse_eps(base, chern, 3, 1)  # 3*1 = 0 mod 3: not invertible


def test_eqprojclass_reduction():
    # over P(V) with weights (0,1) mod 2 the relation is zeta^2 = zeta*t
    a = EqProjClass.monomial(2, (0, 1), 2, 0)
    b = EqProjClass.monomial(2, (0, 1), 1, 1)
    assert a == b
    # trivial weights: zeta^2 = 0
    assert EqProjClass.monomial(2, (0, 0), 2, 0).element == {}
    # weights enter mod p
    assert EqProjClass.monomial(3, (4, 1), 2, 1) == EqProjClass.monomial(3, (1, 1), 2, 1)
    assert a.degrees() == {2}


def test_localization_hand_examples():
    assert localization_check(2, (0, 1), {(1, 0): 1}, 1) == (1, 1)
    assert localization_check(2, (0, 0), {(1, 0): 1}, 1) == (1, 1)
    for r in (1, 2):
        assert localization_check(3, (0, 1, 2), {(2, 0): 1}, r) == (1, 1)
    # accepts an already-reduced class object too
    y = EqProjClass.monomial(2, (0, 1, 1), 1, 1)
    lhs, rhs = localization_check(2, (0, 1, 1), y, 1)
    assert lhs == rhs


def test_localization_sweep_small():
    assert localization_sweep_violations(2, max_len=3) == []
    assert localization_sweep_violations(3, max_len=2) == []


def test_localization_input_validation():
    with pytest.raises(ValueError):
        localization_check(2, (0, 1), {(1, 0): 1}, 0)  # r must be nonzero
    with pytest.raises(ValueError):
        localization_check(2, (0, 1), {(2, 0): 1}, 1)  # degree above n = 1
    with pytest.raises(ValueError):
        localization_check(2, (0, 1), {(1, 0): 1, (0, 0): 1}, 1)  # mixed degree
    with pytest.raises(ValueError):
        localization_check(2, (), {(0, 0): 1}, 1)


def test_f_divided_family_values():
    base = ChowModel(2, (3,))
    ring = TRing(base)
    h = base.var(0)
    vals = FDividedFamily(2).values(ring, ring.from_base(h), 3)
    # f_0 = 1, f_1 = x, f_2 = phi = x^2 + tx evaluated at x = h
    assert vals[0] == ring.one()
    assert vals[1] == ring.from_base(h)
    assert vals[2] == {0: base.power(h, 2), 1: h}


def test_f_alpha_class_single_line():
    base = ChowModel(2, (2,))
    h = base.var(0)
    out = f_alpha_class([(h, 1)], (2,), base)
    assert out == {0: base.power(h, 2), 1: h}  # f_2(h + t) mod 2
    # the family itself carries t through phi, so even the trivial character
    # keeps a t-layer; the t = 0 slice is the plain Chern coefficient
    trivial = f_alpha_class([(h, 0)], (2,), base)
    assert trivial == {0: base.power(h, 2), 1: h}
    assert epsilon_r(trivial, 0, base) == base.power(h, 2)
    assert f_alpha_class([(h, 1)], (), base) == {0: base.one()}


def test_f_alpha_class_two_lines():
    base = ChowModel(2, (2,))
    h = base.var(0)
    out = f_alpha_class([(h, 1), (h, 1)], (1, 1), base)
    # f_1(h+t)^2 = h^2 + t^2 over F_2
    assert out == {0: base.power(h, 2), 2: base.one()}
    # every layer is homogeneous: base degree + t degree = weight
    for tdeg, elem in out.items():
        for exps in elem:
            assert sum(exps) + tdeg == 2
