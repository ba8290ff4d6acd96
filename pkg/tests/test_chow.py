"""Chow models, characteristic series, atom classes, variety expressions."""

from math import comb

import pytest

from cobordlab.chow import (
    STANDARD,
    ChowModel,
    HAtom,
    KClass,
    PAtom,
    VExpr,
    VProduct,
    atom_class,
    atom_model,
    cf_class,
    cf_series,
    chern_numbers,
    class_from_tangent,
    make_h_atom,
    parse_variety,
    series_inv,
    series_mul,
    series_one,
    tangent_kclass,
)
from cobordlab.fpring import BPoly


def test_model_caps_and_degree():
    model = ChowModel(3, (2,))
    h = model.var(0)
    assert model.power(h, 3) == model.zero()
    assert model.deg(model.monomial((2,), 2)) == 2
    assert model.deg(model.one()) == 0


def test_h_model_degree_multiplier():
    # deg on H(1,2) is deg on P^1 x P^2 against the (1,1) divisor class
    model = atom_model(HAtom(1, 2), 5)
    assert model.virtual_dim == 2
    x1_sq = model.monomial((0, 2), 1)
    assert model.deg(x1_sq) == 1
    assert model.deg(model.one()) == 0


def test_projective_closed_form_matches_engine():
    # the closed multinomial formula against the generic series engine
    for p in (2, 3, 5):
        for n in range(8):
            direct = atom_class(PAtom(n), p)
            engine = class_from_tangent(tangent_kclass(PAtom(n), p))
            assert direct == engine, (p, n)


def test_milnor_table_matches_engine():
    for p in (2, 3):
        for n, m in [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)]:
            direct = atom_class(HAtom(n, m), p)
            engine = class_from_tangent(tangent_kclass(HAtom(n, m), p))
            assert direct == engine, (p, n, m)


def test_milnor_degenerate_isomorphisms():
    # H(0,m) is a hyperplane P^{m-1}; H(1,1) is a (1,1) conic, again P^1
    for p in (2, 3):
        for m in range(1, 6):
            assert atom_class(HAtom(0, m), p) == atom_class(PAtom(m - 1), p)
        assert atom_class(HAtom(1, 1), p) == atom_class(PAtom(1), p)


def test_milnor_top_chern_number():
    # adjunction gives the single-part number of H(n,m): binom(n+m,n) for
    # n >= 2, zero for 1 = n < m, and -2 for the conic H(1,1)
    for p in (2, 3, 5):
        for n in range(1, 5):
            for m in range(n, 6):
                got = atom_class(HAtom(n, m), p).coefficient((n + m - 1,))
                if n >= 2:
                    want = comb(n + m, n) % p
                elif m > 1:
                    want = 0
                else:
                    want = -2 % p
                assert got == want, (p, n, m)


def test_product_class_matches_two_variable_model():
    # BPoly multiplicativity vs a genuine rank-2 Chow computation
    for p in (2, 3):
        for a in range(1, 4):
            for b in range(a, 4):
                model = ChowModel(p, (a, b), None, a + b)
                tangent = KClass(model, ((a + 1, (1, 0)), (b + 1, (0, 1))), -2)
                assert class_from_tangent(tangent) == chern_numbers(f"P({a})*P({b})", p)


def test_chern_numbers_disjoint_union_adds():
    p = 3
    twice = chern_numbers("P(2) + P(2)", p)
    assert twice == atom_class(PAtom(2), p).scale(2)
    assert chern_numbers("2.P(2)", p) == twice


def test_chern_numbers_accepts_many_input_forms():
    x = chern_numbers("H(2,4)", 2)
    assert chern_numbers(HAtom(2, 4), 2) == x
    assert chern_numbers(VProduct((HAtom(2, 4),)), 2) == x
    expr, _ = parse_variety("H(2,4)")
    assert chern_numbers(expr, 2) == x


def test_chern_numbers_truncation():
    x = chern_numbers("P(4)", 2, max_weight=3)
    assert x.max_weight == 3
    assert x.terms == {}  # the class is homogeneous of weight 4
    assert chern_numbers("P(2)", 2, max_weight=2).terms == {(2,): 1}
    assert chern_numbers("P(4)", 2).max_weight is None


def test_point_class_is_one():
    assert chern_numbers("P(0)", 5) == BPoly.one(5)


def test_parse_variety_roundtrip():
    text = "2.P(4)*H(2,4) + P(1)"
    expr, notes = parse_variety(text)
    assert notes == []
    assert str(expr) == text
    assert expr.dim() == 9
    assert expr.parts[0][0] == 2


def test_parse_variety_normalizes_h():
    expr, notes = parse_variety("H(4,2)")
    assert notes == ["H(4,2) normalized to H(2,4)"]
    assert expr.parts[0][1].atoms[0] == HAtom(2, 4)


def test_parse_variety_rejects_garbage():
    for bad in ["P(2", "Q(1)", "P(2)!", "0.P(1)", "P()", "", "P(2)*", "H(2)"]:
        with pytest.raises(ValueError):
            parse_variety(bad)


def test_make_h_atom_swaps():
    atom, swapped = make_h_atom(4, 2)
    assert atom == HAtom(2, 4) and swapped
    atom, swapped = make_h_atom(2, 4)
    assert atom == HAtom(2, 4) and not swapped
    with pytest.raises(ValueError):
        HAtom(4, 2)


def test_cf_series_whitney_product():
    model = ChowModel(2, (3,))
    e = KClass(model, ((2, (1,)),), 0)
    f = KClass(model, ((1, (1,)),), 1)
    both = KClass(model, ((2, (1,)), (1, (1,))), 1)
    lhs = cf_series(both, STANDARD, 3)
    rhs = series_mul(model, cf_series(e, STANDARD, 3), cf_series(f, STANDARD, 3), 3)
    assert lhs == rhs


def test_cf_class_values_and_length_vanishing():
    # tangent of P^2: c_(2) = 3h^2, and partitions longer than the line count vanish
    tangent = tangent_kclass(PAtom(2), 5)
    model = tangent.model
    assert cf_class(tangent, (2,)) == model.monomial((2,), 3)
    assert cf_class(tangent, (1, 1, 1, 1)) == model.zero()


def test_series_inverse():
    model = ChowModel(3, (3,))
    h = model.var(0)
    s = {(): model.one(), (1,): h, (2,): model.power(h, 2)}
    inv = series_inv(model, s, 3)
    assert series_mul(model, s, inv, 3) == series_one(model)
    with pytest.raises(ValueError):
        series_inv(model, {(1,): h}, 3)


def test_kclass_rank_negate():
    t = tangent_kclass(PAtom(3), 2)
    assert t.rank() == 3
    assert t.negate().rank() == -3


def test_vexpr_dim_empty():
    assert VExpr(()).dim() == -1
    assert str(VExpr(())) == "0"
