import random

import pytest

from ffcurve.curve import AlgFunc, CurveModel, hasse_y
from ffcurve.errors import (
    NotOnCurveError,
    PrecisionExhaustedError,
    SingularPointError,
)
from ffcurve.field import make_field
from ffcurve.local import (
    Series,
    algfunc_on_series,
    branch_at,
    branch_at_infinity,
    check_point_bounds,
    compose_morphism,
    point_orders,
    series_det,
    series_wronskian_valuation_check,
    valuation_T,
)
from ffcurve.orders import Morphism, kappa_orders, generic_orders


def lines(curve):
    return Morphism(curve, (AlgFunc.one(curve), AlgFunc.x(curve),
                            AlgFunc.y(curve)), curve.deg_total, name="lines")


def test_series_arithmetic_and_precision():
    f = make_field(3)
    s = Series.from_elems(f, 0, [1, 2, 1], 6)   # 1 + 2t + t^2
    t = Series.t(f, 6)
    prod = s * s
    assert prod.val() == 0
    inv = s.inverse()
    one = s * inv
    assert one.val() == 0
    assert all(not any(c) for c in one.rc[1:])
    shifted = s.shift(3)
    assert shifted.val() == 3 and shifted.prec == 9
    assert (s - s).is_zero_to_prec()
    # precision rule for products with nonzero valuation
    u = t * t  # val 2, prec 6+1 = 7
    assert u.val() == 2 and u.prec == 7


def test_series_hasse():
    f = make_field(2)
    s = Series.from_elems(f, 0, [1, 1, 1, 1, 1, 1, 1, 1], 8)  # sum t^i
    d2 = s.hasse(2)
    # C(i,2) mod 2 for i = 2..7: 1,1,0,0,1,1 -> coefficients at t^0..t^5
    assert [any(c) for c in [d2.coeff(e) for e in range(6)]] == \
        [True, True, False, False, True, True]


def test_branch_at_parabola():
    curve = CurveModel(make_field(3), {(0, 2): 1, (1, 0): -1})  # y^2 = x
    br = branch_at(curve, (1, 1), 4)
    # y(t) = 1 + 2t + t^2 + ..., certified by squaring back to 1 + t
    sq = br.y_series * br.y_series
    assert sq.coeff(0) == br.field.rone
    assert sq.coeff(1) == br.field.rone
    assert all(not any(sq.coeff(e)) for e in range(2, 4))
    assert br.y_series.coeff(1) == (2,)
    assert br.y_series.coeff(2) == (1,)
    ok, _ = br.check_on_curve()
    assert ok


def test_branch_errors():
    curve = CurveModel(make_field(3), {(0, 2): 1, (1, 0): -1})
    with pytest.raises(NotOnCurveError):
        branch_at(curve, (1, 0), 4)
    nodal = CurveModel(make_field(5),
                       {(0, 2): 1, (3, 0): -1, (2, 0): -1})  # y^2 = x^2(x+1)
    with pytest.raises(SingularPointError):
        branch_at(nodal, (0, 0), 4)


def test_branch_swapped_roles():
    # at (1, 0) on x^4 + y^4 = 1 over F_49 the y-partial vanishes, x-partial not
    f49 = make_field(7, 2)
    curve = CurveModel(f49, {(4, 0): 1, (0, 4): 1, (0, 0): -1})
    br = branch_at(curve, (1, 0), 12)
    ok, _ = br.check_on_curve()
    assert ok
    assert br.y_series.val() == 1  # t = y is the parameter


def test_hasse_y_series_oracle():
    """Symbolic Hasse derivatives agree with series Hasse derivatives."""
    cases = [
        CurveModel(make_field(3), {(0, 2): 1, (1, 0): -1}),
        CurveModel(make_field(2, 3), {(7, 0): 1, (0, 7): 1, (0, 0): -1}),
        CurveModel(make_field(3, 2), {(4, 0): 1, (0, 4): 1, (0, 0): -1}),
    ]
    for curve in cases:
        field = curve.field
        # pick smooth points with f_y != 0 so t = x - a
        pts = []
        for a in field.elements():
            gy = curve.y_poly_at(a)
            from ffcurve.upoly import roots
            for b in roots(gy):
                if not curve.partial_y_at(a, b).is_zero():
                    pts.append((a, b))
            if len(pts) >= 3:
                break
        assert pts, "no smooth points found"
        prec = 24
        for a, b in pts[:3]:
            br = branch_at(curve, (a, b), prec)
            ys = br.y_series
            for r in range(9):
                sym = hasse_y(curve, r)
                composed = algfunc_on_series(sym, br.x_series, br.y_series)
                direct = ys.hasse(r)
                diff = composed - direct
                assert diff.is_zero_to_prec(), (r, curve)


def test_point_orders_y23_inflection():
    f8 = make_field(2, 3)
    curve = CurveModel(f8, {(7, 0): 1, (0, 7): 1, (0, 0): -1})
    m = lines(curve)
    # (0, b) with b^7 = 1: every F_8 point is a total inflection, j = (0,1,7)
    b = next(a for a in f8.elements() if not a.is_zero())
    br = branch_at(curve, (f8.zero(), b), 24)
    po = point_orders(m, br)
    assert po.j.values == (0, 1, 7)
    assert po.e_p == 0


def test_valuation_T_y23():
    f8 = make_field(2, 3)
    curve = CurveModel(f8, {(7, 0): 1, (0, 7): 1, (0, 0): -1})
    m = lines(curve)
    kap = kappa_orders(m, 1, 2)
    b = next(a for a in f8.elements() if not a.is_zero())
    br = branch_at(curve, (f8.zero(), b), 24)
    # hand-checked: det has leading cancellation at t^8 and v_P = 15 = q j_1 + j_2
    assert valuation_T(m, br, 1, 2, kap.values) == 15


def test_valuation_T_fermat_d8():
    f9 = make_field(3, 2)
    curve = CurveModel(f9, {(8, 0): 1, (0, 8): 1, (0, 0): 1})  # x^8+y^8+1 = 0
    m = lines(curve)
    kap = kappa_orders(m, 1, 2)
    assert kap.values == (0,)
    # generic rational point: j = (0, 1, 2) and v = q j_1 + j_2 (n-1) = 11
    found = None
    for a in f9.elements():
        if a.is_zero():
            continue
        from ffcurve.upoly import roots
        for b in roots(curve.y_poly_at(a)):
            found = (a, b)
            break
        if found:
            break
    br = branch_at(curve, found, 30)
    po = point_orders(m, br)
    assert po.j.values == (0, 1, 2)
    assert valuation_T(m, br, 1, 2, kap.values) == 11


def test_point_orders_total_inflection_at_infinity():
    # x^(q+1) - x^2 + y^q - y over F_3: the place at (0:1:0) has j = (0, 1, 4)
    f3 = make_field(3)
    curve = CurveModel(f3, {(4, 0): 1, (2, 0): -1, (0, 3): 1, (0, 1): -1})
    m = lines(curve)
    br = branch_at_infinity(curve, (f3.zero(), f3.one()), 24)
    po = point_orders(m, br)
    assert po.j.values == (0, 1, 4)
    assert po.e_p == 4  # poles of (1 : x : y) at this place


def test_check_point_bounds_y23():
    f8 = make_field(2, 3)
    curve = CurveModel(f8, {(7, 0): 1, (0, 7): 1, (0, 0): -1})
    m = lines(curve)
    kap = kappa_orders(m, 1, 2)
    eps = generic_orders(m)
    b = next(a for a in f8.elements() if not a.is_zero())
    br = branch_at(curve, (f8.zero(), b), 24)
    po = point_orders(m, br, rat_levels={1, 2})
    v = valuation_T(m, br, 1, 2, kap.values)
    rep = check_point_bounds(po, kap, eps, v, p=2, qu=8, u=1, m=2)
    assert rep.ok
    assert rep.criteria["equality_holds"]  # v = 15 attains the case bound


def test_series_wronskian_identity_case():
    f = make_field(5)
    zs = [Series.from_elems(f, 0, [1], 10).shift(i) for i in range(3)]
    rep = series_wronskian_valuation_check(zs, (0, 1, 2), 5)
    assert rep["valuation"] == 0
    assert rep["equality"]


def test_series_wronskian_strict_case_p3():
    f = make_field(3)
    zs = [
        Series.from_elems(f, 0, [1], 12),
        Series.from_elems(f, 0, [1], 12).shift(1),
        Series.from_elems(f, 0, [1], 12).shift(3),
    ]
    # binomial det for j = (0,1,3), m = (0,1,2) vanishes mod 3: strict bound
    rep = series_wronskian_valuation_check(zs, (0, 1, 2), 3)
    assert not rep["equality"]
    assert rep["binom_det"] == 0
    assert rep["valuation"] is None or rep["valuation"] > rep["bound"]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_series_wronskian_random_perturbations(p):
    field = make_field(p)
    rng = random.Random(p * 1000 + 7)
    prec = 30
    for _ in range(200):
        e = rng.randrange(2, 4)
        js = sorted(rng.sample(range(0, 9), e + 1))
        ms = sorted(rng.sample(range(0, 9), e + 1))
        zs = []
        for j in js:
            coeffs = [field.one()] + [field.random_element(rng)
                                      for _ in range(6)]
            zs.append(Series(field, j, [c.c for c in coeffs], prec))
        rep = series_wronskian_valuation_check(zs, tuple(ms), p)
        assert rep["ok"]
