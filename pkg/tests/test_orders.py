import random

import pytest

from ffcurve.curve import AlgFunc, CurveModel
from ffcurve.errors import (
    CoprimalityError,
    DegenerateMorphismError,
)
from ffcurve.field import make_field
from ffcurve.orders import (
    Morphism,
    classicality_report,
    frobenius_orders,
    generic_orders,
    kappa_orders,
    verify_minimality,
    wronskian_A,
    _det,
)


def lines_morphism(curve):
    one = AlgFunc.one(curve)
    x = AlgFunc.x(curve)
    y = AlgFunc.y(curve)
    return Morphism(curve, (one, x, y), curve.deg_total, name="lines")


def conic_curve(p):
    field = make_field(p)
    return CurveModel(field, {(0, 1): 1, (2, 0): -1})  # y = x^2


def hermitian_curve(q, p, h2):
    field = make_field(p, h2)  # F_{q^2}
    return CurveModel(field, {(q + 1, 0): 1, (0, q + 1): 1, (0, 0): -1})


def y23_curve():
    field = make_field(2, 3)  # F_8
    return CurveModel(field, {(7, 0): 1, (0, 7): 1, (0, 0): -1})


def test_det_agrees_with_permutation_expansion():
    # independent oracle for the determinant routine on a 4x4 system
    import itertools
    curve = conic_curve(5)
    rng = random.Random(17)
    from ffcurve.ratfun import RatFun
    from ffcurve.upoly import UniPoly

    def rf():
        return RatFun.from_poly(UniPoly(
            curve.field, [curve.field.random_element(rng).c
                          for _ in range(rng.randrange(1, 3))]))

    rows = [[AlgFunc.from_ratfun(curve, rf()) for _ in range(4)]
            for _ in range(4)]
    expect = AlgFunc.zero(curve)
    for perm in itertools.permutations(range(4)):
        sign = 1
        for i in range(4):
            for j in range(i + 1, 4):
                if perm[i] > perm[j]:
                    sign = -sign
        term = AlgFunc.one(curve)
        for i in range(4):
            term = term * rows[i][perm[i]]
        expect = expect + term if sign > 0 else expect - term
    assert _det(rows) == expect


def test_generic_orders_conic():
    curve = conic_curve(5)
    m = lines_morphism(curve)
    assert generic_orders(m).values == (0, 1, 2)


def test_generic_orders_hermitian_q3():
    curve = hermitian_curve(3, 3, 2)  # x^4 + y^4 = 1 over F_9
    m = lines_morphism(curve)
    assert generic_orders(m).values == (0, 1, 3)


def test_generic_orders_y23():
    m = lines_morphism(y23_curve())
    assert generic_orders(m).values == (0, 1, 2)


def test_frobenius_orders_examples():
    herm = lines_morphism(hermitian_curve(3, 3, 2))
    assert frobenius_orders(herm, 1).values == (0, 3)
    conic = lines_morphism(conic_curve(5))
    assert frobenius_orders(conic, 1).values == (0, 1)


def test_kappa_plane_curve_m2_is_zero():
    # any plane curve with u = 1, m = 2 has kappa = (0)
    for curve in (conic_curve(5), hermitian_curve(2, 2, 2), y23_curve()):
        m = lines_morphism(curve)
        assert kappa_orders(m, 1, 2).values == (0,)


def test_kappa_validation():
    m = lines_morphism(conic_curve(5))
    with pytest.raises(CoprimalityError):
        kappa_orders(m, 2, 4)
    with pytest.raises(CoprimalityError):
        kappa_orders(m, 2, 1)


def test_wronskian_minimality_and_nonvanishing():
    m = lines_morphism(hermitian_curve(2, 2, 2))
    kап = kappa_orders(m, 1, 2)
    assert not wronskian_A(m, 1, 2, kап.values).is_zero()
    for seq in (generic_orders(m), frobenius_orders(m, 1),
                frobenius_orders(m, 2), kап):
        verify_minimality(m, seq)


def test_wronskian_scaling_covariance():
    # A(h f_0, ..., h f_n) = h^(q^m + q^u + n - 1) A(f_0, ..., f_n)
    curve = hermitian_curve(2, 2, 2)
    m = lines_morphism(curve)
    kap = kappa_orders(m, 1, 2).values
    base = wronskian_A(m, 1, 2, kap)
    rng = random.Random(8)
    from ffcurve.ratfun import RatFun
    from ffcurve.upoly import UniPoly
    for _ in range(3):
        num = UniPoly(curve.field, [curve.field.random_element(rng).c
                                    for _ in range(3)])
        if num.is_zero():
            continue
        h = AlgFunc.from_ratfun(curve, RatFun.from_poly(num))
        scaled = Morphism(curve, tuple(h * c for c in m.coords),
                          m.deg_series, base_order=m.base_order)
        q = curve.field.order
        expo = q ** 2 + q + m.n - 1
        assert wronskian_A(scaled, 1, 2, kap) == h ** expo * base


def test_wronskian_gl_invariance():
    curve = hermitian_curve(2, 2, 2)
    m = lines_morphism(curve)
    kap = kappa_orders(m, 1, 2)
    base = wronskian_A(m, 1, 2, kap.values)
    field = curve.field
    rng = random.Random(23)
    from ffcurve.field import FieldElem

    def random_gl3():
        while True:
            mat = [[field.random_element(rng) for _ in range(3)]
                   for _ in range(3)]
            det = (mat[0][0] * (mat[1][1] * mat[2][2] - mat[1][2] * mat[2][1])
                   - mat[0][1] * (mat[1][0] * mat[2][2] - mat[1][2] * mat[2][0])
                   + mat[0][2] * (mat[1][0] * mat[2][1] - mat[1][1] * mat[2][0]))
            if not det.is_zero():
                return mat, det

    for _ in range(3):
        mat, det = random_gl3()
        new_coords = []
        for i in range(3):
            acc = AlgFunc.zero(curve)
            for j in range(3):
                acc = acc + mat[i][j] * m.coords[j]
            new_coords.append(acc)
        g = Morphism(curve, tuple(new_coords), m.deg_series,
                     base_order=m.base_order)
        assert generic_orders(g) == generic_orders(m)
        assert frobenius_orders(g, 1) == frobenius_orders(m, 1)
        assert kappa_orders(g, 1, 2) == kappa_orders(m, 1, 2)
        assert wronskian_A(g, 1, 2, kap.values) == det * base


def test_screen_agrees_with_exact():
    for curve in (conic_curve(5), hermitian_curve(2, 2, 2),
                  hermitian_curve(3, 3, 2), y23_curve()):
        m = lines_morphism(curve)
        for seq_fn in (
            lambda mm, mode: generic_orders(mm, rank_mode=mode, seed=7),
            lambda mm, mode: frobenius_orders(mm, 1, rank_mode=mode, seed=7),
            lambda mm, mode: kappa_orders(mm, 1, 2, rank_mode=mode, seed=7),
        ):
            assert seq_fn(m, "screen").values == seq_fn(m, "exact").values


def test_degenerate_morphism_detected():
    # coordinates satisfying a linear relation: (1, x, x) via y = x on y=x^2?
    # use (1, x, 1+x): truly degenerate in P^2
    curve = conic_curve(5)
    one = AlgFunc.one(curve)
    x = AlgFunc.x(curve)
    m = Morphism(curve, (one, x, one + x), curve.deg_total)
    with pytest.raises(DegenerateMorphismError):
        generic_orders(m)


def test_classicality_report_conic():
    m = lines_morphism(conic_curve(5))
    rep = classicality_report(m, 1, 2)
    assert rep.classical
    assert rep.frobenius_classical_u
    assert rep.frobenius_classical_m
    assert rep.kappa_classical
    assert rep.checks["set_relation"] is True


def test_classicality_report_y23():
    m = lines_morphism(y23_curve())
    rep = classicality_report(m, 1, 2)
    assert rep.epsilon.values == (0, 1, 2)
    assert rep.nu_u.values == (0, 2)       # F_8-Frobenius nonclassical
    assert rep.mu_m.values == (0, 1)       # F_64-Frobenius classical
    assert rep.kappa.values == (0,)
    assert not rep.frobenius_classical_u
    assert rep.dropped_from_nu == 2
    assert rep.dropped_from_mu == 1
