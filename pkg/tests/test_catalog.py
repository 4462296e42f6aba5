import pytest

from ffcurve.catalog import (
    f_mu_polynomial,
    make_family,
    parse_prime_power,
    verify_thm22,
)
from ffcurve.census import is_smooth
from ffcurve.errors import (
    BadParamsError,
    CoprimalityError,
    DegenerateMorphismError,
)
from ffcurve.field import make_field
from ffcurve.orders import generic_orders, kappa_orders


def test_parse_prime_power():
    assert parse_prime_power(8) == (2, 3)
    assert parse_prime_power(49) == (7, 2)
    assert parse_prime_power(7) == (7, 1)
    with pytest.raises(BadParamsError):
        parse_prime_power(12)


def test_hermitian_instance():
    inst = make_family("hermitian", q=2)
    assert inst.field.order == 4
    assert inst.genus == 1
    assert inst.morphism("lines").deg_series == 3
    assert inst.count_places(1) == 9
    smooth, _ = is_smooth(inst.curve)
    assert smooth


def test_y_q3_instance():
    inst = make_family("y_q3", q=2)
    assert inst.field.order == 8
    assert inst.genus == 15
    assert inst.curve.deg_total == 7
    assert inst.count_places(1) == 21


def test_norm_trace_instance():
    inst = make_family("norm_trace", q=2)
    assert inst.genus == 9
    assert inst.count_places(1) == 33
    assert inst.count_places(2) == 89
    # the declared infinite branch satisfies f = 0 to precision
    decl = inst.infinity[0]
    br = decl.branch_builder(24)
    ok, _ = br.check_on_curve()
    assert ok
    assert br.x_series.val() == -4
    assert br.y_series.val() == -7


def test_fermat_half_instances():
    inst7 = make_family("fermat_half", q=7)
    assert inst7.field.order == 49
    assert inst7.genus == 3
    assert inst7.curve.deg_total == 4
    assert inst7.morphism("conics").n == 5
    inst3 = make_family("fermat_half", q=3)
    assert inst3.genus == 0
    assert inst3.warnings
    with pytest.raises(DegenerateMorphismError):
        generic_orders(inst3.morphism("conics"))
    with pytest.raises(BadParamsError):
        make_family("fermat_half", q=5)  # q = 0 mod 5
    with pytest.raises(BadParamsError):
        make_family("fermat_half", q=8)  # even characteristic


def test_hk_filling_instance():
    inst = make_family("hk_filling", q=2, a=1, b=1, c=0)
    assert inst.curve.deg_total == 4
    assert inst.genus == 3
    assert inst.count_places(1) == 7  # plane-filling over F_2
    smooth, _ = is_smooth(inst.curve)
    assert smooth
    with pytest.raises(BadParamsError):
        make_family("hk_filling", q=2, a=1, b=0, c=0)  # t^3 + 1 reducible


def test_total_inflection_instance():
    inst = make_family("total_inflection", q=3)
    assert inst.curve.deg_total == 4
    assert inst.genus == 3
    assert inst.count_places(1) == 10  # q^2 + 1
    smooth, _ = is_smooth(inst.curve)
    assert smooth


def test_f_mu_polynomial_q2_u1_m3():
    coeffs, degenerate = f_mu_polynomial(2, 1, 3)
    assert not degenerate
    # hand-computed quotient: (s^2+s+1)^2 + xy(s+1) + (xy)^2 with s = x + y
    f2 = make_field(2)
    one = f2.one()
    expect = {(4, 0): one, (0, 4): one, (2, 2): one, (2, 1): one,
              (1, 2): one, (2, 0): one, (0, 2): one, (1, 1): one,
              (0, 0): one}
    assert coeffs == expect
    assert max(i + j for i, j in coeffs) == 4


def test_f_mu_degenerate_and_validation():
    poly, degenerate = f_mu_polynomial(3, 1, 2)
    assert degenerate
    with pytest.raises(BadParamsError):
        make_family("f_mu", q=3, u=1, m=2)
    with pytest.raises(CoprimalityError):
        f_mu_polynomial(2, 2, 4)


def test_f_mu_instance_and_thm22():
    inst = make_family("f_mu", q=2, u=1, m=3)
    assert inst.genus == 3  # smooth quartic
    assert inst.count_places(1) == 0
    rep = verify_thm22(inst)
    assert rep.ok
    assert rep.epsilon == (0, 1, 2)
    kap = kappa_orders(inst.morphism("lines"), 1, 3)
    assert kap.values == (2,)  # kappa_0 = q^u


def test_enumerate_places_y23():
    inst = make_family("y_q3", q=2)
    places = inst.enumerate_places([1, 2])
    level1 = [p for p in places if 1 in p.rat_levels]
    assert len(level1) == 21
    assert len(places) == 119
    # every level-1 place is also level-2 rational
    assert all(2 in p.rat_levels for p in level1)
    br = level1[0].branch(16)
    ok, _ = br.check_on_curve()
    assert ok


def test_enumerate_places_norm_trace():
    inst = make_family("norm_trace", q=2)
    places = inst.enumerate_places([1])
    assert len(places) == 33
    kinds = {p.kind for p in places}
    assert "inf-declared" in kinds
