import pytest

from ffcurve.census import (
    CountTable,
    InfinitePlaceDecl,
    count_points,
    genus_smooth_plane,
    infinite_plane_points,
    is_smooth,
    rational_points,
)
from ffcurve.curve import CurveModel
from ffcurve.errors import NotSmoothCertifiedError, UndeclaredSingularityError
from ffcurve.field import make_field


def hermitian_q2():
    return CurveModel(make_field(2, 2), {(3, 0): 1, (0, 3): 1, (0, 0): 1})


def y23():
    return CurveModel(make_field(2, 3), {(7, 0): 1, (0, 7): 1, (0, 0): 1})


def norm_trace_q2():
    # x^7 = y^4 + y^2 + y over F_8
    return CurveModel(make_field(2, 3),
                      {(7, 0): 1, (0, 4): 1, (0, 2): 1, (0, 1): 1})


def test_count_hermitian():
    curve = hermitian_q2()
    # N_m = q^(2m) + 1 + (-1)^(m-1) q^(m+1) (q - 1) at q = 2
    assert count_points(curve, 1) == 9
    assert count_points(curve, 2) == 9
    assert count_points(curve, 3) == 81


def test_count_y23():
    curve = y23()
    assert count_points(curve, 1) == 21   # q^5 - q^3 - q^2 + 1 at q = 2
    assert count_points(curve, 2) == 119


def test_count_conic():
    for p, h in ((3, 1), (5, 1), (2, 2)):
        field = make_field(p, h)
        conic = CurveModel(field, {(0, 1): 1, (2, 0): -1})
        assert count_points(conic, 1) == field.order + 1


def test_count_norm_trace_needs_declaration():
    curve = norm_trace_q2()
    with pytest.raises(UndeclaredSingularityError):
        count_points(curve, 1)
    f8 = curve.field
    decl = InfinitePlaceDecl(point_key=((0,) * 3, (1, 0, 0)),
                             label="P_inf", counts={"all": 1})
    assert count_points(curve, 1, infinity=[decl]) == 33
    assert count_points(curve, 2, infinity=[decl]) == 89


def test_rational_points_examples():
    field = make_field(3)
    conic = CurveModel(field, {(0, 1): 1, (2, 0): -1})
    pts = rational_points(conic, 1)
    assert len(pts) == 3
    keys = [(a.key(), b.key()) for a, b in pts]
    assert keys == sorted(keys)
    # Fermat d = 8 over F_9: 64 affine points, none at infinity
    f9 = make_field(3, 2)
    fermat = CurveModel(f9, {(8, 0): 1, (0, 8): 1, (0, 0): 1})
    assert len(rational_points(fermat, 1)) == 64
    assert infinite_plane_points(fermat, 1) == []
    assert count_points(fermat, 1) == 64
    assert count_points(fermat, 2) == 88


def test_count_matches_point_list():
    curve = y23()
    pts = rational_points(curve, 1)
    inf = infinite_plane_points(curve, 1)
    assert count_points(curve, 1) == len(pts) + len(inf)


def test_parallel_census_deterministic():
    curve = y23()
    expect = count_points(curve, 2)
    for workers in (2, 3, 5):
        assert count_points(curve, 2, workers=workers) == expect


def test_is_smooth():
    smooth, witness = is_smooth(hermitian_q2())
    assert smooth and witness is None
    nodal = CurveModel(make_field(5),
                       {(0, 2): 1, (3, 0): -1, (2, 0): -1})
    smooth, witness = is_smooth(nodal)
    assert not smooth
    assert "affine point" in witness
    smooth, witness = is_smooth(norm_trace_q2())
    assert not smooth
    assert "infinite" in witness


def test_genus_smooth_plane():
    assert genus_smooth_plane(3) == 1
    assert genus_smooth_plane(7) == 15
    for q in (2, 3, 4):
        assert genus_smooth_plane(q + 1) == q * (q - 1) // 2
    with pytest.raises(NotSmoothCertifiedError):
        genus_smooth_plane(4, certified=False)


def test_count_table_validation():
    CountTable({1: 9, 2: 9, 3: 81})
    with pytest.raises(ValueError):
        CountTable({1: 10, 2: 9})


def test_weil_sanity_all_counts():
    import math
    cases = [
        (hermitian_q2(), 1, (1, 2, 3)),
        (y23(), 15, (1, 2)),
    ]
    for curve, g, exts in cases:
        q = curve.field.order
        for r in exts:
            n = count_points(curve, r)
            assert n <= 1 + q ** r + math.isqrt(4 * g * g * q ** r)
