"""Exhaustive rational-place counting and smoothness checking.

The census enumerates places, not plane points: a nonsingular point is
one place; singular points require declared branch metadata from the
catalog and are never silently approximated.  The sweep fixes x = a and
works with the univariate f(a, y): the number of distinct roots in the
field is deg gcd(y^Q - y, f(a, y)), so a count costs O(Q d^2 log Q)
instead of a blind O(Q^2) pair scan.

Points at infinity are found from the leading form of f; smooth ones are
counted automatically, singular ones are looked up in the declared
metadata keyed by the projective point.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from .errors import NotSmoothCertifiedError, UndeclaredSingularityError
from .field import FieldElem, make_field
from .ratfun import RatFun
from .upoly import UniPoly, count_roots, roots


def extension_field(base, r):
    """F_{q^r} over F_q = base, built on the deterministic default modulus."""
    return make_field(base.p, base.h * r)


def lifted_curve(curve, r):
    return curve.change_field(extension_field(curve.field, r))


# ---------------------------------------------------------------------------
# affine sweep
# ---------------------------------------------------------------------------

def _affine_sweep(curve, ext, a_indices, want_points, singular_decl):
    """Count (or collect) affine places with x-coordinate in the index range.

    Returns (count, points, singular_hits) for one partition of the sweep.
    """
    count = 0
    points = []
    singular_hits = {}
    for idx in a_indices:
        a = ext.elem_from_index(idx)
        gy = curve.y_poly_at(a)
        if gy.is_zero():
            raise UndeclaredSingularityError(
                f"the line x = {a!r} lies on the curve")
        if gy.degree() < 1:
            continue
        # potential singular points share a root with df/dy(a, .)
        fya = UniPoly(ext, [p.eval_raw(a.c) for p in curve._fy_polys])
        common = gy.gcd(fya) if not fya.is_zero() else gy
        bad_roots = roots(common) if common.degree() > 0 else []
        bad_places = 0
        for b in bad_roots:
            if curve.partial_x_at(a, b).is_zero():
                label = (a.c, b.c)
                decl = singular_decl.get(label) if singular_decl else None
                if decl is None:
                    raise UndeclaredSingularityError(
                        f"singular affine point ({a!r}, {b!r}) without "
                        "declared branch metadata")
                singular_hits[label] = decl
                bad_places += 1
        if want_points:
            for b in roots(gy):
                if (a.c, b.c) not in singular_hits:
                    points.append((a, b))
            count += 0
        else:
            count += count_roots(gy) - bad_places
    return count, points, singular_hits


def count_points(curve, r, infinity=None, *, workers=1, singular_decl=None):
    """Number of rational places over F_{q^r}.

    `infinity` carries the declared metadata for places not on the affine
    chart: pass a catalog instance's declaration list or None for smooth
    curves whose infinite places can be counted automatically.
    """
    ext = extension_field(curve.field, r)
    lifted = curve.change_field(ext)
    decl = _lift_singular_decl(singular_decl, curve.field, ext)
    order = ext.order
    indices = range(order)
    if workers > 1:
        chunk = (order + workers - 1) // workers
        parts = [range(i, min(i + chunk, order))
                 for i in range(0, order, chunk)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(
                lambda part: _affine_sweep(lifted, ext, part, False, decl),
                parts))
        affine = sum(c for c, _, _ in results)
        sing = {}
        for _, _, s in results:
            sing.update(s)
    else:
        affine, _, sing = _affine_sweep(lifted, ext, indices, False, decl)
    total = affine
    for decln in sing.values():
        total += decln.places_at_level(r)
    total += _infinity_places(curve, r, infinity)
    return total


def rational_points(curve, r):
    """Affine rational points over F_{q^r}, lexicographic in (x, y) keys."""
    ext = extension_field(curve.field, r)
    lifted = curve.change_field(ext)
    _, pts, _ = _affine_sweep(lifted, ext, range(ext.order), True, {})
    pts.sort(key=lambda ab: (ab[0].key(), ab[1].key()))
    return pts


def _lift_singular_decl(decl, base, ext):
    if not decl:
        return {}
    from .field import embed_raw
    out = {}
    for (ac, bc), d in decl.items():
        out[(embed_raw(ac, base, ext), embed_raw(bc, base, ext))] = d
    return out


# ---------------------------------------------------------------------------
# places at infinity
# ---------------------------------------------------------------------------

def infinite_plane_points(curve, r):
    """Projective points (a : b : 0) over F_{q^r} on the closure of f."""
    ext = extension_field(curve.field, r)
    lifted = curve.change_field(ext)
    top = lifted.top_form()
    d = lifted.deg_total
    # roots with b != 0, normalized to b = 1: poly in a of the form
    # sum_i top[(i, d - i)] a^i
    coeffs = [ext.zero()] * (d + 1)
    for (i, j), c in top.items():
        coeffs[i] = c
    poly = UniPoly(ext, [c.c for c in coeffs])
    out = []
    if poly.degree() >= 1:
        for a in roots(poly):
            out.append((a, ext.one()))
    elif poly.is_zero():
        raise UndeclaredSingularityError("leading form vanishes identically")
    if top.get((d, 0)) is None:
        # f_top(1, 0) = 0: the point (1 : 0 : 0) lies on the closure
        out.append((ext.one(), ext.zero()))
    return out


def is_smooth_at_infinity(curve, point):
    """Check smoothness of the projective closure at (a : b : 0)."""
    a, b = point
    lifted = curve.change_field(a.field)
    if not b.is_zero():
        chart = lifted.chart_y()
        u0 = a / b
        z = a.field.zero()
        return not (chart.partial_x_at(u0, z).is_zero()
                    and chart.partial_y_at(u0, z).is_zero())
    chart = lifted.chart_x()
    z = a.field.zero()
    return not (chart.partial_x_at(z, z).is_zero()
                and chart.partial_y_at(z, z).is_zero())


def _infinity_places(curve, r, infinity):
    """Places over F_{q^r} lying over points at infinity."""
    decl_by_point = {}
    if infinity:
        for d in infinity:
            decl_by_point[d.point_key] = d
    total = 0
    for (a, b) in infinite_plane_points(curve, r):
        key = _point_key(curve, a, b)
        if key in decl_by_point:
            total += decl_by_point[key].places_at_level(r)
        elif is_smooth_at_infinity(curve, (a, b)):
            total += 1
        else:
            raise UndeclaredSingularityError(
                f"singular point at infinity ({a!r} : {b!r} : 0) without "
                "declared branch metadata")
    return total


def _point_key(curve, a, b):
    """Stable key for a point at infinity with coordinates in an extension.

    Points defined over the base field are keyed by base coefficients so
    catalog declarations match across extension levels.
    """
    base = curve.field
    out = []
    for c in (a, b):
        if c.field == base:
            out.append(c.c)
        else:
            sub = subfield_repr(c, base)
            out.append(sub if sub is not None else c.c)
    return tuple(out)


def subfield_repr(elem, base):
    """Coefficients of elem in the base field when it lies there, else None."""
    from .field import embed
    ext = elem.field
    if ext == base:
        return elem.c
    for cand in base.elements():
        if embed(cand, base, ext) == elem:
            return cand.c
    return None


@dataclass
class InfinitePlaceDecl:
    """Declared branch data for a (possibly singular) point at infinity."""
    point_key: tuple           # key of the projective point (a, b) over F_q
    label: str
    counts: dict               # r -> number of rational places; 'all' allowed
    branch_builder: object = None   # callable(prec) -> Branch, or None
    min_level: int = 1

    def places_at_level(self, r):
        if r in self.counts:
            return self.counts[r]
        if "all" in self.counts and r % self.min_level == 0:
            return self.counts["all"]
        return self.counts.get("default", 0)


# ---------------------------------------------------------------------------
# count tables
# ---------------------------------------------------------------------------

@dataclass
class CountTable:
    """Map r -> N_r with the divisibility monotonicity enforced."""
    counts: dict

    def __post_init__(self):
        for a, na in self.counts.items():
            for b, nb in self.counts.items():
                if a != b and b % a == 0 and na > nb:
                    raise ValueError(
                        f"N_{a} = {na} exceeds N_{b} = {nb} despite "
                        f"F_(q^{a}) embedding into F_(q^{b})")

    def __getitem__(self, r):
        return self.counts[r]

    def __contains__(self, r):
        return r in self.counts

    def as_dict(self):
        return {str(r): n for r, n in sorted(self.counts.items())}


# ---------------------------------------------------------------------------
# smoothness
# ---------------------------------------------------------------------------

def _resultant_xpoly(apolys, bpolys, field):
    """Res_y of two y-polynomials with UniPoly coefficients, via the
    fraction-field Euclidean resultant; the result is a polynomial."""
    from .curve import _yp_resultant
    a = [RatFun.from_poly(p) for p in apolys]
    b = [RatFun.from_poly(p) for p in bpolys]
    res = _yp_resultant(a, b, field)
    return res


def is_smooth(curve, *, witness_degree_cap=8):
    """Smoothness of the projective closure, with a singular witness.

    Points at infinity are enumerated and checked exactly.  The affine
    singular locus is confined to roots of gcd(Res_y(f, f_y),
    Res_y(f, f_x)); each candidate x-coordinate over extensions up to the
    witness cap is verified against both partials.  If the resultant gcd
    is nonconstant but no witness is located inside the cap, the curve is
    reported not-certified (False with witness None) rather than smooth.
    """
    # chart at infinity: finitely many points, each checked exactly
    for k in range(1, curve.deg_total + 1):
        try:
            pts = infinite_plane_points(curve, k)
        except UndeclaredSingularityError:
            return False, "leading form degenerate"
        for (a, b) in pts:
            if not is_smooth_at_infinity(curve, (a, b)):
                return False, f"infinite point ({a!r} : {b!r} : 0)"
    witness, certified = _affine_singular_witness(curve, witness_degree_cap)
    if witness is not None:
        return False, witness
    if not certified:
        return False, None
    return True, None


def _affine_singular_witness(curve, cap):
    """(witness, certified): witness of an affine singular point, or
    (None, True) when the affine model is provably smooth."""
    field = curve.field
    f_polys = list(curve.y_polys)
    fy_polys = list(curve._fy_polys)
    fx_polys = [p.derivative() for p in curve.y_polys]
    r1 = _resultant_xpoly(f_polys, fy_polys, field) \
        if any(not p.is_zero() for p in fy_polys) else RatFun.zero(field)
    r2 = _resultant_xpoly(f_polys, fx_polys, field) \
        if any(not p.is_zero() for p in fx_polys) else RatFun.zero(field)
    g = _ratfun_poly_gcd(r1, r2, field)
    if g is None or g.degree() <= 0:
        return None, True
    search_cap = min(max(cap, 1), g.degree())
    for k in range(1, search_cap + 1):
        ext = extension_field(field, k)
        glift = g.map_field(ext, lambda raw: _embed_raw_into(raw, field, ext))
        lifted = curve.change_field(ext)
        for a in roots(glift):
            gy_a = lifted.y_poly_at(a)
            fy_a = UniPoly(ext, [p.eval_raw(a.c) for p in lifted._fy_polys])
            cand = gy_a.gcd(fy_a) if not fy_a.is_zero() else gy_a
            if cand.degree() < 1:
                continue
            for b in roots(cand):
                if lifted.partial_x_at(a, b).is_zero() \
                        and lifted.partial_y_at(a, b).is_zero():
                    return f"affine point ({a!r}, {b!r})", True
    # every candidate within reach was refuted; certified only if the cap
    # covered all possible degrees of the resultant roots
    return None, search_cap >= g.degree()


def _embed_raw_into(raw, sub, sup):
    from .field import embed_raw
    return embed_raw(raw, sub, sup)


def _ratfun_poly_gcd(r1, r2, field):
    p1 = r1.num if not r1.is_zero() else None
    p2 = r2.num if not r2.is_zero() else None
    if p1 is None and p2 is None:
        # both resultants vanish identically: fall back to a direct scan
        return UniPoly.x(field)
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    return p1.gcd(p2)


def genus_smooth_plane(d, certified=True):
    """(d-1)(d-2)/2 for a certified smooth plane curve of degree d."""
    if not certified:
        raise NotSmoothCertifiedError(
            "smooth-plane genus formula without a smoothness certificate")
    if d < 1:
        raise ValueError("degree must be >= 1")
    return (d - 1) * (d - 2) // 2
