"""Constructors for the bundled curve families, with verified metadata.

Each family builder returns a ``CurveInstance`` holding the affine model,
named morphisms with their series degrees, the genus (smooth-plane
formula whenever smoothness certifies, family metadata otherwise),
declared data for places invisible on the affine chart, and a default
Frobenius exponent pair.

Places are exposed through ``CurveInstance.enumerate_places``: affine
points and smooth points at infinity get computed branches; singular
places at infinity (the norm-trace curve) come with an explicit
hand-parametrized expansion, so no desingularization machinery is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from .census import (
    InfinitePlaceDecl,
    count_points,
    extension_field,
    genus_smooth_plane,
    infinite_plane_points,
    is_smooth,
    is_smooth_at_infinity,
    rational_points,
    subfield_repr,
)
from .curve import AlgFunc, CurveModel
from .errors import (
    BadParamsError,
    CoprimalityError,
    InexactDivisionError,
    ReportedViolation,
    UndeclaredSingularityError,
)
from .field import FieldElem, is_prime, make_field
from .local import Series, branch_at, branch_at_infinity, nth_root_series
from .orders import Morphism, generic_orders, _det
from .ratfun import RatFun
from .upoly import UniPoly, is_irreducible


def parse_prime_power(q):
    if q < 2:
        raise BadParamsError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            h = 0
            m = q
            while m % p == 0:
                m //= p
                h += 1
            if m != 1:
                raise BadParamsError(f"{q} is not a prime power")
            return p, h
    raise BadParamsError(f"{q} is not a prime power")


@dataclass
class PlaceRef:
    """Handle for one place: enough data to rebuild its branch at any
    precision and to know its rationality levels."""
    label: str
    kind: str                 # 'affine' | 'inf-smooth' | 'inf-declared'
    level: int                # coordinates live in F_{q^level}
    rat_levels: frozenset
    _builder: object

    def branch(self, prec):
        return self._builder(prec)


@dataclass
class CurveInstance:
    name: str
    params: dict
    field: object
    curve: CurveModel
    morphisms: dict
    genus: int
    genus_provenance: str
    infinity: list
    default_um: tuple
    warnings: list = dc_field(default_factory=list)

    def morphism(self, name="lines"):
        if name not in self.morphisms:
            raise BadParamsError(
                f"{self.name} has no morphism {name!r}; available: "
                f"{sorted(self.morphisms)}")
        return self.morphisms[name]

    def count_places(self, r, workers=1):
        return count_points(self.curve, r, infinity=self.infinity,
                            workers=workers)

    def count_table(self, levels, workers=1):
        from .census import CountTable
        return CountTable({r: self.count_places(r, workers=workers)
                           for r in sorted(set(levels))})

    def enumerate_places(self, levels):
        """Places rational over F_{q^r} for the listed r, each exactly once.

        A place is reported at the smallest listed level over which it is
        rational; rat_levels records all listed levels containing it.
        """
        levels = sorted(set(levels))
        q = self.field.order
        out = []
        seen_declared = set()
        for r in levels:
            ext = extension_field(self.field, r)
            lifted = self.curve.change_field(ext)
            for (a, b) in rational_points(self.curve, r):
                rls = frozenset(
                    s for s in levels
                    if a ** (q ** s) == a and b ** (q ** s) == b)
                if any(s < r for s in rls):
                    continue  # already listed at a smaller level
                out.append(PlaceRef(
                    label=f"affine({a!r},{b!r})@{r}", kind="affine",
                    level=r, rat_levels=rls,
                    _builder=_affine_builder(lifted, a, b)))
            decl_by_key = {d.point_key: d for d in self.infinity}
            for (a, b) in infinite_plane_points(self.curve, r):
                rls = frozenset(
                    s for s in levels
                    if a ** (q ** s) == a and b ** (q ** s) == b)
                if not rls or any(s < r for s in rls):
                    continue
                from .census import _point_key
                key = _point_key(self.curve, a, b)
                if key in decl_by_key:
                    d = decl_by_key[key]
                    if d.label in seen_declared:
                        continue
                    seen_declared.add(d.label)
                    if d.places_at_level(r) != 1 or d.branch_builder is None:
                        raise UndeclaredSingularityError(
                            f"cannot expand declared place {d.label}")
                    out.append(PlaceRef(
                        label=d.label, kind="inf-declared", level=r,
                        rat_levels=frozenset(levels),
                        _builder=d.branch_builder))
                elif is_smooth_at_infinity(self.curve, (a, b)):
                    out.append(PlaceRef(
                        label=f"inf({a!r}:{b!r}:0)@{r}", kind="inf-smooth",
                        level=r, rat_levels=rls,
                        _builder=_inf_builder(lifted, a, b)))
                else:
                    raise UndeclaredSingularityError(
                        f"singular infinite point ({a!r} : {b!r} : 0) "
                        "without branch metadata")
        return out


def _affine_builder(lifted, a, b):
    def build(prec):
        return branch_at(lifted, (a, b), prec)
    return build


def _inf_builder(lifted, a, b):
    def build(prec):
        return branch_at_infinity(lifted, (a, b), prec)
    return build


# ---------------------------------------------------------------------------
# morphism helpers
# ---------------------------------------------------------------------------

def lines_morphism(curve, deg_series=None):
    one = AlgFunc.one(curve)
    x = AlgFunc.x(curve)
    y = AlgFunc.y(curve)
    return Morphism(curve, (one, x, y),
                    deg_series or curve.deg_total, name="lines")


def conics_morphism(curve, deg_series=None):
    one = AlgFunc.one(curve)
    x = AlgFunc.x(curve)
    y = AlgFunc.y(curve)
    return Morphism(curve, (one, x, y, x * x, x * y, y * y),
                    deg_series or 2 * curve.deg_total, name="conics")


# ---------------------------------------------------------------------------
# family builders
# ---------------------------------------------------------------------------

def make_family(name, **params):
    try:
        builder = _FAMILIES[name]
    except KeyError:
        raise BadParamsError(
            f"unknown family {name!r}; known: {sorted(_FAMILIES)}") from None
    return builder(**params)


def _fermat(q, d):
    p, h = parse_prime_power(q)
    if d < 2:
        raise BadParamsError("fermat needs degree d >= 2")
    if d % p == 0:
        raise BadParamsError(
            f"fermat with p | d is a p-th power; got d = {d}, p = {p}")
    field = make_field(p, h)
    curve = CurveModel(field, {(d, 0): 1, (0, d): 1, (0, 0): 1})
    return CurveInstance(
        name="fermat", params={"q": q, "d": d}, field=field, curve=curve,
        morphisms={"lines": lines_morphism(curve)},
        genus=genus_smooth_plane(d), genus_provenance="smooth-plane",
        infinity=[], default_um=(1, 2))


def _hermitian(q):
    p, h = parse_prime_power(q)
    field = make_field(p, 2 * h)  # the curve lives over F_{q^2}
    d = q + 1
    curve = CurveModel(field, {(d, 0): 1, (0, d): 1, (0, 0): -1})
    return CurveInstance(
        name="hermitian", params={"q": q}, field=field, curve=curve,
        morphisms={"lines": lines_morphism(curve)},
        genus=q * (q - 1) // 2, genus_provenance="smooth-plane",
        infinity=[], default_um=(1, 2))


def _y_q3(q):
    p, h = parse_prime_power(q)
    field = make_field(p, 3 * h)  # base field F_{q^3}
    d = q * q + q + 1
    curve = CurveModel(field, {(d, 0): 1, (0, d): 1, (0, 0): -1})
    return CurveInstance(
        name="y_q3", params={"q": q}, field=field, curve=curve,
        morphisms={"lines": lines_morphism(curve)},
        genus=genus_smooth_plane(d), genus_provenance="smooth-plane",
        infinity=[], default_um=(1, 2))


def _norm_trace(q):
    p, h = parse_prime_power(q)
    field = make_field(p, 3 * h)  # base field F_{q^3}
    d = q * q + q + 1
    coeffs = {(d, 0): 1, (0, q * q): -1, (0, q): -1, (0, 1): -1}
    curve = CurveModel(field, coeffs)
    decl = InfinitePlaceDecl(
        point_key=(field.rzero, field.rone), label="norm_trace_inf",
        counts={"all": 1},
        branch_builder=_norm_trace_branch_builder(curve, q))
    genus = (q * q + q) * (q * q - 1) // 2
    return CurveInstance(
        name="norm_trace", params={"q": q}, field=field, curve=curve,
        morphisms={"lines": lines_morphism(curve)},
        genus=genus, genus_provenance="family",
        infinity=[decl], default_um=(1, 2))


def _norm_trace_branch_builder(curve, q):
    """Parametrization at the single place over (0 : 1 : 0).

    With D = q^2 + q + 1, take y = t^-D exactly; then x = t^(-q^2) u with
    u^D = 1 + t^(D(q^2 - q)) + t^(D(q^2 - 1)), solved by Newton (D is
    coprime to p).  Valuations: v(x) = -q^2, v(y) = -D.
    """
    field = curve.field
    D = q * q + q + 1

    def build(prec):
        need = prec + D * q * q + 2
        ys = Series(field, -D, [field.rone], prec - D + 1)
        inner = Series(field, 0, [field.rone], need)
        bump1 = Series(field, D * (q * q - q), [field.rone], need)
        bump2 = Series(field, D * (q * q - 1), [field.rone], need)
        s = inner + bump1 + bump2
        u = nth_root_series(s, D)
        xs = u.shift(-q * q).truncate(prec - q * q + 1)
        from .local import Branch
        br = Branch(curve, field, xs, ys, prec, "norm_trace_inf")
        ok, residue = br.check_on_curve()
        if not ok:
            raise ReportedViolation(
                "norm-trace infinite parametrization fails f = 0: "
                f"{residue!r}")
        return br

    return build


def _fermat_half(q):
    p, h = parse_prime_power(q)
    if p == 2:
        raise BadParamsError("fermat_half needs odd characteristic")
    if q % 5 == 0:
        raise BadParamsError("fermat_half requires q not divisible by 5")
    field = make_field(p, 2 * h)  # base field F_{q^2}
    d = (q + 1) // 2
    curve = CurveModel(field, {(d, 0): 1, (0, d): 1, (0, 0): -1})
    genus = (q - 1) * (q - 3) // 8
    inst = CurveInstance(
        name="fermat_half", params={"q": q}, field=field, curve=curve,
        morphisms={"lines": lines_morphism(curve),
                   "conics": conics_morphism(curve)},
        genus=genus, genus_provenance="smooth-plane",
        infinity=[], default_um=(1, 2))
    if genus == 0:
        inst.warnings.append(
            "degenerate instance: genus 0; the conic morphism is "
            "degenerate for q = 3")
    return inst


def _hk_filling(q, a, b, c):
    p, h = parse_prime_power(q)
    field = make_field(p, h)
    av, bv, cv = field.from_int(a), field.from_int(b), field.from_int(c)
    cubic = UniPoly.from_elems(
        field, [-av, -bv, -cv, field.one()])  # t^3 - (c t^2 + b t + a)
    if not is_irreducible(cubic):
        raise BadParamsError(
            f"t^3 - ({c} t^2 + {b} t + {a}) is reducible over GF({q})")
    # y (y^q z - y z^q) + z (z^q x - z x^q) + (a x + b y + c z)(x^q y - x y^q)
    coeffs = {}

    def add(i, j, val):
        key = (i, j)
        coeffs[key] = coeffs.get(key, field.zero()) + val

    one = field.one()
    add(0, q + 1, one)
    add(0, 2, -one)
    add(1, 0, one)
    add(q, 0, -one)
    for (ci, cj, cc) in ((1, 0, av), (0, 1, bv), (0, 0, cv)):
        add(ci + q, cj + 1, cc)
        add(ci + 1, cj + q, -cc)
    curve = CurveModel(field, coeffs)
    return CurveInstance(
        name="hk_filling", params={"q": q, "a": a, "b": b, "c": c},
        field=field, curve=curve,
        morphisms={"lines": lines_morphism(curve)},
        genus=genus_smooth_plane(curve.deg_total),
        genus_provenance="smooth-plane",
        infinity=[], default_um=(1, 2))


def _total_inflection(q):
    p, h = parse_prime_power(q)
    field = make_field(p, h)
    # x^(q+1) - x^2 z^(q-1) + y^q z - y z^q, dehomogenized at z = 1
    coeffs = {(q + 1, 0): 1, (2, 0): -1, (0, q): 1, (0, 1): -1}
    curve = CurveModel(field, coeffs)
    return CurveInstance(
        name="total_inflection", params={"q": q}, field=field, curve=curve,
        morphisms={"lines": lines_morphism(curve)},
        genus=genus_smooth_plane(q + 1), genus_provenance="smooth-plane",
        infinity=[], default_um=(1, 2))


def _f_mu(q, u, m):
    poly, degenerate = f_mu_polynomial(q, u, m)
    if degenerate:
        raise BadParamsError(
            f"f_mu with (u, m) = ({u}, {m}) is degenerate: the quotient "
            "is the constant 1")
    p, h = parse_prime_power(q)
    field = make_field(p, h)
    curve = CurveModel(field, poly)
    smooth, witness = is_smooth(curve)
    warnings = []
    if smooth:
        genus = genus_smooth_plane(curve.deg_total)
        prov = "smooth-plane"
    else:
        genus = None
        prov = "unknown"
        warnings.append(f"plane model not smooth ({witness}); genus unknown")
    return CurveInstance(
        name="f_mu", params={"q": q, "u": u, "m": m}, field=field,
        curve=curve, morphisms={"lines": lines_morphism(curve)},
        genus=genus, genus_provenance=prov,
        infinity=[], default_um=(u, m), warnings=warnings)


_FAMILIES = {
    "fermat": _fermat,
    "hermitian": _hermitian,
    "y_q3": _y_q3,
    "norm_trace": _norm_trace,
    "fermat_half": _fermat_half,
    "f_mu": _f_mu,
    "hk_filling": _hk_filling,
    "total_inflection": _total_inflection,
}


# ---------------------------------------------------------------------------
# the two-Frobenius plane curve by exact division
# ---------------------------------------------------------------------------

def _frob_diff_ypoly(field, qa, qb):
    """(x^qa - x)(y^qb - y) - (x^qb - x)(y^qa - y) as y-poly RatFun list."""
    x = UniPoly.x(field)
    xa = UniPoly.monomial(field, qa) - x
    xb = UniPoly.monomial(field, qb) - x
    out = {}

    def add(j, poly):
        out[j] = out.get(j, UniPoly.zero(field)) + poly

    add(qb, xa)
    add(1, -xa)
    add(qa, -xb)
    add(1, xb)
    top = max(out)
    return [RatFun.from_poly(out.get(j, UniPoly.zero(field)))
            for j in range(top + 1)]


def f_mu_polynomial(q, u, m):
    """The plane polynomial with both Frobenius rows dependent, by exact
    bivariate division; returns (coefficient map, degenerate flag)."""
    if not (m > u >= 1):
        raise CoprimalityError(f"need m > u >= 1, got ({u}, {m})")
    if math.gcd(u, m) != 1:
        raise CoprimalityError(f"({u}, {m}) not coprime")
    p, h = parse_prime_power(q)
    field = make_field(p, h)
    num = _frob_diff_ypoly(field, q ** u, q ** m)
    den = _frob_diff_ypoly(field, q, q ** 2)
    if len(num) == len(den) and all(
            (a - b).is_zero() for a, b in zip(num, den)):
        return {(0, 0): field.one()}, True
    from .curve import _yp_divmod
    quo, rem = _yp_divmod(num, den)
    if rem:
        raise InexactDivisionError(
            f"division leaves a remainder for (q, u, m) = ({q}, {u}, {m})")
    coeffs = {}
    for j, rf in enumerate(quo):
        if rf.is_zero():
            continue
        if not rf.is_poly():
            raise InexactDivisionError(
                f"quotient coefficient of y^{j} is not polynomial")
        poly = rf.num.scale(rf.den.coeff(0).inverse())
        for i, c in enumerate(poly.coeffs()):
            if not c.is_zero():
                coeffs[(i, j)] = c
    return coeffs, False


@dataclass
class Thm22Report:
    no_rational_points: bool
    orders_ok: bool
    epsilon: tuple
    dets_nonzero_ok: bool
    dets_zero_ok: bool

    @property
    def ok(self):
        return (self.no_rational_points and self.orders_ok
                and self.dets_nonzero_ok and self.dets_zero_ok)


def verify_thm22(instance):
    """Checks for an f_mu instance: empty rational point set, order
    sequence (0, 1, q^u), and the determinant identities with the q^u-th
    derivative row nonzero and lower rows vanishing."""
    if instance.name != "f_mu":
        raise BadParamsError("verify_thm22 expects an f_mu instance")
    q, u, m = (instance.params[k] for k in ("q", "u", "m"))
    qu = q ** u
    morph = instance.morphism("lines")
    n1 = instance.count_places(1)
    eps = generic_orders(morph)
    orders_ok = eps.values == (0, 1, qu)
    id_row = morph.hasse_row(0)
    row_u = morph.frobenius_row(u)
    row_m = morph.frobenius_row(m)
    det_u = _det([row_u, id_row, morph.hasse_row(qu)])
    det_m = _det([row_m, id_row, morph.hasse_row(qu)])
    dets_nonzero_ok = (not det_u.is_zero()) and (not det_m.is_zero())
    dets_zero_ok = True
    for i in range(qu):
        du = _det([row_u, id_row, morph.hasse_row(i)])
        dm = _det([row_m, id_row, morph.hasse_row(i)])
        if not (du.is_zero() and dm.is_zero()):
            dets_zero_ok = False
    rep = Thm22Report(
        no_rational_points=(n1 == 0), orders_ok=orders_ok, epsilon=eps.values,
        dets_nonzero_ok=dets_nonzero_ok, dets_zero_ok=dets_zero_ok)
    if not rep.ok:
        raise ReportedViolation(f"two-Frobenius curve checks failed: {rep}")
    return rep
