"""Local analysis at places: branch expansion, pointwise orders, and
valuations of the two-Frobenius Wronskian.

A ``Series`` is a truncated Laurent series over a finite field: exponents
run from ``offset`` upward and every coefficient for exponents strictly
below ``prec`` is exact.  Arithmetic propagates precision pessimistically,
so a valuation read below the tracked precision is certain.

Branches realize places of the curve.  At a nonsingular affine point the
expansion is computed by Newton iteration against the defining
polynomial; at smooth points at infinity the expansion is computed in a
projective chart and transported back as Laurent series in x and y.
Branches at singular places are never computed here; the curve catalog
supplies explicit parametrizations for those.

Pointwise orders follow the rank characterization: after clearing the
common pole t^(-e_P), the i-th order is the smallest exponent whose
coefficient row enlarges the span of the previously chosen rows.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    KappaMismatchError,
    NotOnCurveError,
    PrecisionExhaustedError,
    ReportedViolation,
    SingularPointError,
)
from .field import FieldElem, binom_det_mod_p, binom_mod_p
from .orders import OrderSeq


class Series:
    """Truncated Laurent series: coeffs[i] is the coefficient of
    t^(offset + i); all exponents < prec are exact."""

    __slots__ = ("field", "offset", "rc", "prec")

    def __init__(self, field, offset, raw_coeffs, prec):
        rc = list(raw_coeffs)
        # drop coefficients at or beyond the precision bound
        if offset + len(rc) > prec:
            rc = rc[: max(prec - offset, 0)]
        # normalize leading zeros into the offset
        i = 0
        while i < len(rc) and not any(rc[i]):
            i += 1
        if i:
            offset += i
            rc = rc[i:]
        if not rc:
            offset = prec
        self.field = field
        self.offset = offset
        self.rc = rc
        self.prec = prec

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, field, prec):
        return cls(field, prec, [], prec)

    @classmethod
    def const(cls, elem, prec):
        return cls(elem.field, 0, [elem.c], prec)

    @classmethod
    def t(cls, field, prec):
        return cls(field, 1, [field.rone], prec)

    @classmethod
    def from_elems(cls, field, offset, elems, prec):
        return cls(field, offset, [field.elem(e).c for e in elems], prec)

    # -- basics ------------------------------------------------------------------

    def val(self):
        """Exact valuation, or None when the series is 0 to its precision."""
        return self.offset if self.rc else None

    def is_zero_to_prec(self):
        return not self.rc

    def coeff(self, e):
        """Raw coefficient of t^e; exact for e < prec."""
        if e >= self.prec:
            raise PrecisionExhaustedError(
                f"coefficient of t^{e} requested at precision {self.prec}")
        i = e - self.offset
        if 0 <= i < len(self.rc):
            return self.rc[i]
        return self.field.rzero

    def coefficients(self):
        return [FieldElem(self.field, c) for c in self.rc]

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.rc[:8]):
            if any(c):
                terms.append(f"({FieldElem(self.field, c)!r})*t^{self.offset + i}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(t^{self.prec})"

    # -- arithmetic -----------------------------------------------------------------

    def __add__(self, other):
        f = self.field
        prec = min(self.prec, other.prec)
        parts = [s for s in (self, other) if s.rc]
        if not parts:
            return Series.zero(f, prec)
        lo = min(min(s.offset for s in parts), prec)
        hi = min(max(s.offset + len(s.rc) for s in parts), prec)
        out = [f.rzero] * max(hi - lo, 0)
        for s in parts:
            for i, c in enumerate(s.rc):
                j = s.offset - lo + i
                if 0 <= j < len(out):
                    out[j] = f.radd(out[j], c)
        return Series(f, lo, out, prec)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        f = self.field
        return Series(f, self.offset, [f.rneg(c) for c in self.rc], self.prec)

    def __mul__(self, other):
        f = self.field
        prec = min(self.prec + other.offset, other.prec + self.offset)
        if not self.rc or not other.rc:
            return Series.zero(f, prec)
        lo = self.offset + other.offset
        n = min(len(self.rc) + len(other.rc) - 1, max(prec - lo, 0))
        out = [f.rzero] * n
        radd, rmul = f.radd, f.rmul
        for i, a in enumerate(self.rc):
            if i >= n:
                break
            if any(a):
                top = min(len(other.rc), n - i)
                for j in range(top):
                    b = other.rc[j]
                    if any(b):
                        out[i + j] = radd(out[i + j], rmul(a, b))
        return Series(f, lo, out, prec)

    def scale(self, elem):
        f = self.field
        ec = elem.c if isinstance(elem, FieldElem) else f.elem(elem).c
        return Series(f, self.offset,
                      [f.rmul(c, ec) for c in self.rc], self.prec)

    def shift(self, k):
        """Multiply by t^k (exact)."""
        return Series(self.field, self.offset + k, list(self.rc),
                      self.prec + k)

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        # an exact 1 carries effectively infinite precision; multiplication
        # clamps the result to what the factors support
        result = Series(self.field, 0, [self.field.rone], _BIG)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self):
        v = self.val()
        if v is None:
            raise PrecisionExhaustedError("inverse of a series that is 0 to precision")
        f = self.field
        u = self.rc
        inv0 = f.rinv(u[0])
        if len(u) == 1:
            # exact monomial: the inverse is exact at matching precision
            return Series(f, -v, [inv0], self.prec - 2 * v)
        rel = self.prec - v  # relative precision of the unit part
        if rel > 1 << 20:
            raise RuntimeError(
                "refusing to invert a series at effectively infinite "
                "precision; truncate first")
        out = [inv0]
        rmul, rzero = f.rmul, f.rzero
        for k in range(1, rel):
            acc = rzero
            for i in range(1, min(k, len(u) - 1) + 1):
                acc = f.radd(acc, rmul(u[i], out[k - i]))
            out.append(rmul(f.rneg(inv0), acc) if any(acc) else rzero)
        return Series(f, -v, out, rel - v)

    def __truediv__(self, other):
        return self * other.inverse()

    def hasse(self, r):
        """Hasse derivative with respect to t; requires offset >= 0."""
        if r == 0:
            return self
        if self.offset < 0:
            raise ValueError("series Hasse derivative needs offset >= 0")
        f = self.field
        out = []
        lo = max(self.offset, r)
        for e in range(lo, self.offset + len(self.rc)):
            b = binom_mod_p(e, r, f.p)
            c = self.rc[e - self.offset]
            out.append(tuple((b * x) % f.p for x in c))
        return Series(f, lo - r, out, self.prec - r)

    def truncate(self, prec):
        if prec >= self.prec:
            return self
        return Series(self.field, self.offset, list(self.rc), prec)


_BIG = 10 ** 9  # effectively infinite precision for exact constants


def poly_on_series(poly, s):
    """Evaluate a UniPoly at a series by Horner.

    Constants enter with unbounded precision; the multiplication rule
    clamps the result to what the input series supports.
    """
    f = s.field
    acc = Series.zero(f, _BIG)
    for c in reversed(poly.rc):
        acc = acc * s + Series(f, 0, [c], _BIG)
    return acc


def ratfun_on_series(rf, s):
    num = poly_on_series(rf.num, s)
    den = poly_on_series(rf.den, s)
    return num / den


def algfunc_on_series(g, xs, ys):
    """Evaluate an AlgFunc along a branch given x(t) and y(t)."""
    f = xs.field
    acc = Series.zero(f, _BIG)
    for rf in reversed(g.coords):
        acc = acc * ys
        if not rf.is_zero():
            acc = acc + ratfun_on_series(rf, xs)
    return acc


# ---------------------------------------------------------------------------
# branches
# ---------------------------------------------------------------------------

@dataclass
class Branch:
    """Truncated local parametrization (x(t), y(t)) of the curve at a place."""
    curve: object
    field: object
    x_series: Series
    y_series: Series
    prec: int
    center: str
    rat_field_order: int = 0  # order of the field its center generates (0 = unknown)

    def check_on_curve(self):
        """f(x(t), y(t)) must vanish to the working precision."""
        acc = Series.zero(self.field, 10 ** 9)
        for p in reversed(self.curve.y_polys):
            acc = acc * self.y_series + poly_on_series(p, self.x_series)
        return acc.is_zero_to_prec(), acc


def _series_list_mul(f, a, b, n):
    out = [f.rzero] * n
    radd, rmul = f.radd, f.rmul
    for i, ai in enumerate(a):
        if i >= n:
            break
        if any(ai):
            for j in range(min(len(b), n - i)):
                if any(b[j]):
                    out[i + j] = radd(out[i + j], rmul(ai, b[j]))
    return out


def branch_at(curve, point, prec):
    """Branch at a nonsingular affine point, deterministic Newton lift.

    If df/dy does not vanish at the point, t = x - a and y is lifted;
    otherwise the roles of x and y are swapped.
    """
    a, b = point
    a, b = curve.field.elem(a), curve.field.elem(b)
    if not curve.evaluate(a, b).is_zero():
        raise NotOnCurveError(f"({a!r}, {b!r}) is not on the curve")
    fy = curve.partial_y_at(a, b)
    fx = curve.partial_x_at(a, b)
    field = curve.field
    if fy.is_zero() and fx.is_zero():
        raise SingularPointError(
            f"({a!r}, {b!r}) is singular on the affine model")
    label = f"affine({a!r},{b!r})"
    if not fy.is_zero():
        xs = Series(field, 0, [a.c, field.rone], prec)
        ys = _newton_lift(curve.y_polys, a, b, prec)
        return Branch(curve, field, xs, ys, prec, label)
    # swap roles: t = y - b, solve x(t) against the transposed polynomial
    xpolys = _transpose_to_xpolys(curve)
    ys = Series(field, 0, [b.c, field.rone], prec)
    xs = _newton_lift(xpolys, b, a, prec)
    return Branch(curve, field, xs, ys, prec, label)


def _transpose_to_xpolys(curve):
    """f as a polynomial in x with y-polynomial coefficients."""
    from .upoly import UniPoly
    field = curve.field
    by_i = {}
    for (i, j), c in curve.coeffs.items():
        by_i.setdefault(i, {})[j] = c
    out = []
    for i in range(curve.deg_x + 1):
        yc = by_i.get(i, {})
        m = max(yc) if yc else -1
        out.append(UniPoly(field, [yc.get(j, field.zero()).c
                                   for j in range(m + 1)]))
    return tuple(out)


def _newton_lift(coeff_polys, a, b, prec):
    """Solve sum_j coeff_polys[j](a + t) * w(t)^j = 0 with w(0) = b.

    Newton iteration doubles the correct length each round; the derivative
    at the start is a unit, which the caller guarantees.
    """
    field = coeff_polys[0].field
    # coefficients of each coeff_poly composed with a + t, as raw lists
    comp = []
    for p in coeff_polys:
        s = poly_on_series(p, Series(field, 0, [a.c, field.rone], prec + 1))
        row = [field.rzero] * prec
        for i, c in enumerate(s.rc):
            e = s.offset + i
            if 0 <= e < prec:
                row[e] = c
        comp.append(row)
    dcomp = [None] + [
        [tuple((j * x) % field.p for x in c) for c in comp[j]]
        for j in range(1, len(comp))]

    w = [b.c]
    cur = 1
    while cur < prec:
        cur = min(2 * cur, prec)
        w = w + [field.rzero] * (cur - len(w))
        fval = _eval_comp(field, comp, w, cur)
        fder = _eval_comp(field, dcomp[1:], w, cur)
        inv = _unit_inverse(field, fder, cur)
        delta = _series_list_mul(field, fval, inv, cur)
        w = [field.rsub(wc, dc) for wc, dc in zip(w, delta)]
    return Series(field, 0, w, prec)


def _eval_comp(field, polys, w, n):
    acc = [field.rzero] * n
    for row in reversed(polys):
        acc = _series_list_mul(field, acc, w, n)
        for i in range(min(len(row), n)):
            acc[i] = field.radd(acc[i], row[i])
    return acc


def _unit_inverse(field, u, n):
    if not any(u[0]):
        raise SingularPointError("derivative is not a unit at the point")
    inv0 = field.rinv(u[0])
    out = [inv0]
    for k in range(1, n):
        acc = field.rzero
        for i in range(1, min(k, len(u) - 1) + 1):
            acc = field.radd(acc, field.rmul(u[i], out[k - i]))
        out.append(field.rmul(field.rneg(inv0), acc))
    return out


def nth_root_series(s, n):
    """n-th root of a unit series with constant term 1, p not dividing n.

    Newton iteration: u <- u - (u^n - s) / (n u^(n-1)); each round doubles
    the number of correct coefficients.
    """
    field = s.field
    if s.val() != 0 or s.rc[0] != field.rone:
        raise ValueError("series must be a unit with constant term 1")
    if n % field.p == 0:
        raise ValueError("root index divisible by the characteristic")
    prec = s.prec
    u = Series(field, 0, [field.rone], 1)
    cur = 1
    while cur < prec:
        cur = min(2 * cur, prec)
        u = Series(field, 0, list(u.rc), cur)
        num = (u ** n) - s.truncate(cur)
        den = (u ** (n - 1)).scale(field.from_int(n))
        u = (u - num * den.inverse()).truncate(cur)
    return u.truncate(prec)


def branch_at_infinity(curve, point, prec):
    """Branch at a smooth point at infinity (a : b : 0) of the projective
    closure, transported back to Laurent series in the affine x and y."""
    a, b = point
    field = curve.field
    if not b.is_zero():
        u0 = a / b
        chart = curve.chart_y()  # (u, v) = (x/y, z/y); x = u/v, y = 1/v
        br = branch_at(chart, (u0, field.zero()), prec + 2)
        us, vs = br.x_series, br.y_series
        vinv = vs.inverse()
        xs = us * vinv
        ys = vinv
        label = f"inf({a!r}:{b!r}:0)"
    else:
        chart = curve.chart_x()  # (u, v) = (y/x, z/x); y = u/v, x = 1/v
        br = branch_at(chart, (field.zero(), field.zero()), prec + 2)
        us, vs = br.x_series, br.y_series
        vinv = vs.inverse()
        ys = us * vinv
        xs = vinv
        label = "inf(1:0:0)"
    out = Branch(curve, field, xs, ys, prec, label)
    ok, _ = out.check_on_curve()
    if not ok:
        raise ReportedViolation(f"infinite branch at {label} fails f = 0")
    return out


# ---------------------------------------------------------------------------
# pointwise orders
# ---------------------------------------------------------------------------

@dataclass
class PointOrders:
    j: OrderSeq
    e_p: int
    center: str
    rat_levels: frozenset


def compose_morphism(morphism, branch):
    """Coordinate functions along the branch, pole-normalized.

    Returns (series list, e_P).  The morphism must already live over the
    branch's coefficient field.
    """
    if morphism.curve.field != branch.field:
        raise ValueError("morphism and branch live over different fields")
    comps = [algfunc_on_series(c, branch.x_series, branch.y_series)
             for c in morphism.coords]
    vals = []
    for s in comps:
        if s.is_zero_to_prec():
            raise PrecisionExhaustedError(
                "a coordinate vanishes to working precision")
        vals.append(s.val())
    e_p = -min(vals)
    return [s.shift(e_p) for s in comps], e_p


def point_orders(morphism, branch, rat_levels=frozenset()):
    """Orders at the branch center: j_i is the smallest exponent whose
    coefficient row of the normalized coordinate series enlarges the rank."""
    comps, e_p = compose_morphism(morphism, branch)
    field = branch.field
    width = len(comps)
    prec = min(s.prec for s in comps)
    cap = morphism.deg_series  # normalized orders never exceed deg(D)
    echelon = []
    orders = []
    e = 0
    while len(orders) < width:
        if e >= prec or e > cap:
            raise PrecisionExhaustedError(
                f"rank {len(orders)} of {width} at precision {prec}")
        row = [s.coeff(e) for s in comps]
        red = _scalar_try(field, echelon, row)
        if red is not None:
            echelon.append(red)
            orders.append(e)
        e += 1
    return PointOrders(
        j=OrderSeq(("pointwise", branch.center), tuple(orders)),
        e_p=e_p, center=branch.center, rat_levels=frozenset(rat_levels))


def _scalar_try(field, echelon, row):
    vec = list(row)
    for piv, r in echelon:
        c = vec[piv]
        if any(c):
            for i in range(len(vec)):
                vec[i] = field.rsub(vec[i], field.rmul(c, r[i]))
    piv = next((i for i, v in enumerate(vec) if any(v)), None)
    if piv is None:
        return None
    inv = field.rinv(vec[piv])
    return piv, [field.rmul(v, inv) for v in vec]


# ---------------------------------------------------------------------------
# series determinants and Wronskian valuations
# ---------------------------------------------------------------------------

def series_det(rows):
    """Determinant of a square series matrix, Laplace along the first two
    rows with memoized minors for the rest.

    Zero-to-precision entries still participate so the precision of the
    result correctly reflects what is unknown about them.
    """
    k = len(rows)
    field = rows[0][0].field
    if k == 1:
        return rows[0][0]
    if k == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if k == 3:
        a, b, c = rows[0]
        d, e, f = rows[1]
        g, h, i = rows[2]
        return (a * (e * i - f * h) - b * (d * i - f * g)
                + c * (d * h - e * g))
    lower = rows[2:]
    one = Series(field, 0, [field.rone], _BIG)
    memo = {(): one}

    def lower_minor(remaining):
        if remaining in memo:
            return memo[remaining]
        row_idx = len(lower) - len(remaining)
        total = Series.zero(field, _BIG)
        sign = 1
        for pos, col in enumerate(remaining):
            entry = lower[row_idx][col]
            term = entry * lower_minor(remaining[:pos] + remaining[pos + 1:])
            total = total + term if sign > 0 else total - term
            sign = -sign
        memo[remaining] = total
        return total

    cols = tuple(range(k))
    total = Series.zero(field, _BIG)
    for li in range(k):
        for ki_ in range(li + 1, k):
            two = rows[0][li] * rows[1][ki_] - rows[0][ki_] * rows[1][li]
            rest = tuple(c for c in cols if c not in (li, ki_))
            term = two * lower_minor(rest)
            if (li + ki_) % 2:
                total = total + term
            else:
                total = total - term
    return total


def valuation_T(morphism, branch, u, m, kappa):
    """v_P of the two-Frobenius Wronskian, from the local expansion.

    Rows are built with Hasse derivatives with respect to the local
    parameter, so no dt/dx correction is needed; the e_P-normalization
    happens before the determinant is formed.
    """
    if len(kappa) != morphism.n - 1:
        raise KappaMismatchError(
            f"kappa has length {len(kappa)}, expected {morphism.n - 1}")
    comps, _ = compose_morphism(morphism, branch)
    q = morphism.base_order
    rows = [[s ** (q ** m) for s in comps],
            [s ** (q ** u) for s in comps]]
    for e in kappa:
        rows.append([s.hasse(e) for s in comps])
    det = series_det(rows)
    v = det.val()
    if v is None:
        raise PrecisionExhaustedError(
            f"Wronskian vanishes to precision {det.prec} at {branch.center}")
    return v


def correction_B(morphism, branch, u, m, kappa, c_r):
    """Excess valuation over the class minimum c_r; always >= 0."""
    v = valuation_T(morphism, branch, u, m, kappa)
    b = v - c_r
    if b < 0:
        raise ReportedViolation(
            f"valuation {v} below the declared class minimum {c_r} "
            f"at {branch.center}")
    return b


# ---------------------------------------------------------------------------
# per-point inequality checks
# ---------------------------------------------------------------------------

@dataclass
class PointBoundReport:
    center: str
    rat_levels: frozenset
    cases: list          # (name, lower_bound, valuation, ok)
    criteria: dict
    warnings: list

    @property
    def ok(self):
        return all(c[3] for c in self.cases)


def check_point_bounds(po, kappa, epsilon, v, *, p, qu, u=None, m=None,
                       nu=None, mu=None):
    """Verify the applicable case inequalities and their equality criteria
    at one point.  Any failure raises ReportedViolation."""
    j = po.j.values
    kap = kappa.values
    n = len(j) - 1
    cases = []
    criteria = {}
    warnings = []
    rl = po.rat_levels

    def record(name, bound):
        ok = v >= bound
        cases.append((name, bound, v, ok))
        if not ok:
            raise ReportedViolation(
                f"{name} fails at {po.center}: v = {v} < bound {bound}")

    if 1 in rl:
        bound1 = j[1] * qu + sum(j[i + 2] - kap[i] for i in range(n - 1))
        record("rational_point", bound1)
        det1 = binom_det_mod_p(j[2:], kap, p)
        criteria["equality_det"] = det1
        equal = (v == bound1)
        if equal != (det1 != 0):
            raise ReportedViolation(
                f"equality criterion fails at {po.center}: v = {v}, "
                f"bound {bound1}, det {det1}")
        criteria["equality_holds"] = equal
        # kappa_i <= j_(i+2) - j_2 at rational points
        for i in range(n - 1):
            if kap[i] > j[i + 2] - j[2]:
                raise ReportedViolation(
                    f"kappa_{i} = {kap[i]} exceeds j_{i + 2} - j_2 "
                    f"at {po.center}")
        criteria["kappa_vs_j_gap"] = True
        record("rational_point_strong", qu * j[1] + j[2] * (n - 1))
    if m is not None and u is not None and (m - u) in rl:
        bound2 = j[1] * qu + sum(j[i] - kap[i] for i in range(n - 1))
        record("level_m_minus_u", bound2)
        if binom_det_mod_p(j[: n - 1], kap, p) == 0 and v == bound2:
            raise ReportedViolation(
                f"strict inequality mandated but equality found at {po.center}")
    if (u in rl) or (m in rl):
        bound3 = sum(j[i] - kap[i - 1] for i in range(1, n))
        record("level_u_or_m", bound3)
        if binom_det_mod_p(j[1:n], kap, p) == 0 and v == bound3:
            raise ReportedViolation(
                f"strict inequality mandated but equality found at {po.center}")
    bound4 = sum(j[i] - kap[i] for i in range(n - 1))
    record("any_point", bound4)
    if binom_det_mod_p(j[: n - 1], kap, p) == 0 and v == bound4:
        raise ReportedViolation(
            f"strict inequality mandated but equality found at {po.center}")

    # refined bound at level-m points when the Frobenius sequences have the
    # split shape nu = eps minus one entry and mu = eps prefix
    if (nu is not None and mu is not None and m is not None and m in rl):
        eps = epsilon.values
        shape = (mu.values == eps[:n]
                 and set(nu.values) <= set(eps)
                 and len(set(eps) - set(nu.values)) == 1)
        if shape:
            k = eps.index((set(eps) - set(nu.values)).pop())
            if k != n - 1:
                warnings.append(f"refined m-level bound used with k = {k}")
            if 1 <= k <= n - 1 and binom_det_mod_p(j[:n], eps[:n], p) != 0:
                bound5 = j[n] + sum(j[i] - eps[i]
                                    for i in range(1, n) if i != k)
                record("level_m_refined", bound5)
    return PointBoundReport(center=po.center, rat_levels=rl, cases=cases,
                            criteria=criteria, warnings=warnings)


def series_wronskian_valuation_check(zs, m_orders, p):
    """Valuation bound for det(D^(m_s) z_r) against sum (j_i - m_i), with
    the binomial-determinant equality criterion."""
    js = []
    for z in zs:
        v = z.val()
        if v is None:
            raise PrecisionExhaustedError("a series vanishes to precision")
        js.append(v)
    if any(a >= b for a, b in zip(js, js[1:])):
        raise ValueError("leading exponents must be strictly increasing")
    rows = [[z.hasse(mo) for mo in m_orders] for z in zs]
    det = series_det(rows)
    bound = sum(j - mo for j, mo in zip(js, m_orders))
    v = det.val()
    if v is None:
        if det.prec <= bound:
            raise PrecisionExhaustedError(
                f"determinant zero to precision {det.prec}")
        v = None
    bd = binom_det_mod_p(js, m_orders, p)
    ok_bound = (v is None) or (v >= bound)
    equality = (v == bound)
    if not ok_bound:
        raise ReportedViolation(
            f"valuation {v} below the bound {bound}")
    if equality != (bd != 0):
        raise ReportedViolation(
            f"equality criterion fails: v = {v}, bound {bound}, "
            f"binomial det {bd}")
    return {"valuation": v, "bound": bound, "equality": equality,
            "binom_det": bd, "ok": True}
