"""Exact arithmetic in the function field K = F_q(x)[y]/(f) and the Hasse
derivation with respect to x.

A curve model is an irreducible plane polynomial f(x, y), stored both as a
monomial map and as a vector of x-polynomials indexed by the y-degree.
Elements of K (``AlgFunc``) are coordinate vectors of rational functions
in the basis 1, y, ..., y^(degY-1) and are kept fully reduced, so equality
is structural and rank procedures get reliable zero tests.

The Hasse derivative D^(r) with respect to the separating variable x is
computed from the defining relation f(x, y) = 0: applying D^(r) and the
Hasse-Leibniz product rule isolates D^(r) y with coefficient df/dy, and
all lower-order derivatives are cached.  The engine lives on the curve and
is filled idempotently (safe to share across threads; values are
deterministic).
"""

from __future__ import annotations

from .errors import (
    DivisionByZeroError,
    NotSeparatingError,
    ReducibleCurveError,
)
from .field import FieldElem, embed_raw
from .ratfun import RatFun
from .upoly import UniPoly


# ---------------------------------------------------------------------------
# polynomials in y with RatFun coefficients (internal helpers)
# ---------------------------------------------------------------------------

def _yp_trim(c):
    while c and c[-1].is_zero():
        c.pop()
    return c


def _yp_divmod(a, b):
    """Division in F_q(x)[y]; b must be nonzero."""
    if not b:
        raise DivisionByZeroError("y-polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lead_inv = 1 / b[-1]
    q = [None] * max(len(rem) - db, 0)
    for k in range(len(rem) - db - 1, -1, -1):
        c = rem[k + db] * lead_inv
        q[k] = c
        if not c.is_zero():
            for j in range(db + 1):
                rem[k + j] = rem[k + j] - c * b[j]
    return [c for c in q], _yp_trim(rem[:db])


def _yp_mul(a, b, field):
    if not a or not b:
        return []
    out = [RatFun.zero(field) for _ in range(len(a) + len(b) - 1)]
    for i, ai in enumerate(a):
        if not ai.is_zero():
            for j, bj in enumerate(b):
                if not bj.is_zero():
                    out[i + j] = out[i + j] + ai * bj
    return _yp_trim(out)


def _yp_sub(a, b, field):
    n = max(len(a), len(b))
    z = RatFun.zero(field)
    a = list(a) + [z] * (n - len(a))
    b = list(b) + [z] * (n - len(b))
    return _yp_trim([x - y for x, y in zip(a, b)])


def _yp_gcd(a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _yp_divmod(a, b)[1]
    return a


def _yp_resultant(a, b, field):
    """Resultant with respect to y of two y-polynomials over F_q(x)."""
    a, b = _yp_trim(list(a)), _yp_trim(list(b))
    if not a or not b:
        return RatFun.zero(field)
    res = RatFun.one(field)
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * b[0] ** da
        r = _yp_divmod(a, b)[1]
        dr = len(r) - 1
        if not r:
            return RatFun.zero(field)
        sign = field.from_int(-1) if (da * db) % 2 else field.one()
        res = res * RatFun.const(sign) * b[-1] ** (da - dr)
        a, b = b, r


# ---------------------------------------------------------------------------
# curve model
# ---------------------------------------------------------------------------

class CurveModel:
    """Affine plane model f(x, y) = 0 over a finite field.

    f must involve y (deg_y >= 1) with df/dy nonzero in K, so that x is a
    separating variable.  Full absolute irreducibility is not decided;
    necessary conditions are checked here and a zero divisor discovered
    later by the Euclidean algorithm raises ReducibleCurveError.
    """

    def __init__(self, field, coeffs, *, check=True):
        self.field = field
        cleaned = {}
        for (i, j), c in coeffs.items():
            ce = field.elem(c)
            if not ce.is_zero():
                cleaned[(i, j)] = ce
        if not cleaned:
            raise ValueError("zero polynomial does not define a curve")
        self.coeffs = cleaned
        self.deg_y = max(j for (_, j) in cleaned)
        self.deg_x = max(i for (i, _) in cleaned)
        self.deg_total = max(i + j for (i, j) in cleaned)
        ypolys = []
        for j in range(self.deg_y + 1):
            xc = {}
            for (i, jj), c in cleaned.items():
                if jj == j:
                    xc[i] = c
            mx = max(xc) if xc else -1
            ypolys.append(UniPoly(field, [
                xc.get(i, field.zero()).c for i in range(mx + 1)]))
        self.y_polys = tuple(ypolys)
        if self.deg_y < 1:
            raise NotSeparatingError("f does not involve y")
        fy = []
        for j in range(1, self.deg_y + 1):
            fy.append(self.y_polys[j].scale(field.from_int(j)))
        self._fy_polys = tuple(fy)
        if all(p.is_zero() for p in fy):
            raise NotSeparatingError("df/dy vanishes identically")
        if check:
            self._necessary_irreducibility_checks()
        self._hasse = None
        self._monic = None
        self._lift_cache = {}
        self._qpow_cache = {}

    # -- validation -------------------------------------------------------------

    def _necessary_irreducibility_checks(self):
        # no factor in F_q[x]: the gcd of the y-coefficients must be constant
        g = UniPoly.zero(self.field)
        for p in self.y_polys:
            g = g.gcd(p)
        if g.degree() > 0:
            raise ReducibleCurveError(f"f has the factor {g!r} in F_q[x]")
        # no factor in F_q[y]: transpose and repeat
        if self.deg_x >= 1:
            xpolys = {}
            for (i, j), c in self.coeffs.items():
                xpolys.setdefault(i, {})[j] = c
            g = UniPoly.zero(self.field)
            for i, yc in xpolys.items():
                my = max(yc)
                g = g.gcd(UniPoly(self.field, [
                    yc.get(jj, self.field.zero()).c for jj in range(my + 1)]))
                if g.degree() == 0:
                    break
            if g.degree() > 0:
                raise ReducibleCurveError("f has a factor in F_q[y]")
        # squarefree in y over F_q(x)
        a = [RatFun.from_poly(p) for p in self.y_polys]
        b = [RatFun.from_poly(p) for p in self._fy_polys]
        b = _yp_trim(list(b))
        if b:
            g = _yp_gcd(list(a), b)
            if len(g) - 1 > 0:
                raise ReducibleCurveError("f has a repeated factor")

    # -- evaluation ----------------------------------------------------------------

    def evaluate(self, a, b):
        field = self.field
        acc = field.rzero
        bc = b.c if isinstance(b, FieldElem) else field.elem(b).c
        ac = a.c if isinstance(a, FieldElem) else field.elem(a).c
        for p in reversed(self.y_polys):
            acc = field.radd(field.rmul(acc, bc), p.eval_raw(ac))
        return FieldElem(field, acc)

    def y_poly_at(self, a):
        """f(a, y) as a univariate polynomial in y."""
        ac = a.c if isinstance(a, FieldElem) else self.field.elem(a).c
        return UniPoly(self.field, [p.eval_raw(ac) for p in self.y_polys])

    def partial_x_at(self, a, b):
        field = self.field
        acc = field.zero()
        bp = field.one()
        for j, p in enumerate(self.y_polys):
            acc = acc + p.derivative().eval(a) * bp
            bp = bp * b
        return acc

    def partial_y_at(self, a, b):
        field = self.field
        acc = field.zero()
        bp = field.one()
        for p in self._fy_polys:
            acc = acc + p.eval(a) * bp
            bp = bp * b
        return acc

    # -- projective charts ------------------------------------------------------

    def top_form(self):
        """Leading form as a dict {(i, j): c} with i + j = deg_total."""
        d = self.deg_total
        return {(i, j): c for (i, j), c in self.coeffs.items() if i + j == d}

    def hom_coeffs(self):
        """Homogenization {(i, j, k): c} with i + j + k = deg_total."""
        d = self.deg_total
        return {(i, j, d - i - j): c for (i, j), c in self.coeffs.items()}

    def chart_y(self):
        """Model in the chart y = 1: variables (u, v) = (x/y, z/y).

        On the original affine chart, x = u/v and y = 1/v.
        """
        d = self.deg_total
        cc = {}
        for (i, j), c in self.coeffs.items():
            key = (i, d - i - j)
            cc[key] = cc.get(key, self.field.zero()) + c
        return CurveModel(self.field, cc, check=False)

    def chart_x(self):
        """Model in the chart x = 1: variables (u, v) = (y/x, z/x).

        On the original affine chart, y = u/v and x = 1/v.
        """
        d = self.deg_total
        cc = {}
        for (i, j), c in self.coeffs.items():
            key = (j, d - i - j)
            cc[key] = cc.get(key, self.field.zero()) + c
        return CurveModel(self.field, cc, check=False)

    # -- misc -----------------------------------------------------------------------

    def change_field(self, new_field):
        """The same curve with coefficients embedded into an extension."""
        if new_field == self.field:
            return self
        key = (new_field.p, new_field.h, new_field.modulus)
        if key in self._lift_cache:
            return self._lift_cache[key]
        sub = self.field
        cc = {ij: FieldElem(new_field, embed_raw(c.c, sub, new_field))
              for ij, c in self.coeffs.items()}
        lifted = CurveModel(new_field, cc, check=False)
        self._lift_cache[key] = lifted
        return lifted

    def monic_y_polys(self):
        """f scaled monic in y, as RatFun coefficients (cached)."""
        if self._monic is None:
            lead = RatFun.from_poly(self.y_polys[-1])
            self._monic = tuple(
                RatFun.from_poly(p) / lead for p in self.y_polys)
        return self._monic

    def fy_ratfuns(self):
        return [RatFun.from_poly(p) for p in self._fy_polys]

    def __repr__(self):
        return (f"CurveModel(deg {self.deg_total}, deg_y {self.deg_y} "
                f"over {self.field!r})")


# ---------------------------------------------------------------------------
# elements of K
# ---------------------------------------------------------------------------

class AlgFunc:
    """Element of K = F_q(x)[y]/(f), stored as reduced coordinates in the
    basis 1, y, ..., y^(degY-1)."""

    __slots__ = ("curve", "coords")

    def __init__(self, curve, coords, *, reduced=False):
        self.curve = curve
        n = curve.deg_y
        coords = list(coords)
        if len(coords) > n and not reduced:
            coords = _reduce_mod_f(coords, curve)
        coords += [RatFun.zero(curve.field)] * (n - len(coords))
        self.coords = tuple(coords[:n])

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, curve):
        return cls(curve, [], reduced=True)

    @classmethod
    def one(cls, curve):
        return cls(curve, [RatFun.one(curve.field)], reduced=True)

    @classmethod
    def x(cls, curve):
        return cls(curve, [RatFun.x(curve.field)], reduced=True)

    @classmethod
    def y(cls, curve):
        if curve.deg_y == 1:
            # y is itself a rational function of x: solve c1(x) y + c0(x) = 0
            c0, c1 = curve.y_polys[0], curve.y_polys[1]
            return cls(curve, [RatFun(-c0, c1)], reduced=True)
        z = RatFun.zero(curve.field)
        return cls(curve, [z, RatFun.one(curve.field)], reduced=True)

    @classmethod
    def from_ratfun(cls, curve, rf):
        return cls(curve, [rf], reduced=True)

    @classmethod
    def from_xpoly(cls, curve, poly):
        return cls(curve, [RatFun.from_poly(poly)], reduced=True)

    # -- basics ------------------------------------------------------------------

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def _coerce(self, other):
        if isinstance(other, AlgFunc):
            if other.curve is not self.curve:
                raise ValueError("elements of different function fields")
            return other
        if isinstance(other, (RatFun, UniPoly, FieldElem, int)):
            field = self.curve.field
            if isinstance(other, int):
                other = RatFun.const(field.from_int(other))
            elif isinstance(other, FieldElem):
                other = RatFun.const(other)
            elif isinstance(other, UniPoly):
                other = RatFun.from_poly(other)
            return AlgFunc.from_ratfun(self.curve, other)
        return None

    def __repr__(self):
        parts = []
        for j, c in enumerate(self.coords):
            if c.is_zero():
                continue
            ys = "" if j == 0 else ("*y" if j == 1 else f"*y^{j}")
            parts.append(f"({c!r}){ys}")
        return " + ".join(parts) if parts else "0"

    # -- field operations -----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return AlgFunc(self.curve,
                       [a + b for a, b in zip(self.coords, other.coords)],
                       reduced=True)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return AlgFunc(self.curve,
                       [a - b for a, b in zip(self.coords, other.coords)],
                       reduced=True)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return AlgFunc(self.curve, [-c for c in self.coords], reduced=True)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        prod = _yp_mul(list(self.coords), list(other.coords), self.curve.field)
        return AlgFunc(self.curve, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def inverse(self):
        """Inverse modulo f by the extended Euclidean algorithm.

        A nonzero, non-invertible element is a witness that f is reducible.
        """
        if self.is_zero():
            raise DivisionByZeroError("inverse of zero in K")
        curve = self.curve
        field = curve.field
        f = list(curve.monic_y_polys())
        r0, r1 = f, _yp_trim(list(self.coords))
        s0, s1 = [], [RatFun.one(field)]
        while r1:
            q, r = _yp_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _yp_sub(s0, _yp_mul(q, s1, field), field)
        if len(r0) - 1 > 0:
            raise ReducibleCurveError(
                "zero divisor found; the curve polynomial is reducible")
        inv_g = 1 / r0[0]
        return AlgFunc(curve, [c * inv_g for c in s0])

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = AlgFunc.one(self.curve)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- evaluation -------------------------------------------------------------------

    def eval(self, a, b):
        """Value at a point (a, b) of the curve; raises PoleError at poles."""
        field = self.curve.field
        acc = field.zero()
        bp = field.one()
        for c in self.coords:
            if not c.is_zero():
                acc = acc + c.eval(a) * bp
            bp = bp * b
        return acc

    def map_curve(self, new_curve, embed_fn):
        return AlgFunc(new_curve,
                       [c.map_field(new_curve.field, embed_fn)
                        for c in self.coords], reduced=True)


def _reduce_mod_f(coords, curve):
    f = list(curve.monic_y_polys())
    return _yp_divmod(_yp_trim(coords), f)[1]


# ---------------------------------------------------------------------------
# Hasse derivation
# ---------------------------------------------------------------------------

class _HasseEngine:
    """Per-curve cache of D^(r) y and D^(r) (y^j).

    Fills are idempotent and deterministic, so concurrent use is safe under
    the usual dict atomicity guarantees.
    """

    def __init__(self, curve):
        self.curve = curve
        fy = AlgFunc.zero(curve)
        y = AlgFunc.y(curve)
        ypow = AlgFunc.one(curve)
        for j in range(1, curve.deg_y + 1):
            fy = fy + AlgFunc.from_xpoly(curve, curve.y_polys[j]) * j * ypow
            ypow = ypow * y
        if fy.is_zero():
            raise NotSeparatingError("df/dy = 0 in K")
        self.fy_inv = fy.inverse()
        self.hy = [y]
        # _ypow[(j, r)] = D^(r)(y^j), for r < len(self.hy)
        self._ypow = {}
        one = AlgFunc.one(curve)
        for j in range(curve.deg_y + 1):
            self._ypow[(j, 0)] = one if j == 0 else self._ypow[(j - 1, 0)] * y

    def ypow_deriv(self, j, r):
        """D^(r)(y^j) for 0 <= j <= deg_y."""
        while len(self.hy) <= r:
            self._extend()
        return self._ypow[(j, r)]

    def hasse_y(self, r):
        while len(self.hy) <= r:
            self._extend()
        return self.hy[r]

    def _extend(self):
        """Compute D^(r) y for r = current cache size."""
        curve = self.curve
        r = len(self.hy)
        zero = AlgFunc.zero(curve)
        one = AlgFunc.one(curve)
        y = self.hy[0]
        # pairs (value, coefX): D^(r)(y^j) = value + coefX * D^(r) y
        pairs = [(zero, zero)]
        for j in range(1, curve.deg_y + 1):
            pv, pc = pairs[j - 1]
            val = pv * y
            for b in range(1, r):
                val = val + self._ypow[(j - 1, r - b)] * self.hy[b]
            coef = pc * y + self._ypow[(j - 1, 0)]
            pairs.append((val, coef))
        total_v, total_c = zero, zero
        for j in range(curve.deg_y + 1):
            cj = curve.y_polys[j]
            if not cj.is_zero():
                cjf = AlgFunc.from_xpoly(curve, cj)
                pv, pc = pairs[j]
                total_v = total_v + cjf * pv
                total_c = total_c + cjf * pc
            for a in range(1, r + 1):
                da = cj.hasse_shift(a)
                if not da.is_zero():
                    total_v = total_v + AlgFunc.from_xpoly(curve, da) \
                        * self._ypow[(j, r - a)]
        hy_r = -(total_v * self.fy_inv)
        self.hy.append(hy_r)
        for j in range(curve.deg_y + 1):
            pv, pc = pairs[j]
            self._ypow[(j, r)] = pv + pc * hy_r


def _engine(curve):
    if curve._hasse is None:
        curve._hasse = _HasseEngine(curve)
    return curve._hasse


def hasse_y(curve, r):
    """D^(r) y on the curve (with respect to the separating variable x)."""
    if r < 0:
        raise ValueError("derivative order must be >= 0")
    return _engine(curve).hasse_y(r)


def hasse(g, r):
    """r-th Hasse derivative of g in K with respect to x."""
    if r < 0:
        raise ValueError("derivative order must be >= 0")
    if r == 0:
        return g
    curve = g.curve
    eng = _engine(curve)
    eng.hasse_y(r)  # make certain the cache holds orders <= r
    out = AlgFunc.zero(curve)
    for j, rj in enumerate(g.coords):
        if rj.is_zero():
            continue
        rders = rj.hasse_list(r)
        for a in range(r + 1):
            if not rders[a].is_zero():
                out = out + AlgFunc.from_ratfun(curve, rders[a]) \
                    * eng.ypow_deriv(j, r - a)
    return out


def qpower(g, k, base_order):
    """g^(q^k) reduced in K, an honest field power."""
    if k < 0:
        raise ValueError("k must be >= 0")
    key = (g.coords, k, base_order)
    cache = g.curve._qpow_cache
    if key not in cache:
        cache[key] = g ** (base_order ** k)
    return cache[key]
