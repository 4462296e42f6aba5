"""Dense univariate polynomials over a FieldDesc.

Coefficients are stored low-to-high as raw coefficient tuples of the
underlying field.  Trailing zeros are stripped; the zero polynomial has
the empty coefficient vector and degree() == -1 (a distinguished
sentinel).  Includes Euclidean arithmetic, Rabin irreducibility over any
finite field, deterministic root finding, and the Hasse shift
D^(r) x^k = C(k, r) x^(k-r).
"""

from __future__ import annotations

from .errors import DivisionByZeroError
from .field import FieldElem, binom_mod_p


class UniPoly:
    __slots__ = ("field", "rc")

    def __init__(self, field, raw_coeffs, *, trusted=False):
        self.field = field
        if trusted:
            self.rc = raw_coeffs
        else:
            rc = list(raw_coeffs)
            while rc and not any(rc[-1]):
                rc.pop()
            self.rc = tuple(rc)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, (), trusted=True)

    @classmethod
    def one(cls, field):
        return cls(field, (field.rone,), trusted=True)

    @classmethod
    def x(cls, field):
        return cls(field, (field.rzero, field.rone), trusted=True)

    @classmethod
    def const(cls, elem):
        if elem.is_zero():
            return cls.zero(elem.field)
        return cls(elem.field, (elem.c,), trusted=True)

    @classmethod
    def from_elems(cls, field, elems):
        return cls(field, [field.elem(e).c for e in elems])

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.from_int(k).c for k in ints])

    @classmethod
    def monomial(cls, field, k, coeff=None):
        c = field.rone if coeff is None else field.elem(coeff).c
        return cls(field, (field.rzero,) * k + (c,))

    # -- basics ---------------------------------------------------------------

    def degree(self):
        return len(self.rc) - 1

    def is_zero(self):
        return not self.rc

    def __bool__(self):
        return bool(self.rc)

    def lead(self):
        if not self.rc:
            return self.field.zero()
        return FieldElem(self.field, self.rc[-1])

    def coeff(self, i):
        if 0 <= i < len(self.rc):
            return FieldElem(self.field, self.rc[i])
        return self.field.zero()

    def coeffs(self):
        return [FieldElem(self.field, c) for c in self.rc]

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.field == other.field and self.rc == other.rc
        return NotImplemented

    def __hash__(self):
        return hash((self.rc, self.field.order))

    def __repr__(self):
        if not self.rc:
            return "0"
        terms = []
        for i, c in enumerate(self.rc):
            if not any(c):
                continue
            ce = FieldElem(self.field, c)
            cs = repr(ce)
            if i == 0:
                terms.append(cs)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                terms.append(xs if cs == "1" else f"({cs})*{xs}")
        return " + ".join(terms)

    # -- ring operations -------------------------------------------------------

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("polynomials over different fields")

    def __add__(self, other):
        if isinstance(other, FieldElem):
            other = UniPoly.const(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        self._check(other)
        f = self.field
        a, b = self.rc, other.rc
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, bc in enumerate(b):
            out[i] = f.radd(out[i], bc)
        return UniPoly(f, out)

    def __sub__(self, other):
        if isinstance(other, FieldElem):
            other = UniPoly.const(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        self._check(other)
        f = self.field
        n = max(len(self.rc), len(other.rc))
        z = f.rzero
        a = self.rc + (z,) * (n - len(self.rc))
        b = other.rc + (z,) * (n - len(other.rc))
        return UniPoly(f, [f.rsub(x, y) for x, y in zip(a, b)])

    def __neg__(self):
        f = self.field
        return UniPoly(f, tuple(f.rneg(c) for c in self.rc), trusted=True)

    def __mul__(self, other):
        if isinstance(other, FieldElem):
            return self.scale(other)
        if isinstance(other, int):
            return self.scale(self.field.from_int(other))
        if not isinstance(other, UniPoly):
            return NotImplemented
        self._check(other)
        f = self.field
        a, b = self.rc, other.rc
        if not a or not b:
            return UniPoly.zero(f)
        radd, rmul, z = f.radd, f.rmul, f.rzero
        out = [z] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if any(ai):
                for j, bj in enumerate(b):
                    if any(bj):
                        out[i + j] = radd(out[i + j], rmul(ai, bj))
        return UniPoly(f, out)

    __rmul__ = __mul__

    def scale(self, elem):
        if elem.is_zero():
            return UniPoly.zero(self.field)
        f = self.field
        ec = elem.c
        return UniPoly(f, tuple(f.rmul(c, ec) for c in self.rc), trusted=True)

    def shift(self, k):
        """Multiply by x^k."""
        if not self.rc:
            return self
        return UniPoly(self.field, (self.field.rzero,) * k + self.rc, trusted=True)

    def __pow__(self, e):
        result = UniPoly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divmod(self, other):
        if other.is_zero():
            raise DivisionByZeroError("polynomial division by zero")
        self._check(other)
        f = self.field
        db = other.degree()
        rem = list(self.rc)
        da = len(rem) - 1
        if da < db:
            return UniPoly.zero(f), self
        inv_lead = f.rinv(other.rc[-1])
        q = [f.rzero] * (da - db + 1)
        rmul, rsub = f.rmul, f.rsub
        brc = other.rc
        for k in range(da - db, -1, -1):
            c = rmul(rem[k + db], inv_lead)
            if any(c):
                q[k] = c
                for j in range(db + 1):
                    if any(brc[j]):
                        rem[k + j] = rsub(rem[k + j], rmul(c, brc[j]))
        return UniPoly(f, q), UniPoly(f, rem[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if not self.rc:
            return self
        lead = self.rc[-1]
        if lead == self.field.rone:
            return self
        return self.scale(FieldElem(self.field, self.field.rinv(lead)))

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """(g, s, t) with g = s*self + t*other, g monic."""
        f = self.field
        r0, r1 = self, other
        s0, s1 = UniPoly.one(f), UniPoly.zero(f)
        t0, t1 = UniPoly.zero(f), UniPoly.one(f)
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if not r0.is_zero():
            inv = r0.lead().inverse()
            r0, s0, t0 = r0.scale(inv), s0.scale(inv), t0.scale(inv)
        return r0, s0, t0

    # -- evaluation ------------------------------------------------------------

    def eval(self, a):
        """Horner evaluation at a FieldElem of the same field."""
        f = self.field
        if isinstance(a, FieldElem) and a.field != f:
            raise ValueError("evaluation point from a different field")
        ac = a.c if isinstance(a, FieldElem) else f.elem(a).c
        return FieldElem(f, self.eval_raw(ac))

    def eval_raw(self, ac):
        f = self.field
        acc = f.rzero
        rmul, radd = f.rmul, f.radd
        for c in reversed(self.rc):
            acc = radd(rmul(acc, ac), c)
        return acc

    # -- calculus ---------------------------------------------------------------

    def derivative(self):
        f = self.field
        out = []
        for k in range(1, len(self.rc)):
            out.append(tuple((k * c) % f.p for c in self.rc[k]))
        return UniPoly(f, out)

    def hasse_shift(self, r):
        """D^(r) applied coefficient-wise: x^k -> C(k, r) x^(k-r)."""
        if r == 0:
            return self
        f = self.field
        out = []
        for k in range(r, len(self.rc)):
            b = binom_mod_p(k, r, f.p)
            out.append(tuple((b * c) % f.p for c in self.rc[k]))
        return UniPoly(f, out)

    def map_field(self, new_field, embed_fn):
        return UniPoly(new_field, [embed_fn(c) for c in self.rc])


# ---------------------------------------------------------------------------
# modular exponentiation, irreducibility, roots
# ---------------------------------------------------------------------------

def pow_mod(base, e, mod):
    result = UniPoly.one(base.field)
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        e >>= 1
        if e:
            base = (base * base) % mod
    return result


def is_irreducible(f):
    """Rabin test over the coefficient field."""
    n = f.degree()
    if n <= 0:
        return False
    if n == 1:
        return True
    field = f.field
    q = field.order
    x = UniPoly.x(field)
    if (pow_mod(x, q ** n, f) - x) % f:
        return False
    from .field import is_prime
    for ell in {d for d in range(2, n + 1) if n % d == 0 and is_prime(d)}:
        g = f.gcd(pow_mod(x, q ** (n // ell), f) - x)
        if g.degree() > 0:
            return False
    return True


def count_roots(f):
    """Number of distinct roots of f in its own coefficient field."""
    if f.is_zero():
        return f.field.order
    if f.degree() == 0:
        return 0
    x = UniPoly.x(f.field)
    g = f.gcd(pow_mod(x, f.field.order, f) - x)
    return max(g.degree(), 0)


_SCAN_LIMIT = 512


def roots(f):
    """Distinct roots of f in its coefficient field, sorted by element key.

    Small fields are scanned exhaustively; larger fields use the standard
    split of gcd(x^q - x, f) with a deterministic sequence of shifts, so
    results are reproducible without an RNG.
    """
    field = f.field
    if f.is_zero():
        raise ValueError("roots of the zero polynomial")
    if f.degree() == 0:
        return []
    if field.order <= _SCAN_LIMIT:
        out = [a for a in field.elements() if not any(f.eval_raw(a.c))]
        return out
    x = UniPoly.x(field)
    g = f.gcd(pow_mod(x, field.order, f) - x)
    found = []
    _split_linear(g, found)
    found.sort(key=lambda e: e.key())
    return found


def _split_linear(g, out):
    """g is squarefree and splits into linear factors; collect its roots."""
    field = g.field
    d = g.degree()
    if d <= 0:
        return
    if d == 1:
        c0, c1 = g.coeff(0), g.coeff(1)
        out.append(-c0 / c1)
        return
    q = field.order
    if field.p == 2:
        # trace polynomial T(cx) = sum (cx)^(2^i) splits g for some c
        k = field.h
        for idx in range(1, 4 * q):
            c = field.elem_from_index(idx % q)
            if c.is_zero():
                continue
            cx = UniPoly.monomial(field, 1, c)
            acc = UniPoly.zero(field)
            term = cx % g
            for _ in range(k):
                acc = acc + term
                term = (term * term) % g
            h = g.gcd(acc)
            if 0 < h.degree() < d:
                _split_linear(h, out)
                _split_linear(g // h, out)
                return
    else:
        e = (q - 1) // 2
        for idx in range(4 * q):
            c = field.elem_from_index(idx % q)
            shifted = UniPoly.x(field) + UniPoly.const(c)
            h = g.gcd(pow_mod(shifted, e, g) - UniPoly.one(field))
            if 0 < h.degree() < d:
                _split_linear(h, out)
                _split_linear(g // h, out)
                return
    raise RuntimeError("equal-degree splitting failed")  # pragma: no cover
