"""Exact arithmetic in finite fields GF(p^h).

Elements are stored as canonical coefficient vectors of length h in the
power basis over the prime field, reduced modulo (p, modulus).  The
modulus is a monic irreducible polynomial of degree h over GF(p), kept as
a low-to-high coefficient tuple of length h+1.  Equality is structural.

Raw coefficient tuples are the internal currency: every ``FieldDesc``
carries closure-based kernels (``radd``, ``rmul``, ...) that operate on
plain int tuples, and ``FieldElem`` is a thin wrapper over one such
tuple.  Hot loops elsewhere (censuses, series determinants) work on raw
tuples directly and only wrap results on the way out.

The total order used everywhere a deterministic choice is needed (modulus
search, embedding roots, point ordering) is the lexicographic order on
coefficient tuples (c_0, ..., c_{h-1}) compared left to right.
"""

from __future__ import annotations

import math

from .errors import (
    DivisionByZeroError,
    FieldMismatchError,
    NoEmbeddingError,
    NonPrimeError,
    ReducibleModulusError,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# polynomials over GF(p) as int tuples, low-to-high, used only for field
# construction internals (modulus search, element inversion)
# ---------------------------------------------------------------------------

def _pp_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _pp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _pp_trim([c % p for c in out])


def _pp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(da - db + 1, 0)
    for k in range(da - db, -1, -1):
        c = (a[k + db] * inv_lead) % p
        if c:
            q[k] = c
            for j in range(db + 1):
                a[k + j] = (a[k + j] - c * b[j]) % p
    return _pp_trim(q), _pp_trim(a[:db])


def _pp_powmod(base, e, mod, p):
    result = (1,)
    base = _pp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pp_divmod(_pp_mul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = _pp_divmod(_pp_mul(base, base, p), mod, p)[1]
    return result


def _pp_gcd(a, b, p):
    while b:
        a, b = b, _pp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = tuple((c * inv) % p for c in a)
    return a


def _pp_sub(a, b, p):
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return _pp_trim([(x - y) % p for x, y in zip(a, b)])


def _pp_is_irreducible(f, p):
    """Distinct-degree irreducibility test for a monic f over GF(p).

    f is reducible iff it shares a root with x^(p^i) - x for some
    i <= deg(f)/2; scanning i upward exits early on the small factors
    that kill almost every candidate.
    """
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    x = (0, 1)
    xq = _pp_divmod(x, f, p)[1]
    for _ in range(n // 2):
        xq = _pp_powmod(xq, p, f, p)
        if len(_pp_gcd(_pp_sub(xq, x, p), f, p)) > 1:
            return False
    return True


def _search_modulus(p, h):
    """Lexicographically first monic irreducible of degree h over GF(p).

    Candidates (c_0, ..., c_{h-1}) are scanned in increasing tuple order,
    so repeated runs agree bit for bit.  Every candidate with c_0 = 0 is
    divisible by x, so the scan starts at the c_0 = 1 block.
    """
    if h == 1:
        return (0, 1)
    start = p ** (h - 1)
    for n in range(start, p ** h):
        digits = []
        m = n
        for _ in range(h):
            digits.append(m % p)
            m //= p
        cand = tuple(reversed(digits)) + (1,)
        if _pp_is_irreducible(cand, p):
            return cand
    raise RuntimeError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# field descriptors and elements
# ---------------------------------------------------------------------------

class FieldDesc:
    """Description of GF(p^h) with a fixed monic irreducible modulus."""

    def __init__(self, p, h, modulus):
        self.p = p
        self.h = h
        self.modulus = tuple(c % p for c in modulus)
        self.order = p ** h
        # x^h = sum_i _red[i] x^i
        self._red = tuple((-c) % p for c in self.modulus[:h])
        self._embeddings = {}
        self._make_kernels()

    # -- raw kernels -------------------------------------------------------

    def _make_kernels(self):
        p, h, red = self.p, self.h, self._red
        if h == 1:
            def radd(a, b):
                return ((a[0] + b[0]) % p,)

            def rsub(a, b):
                return ((a[0] - b[0]) % p,)

            def rneg(a):
                return ((-a[0]) % p,)

            def rmul(a, b):
                return ((a[0] * b[0]) % p,)

            def rinv(a):
                if a[0] == 0:
                    raise DivisionByZeroError("inverse of zero")
                return (pow(a[0], p - 2, p),)
        else:
            def radd(a, b):
                return tuple((x + y) % p for x, y in zip(a, b))

            def rsub(a, b):
                return tuple((x - y) % p for x, y in zip(a, b))

            def rneg(a):
                return tuple((-x) % p for x in a)

            def rmul(a, b):
                conv = [0] * (2 * h - 1)
                for i, ai in enumerate(a):
                    if ai:
                        for j, bj in enumerate(b):
                            conv[i + j] += ai * bj
                for k in range(2 * h - 2, h - 1, -1):
                    c = conv[k] % p
                    if c:
                        for i, ri in enumerate(red):
                            if ri:
                                conv[k - h + i] += c * ri
                return tuple(c % p for c in conv[:h])

            mod_full = self.modulus

            def rinv(a):
                a = _pp_trim(a)
                if not a:
                    raise DivisionByZeroError("inverse of zero")
                # extended Euclid against the modulus
                r0, r1 = mod_full, a
                s0, s1 = (), (1,)
                while r1:
                    q, r = _pp_divmod(r0, r1, p)
                    r0, r1 = r1, r
                    s0, s1 = s1, _pp_sub(s0, _pp_mul(q, s1, p), p)
                lead_inv = pow(r0[-1], p - 2, p)
                s0 = tuple((c * lead_inv) % p for c in s0)
                return s0 + (0,) * (h - len(s0))

        self.radd, self.rsub, self.rneg, self.rmul, self.rinv = (
            radd, rsub, rneg, rmul, rinv)

    def rpow(self, a, e):
        if e < 0:
            return self.rpow(self.rinv(a), -e)
        result = self.rone
        while e:
            if e & 1:
                result = self.rmul(result, a)
            e >>= 1
            if e:
                a = self.rmul(a, a)
        return result

    # -- element constructors ----------------------------------------------

    @property
    def rzero(self):
        return (0,) * self.h

    @property
    def rone(self):
        return (1,) + (0,) * (self.h - 1)

    def zero(self):
        return FieldElem(self, self.rzero)

    def one(self):
        return FieldElem(self, self.rone)

    def gen(self):
        """Root of the modulus (the power-basis generator)."""
        if self.h == 1:
            return self.one()
        return FieldElem(self, (0, 1) + (0,) * (self.h - 2))

    def elem(self, coeffs):
        if isinstance(coeffs, FieldElem):
            if coeffs.field != self:
                raise FieldMismatchError("element from a different field")
            return coeffs
        if isinstance(coeffs, int):
            return self.from_int(coeffs)
        c = tuple(x % self.p for x in coeffs)
        if len(c) != self.h:
            c = (c + (0,) * self.h)[: self.h]
        return FieldElem(self, c)

    def from_int(self, k):
        return FieldElem(self, (k % self.p,) + (0,) * (self.h - 1))

    def elements(self):
        """All field elements in increasing lexicographic coefficient order."""
        p, h = self.p, self.h
        for n in range(self.order):
            digits = []
            m = n
            for _ in range(h):
                digits.append(m % p)
                m //= p
            yield FieldElem(self, tuple(reversed(digits)))

    def elem_from_index(self, n):
        """n-th element in the lexicographic enumeration (0 is zero)."""
        digits = []
        m = n % self.order
        for _ in range(self.h):
            digits.append(m % self.p)
            m //= self.p
        return FieldElem(self, tuple(reversed(digits)))

    def random_element(self, rng):
        return FieldElem(self, tuple(rng.randrange(self.p) for _ in range(self.h)))

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, FieldDesc)
                and self.p == other.p and self.h == other.h
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.h, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.h})" if self.h > 1 else f"GF({self.p})"

    def serialize(self):
        """Bit-exact wire form (p, h, modulus)."""
        return (self.p, self.h, list(self.modulus))


class FieldElem:
    """Immutable element of a FieldDesc, a canonical reduced coefficient tuple."""

    __slots__ = ("field", "c")

    def __init__(self, field, c):
        self.field = field
        self.c = c

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"{self.field} vs {other.field}")
            return other.c
        if isinstance(other, int):
            return ((other % self.field.p,) + (0,) * (self.field.h - 1))
        return None

    def __add__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return FieldElem(self.field, self.field.radd(self.c, oc))

    __radd__ = __add__

    def __sub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return FieldElem(self.field, self.field.rsub(self.c, oc))

    def __rsub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return FieldElem(self.field, self.field.rsub(oc, self.c))

    def __mul__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return FieldElem(self.field, self.field.rmul(self.c, oc))

    __rmul__ = __mul__

    def __truediv__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return FieldElem(self.field, self.field.rmul(self.c, self.field.rinv(oc)))

    def __rtruediv__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return FieldElem(self.field, self.field.rmul(oc, self.field.rinv(self.c)))

    def __neg__(self):
        return FieldElem(self.field, self.field.rneg(self.c))

    def __pow__(self, e):
        return FieldElem(self.field, self.field.rpow(self.c, e))

    def inverse(self):
        return FieldElem(self.field, self.field.rinv(self.c))

    def is_zero(self):
        return not any(self.c)

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.c == other.c
        if isinstance(other, int):
            return self.c == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.c, self.field.order))

    def key(self):
        """Sort key realizing the deterministic total order."""
        return self.c

    def __repr__(self):
        if self.field.h == 1:
            return str(self.c[0])
        terms = []
        for i, ci in enumerate(self.c):
            if ci == 0:
                continue
            if i == 0:
                terms.append(str(ci))
            else:
                base = "w" if i == 1 else f"w^{i}"
                terms.append(base if ci == 1 else f"{ci}*{base}")
        return "+".join(terms) if terms else "0"


_FIELD_CACHE = {}


def make_field(p, h=1, modulus=None):
    """Build (or fetch the cached) GF(p^h).

    Without an explicit modulus the lexicographically first monic
    irreducible of degree h is used, so repeated runs agree bit for bit.
    """
    if not is_prime(p):
        raise NonPrimeError(f"{p} is not prime")
    if h < 1:
        raise ValueError("extension degree must be >= 1")
    if modulus is None:
        key = (p, h, None)
        if key in _FIELD_CACHE:
            return _FIELD_CACHE[key]
        mod = _search_modulus(p, h)
    else:
        mod = tuple(c % p for c in modulus)
        if len(mod) != h + 1 or mod[-1] != 1:
            raise ReducibleModulusError(
                "modulus must be monic of degree h (low-to-high coefficients)")
        if h > 1 and not _pp_is_irreducible(mod, p):
            raise ReducibleModulusError(f"{list(mod)} factors over GF({p})")
        key = (p, h, mod)
        if key in _FIELD_CACHE:
            return _FIELD_CACHE[key]
    field = FieldDesc(p, h, mod)
    _FIELD_CACHE[key] = field
    _FIELD_CACHE[(p, h, field.modulus)] = field
    return field


def frobenius_pow(a, k, base_order=None):
    """a^(q^k) where q defaults to the prime p (the absolute Frobenius)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    q = a.field.p if base_order is None else base_order
    n = a.field.order - 1
    if a.is_zero() or n == 0:
        return a
    e = pow(q, k, n)
    return a ** e


def subfield_member(a, sub_order):
    """True when a lies in the subfield of the given order."""
    if a.is_zero():
        return True
    return a ** sub_order == a


def _embedding_image(sub, sup):
    """Image of sub's generator in sup: the lexicographically first root of
    sub's modulus in sup.  Cached per (sub, sup) pair."""
    key = (sub.p, sub.h, sub.modulus)
    cache = sup._embeddings
    if key in cache:
        return cache[key]
    if sub.p != sup.p or sup.h % sub.h != 0:
        raise NoEmbeddingError(f"no embedding {sub} -> {sup}")
    if sub.h == 1:
        img = [sup.rone]
    else:
        from .upoly import UniPoly, roots
        mod_poly = UniPoly.from_elems(
            sup, [sup.from_int(c) for c in sub.modulus])
        rs = roots(mod_poly)
        if not rs:
            raise NoEmbeddingError(
                f"modulus of {sub} has no root in {sup}")
        gen_img = min(rs, key=lambda e: e.key())
        img = [sup.rone]
        for _ in range(1, sub.h):
            img.append(sup.rmul(img[-1], gen_img.c))
    cache[key] = img
    return img


def embed(a, sub, sup):
    """Embed a in sub into sup along the cached deterministic embedding."""
    if a.field != sub:
        raise FieldMismatchError("element does not belong to the stated subfield")
    if sub == sup:
        return a
    img = _embedding_image(sub, sup)
    acc = sup.rzero
    for ai, gi in zip(a.c, img):
        if ai:
            acc = sup.radd(acc, tuple((ai * x) % sup.p for x in gi))
    return FieldElem(sup, acc)


def embed_raw(coeffs, sub, sup):
    img = _embedding_image(sub, sup)
    acc = sup.rzero
    for ai, gi in zip(coeffs, img):
        if ai:
            acc = sup.radd(acc, tuple((ai * x) % sup.p for x in gi))
    return acc


# ---------------------------------------------------------------------------
# binomial coefficients modulo p
# ---------------------------------------------------------------------------

def binom_mod_p(k, r, p):
    """C(k, r) mod p, digit-wise in base p (Lucas)."""
    if r < 0 or k < 0:
        return 0
    result = 1
    while r:
        kd, rd = k % p, r % p
        if rd > kd:
            return 0
        result = (result * math.comb(kd, rd)) % p
        k //= p
        r //= p
    return result


def binom_det_mod_p(rows, cols, p):
    """det(C(j_r, m_s)) mod p for integer sequences rows, cols."""
    if len(rows) != len(cols):
        raise ValueError("rows and cols must have equal length")
    n = len(rows)
    if n == 0:
        return 1 % p
    mat = [[math.comb(j, m) if m <= j else 0 for m in cols] for j in rows]
    return _int_det(mat) % p


def _int_det(mat):
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(mat)
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
