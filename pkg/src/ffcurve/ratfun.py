"""Rational functions in x over a FieldDesc: reduced num/den pairs.

The denominator is always monic and coprime to the numerator, so equality
is structural and zero tests are reliable.
"""

from __future__ import annotations

from .errors import DivisionByZeroError
from .field import FieldElem, binom_mod_p
from .upoly import UniPoly


class PoleError(ValueError):
    """Evaluation at a pole of the rational function."""


class RatFun:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduced=False):
        if den is None:
            den = UniPoly.one(num.field)
        if den.is_zero():
            raise DivisionByZeroError("rational function with zero denominator")
        if not reduced:
            if num.is_zero():
                den = UniPoly.one(num.field)
            else:
                g = num.gcd(den)
                if g.degree() > 0:
                    num, den = num // g, den // g
                lead = den.lead()
                if not lead == num.field.one():
                    inv = lead.inverse()
                    num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(UniPoly.zero(field), UniPoly.one(field), reduced=True)

    @classmethod
    def one(cls, field):
        return cls(UniPoly.one(field), UniPoly.one(field), reduced=True)

    @classmethod
    def x(cls, field):
        return cls(UniPoly.x(field), UniPoly.one(field), reduced=True)

    @classmethod
    def const(cls, elem):
        return cls(UniPoly.const(elem), UniPoly.one(elem.field), reduced=True)

    @classmethod
    def from_poly(cls, poly):
        return cls(poly, UniPoly.one(poly.field), reduced=True)

    # -- basics -------------------------------------------------------------

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_poly(self):
        return self.den.degree() == 0

    def __eq__(self, other):
        other = _coerce(other, self.field)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.is_poly():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other, self.field)
        if other is None:
            return NotImplemented
        return RatFun(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self.field)
        if other is None:
            return NotImplemented
        return RatFun(self.num * other.den - other.num * self.den,
                      self.den * other.den)

    def __rsub__(self, other):
        other = _coerce(other, self.field)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return RatFun(-self.num, self.den, reduced=True)

    def __mul__(self, other):
        other = _coerce(other, self.field)
        if other is None:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other, self.field)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZeroError("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce(other, self.field)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, e):
        if e < 0:
            if self.is_zero():
                raise DivisionByZeroError("negative power of zero")
            return RatFun(self.den ** (-e), self.num ** (-e))
        return RatFun(self.num ** e, self.den ** e, reduced=True)

    # -- evaluation and calculus -------------------------------------------------

    def eval(self, a):
        d = self.den.eval(a)
        if d.is_zero():
            raise PoleError("evaluation at a pole")
        return self.num.eval(a) / d

    def hasse_list(self, r):
        """[D^(0) f, ..., D^(r) f] via the quotient form of the Leibniz rule.

        From num = f * den:  D^(s) num = sum_{i<=s} D^(i) f * D^(s-i) den,
        so D^(s) f is solved from the lower-order values.
        """
        field = self.field
        nders = [self.num.hasse_shift(s) for s in range(r + 1)]
        dders = [self.den.hasse_shift(s) for s in range(r + 1)]
        out = [self]
        for s in range(1, r + 1):
            acc = RatFun.from_poly(nders[s])
            for i in range(s):
                acc = acc - out[i] * RatFun.from_poly(dders[s - i])
            out.append(acc / RatFun.from_poly(self.den))
        return out

    def map_field(self, new_field, embed_fn):
        return RatFun(self.num.map_field(new_field, embed_fn),
                      self.den.map_field(new_field, embed_fn), reduced=True)

    def degree_bound(self):
        return max(self.num.degree(), 0) + max(self.den.degree(), 0)


def _coerce(val, field):
    if isinstance(val, RatFun):
        return val
    if isinstance(val, UniPoly):
        return RatFun.from_poly(val)
    if isinstance(val, FieldElem):
        return RatFun.const(val)
    if isinstance(val, int):
        return RatFun.const(field.from_int(val))
    return None
