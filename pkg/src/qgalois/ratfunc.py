"""Rational functions over Q(zeta) in commuting variables.

Every :class:`RatFunc` is reduced (gcd(num, den) = 1) and its denominator is
monic with respect to the lex-leading term, so equal fractions have
identical representations.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import Cyclotomic, cyclo_root, is_root_of_unity, to_scalar
from .errors import DivisionByZero, ForbiddenSpecialization
from .poly import ONE, ZERO, MultiPoly, poly_gcd

__all__ = [
    "RatFunc",
    "field",
    "fvar",
    "q_int",
    "q_factorial",
    "q_binomial",
    "specialize",
    "is_q_variable",
]

_Q_VAR = re.compile(r"^q\d*$")


def is_q_variable(name: str) -> bool:
    return bool(_Q_VAR.match(name))


class RatFunc:
    """Reduced fraction num/den of :class:`MultiPoly` values."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = ONE if den is None else _as_poly(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
        elif den.is_constant():
            self.num, self.den = num.scale(1 / den.constant_value()), ONE
        else:
            g = poly_gcd(num, den)
            if not g.is_one():
                num, den = num.divexact(g), den.divexact(g)
            lc = den.lc()
            if lc != 1:
                inv = 1 / lc
                num, den = num.scale(inv), den.scale(inv)
            self.num, self.den = num, den
        self._hash = None

    @classmethod
    def _wrap(cls, num: MultiPoly, den: MultiPoly) -> "RatFunc":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_value()

    def variables(self) -> set[str]:
        return self.num.variables() | self.den.variables()

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den.is_one() and other.den.is_one():
            return RatFunc._wrap(self.num + other.num, ONE)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        if g.is_one():
            return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)
        a = self.den.divexact(g)
        b = other.den.divexact(g)
        return RatFunc(self.num * b + other.num * a, a * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._wrap(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            if not other:
                return _ZERO
            return RatFunc._wrap(self.num.scale(other), self.den)
        if not isinstance(other, RatFunc):
            if isinstance(other, MultiPoly):
                other = RatFunc(other)
            else:
                return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return _ZERO
        if self.den.is_one() and other.den.is_one():
            return RatFunc._wrap(self.num * other.num, ONE)
        a, b = self.num, self.den
        c, d = other.num, other.den
        g1 = poly_gcd(a, d)
        if not g1.is_one():
            a, d = a.divexact(g1), d.divexact(g1)
        g2 = poly_gcd(c, b)
        if not g2.is_one():
            c, b = c.divexact(g2), b.divexact(g2)
        num, den = a * c, b * d
        lc = den.lc()
        if lc != 1:
            inv = 1 / lc
            num, den = num.scale(inv), den.scale(inv)
        return RatFunc._wrap(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        num, den = self.den, self.num
        lc = den.lc()
        if lc != 1:
            inv = 1 / lc
            num, den = num.scale(inv), den.scale(inv)
        if den.is_constant():
            return RatFunc._wrap(num.scale(1 / den.constant_value()), ONE)
        return RatFunc._wrap(num, den)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return _ONE
        return RatFunc._wrap(self.num ** k, self.den ** k)

    # -- substitution -----------------------------------------------------
    def subs(self, mapping: dict) -> "RatFunc":
        """Simultaneous substitution of variables by field elements."""
        if not mapping:
            return self
        mapping = {v: _coerce(f) for v, f in mapping.items()}
        num = _subs_poly(self.num, mapping)
        den = _subs_poly(self.den, mapping)
        if den.is_zero():
            raise DivisionByZero("substitution sends the denominator to zero")
        return num / den

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Cyclotomic, MultiPoly)):
            return self.den.is_one() and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- text -------------------------------------------------------------
    def format(self, compact: bool = False) -> str:
        from .text import format_ratfunc

        return format_ratfunc(self, compact)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RatFunc({self.format()!r})"

    def to_json(self) -> dict:
        from .text import poly_to_json

        return {"num": poly_to_json(self.num), "den": poly_to_json(self.den)}

    @classmethod
    def from_json(cls, data: dict) -> "RatFunc":
        from .text import poly_from_json

        return cls(poly_from_json(data["num"]), poly_from_json(data["den"]))


def _as_poly(x) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x
    return MultiPoly.const(x)


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, MultiPoly):
        return RatFunc._wrap(x, ONE)
    if isinstance(x, (int, Fraction, Cyclotomic)):
        return RatFunc._wrap(MultiPoly.const(x), ONE)
    return None


def _subs_poly(p: MultiPoly, mapping: dict) -> RatFunc:
    active = {v: f for v, f in mapping.items() if v in p.variables()}
    if not active:
        return RatFunc._wrap(p, ONE)
    top = {v: p.degree(v) for v in active}
    num_pows: dict = {}
    den_pows: dict = {}

    def npow(v, e):
        key = (v, e)
        if key not in num_pows:
            num_pows[key] = active[v].num ** e
        return num_pows[key]

    def dpow(v, e):
        key = (v, e)
        if key not in den_pows:
            den_pows[key] = active[v].den ** e
        return den_pows[key]

    acc = ZERO
    for mono, c in p.terms.items():
        rest = []
        term = MultiPoly.const(c)
        exps = dict(mono)
        for v, e in mono:
            if v not in active:
                rest.append((v, e))
        for v in active:
            e = exps.get(v, 0)
            if e:
                term = term * npow(v, e)
            if top[v] - e:
                term = term * dpow(v, top[v] - e)
        if rest:
            term = term.mul_mono(tuple(rest))
        acc = acc + term
    den = ONE
    for v in active:
        if top[v]:
            den = den * dpow(v, top[v])
    return RatFunc(acc, den)


_ZERO = RatFunc._wrap(ZERO, ONE)
_ONE = RatFunc._wrap(ONE, ONE)


def field(x) -> RatFunc:
    """Coerce an int, Fraction, cyclotomic, polynomial or RatFunc."""
    out = _coerce(x)
    if out is None:
        raise TypeError(f"cannot coerce {x!r} to a field element")
    return out


@lru_cache(maxsize=None)
def fvar(name: str) -> RatFunc:
    if re.match(r"^z\d+$", name):
        return field(cyclo_root(int(name[1:])))
    return RatFunc._wrap(MultiPoly.var(name), ONE)


def q_int(a: int, q: RatFunc | None = None) -> RatFunc:
    """The q-integer (q^a - 1)/(q - 1)."""
    q = fvar("q") if q is None else q
    return (q ** a - 1) / (q - 1)


def q_factorial(a: int, q: RatFunc | None = None) -> RatFunc:
    out = _ONE
    for k in range(1, a + 1):
        out = out * q_int(k, q)
    return out


def q_binomial(a: int, k: int, q: RatFunc | None = None) -> RatFunc:
    if k < 0 or k > a:
        return _ZERO
    return q_factorial(a, q) / (q_factorial(k, q) * q_factorial(a - k, q))


def specialize(f, bindings) -> RatFunc:
    """Substitute values for variables, refusing degenerate quantum parameters."""
    f = field(f)
    mapping = {}
    for v, val in dict(bindings).items():
        val = field(val)
        if is_q_variable(v) and val.is_constant():
            c = val.constant_value()
            if not c or is_root_of_unity(to_scalar(c)):
                raise ForbiddenSpecialization(f"{v} may not be zero or a root of unity")
        mapping[v] = val
    return f.subs(mapping)
