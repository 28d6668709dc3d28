"""Sparse multivariate polynomials with cyclotomic coefficients.

Monomials are tuples of ``(variable, exponent)`` pairs sorted by
:func:`var_key`, so polynomials in different variable sets mix freely.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import Cyclotomic, to_scalar

__all__ = ["MultiPoly", "poly_gcd", "var_key", "ONE", "ZERO"]

Mono = tuple  # tuple[tuple[str, int], ...]

_VAR_RE = re.compile(r"^([A-Za-z_]+)(\d*)$")


@lru_cache(maxsize=None)
def var_key(name: str) -> tuple:
    """Natural sort key: x2 before x10."""
    m = _VAR_RE.match(name)
    if m is None:
        return (0, name, -1)
    alpha, digits = m.groups()
    return (0, alpha, int(digits) if digits else -1)


_SENTINEL = ((1,), 0)


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif var_key(va) < var_key(vb):
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_div(a: Mono, b: Mono):
    """a / b if b divides a, else None."""
    da = dict(a)
    for v, e in b:
        r = da.get(v, 0) - e
        if r < 0:
            return None
        if r:
            da[v] = r
        else:
            del da[v]
    return tuple(sorted(da.items(), key=lambda t: var_key(t[0])))


def mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


@lru_cache(maxsize=65536)
def lex_key(m: Mono) -> tuple:
    """Ascending key; the lex-largest monomial has the smallest key."""
    return tuple((var_key(v), -e) for v, e in m) + (_SENTINEL,)


def grlex_key(m: Mono) -> tuple:
    """Ascending key for graded-lex *descending* display order."""
    return (-mono_degree(m), lex_key(m))


class MultiPoly:
    """Polynomial over Q(zeta) in named commuting indeterminates."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict | None = None):
        if terms:
            self.terms = {m: to_scalar(c) for m, c in terms.items() if c}
        else:
            self.terms = {}
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "MultiPoly":
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "MultiPoly":
        c = to_scalar(c)
        return cls._wrap({(): c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MultiPoly":
        if power < 0:
            raise ValueError("negative exponent in a polynomial")
        return cls._wrap({((name, power),) if power else (): Fraction(1)})

    @classmethod
    def monomial(cls, mono: Mono, c=1) -> "MultiPoly":
        c = to_scalar(c)
        return cls._wrap({mono: c} if c else {})

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(()) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((), Fraction(0))

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def degree(self, v: str | None = None) -> int:
        if not self.terms:
            return -1
        if v is None:
            return max(mono_degree(m) for m in self.terms)
        return max(dict(m).get(v, 0) for m in self.terms)

    def leading(self):
        m = min(self.terms, key=lex_key)
        return m, self.terms[m]

    def lc(self):
        return self.leading()[1]

    def monic(self) -> "MultiPoly":
        if not self.terms:
            return self
        c = self.lc()
        if c == 1:
            return self
        return self.scale(1 / c if isinstance(c, Fraction) else c.inverse())

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.const(other)
            except TypeError:
                return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return MultiPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.const(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = to_scalar(c)
        if not c:
            return MultiPoly._wrap({})
        if c == 1:
            return self
        return MultiPoly._wrap({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, Fraction, Cyclotomic)):
                return self.scale(other)
            return NotImplemented
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: dict = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = mono_mul(ma, mb)
                s = out.get(m)
                out[m] = ca * cb if s is None else s + ca * cb
        return MultiPoly._wrap({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            return MultiPoly._wrap({tuple((v, e * k) for v, e in m) if k else (): c ** k})
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_mono(self, mono: Mono, c=Fraction(1)) -> "MultiPoly":
        return MultiPoly._wrap({mono_mul(m, mono): v * c for m, v in self.terms.items()})

    def divexact(self, other: "MultiPoly") -> "MultiPoly":
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        if not other.terms:
            raise ZeroDivisionError("polynomial division by zero")
        if other.is_constant():
            return self.scale(1 / other.constant_value())
        lm, lc = other.leading()
        inv = 1 / lc
        quot: dict = {}
        rem = self
        while rem.terms:
            rm, rc = rem.leading()
            qm = mono_div(rm, lm)
            if qm is None:
                raise ArithmeticError("inexact polynomial division")
            qc = rc * inv
            quot[qm] = qc
            rem = rem - other.mul_mono(qm, qc)
        return MultiPoly._wrap(quot)

    # -- views ------------------------------------------------------------
    def coeffs_in(self, v: str) -> dict[int, "MultiPoly"]:
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = 0
            rest = []
            for name, k in m:
                if name == v:
                    e = k
                else:
                    rest.append((name, k))
            out.setdefault(e, {})[tuple(rest)] = c
        return {e: MultiPoly._wrap(t) for e, t in out.items()}

    def coefficients(self) -> list:
        return list(self.terms.values())

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- text -------------------------------------------------------------
    def format(self, compact: bool = False) -> str:
        from .text import format_poly

        return format_poly(self, compact)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"MultiPoly({self.format()!r})"


ZERO = MultiPoly._wrap({})
ONE = MultiPoly._wrap({(): Fraction(1)})


# -- gcd ----------------------------------------------------------------------


def _mono_gcd_with(mono: Mono, f: MultiPoly) -> MultiPoly:
    cur = dict(mono)
    for m in f.terms:
        dm = dict(m)
        for v in list(cur):
            e = min(cur[v], dm.get(v, 0))
            if e:
                cur[v] = e
            else:
                del cur[v]
        if not cur:
            return ONE
    return MultiPoly.monomial(tuple(sorted(cur.items(), key=lambda t: var_key(t[0]))))


def _content(f: MultiPoly, v: str) -> MultiPoly:
    g = ZERO
    for c in sorted(f.coeffs_in(v).values(), key=len_terms):
        g = poly_gcd(g, c)
        if g.is_one():
            break
    return g


def _primitive_scalar(p: MultiPoly) -> MultiPoly:
    """Scale away the numeric content so PRS coefficients stay small."""
    cs = list(p.terms.values())
    if all(isinstance(c, Fraction) for c in cs):
        den = 1
        for c in cs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = 0
        for c in cs:
            num = math.gcd(num, (c * den).numerator)
        return p.scale(Fraction(den, num))
    return p.scale(1 / p.lc())


_POINTS = (2, 3, 5, 7, 11, 13, -2, -3)


def _image(f: MultiPoly, v: str, point: dict) -> list:
    """Coefficient list in v after substituting integers for the other variables."""
    out = [0] * (f.degree(v) + 1)
    for mono, c in f.terms.items():
        e = 0
        for u, k in mono:
            if u == v:
                e = k
            else:
                c = c * point[u] ** k
        out[e] = out[e] + c
    return out


def _uni_gcd_degree(a: list, b: list) -> int:
    """Degree of gcd of two univariate coefficient lists over the field."""
    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(list(a)), trim(list(b))
    while b:
        while len(a) >= len(b):
            f = a[-1] / b[-1]
            s = len(a) - len(b)
            for i, c in enumerate(b):
                a[s + i] = a[s + i] - f * c
            trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def _gcd_free_of(f: MultiPoly, g: MultiPoly, v: str) -> bool:
    """True when gcd(f, g) provably has degree 0 in v.

    The gcd's leading coefficient in v divides that of f, so an evaluation
    keeping lc_v(f) nonzero cannot lower the gcd's degree in v.
    """
    others = sorted((f.variables() | g.variables()) - {v}, key=var_key)
    for shift in range(3):
        point = {u: Fraction(_POINTS[(i + shift) % len(_POINTS)]) for i, u in enumerate(others)}
        fa, ga = _image(f, v, point), _image(g, v, point)
        if fa[-1] == 0 or len(fa) < 2 or not any(ga[1:]):
            continue
        if _uni_gcd_degree(fa, ga) == 0:
            return True
    return False


def len_terms(p: MultiPoly) -> int:
    return len(p.terms)


def _prem(f: MultiPoly, g: MultiPoly, v: str) -> MultiPoly:
    dg = g.degree(v)
    lcg = g.coeffs_in(v)[dg]
    r = f
    while r.terms:
        dr = r.degree(v)
        if dr < dg:
            break
        lcr = r.coeffs_in(v)[dr]
        shift = ((v, dr - dg),) if dr > dg else ()
        r = r * lcg - (g * lcr).mul_mono(shift)
    return r


def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Monic gcd over the coefficient field (content / primitive PRS)."""
    if not f.terms:
        return g.monic()
    if not g.terms:
        return f.monic()
    if f.is_constant() or g.is_constant():
        return ONE
    if len(f.terms) == 1:
        return _mono_gcd_with(next(iter(f.terms)), g)
    if len(g.terms) == 1:
        return _mono_gcd_with(next(iter(g.terms)), f)
    if f == g:
        return f.monic()
    fv, gv = f.variables(), g.variables()
    only_f, only_g = fv - gv, gv - fv
    if only_f:
        return poly_gcd(_content(f, min(only_f, key=var_key)), g)
    if only_g:
        return poly_gcd(f, _content(g, min(only_g, key=var_key)))
    for u in sorted(fv, key=var_key):
        if _gcd_free_of(f, g, u):
            return poly_gcd(_content(f, u), _content(g, u))
    # the variable of least degree keeps the remainder sequence short
    v = min(fv, key=lambda u: (max(f.degree(u), g.degree(u)), var_key(u)))
    cf, cg = _content(f, v), _content(g, v)
    c = poly_gcd(cf, cg)
    a, b = _primitive_scalar(f.divexact(cf)), _primitive_scalar(g.divexact(cg))
    if a.degree(v) < b.degree(v):
        a, b = b, a
    while b.terms:
        if b.degree(v) == 0:
            a = ONE
            break
        r = _prem(a, b, v)
        a, b = b, (_primitive_scalar(r.divexact(_content(r, v))) if r.terms else ZERO)
    if a.terms and not a.is_constant():
        a = a.divexact(_content(a, v))
    return (c * a).monic()
