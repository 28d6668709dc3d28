"""Quantum affine spaces, quantum tori and quantum Weyl algebras.

Elements are kept in the PBW normal form x^a y^b (all x's left of all y's,
indices ascending) with relations

* affine / torus: y_i x_i = q_i x_i y_i
* Weyl:           y_i x_i = q_i x_i y_i + 1

and generators with different indices commuting.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import KindMismatch, NotAMonomial, ParseError
from .ratfunc import RatFunc, field, fvar, q_binomial, q_factorial, q_int
from .text import format_coeff_product, parse_expr

__all__ = [
    "QAlgebraKind",
    "QAlgebraElement",
    "AFFINE",
    "TORUS",
    "WEYL",
    "qa_mul",
    "qa_invert_monomial",
    "qa_weyl_power_identity",
    "weyl_coefficient",
]

AFFINE = "affine"
TORUS = "torus"
WEYL = "weyl"
FAMILIES = (AFFINE, TORUS, WEYL)


@lru_cache(maxsize=4096)
def _qpow(param: RatFunc, k: int) -> RatFunc:
    return param ** k


@lru_cache(maxsize=None)
def weyl_coefficient(b: int, c: int, k: int, param: RatFunc) -> RatFunc:
    """Coefficient of x^(c-k) y^(b-k) in y^b x^c for y x = q x y + 1."""
    return (
        _qpow(param, (b - k) * (c - k))
        * q_binomial(b, k, param)
        * q_binomial(c, k, param)
        * q_factorial(k, param)
    )


@dataclass(frozen=True)
class QAlgebraKind:
    """One of O_q(k^2n), O_q(k*^2n), A_n^q, acting as the parent of its elements."""

    family: str
    n: int
    params: tuple

    @classmethod
    def create(cls, family: str, n: int, params=None, multi: bool = False) -> "QAlgebraKind":
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        if n < 1:
            raise ValueError("rank must be positive")
        if params is None:
            params = [fvar(f"q{i + 1}") if multi else fvar("q") for i in range(n)]
        params = tuple(field(p) for p in params)
        if len(params) != n:
            raise ValueError("need one parameter per index")
        for p in params:
            if p.is_zero() or p.is_constant():
                raise ValueError("quantum parameters must be nonzero and symbolic")
        return cls(family, n, params)

    @classmethod
    def from_spec(cls, spec: str) -> "QAlgebraKind":
        """Parse ``affine:2``, ``torus:1``, ``weyl:3`` (suffix ``:multi`` for q1..qn)."""
        parts = spec.split(":")
        try:
            family, n = parts[0], int(parts[1])
        except (IndexError, ValueError) as exc:
            raise ParseError(f"bad algebra spec {spec!r}") from exc
        multi = len(parts) > 2 and parts[2] == "multi"
        if family not in FAMILIES:
            raise ParseError(f"bad algebra spec {spec!r}")
        return cls.create(family, n, multi=multi)

    @property
    def spec(self) -> str:
        return f"{self.family}:{self.n}"

    @property
    def laurent(self) -> bool:
        return self.family == TORUS

    # -- generators -------------------------------------------------------
    def x_name(self, i: int) -> str:
        return "x" if self.n == 1 else f"x{i + 1}"

    def y_name(self, i: int) -> str:
        return "y" if self.n == 1 else f"y{i + 1}"

    def generator_names(self) -> list[str]:
        return [self.x_name(i) for i in range(self.n)] + [self.y_name(i) for i in range(self.n)]

    def _zero_vec(self):
        return (0,) * self.n

    def monomial(self, a, b, coeff=1) -> "QAlgebraElement":
        a, b = tuple(a), tuple(b)
        if len(a) != self.n or len(b) != self.n:
            raise ValueError("exponent vectors have the wrong length")
        if not self.laurent and (min(a) < 0 or min(b) < 0):
            raise ValueError("negative exponents only exist in the quantum torus")
        c = field(coeff)
        return QAlgebraElement(self, {(a, b): c} if c else {})

    def one(self) -> "QAlgebraElement":
        z = self._zero_vec()
        return self.monomial(z, z)

    def zero(self) -> "QAlgebraElement":
        return QAlgebraElement(self, {})

    def scalar(self, c) -> "QAlgebraElement":
        z = self._zero_vec()
        return self.monomial(z, z, c)

    def x(self, i: int, e: int = 1) -> "QAlgebraElement":
        a = [0] * self.n
        a[i] = e
        return self.monomial(a, self._zero_vec())

    def y(self, i: int, e: int = 1) -> "QAlgebraElement":
        b = [0] * self.n
        b[i] = e
        return self.monomial(self._zero_vec(), b)

    def gen(self, name: str) -> "QAlgebraElement":
        for i in range(self.n):
            if name in (self.x_name(i), f"x{i + 1}"):
                return self.x(i)
            if name in (self.y_name(i), f"y{i + 1}"):
                return self.y(i)
            if self.laurent and name in (self.x_name(i) + "inv", f"x{i + 1}inv"):
                return self.x(i, -1)
            if self.laurent and name in (self.y_name(i) + "inv", f"y{i + 1}inv"):
                return self.y(i, -1)
        raise KeyError(name)

    def parse(self, text: str) -> "QAlgebraElement":
        def resolve(name):
            try:
                return self.gen(name)
            except KeyError:
                return None

        out = parse_expr(text, resolve)
        if isinstance(out, RatFunc):
            out = self.scalar(out)
        if not isinstance(out, QAlgebraElement) or out.kind != self:
            raise ParseError("expression does not denote an element of this algebra")
        for c in out.terms.values():
            stray = c.variables() - {v for p in self.params for v in p.variables()}
            stray = {v for v in stray if not v.startswith("q")}
            if stray:
                raise ParseError(f"unknown generator(s) {sorted(stray)} for {self.spec}")
        return out

    def from_json(self, data: dict) -> "QAlgebraElement":
        from .text import parse_field

        terms = {}
        for t in data["terms"]:
            terms[(tuple(t["a"]), tuple(t["b"]))] = parse_field(t["coeff"])
        return QAlgebraElement(self, terms)

    def monomials_of_degree(self, d: int):
        """All normal-form monomials of total degree d (non-Laurent families)."""
        for comp in _compositions(d, 2 * self.n):
            yield comp[: self.n], comp[self.n:]

    def monomials_in_box(self, radius: int):
        rng = range(-radius, radius + 1)
        for exps in itertools.product(rng, repeat=2 * self.n):
            yield exps[: self.n], exps[self.n:]

    def presentation_relations(self) -> list[str]:
        """Defining relations as noncommutative polynomials in generator names."""
        rels = []
        names = []
        for i in range(self.n):
            x, y = self.x_name(i), self.y_name(i)
            q = self.params[i].format(True)
            rel = f"{y}*{x} - ({q})*{x}*{y}"
            if self.family == WEYL:
                rel += " - 1"
            rels.append(rel)
            names.append([x, y])
            if self.laurent:
                for g in (x, y):
                    rels.append(f"{g}*{g}inv - 1")
                    rels.append(f"{g}inv*{g} - 1")
                rels.append(f"{y}inv*{x} - ({q})^-1*{x}*{y}inv")
                rels.append(f"{y}*{x}inv - ({q})^-1*{x}inv*{y}")
                rels.append(f"{y}inv*{x}inv - ({q})*{x}inv*{y}inv")
                names[-1] += [f"{x}inv", f"{y}inv"]
        for i, j in itertools.combinations(range(self.n), 2):
            for u in names[i]:
                for v in names[j]:
                    rels.append(f"{u}*{v} - {v}*{u}")
        return rels

    def presentation_generators(self) -> list[str]:
        gens = self.generator_names()
        if self.laurent:
            gens += [g + "inv" for g in gens]
        return gens


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class QAlgebraElement:
    """Normal-form element sum coeff * x^a y^b."""

    __slots__ = ("kind", "terms", "_hash")

    def __init__(self, kind: QAlgebraKind, terms: dict):
        self.kind = kind
        self.terms = {k: v for k, v in terms.items() if v}
        self._hash = None

    # -- structure --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(a) + sum(b) for a, b in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_desc(t[0]))

    def _check(self, other: "QAlgebraElement"):
        if self.kind != other.kind:
            raise KindMismatch(f"{self.kind.spec} vs {other.kind.spec}")

    # -- arithmetic -------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, QAlgebraElement):
            self._check(other)
            return other
        try:
            return self.kind.scalar(other)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return QAlgebraElement(self.kind, out)

    __radd__ = __add__

    def __neg__(self):
        return QAlgebraElement(self.kind, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "QAlgebraElement":
        c = field(c)
        return QAlgebraElement(self.kind, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, QAlgebraElement):
            return qa_mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, k: int) -> "QAlgebraElement":
        if k < 0:
            return qa_invert_monomial(self) ** (-k)
        result = self.kind.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, QAlgebraElement):
            return self.kind == other.kind and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.kind, frozenset(self.terms.items())))
        return self._hash

    # -- text -------------------------------------------------------------
    def word(self, a, b) -> str:
        parts = []
        for i, e in enumerate(a):
            if e:
                name = self.kind.x_name(i)
                parts.append(name if e == 1 else f"{name}^{e}")
        for i, e in enumerate(b):
            if e:
                name = self.kind.y_name(i)
                parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def format(self, compact: bool = False) -> str:
        return format_coeff_product(((c, self.word(a, b)) for (a, b), c in self.sorted_terms()), compact)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"<{self.kind.spec}: {self.format()}>"

    def to_json(self) -> dict:
        return {
            "kind": self.kind.family,
            "n": self.kind.n,
            "params": [p.format(True) for p in self.kind.params],
            "terms": [
                {"a": list(a), "b": list(b), "coeff": c.format(True)} for (a, b), c in self.sorted_terms()
            ],
        }

    def to_word(self):
        """Terms as (coeff, [(generator, power), ...]) in normal order."""
        out = []
        for (a, b), c in self.sorted_terms():
            letters = []
            for i, e in enumerate(a):
                if e:
                    name = self.kind.x_name(i)
                    letters.append((name, e) if e > 0 else (name + "inv", -e))
            for i, e in enumerate(b):
                if e:
                    name = self.kind.y_name(i)
                    letters.append((name, e) if e > 0 else (name + "inv", -e))
            out.append((c, letters))
        return out


def _grlex_desc(key):
    a, b = key
    return (-(sum(a) + sum(b)), tuple(-e for e in a + b))


def qa_mul(u: QAlgebraElement, v: QAlgebraElement) -> QAlgebraElement:
    """Normal-form product."""
    u._check(v)
    kind = u.kind
    out: dict = {}
    params = kind.params
    n = kind.n
    if kind.family == WEYL:
        for (a, b), cu in u.terms.items():
            for (c, d), cv in v.terms.items():
                base = cu * cv
                ranges = [range(min(b[i], c[i]) + 1) for i in range(n)]
                for ks in itertools.product(*ranges):
                    coef = base
                    for i, k in enumerate(ks):
                        w = weyl_coefficient(b[i], c[i], k, params[i])
                        if not w.is_one():
                            coef = coef * w
                    key = (
                        tuple(a[i] + c[i] - ks[i] for i in range(n)),
                        tuple(b[i] - ks[i] + d[i] for i in range(n)),
                    )
                    out[key] = out[key] + coef if key in out else coef
    else:
        for (a, b), cu in u.terms.items():
            for (c, d), cv in v.terms.items():
                coef = cu * cv
                for i in range(n):
                    e = b[i] * c[i]
                    if e:
                        coef = coef * _qpow(params[i], e)
                key = (
                    tuple(a[i] + c[i] for i in range(n)),
                    tuple(b[i] + d[i] for i in range(n)),
                )
                out[key] = out[key] + coef if key in out else coef
    return QAlgebraElement(kind, out)


def qa_invert_monomial(u: QAlgebraElement) -> QAlgebraElement:
    """Two-sided inverse of a monomial of the quantum torus."""
    if u.kind.family != TORUS:
        raise KindMismatch("only quantum torus monomials are invertible")
    if len(u.terms) != 1:
        raise NotAMonomial("inverse requires a single monomial")
    ((a, b), c), = u.terms.items()
    coef = c.inverse()
    for i in range(u.kind.n):
        e = a[i] * b[i]
        if e:
            coef = coef * _qpow(u.kind.params[i], e)
    return u.kind.monomial(tuple(-e for e in a), tuple(-e for e in b), coef)


def qa_weyl_power_identity(a: int, kind: QAlgebraKind | None = None):
    """Both sides of y x^a = q^a x^a y + [a]_q x^(a-1), computed independently."""
    kind = kind or QAlgebraKind.create(WEYL, 1)
    if kind.family != WEYL:
        raise KindMismatch("identity lives in the quantum Weyl algebra")
    x, y = kind.x(0), kind.y(0)
    left = y * (x ** a)
    if a == 0:
        return left, y
    q = kind.params[0]
    right = kind.monomial((a,) + (0,) * (kind.n - 1), (1,) + (0,) * (kind.n - 1), q ** a)
    right = right + kind.monomial((a - 1,) + (0,) * (kind.n - 1), (0,) * kind.n, q_int(a, q))
    return left, right
