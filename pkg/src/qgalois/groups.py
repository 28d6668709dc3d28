"""Finite groups acting on the quantum algebras: G(m,p,n), its subgroups, and
diagonal groups of the quantum plane.

Elements of G(m,p,n) are pairs (g, pi) with g in (Z/m)^n stored additively
(``diag``) and pi a permutation stored as the tuple (pi(0), ..., pi(n-1)).
The action on generators is

    h(x_i) = zeta^{g_i} x_{pi(i)},   h(y_i) = y_{pi(i)}             (affine, torus)
    h(x_i) = zeta^{g_i} x_{pi(i)},   h(y_i) = zeta^{-g_i} y_{pi(i)} (Weyl)

and the product is the one making this a left action:
(g, pi)(g', pi') = (g'', pi pi') with g''_i = g'_i + g_{pi'(i)}.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import root_power
from .errors import GroupTooLarge, ParseError, UndefinedAction
from .gwa import GwaElement
from .linalg import rref
from .quantum import QAlgebraElement, QAlgebraKind, TORUS, WEYL
from .ratfunc import RatFunc, field, fvar
from .skew import SkewElement

__all__ = [
    "DEFAULT_MAX_ORDER",
    "ReflGroupElement",
    "DiagonalElement",
    "FiniteGroup",
    "refl_group",
    "gm_tensor",
    "symmetric_group",
    "cyclic_on_a1",
    "diagonal_group",
    "group_from_spec",
    "group_order",
    "act",
    "reynolds",
    "invariant_basis",
    "span_rows",
    "orbit_invariant_count",
    "affine_cyclic_count",
]

DEFAULT_MAX_ORDER = 10 ** 5


def _zeta(m: int, k: int) -> RatFunc:
    return field(root_power(m, k % m))


@dataclass(frozen=True)
class ReflGroupElement:
    m: int
    p: int
    n: int
    diag: tuple
    perm: tuple

    def __post_init__(self):
        if self.m % self.p:
            raise ValueError("p must divide m")
        if sorted(self.perm) != list(range(self.n)) or len(self.diag) != self.n:
            raise ValueError("malformed group element")
        if ((self.m // self.p) * sum(self.diag)) % self.m:
            raise ValueError("diagonal part is not in A(m,p,n)")

    @classmethod
    def make(cls, m, p, n, diag=None, perm=None) -> "ReflGroupElement":
        diag = tuple(int(d) % m for d in (diag if diag is not None else [0] * n))
        perm = tuple(perm) if perm is not None else tuple(range(n))
        return cls(m, p, n, diag, perm)

    def identity(self) -> "ReflGroupElement":
        return ReflGroupElement.make(self.m, self.p, self.n)

    def __mul__(self, other: "ReflGroupElement") -> "ReflGroupElement":
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("elements of different groups")
        diag = tuple((other.diag[i] + self.diag[other.perm[i]]) % self.m for i in range(self.n))
        perm = tuple(self.perm[other.perm[i]] for i in range(self.n))
        return ReflGroupElement(self.m, self.p, self.n, diag, perm)

    def inverse(self) -> "ReflGroupElement":
        inv = [0] * self.n
        for i, j in enumerate(self.perm):
            inv[j] = i
        diag = tuple((-self.diag[inv[i]]) % self.m for i in range(self.n))
        return ReflGroupElement(self.m, self.p, self.n, diag, tuple(inv))

    def is_identity(self) -> bool:
        return not any(self.diag) and self.perm == tuple(range(self.n))

    def to_json(self) -> dict:
        return {"m": self.m, "p": self.p, "n": self.n, "diag": list(self.diag), "perm": [i + 1 for i in self.perm]}

    def __str__(self):
        return f"({list(self.diag)}, {[i + 1 for i in self.perm]})"

    # action data: scalar exponents on x and y, and the permutation
    def x_exps(self, family: str):
        return self.diag

    def y_exps(self, family: str):
        if family == WEYL:
            return tuple(-d for d in self.diag)
        return (0,) * self.n


@dataclass(frozen=True)
class DiagonalElement:
    """x_i -> zeta_m^{a_i} x_i, y_i -> zeta_m^{b_i} y_i (a torus element)."""

    m: int
    a: tuple
    b: tuple

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def perm(self) -> tuple:
        return tuple(range(self.n))

    @classmethod
    def make(cls, m, a, b) -> "DiagonalElement":
        return cls(m, tuple(int(v) % m for v in a), tuple(int(v) % m for v in b))

    def identity(self) -> "DiagonalElement":
        return DiagonalElement.make(self.m, [0] * self.n, [0] * self.n)

    def __mul__(self, other: "DiagonalElement") -> "DiagonalElement":
        return DiagonalElement.make(self.m, [u + v for u, v in zip(self.a, other.a)], [u + v for u, v in zip(self.b, other.b)])

    def inverse(self) -> "DiagonalElement":
        return DiagonalElement.make(self.m, [-v for v in self.a], [-v for v in self.b])

    def is_identity(self) -> bool:
        return not any(self.a) and not any(self.b)

    def to_json(self) -> dict:
        return {"m": self.m, "x": list(self.a), "y": list(self.b)}

    def __str__(self):
        return f"diag({list(self.a)}; {list(self.b)})"

    def x_exps(self, family: str):
        return self.a

    def y_exps(self, family: str):
        if family == WEYL and any((u + v) % self.m for u, v in zip(self.a, self.b)):
            raise UndefinedAction("diagonal map does not preserve yx - qxy = 1")
        return self.b


class FiniteGroup:
    """A group given by generators, materialized on demand by closure."""

    def __init__(self, label: str, generators, identity, max_order: int = DEFAULT_MAX_ORDER, spec=None):
        self.label = label
        self.generators = tuple(generators)
        self.identity = identity
        self.max_order = max_order
        self.spec = spec or {"type": label}
        self._elements = None

    def elements(self) -> list:
        if self._elements is None:
            seen = {self.identity}
            order = [self.identity]
            frontier = [self.identity]
            while frontier:
                nxt = []
                for h in frontier:
                    for g in self.generators:
                        k = g * h
                        if k not in seen:
                            seen.add(k)
                            order.append(k)
                            nxt.append(k)
                            if len(order) > self.max_order:
                                raise GroupTooLarge(f"{self.label} has more than {self.max_order} elements")
                frontier = nxt
            self._elements = order
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements())

    def __repr__(self):
        return f"FiniteGroup({self.label})"


def refl_group(m: int, p: int, n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """G(m,p,n) from the diagonal generators p*e_1, e_1 - e_2 and adjacent transpositions."""
    if m < 1 or p < 1 or n < 1 or m % p:
        raise ValueError("need positive m, n and p dividing m")
    e = ReflGroupElement.make(m, p, n)
    gens = []
    if (p % m) and n >= 1:
        d = [0] * n
        d[0] = p
        gens.append(ReflGroupElement.make(m, p, n, d))
    if n >= 2 and m > 1:
        d = [0] * n
        d[0], d[1] = 1, -1
        gens.append(ReflGroupElement.make(m, p, n, d))
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        gens.append(ReflGroupElement.make(m, p, n, None, perm))
    spec = {"type": "G(m,p,n)", "m": m, "p": p, "n": n}
    return FiniteGroup(f"G({m},{p},{n})", gens, e, max_order, spec)


def gm_tensor(m: int, n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    e = ReflGroupElement.make(m, 1, n)
    gens = []
    for i in range(n):
        d = [0] * n
        d[i] = 1
        gens.append(ReflGroupElement.make(m, 1, n, d))
    spec = {"type": "GmTensorN", "m": m, "n": n}
    return FiniteGroup(f"G_{m}^{n}", gens, e, max_order, spec)


def symmetric_group(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    g = refl_group(1, 1, n, max_order)
    g.label, g.spec = f"S_{n}", {"type": "Sn", "n": n}
    return g


def cyclic_on_a1(m: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """G_m on A_1^q: x -> alpha x, y -> alpha^-1 y."""
    e = DiagonalElement.make(m, [0], [0])
    gen = DiagonalElement.make(m, [1], [-1])
    return FiniteGroup(f"G_{m} on A_1", [gen], e, max_order, {"type": "cyclic-on-A1", "m": m})


def diagonal_group(m: int, pairs, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Subgroup of the torus generated by (a, b): x -> zeta_m^a x, y -> zeta_m^b y."""
    pairs = [tuple(p) for p in pairs]
    e = DiagonalElement.make(m, [0], [0])
    gens = [DiagonalElement.make(m, [a], [b]) for a, b in pairs]
    return FiniteGroup(f"diag_{m}{pairs}", gens, e, max_order, {"type": "diagonal", "m": m, "pairs": [list(p) for p in pairs]})


_SPEC_RE = [
    (re.compile(r"^G\((\d+),(\d+),(\d+)\)$"), lambda g, c: refl_group(int(g[0]), int(g[1]), int(g[2]), c)),
    (re.compile(r"^Gm:(\d+),n:(\d+)$"), lambda g, c: gm_tensor(int(g[0]), int(g[1]), c)),
    (re.compile(r"^Sn:(\d+)$"), lambda g, c: symmetric_group(int(g[0]), c)),
    (re.compile(r"^cyclic-on-A1:(\d+)$"), lambda g, c: cyclic_on_a1(int(g[0]), c)),
]


def group_from_spec(spec, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Build a group from a JSON object or a short string.

    Strings: ``G(2,1,2)``, ``Gm:2,n:1``, ``Sn:3``, ``cyclic-on-A1:3``, or a JSON
    text such as ``{"type": "G(m,p,n)", "m": 2, "p": 1, "n": 2}``.
    """
    if isinstance(spec, str):
        text = spec.replace(" ", "")
        if text.startswith("{"):
            try:
                spec = json.loads(spec)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad group spec {spec!r}") from exc
        else:
            for rx, build in _SPEC_RE:
                mt = rx.match(text)
                if mt:
                    return build(mt.groups(), max_order)
            raise ParseError(f"bad group spec {spec!r}")
    try:
        kind = spec["type"]
        if kind == "G(m,p,n)":
            return refl_group(int(spec["m"]), int(spec["p"]), int(spec["n"]), max_order)
        if kind == "GmTensorN":
            return gm_tensor(int(spec["m"]), int(spec["n"]), max_order)
        if kind == "Sn":
            return symmetric_group(int(spec["n"]), max_order)
        if kind == "cyclic-on-A1":
            return cyclic_on_a1(int(spec["m"]), max_order)
        if kind == "diagonal":
            return diagonal_group(int(spec["m"]), spec["pairs"], max_order)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad group spec {spec!r}") from exc
    raise ParseError(f"unknown group type {spec.get('type')!r}")


def group_order(m: int, p: int, n: int, max_order: int = DEFAULT_MAX_ORDER) -> int:
    return refl_group(m, p, n, max_order).order


# -- actions ----------------------------------------------------------------

def act(h, u, twist: bool = False):
    """Apply the automorphism attached to h to the algebra element u."""
    if isinstance(u, QAlgebraElement):
        return _act_qa(h, u)
    if isinstance(u, GwaElement):
        return _act_gwa(h, u)
    if isinstance(u, SkewElement):
        return _act_skew(h, u, twist)
    raise UndefinedAction(f"no action on {type(u).__name__}")


def _act_qa(h, u: QAlgebraElement) -> QAlgebraElement:
    kind = u.kind
    if h.n != kind.n:
        raise UndefinedAction("group rank differs from algebra rank")
    if any(kind.params[i] != kind.params[h.perm[i]] for i in range(kind.n)):
        raise UndefinedAction("permutation does not respect the parameters")
    gx, gy = h.x_exps(kind.family), h.y_exps(kind.family)
    out = {}
    for (a, b), c in u.terms.items():
        na, nb = [0] * kind.n, [0] * kind.n
        k = 0
        for i in range(kind.n):
            na[h.perm[i]] = a[i]
            nb[h.perm[i]] = b[i]
            k += gx[i] * a[i] + gy[i] * b[i]
        # reordering x^a y^b is unaffected: all x's still precede all y's
        out[(tuple(na), tuple(nb))] = c * _zeta(h.m, k)
    return QAlgebraElement(kind, out)


def _act_gwa(h, u: GwaElement) -> GwaElement:
    data = u.data
    if data.rank != 1 or h.n != 1:
        raise UndefinedAction("group actions on GWAs are defined in rank 1 only")
    if data.label not in ("Usl2", "QuantumWeylA1"):
        raise UndefinedAction(f"no catalog action on {data.label or 'this GWA'}")
    if isinstance(h, DiagonalElement):
        if (h.a[0] + h.b[0]) % h.m:
            raise UndefinedAction("X and Y must scale inversely")
        g = h.a[0]
    else:
        g = h.diag[0]
    return GwaElement(data, {z: c * _zeta(h.m, g * z[0]) for z, c in u.terms.items()})


def _act_skew(h, u: SkewElement, twist: bool) -> SkewElement:
    action = u.action
    if h.n != action.rank:
        raise UndefinedAction("group rank differs from monoid rank")
    if isinstance(h, DiagonalElement):
        raise UndefinedAction("diagonal groups act on the quantum plane only")
    table = {}
    for i in range(h.n):
        j = h.perm[i]
        table[f"x{i + 1}"] = _zeta(h.m, h.diag[i]) * fvar(f"x{j + 1}")
        table[f"h{i + 1}"] = fvar(f"h{j + 1}")
    out = {}
    for m, c in u.terms.items():
        nm = [0] * h.n
        for i in range(h.n):
            nm[h.perm[i]] = m[i]
        c = c.subs(table)
        if twist:
            c = c * _zeta(h.m, sum(d * e for d, e in zip(h.diag, m)))
        out[tuple(nm)] = c
    return SkewElement(action, out)


def reynolds(group: FiniteGroup, u, twist: bool = False):
    elems = group.elements()
    total = None
    for g in elems:
        v = act(g, u, twist)
        total = v if total is None else total + v
    return total * field(Fraction(1, len(elems)))


# -- graded invariants ------------------------------------------------------

def _degree_monomials(kind: QAlgebraKind, degree: int, box: int | None):
    if kind.family == TORUS:
        radius = box if box is not None else degree
        return [
            (a, b)
            for a, b in kind.monomials_in_box(radius)
            if sum(a) + sum(b) == degree
        ]
    return list(kind.monomials_of_degree(degree))


def invariant_basis(group: FiniteGroup, kind: QAlgebraKind, degree: int, box: int | None = None, max_degree: int = 10):
    """Basis of the degree-d invariant component (exponents in [-box, box] on the torus).

    Reynolds images of all degree-d monomials, row-reduced over the field.
    The result is in reduced echelon form so bases of equal spaces coincide.
    """
    if degree < 0 and kind.family != TORUS:
        return []
    if degree > max_degree and kind.family != TORUS:
        raise ValueError(f"degree {degree} exceeds the configured bound {max_degree}")
    monos = _degree_monomials(kind, degree, box)
    rows = [reynolds(group, kind.monomial(a, b)).terms for a, b in monos]
    reduced, _ = rref(rows, _column_order(monos))
    return [QAlgebraElement(kind, r) for r in reduced]


def _column_order(monos):
    return sorted(set(monos), key=lambda t: tuple(-v for v in t[0] + t[1]))


def span_rows(elements, monos) -> list:
    """Reduced echelon rows of the span of *elements* over the given monomials."""
    return rref([e.terms for e in elements], _column_order(monos))[0]


def orbit_invariant_count(group: FiniteGroup, kind: QAlgebraKind, degree: int, box: int | None = None) -> int:
    """Brute force: count monomial orbits whose stabilizer acts trivially.

    Each group element sends a monomial to a scalar multiple of a monomial; the
    orbit sum is invariant exactly when the stabilizer scalars are all 1, and
    these orbit sums form a basis of the invariant component.
    """
    monos = _degree_monomials(kind, degree, box)
    elems = group.elements()
    seen = set()
    count = 0
    one = field(1)
    for a, b in monos:
        if (a, b) in seen:
            continue
        u = kind.monomial(a, b)
        orbit = set()
        trivial = True
        for g in elems:
            ((key, c),) = act(g, u).terms.items()
            orbit.add(key)
            if key == (a, b) and c != one:
                trivial = False
        seen |= orbit
        count += trivial
    return count


def affine_cyclic_count(m: int, n: int, d: int) -> int:
    """dim of the degree-d part of O_q(k^2n)^{G_m^n}: monomials with m | a_i.

    Sum over total x-degree m*k of (#a with sum k) * (#b with sum d - m*k).
    """
    total = 0
    for k in range(d // m + 1):
        total += math.comb(k + n - 1, n - 1) * math.comb(d - m * k + n - 1, n - 1)
    return total
