"""Skew monoid rings L * M for M = N^n or Z^n.

The monoid acts on the rational function field L through substitutions of
named variables; ``(f m)(g m') = f m(g) (m + m')``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import ActionMismatch, NotAMonomial, ParseError
from .lattice import generates_group, generates_monoid
from .ratfunc import RatFunc, field, fvar
from .text import format_coeff_product, parse_expr, parse_field

__all__ = [
    "MonoidAction",
    "SkewElement",
    "skew_mul",
    "supp",
    "supports_generate",
    "qlga_action",
    "weyl_gwa_action",
]

NN = "Nn"
ZN = "Zn"


def _freeze(mapping: dict) -> tuple:
    return tuple(sorted((v, field(f)) for v, f in mapping.items()))


@dataclass(frozen=True)
class MonoidAction:
    """Commuting substitutions eps_i indexed by the basis of N^n or Z^n."""

    rank: int
    ambient: str
    maps: tuple
    inverses: tuple

    @classmethod
    def create(cls, rank: int, ambient: str, maps, inverses=None, check: bool = True) -> "MonoidAction":
        if ambient not in (NN, ZN):
            raise ValueError(f"ambient must be {NN!r} or {ZN!r}")
        maps = [_parse_map(m) for m in maps]
        if len(maps) != rank:
            raise ValueError("one substitution per basis element required")
        if inverses is None:
            inverses = [{} for _ in range(rank)] if ambient == NN else None
        if inverses is None:
            raise ValueError("Z^n actions need explicit inverse substitutions")
        inverses = [_parse_map(m) for m in inverses]
        action = cls(rank, ambient, tuple(_freeze(m) for m in maps), tuple(_freeze(m) for m in inverses))
        if check:
            action.validate()
        return action

    @classmethod
    def from_dict(cls, data: dict) -> "MonoidAction":
        def indexed(block):
            if isinstance(block, dict):
                return [block.get(str(i + 1), {}) for i in range(data["rank"])]
            return block

        inv = data.get("inverses")
        return cls.create(data["rank"], data["ambient"], indexed(data["maps"]), indexed(inv) if inv else None)

    def to_json(self) -> dict:
        out = {
            "rank": self.rank,
            "ambient": self.ambient,
            "maps": {str(i + 1): {v: f.format(True) for v, f in m} for i, m in enumerate(self.maps)},
        }
        if self.ambient == ZN:
            out["inverses"] = {str(i + 1): {v: f.format(True) for v, f in m} for i, m in enumerate(self.inverses)}
        return out

    @property
    def moved_variables(self) -> tuple[str, ...]:
        names = set()
        for m in self.maps + self.inverses:
            names.update(v for v, _ in m)
        return tuple(sorted(names))

    def validate(self):
        """Check pairwise commutation and (for Z^n) the stored inverses."""
        names = self.moved_variables
        for v in names:
            f = fvar(v)
            for i, j in itertools.combinations(range(self.rank), 2):
                if self.step(i, 1, self.step(j, 1, f)) != self.step(j, 1, self.step(i, 1, f)):
                    raise ValueError(f"generator maps {i + 1} and {j + 1} do not commute on {v}")
            if self.ambient == ZN:
                for i in range(self.rank):
                    if self.step(i, 1, self.step(i, -1, f)) != f or self.step(i, -1, self.step(i, 1, f)) != f:
                        raise ValueError(f"inverse of map {i + 1} is wrong on {v}")

    def step(self, i: int, k: int, f: RatFunc) -> RatFunc:
        """Apply eps_i^k (k = +-1) to f."""
        table = dict(self.maps[i] if k > 0 else self.inverses[i])
        return f.subs(table)

    def vector_map(self, m: tuple) -> dict:
        return dict(_vector_map(self, tuple(m)))

    def apply(self, m, f) -> RatFunc:
        """The automorphism attached to the monoid element m, applied to f."""
        m = tuple(m)
        f = field(f)
        if not any(m) or f.is_constant():
            return f
        return _apply(self, m, f)

    def check_faithful(self, radius: int = 3) -> bool:
        """Distinct vectors in a box induce distinct substitutions."""
        lo = 0 if self.ambient == NN else -radius
        seen = {}
        for m in itertools.product(range(lo, radius + 1), repeat=self.rank):
            key = _vector_map(self, m)
            if key in seen:
                return False
            seen[key] = m
        return True

    # -- parent protocol --------------------------------------------------
    def zero_vec(self):
        return (0,) * self.rank

    def one(self) -> "SkewElement":
        return SkewElement(self, {self.zero_vec(): field(1)})

    def zero(self) -> "SkewElement":
        return SkewElement(self, {})

    def scalar(self, f) -> "SkewElement":
        return SkewElement(self, {self.zero_vec(): field(f)})

    def monomial(self, m, f=1) -> "SkewElement":
        m = tuple(int(v) for v in m)
        if len(m) != self.rank:
            raise ValueError("monoid element of wrong length")
        if self.ambient == NN and min(m, default=0) < 0:
            raise ValueError("negative exponent in N^n")
        return SkewElement(self, {m: field(f)})

    def eps(self, i: int, k: int = 1) -> "SkewElement":
        m = [0] * self.rank
        m[i] = k
        return self.monomial(m)

    def gen_name(self, i: int) -> str:
        return f"e{i + 1}"

    def gen(self, name: str) -> "SkewElement":
        for i in range(self.rank):
            if name == self.gen_name(i) or (self.rank == 1 and name == "e"):
                return self.eps(i)
        raise KeyError(name)

    def parse(self, text: str) -> "SkewElement":
        def resolve(name):
            try:
                return self.gen(name)
            except KeyError:
                return None

        out = parse_expr(text, resolve)
        if isinstance(out, RatFunc):
            out = self.scalar(out)
        if not isinstance(out, SkewElement) or out.action != self:
            raise ParseError("expression does not denote an element of this skew ring")
        return out

    def from_json(self, data: dict) -> "SkewElement":
        return SkewElement(self, {tuple(t["m"]): parse_field(t["coeff"]) for t in data["terms"]})


@lru_cache(maxsize=4096)
def _vector_map(action: MonoidAction, m: tuple) -> tuple:
    images = {v: fvar(v) for v in action.moved_variables}
    for i, k in enumerate(m):
        for _ in range(abs(k)):
            table = dict(action.maps[i] if k > 0 else action.inverses[i])
            images = {v: f.subs(table) for v, f in images.items()}
    return tuple(sorted((v, f) for v, f in images.items() if f != fvar(v)))


@lru_cache(maxsize=65536)
def _apply(action: MonoidAction, m: tuple, f: RatFunc) -> RatFunc:
    return f.subs(dict(_vector_map(action, m)))


def _parse_map(m) -> dict:
    return {v: parse_field(f) if isinstance(f, str) else field(f) for v, f in dict(m).items()}


class SkewElement:
    """Finite sum of f_m * m with f_m in the rational function field."""

    __slots__ = ("action", "terms", "_hash")

    def __init__(self, action: MonoidAction, terms: dict):
        self.action = action
        self.terms = {tuple(m): c for m, c in terms.items() if c}
        self._hash = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _lift(self, other):
        if isinstance(other, SkewElement):
            if other.action != self.action:
                raise ActionMismatch("elements of different skew rings")
            return other
        try:
            return self.action.scalar(other)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return SkewElement(self.action, out)

    __radd__ = __add__

    def __neg__(self):
        return SkewElement(self.action, {m: -c for m, c in self.terms.items()})

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

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return skew_mul(self, other)

    def __rmul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return skew_mul(other, self)

    def inverse(self) -> "SkewElement":
        """Inverse of a single term f*m (Z^n, or m = 0)."""
        if len(self.terms) != 1:
            raise NotAMonomial("only single terms are invertible")
        (m, f), = self.terms.items()
        if self.action.ambient == NN and any(m):
            raise NotAMonomial("nonzero elements of N^n are not invertible")
        neg = tuple(-v for v in m)
        return SkewElement(self.action, {neg: self.action.apply(neg, f.inverse())})

    def __pow__(self, k: int) -> "SkewElement":
        if k < 0:
            return self.inverse() ** (-k)
        result = self.action.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, SkewElement):
            return self.action == other.action and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.action, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-v for v in t[0])))

    def word(self, m) -> str:
        parts = []
        for i, e in enumerate(m):
            if e:
                name = self.action.gen_name(i)
                parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def format(self, compact: bool = False) -> str:
        return format_coeff_product(((c, self.word(m)) for m, c in self.sorted_terms()), compact)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"<skew: {self.format()}>"

    def to_json(self) -> dict:
        return {
            "action": self.action.to_json(),
            "terms": [{"m": list(m), "coeff": c.format(True)} for m, c in self.sorted_terms()],
        }


def skew_mul(u: SkewElement, v: SkewElement) -> SkewElement:
    if u.action != v.action:
        raise ActionMismatch("elements of different skew rings")
    act = u.action
    out: dict = {}
    for m, f in u.terms.items():
        for m2, g in v.terms.items():
            key = tuple(a + b for a, b in zip(m, m2))
            c = f * act.apply(m, g)
            out[key] = out[key] + c if key in out else c
    return SkewElement(act, out)


def supp(u: SkewElement) -> frozenset:
    """Monoid elements carrying a nonzero coefficient."""
    return frozenset(m for m, c in u.terms.items() if c)


def supports_generate(elements, as_group: bool | None = None):
    """Whether the union of supports generates the ambient monoid / group."""
    elements = list(elements)
    action = elements[0].action
    vecs = set().union(*(supp(u) for u in elements))
    if as_group is None:
        as_group = action.ambient == ZN
    if as_group:
        return generates_group(vecs, action.rank)
    return generates_monoid(vecs, action.rank)


def qlga_action(n: int, ambient: str = NN, q="q") -> MonoidAction:
    """eps_i(x_i) = q x_i, other variables fixed."""
    qf = parse_field(q) if isinstance(q, str) else field(q)
    maps = [{f"x{i + 1}": qf * fvar(f"x{i + 1}")} for i in range(n)]
    inv = [{f"x{i + 1}": fvar(f"x{i + 1}") / qf} for i in range(n)]
    return MonoidAction.create(n, ambient, maps, inv)


def weyl_gwa_action(n: int, q="q") -> MonoidAction:
    """eps_i(h_i) = q^-1 (h_i - 1) on k(h_1, ..., h_n), ambient Z^n."""
    qf = parse_field(q) if isinstance(q, str) else field(q)
    maps = [{f"h{i + 1}": (fvar(f"h{i + 1}") - 1) / qf} for i in range(n)]
    inv = [{f"h{i + 1}": qf * fvar(f"h{i + 1}") + 1} for i in range(n)]
    return MonoidAction.create(n, ZN, maps, inv)
