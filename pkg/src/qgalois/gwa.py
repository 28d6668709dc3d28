"""Generalized Weyl algebras D(a, sigma) over polynomial bases.

An element is stored as a sum d * w_z with d in D on the left and
z in Z^n encoding the word w_z = prod_i X_i^{z_i} (z_i > 0) or
Y_i^{-z_i} (z_i < 0).  The automorphisms sigma_i are the generator maps of a
Z^n :class:`~qgalois.skew.MonoidAction`, which is also the action of the
skew group ring that D(a, sigma) embeds into.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DataMismatch, ParseError, UnknownInstance
from .ratfunc import RatFunc, field, fvar
from .skew import ZN, MonoidAction, SkewElement
from .text import format_coeff_product, parse_expr, parse_field

__all__ = [
    "GwaData",
    "GwaElement",
    "GwaInstance",
    "gwa_mul",
    "gwa_embed",
    "gwa_instance",
    "quantum_weyl_gwa",
    "INSTANCE_NAMES",
]


@dataclass(frozen=True)
class GwaData:
    """Base variables, commuting automorphisms and the elements a_i."""

    base_vars: tuple
    action: MonoidAction
    a: tuple
    label: str = ""

    @classmethod
    def create(cls, base_vars, sigma, sigma_inv, a, label: str = "") -> "GwaData":
        n = len(a)
        action = MonoidAction.create(n, ZN, sigma, sigma_inv)
        a = tuple(parse_field(x) if isinstance(x, str) else field(x) for x in a)
        data = cls(tuple(base_vars), action, a, label)
        data.validate()
        return data

    @property
    def rank(self) -> int:
        return len(self.a)

    def validate(self):
        for i, ai in enumerate(self.a):
            if ai.is_zero():
                raise ValueError(f"a_{i + 1} is zero")
            for j in range(self.rank):
                if i != j and self.sigma(j, 1, ai) != ai:
                    raise ValueError(f"sigma_{j + 1} moves a_{i + 1}")
        stray = set()
        for ai in self.a:
            stray |= ai.den.variables() & set(self.base_vars)
        if stray:
            raise ValueError(f"a_i must be polynomial in the base variables {sorted(stray)}")

    def sigma(self, i: int, k: int, d) -> RatFunc:
        vec = [0] * self.rank
        vec[i] = k
        return self.action.apply(tuple(vec), d)

    # -- parent protocol --------------------------------------------------
    def zero_vec(self):
        return (0,) * self.rank

    def one(self) -> "GwaElement":
        return GwaElement(self, {self.zero_vec(): field(1)})

    def zero(self) -> "GwaElement":
        return GwaElement(self, {})

    def scalar(self, d) -> "GwaElement":
        return GwaElement(self, {self.zero_vec(): field(d)})

    def word(self, z, d=1) -> "GwaElement":
        return GwaElement(self, {tuple(z): field(d)})

    def X(self, i: int = 0, k: int = 1) -> "GwaElement":
        z = [0] * self.rank
        z[i] = k
        return self.word(z)

    def Y(self, i: int = 0, k: int = 1) -> "GwaElement":
        z = [0] * self.rank
        z[i] = -k
        return self.word(z)

    def x_name(self, i: int) -> str:
        return "X" if self.rank == 1 else f"X{i + 1}"

    def y_name(self, i: int) -> str:
        return "Y" if self.rank == 1 else f"Y{i + 1}"

    def gen(self, name: str) -> "GwaElement":
        for i in range(self.rank):
            if name == self.x_name(i):
                return self.X(i)
            if name == self.y_name(i):
                return self.Y(i)
        raise KeyError(name)

    def parse(self, text: str) -> "GwaElement":
        def resolve(name):
            try:
                return self.gen(name)
            except KeyError:
                return None

        out = parse_expr(text, resolve)
        if isinstance(out, RatFunc):
            out = self.scalar(out)
        if not isinstance(out, GwaElement) or out.data != self:
            raise ParseError("expression does not denote an element of this algebra")
        return out

    def from_json(self, data: dict) -> "GwaElement":
        return GwaElement(self, {tuple(t["z"]): parse_field(t["coeff"]) for t in data["terms"]})

    def skew_ring(self) -> MonoidAction:
        return self.action


class GwaElement:
    """Normal-form element sum d_z * w_z."""

    __slots__ = ("data", "terms", "_hash")

    def __init__(self, data: GwaData, terms: dict):
        self.data = data
        self.terms = {tuple(z): c for z, c in terms.items() if c}
        self._hash = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _lift(self, other):
        if isinstance(other, GwaElement):
            if other.data != self.data:
                raise DataMismatch("elements of different generalized Weyl algebras")
            return other
        try:
            return self.data.scalar(other)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for z, c in other.terms.items():
            out[z] = out[z] + c if z in out else c
        return GwaElement(self.data, out)

    __radd__ = __add__

    def __neg__(self):
        return GwaElement(self.data, {z: -c for z, c in self.terms.items()})

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
        return gwa_mul(self, other)

    def __rmul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return gwa_mul(other, self)

    def __pow__(self, k: int) -> "GwaElement":
        if k < 0:
            raise ValueError("negative powers do not exist in a generalized Weyl algebra")
        result = self.data.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, GwaElement):
            return self.data == other.data and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.data, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(map(abs, t[0])), tuple(-v for v in t[0])))

    def word(self, z) -> str:
        parts = []
        for i, e in enumerate(z):
            if e:
                name = self.data.x_name(i) if e > 0 else self.data.y_name(i)
                parts.append(name if abs(e) == 1 else f"{name}^{abs(e)}")
        return "*".join(parts)

    def format(self, compact: bool = False) -> str:
        return format_coeff_product(((c, self.word(z)) for z, c in self.sorted_terms()), compact)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"<gwa: {self.format()}>"

    def to_json(self) -> dict:
        return {
            "instance": self.data.label,
            "terms": [{"z": list(z), "coeff": c.format(True)} for z, c in self.sorted_terms()],
        }


@lru_cache(maxsize=65536)
def _index_product(data: GwaData, i: int, u: int, v: int) -> tuple:
    """w_u * w_v in the i-th rank-one factor, as (coefficient in D, exponent)."""
    one = field(1)
    if u == 0 or v == 0 or (u > 0) == (v > 0):
        return one, u + v
    a = data.a[i]
    if u < 0:
        b, c = -u, v
        k = min(b, c)
        # Y^k X^k = prod_{j<k} sigma^-j(a)
        coef = one
        for j in range(k):
            coef = coef * data.sigma(i, -j, a)
        if b > c:
            return data.sigma(i, -(b - c), coef), -(b - c)
        return coef, c - b
    ax, d = u, -v
    k = min(ax, d)
    # X^k Y^k = prod_{1<=j<=k} sigma^j(a)
    coef = one
    for j in range(1, k + 1):
        coef = coef * data.sigma(i, j, a)
    if ax > d:
        return data.sigma(i, ax - d, coef), ax - d
    return coef, ax - d


def gwa_mul(u: GwaElement, v: GwaElement) -> GwaElement:
    if u.data != v.data:
        raise DataMismatch("elements of different generalized Weyl algebras")
    data = u.data
    act = data.action
    out: dict = {}
    for z1, d1 in u.terms.items():
        for z2, d2 in v.terms.items():
            coef = d1 * act.apply(z1, d2)
            z = []
            for i in range(data.rank):
                c, e = _index_product(data, i, z1[i], z2[i])
                if not c.is_one():
                    coef = coef * c
                z.append(e)
            key = tuple(z)
            out[key] = out[key] + coef if key in out else coef
    return GwaElement(data, out)


def gwa_embed(u: GwaElement) -> SkewElement:
    """Image in Frac(D) * Z^n under X_i -> eps_i, Y_i -> a_i eps_i^-1."""
    data = u.data
    ring = data.action
    x_img = [ring.eps(i) for i in range(data.rank)]
    y_img = [ring.monomial([-int(i == j) for j in range(data.rank)], data.a[i]) for i in range(data.rank)]
    total = ring.zero()
    for z, d in u.terms.items():
        term = ring.scalar(d)
        for i, e in enumerate(z):
            if e > 0:
                term = term * x_img[i] ** e
            elif e < 0:
                term = term * y_img[i] ** (-e)
        total = total + term
    return total


# -- catalog ------------------------------------------------------------------


@dataclass(frozen=True)
class GwaInstance:
    """A presented algebra together with its realization as a GWA."""

    name: str
    data: GwaData
    generators: tuple
    relations: tuple
    images: tuple
    claims: tuple = ()
    note: str = ""

    def image_map(self) -> dict:
        return {g: self.data.parse(t) for g, t in self.images}

    def certificate(self):
        from .verify import GenMap, Presentation, certify_hom

        pres = Presentation.from_strings(self.generators, self.relations)
        gm = GenMap.from_strings(pres, self.data, dict(self.images), list(self.claims))
        return certify_hom(gm)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "base": list(self.data.base_vars),
            "rank": self.data.rank,
            "sigma": self.data.action.to_json()["maps"],
            "a": [x.format(True) for x in self.data.a],
            "generators": list(self.generators),
            "relations": list(self.relations),
            "images": dict(self.images),
            "claims": [list(c) for c in self.claims],
            "note": self.note,
        }


def quantum_weyl_gwa(n: int = 1, q: str = "q") -> GwaData:
    """A_n^q as D(a, sigma) with D = k[h_1..h_n], a_i = h_i, sigma_i(h_i) = q^-1 (h_i - 1)."""
    names = ["h"] if n == 1 else [f"h{i + 1}" for i in range(n)]
    sigma = [{h: f"({h}-1)/{q}"} for h in names]
    inv = [{h: f"{q}*{h}+1"} for h in names]
    label = "QuantumWeylA1" if n == 1 else f"QuantumWeyl{n}"
    return GwaData.create(names, sigma, inv, names, label)


def _weyl_a1() -> GwaInstance:
    return GwaInstance(
        "QuantumWeylA1",
        quantum_weyl_gwa(1),
        ("x", "y"),
        ("y*x - q*x*y - 1",),
        (("x", "X"), ("y", "Y")),
        (("y*x", "h"),),
    )


def _sphere() -> GwaInstance:
    # s is a formal square root of lambda: lambda = s^2
    data = GwaData.create(
        ["H"],
        [{"H": "s^2*H"}],
        [{"H": "H/s^2"}],
        ["-(c-H)*(d+H)/s"],
        "QuantumSphere",
    )
    return GwaInstance(
        "QuantumSphere",
        data,
        ("X", "Y", "H"),
        (
            "X*H - s^2*H*X",
            "Y*H - s^-2*H*Y",
            "s*Y*X + (c-H)*(d+H)",
            "s*X*Y + (c-s^2*H)*(d+s^2*H)",
        ),
        (("X", "X"), ("Y", "Y"), ("H", "H")),
        note="lambda = s^2; XY = sigma(a) forces s*XY = -(c-lambda H)(d+lambda H)",
    )


def _qso3() -> GwaInstance:
    data = GwaData.create(
        ["C", "H"],
        [{"H": "q^2*H"}],
        [{"H": "H/q^2"}],
        ["C + H^2/(q*(1+q^2))"],
        "QSO3",
    )
    return GwaInstance(
        "QSO3",
        data,
        ("X", "Y", "H", "C"),
        (
            "X*H - q^2*H*X",
            "Y*H - q^-2*H*Y",
            "X*C - C*X",
            "Y*C - C*Y",
            "H*C - C*H",
            "Y*X - C - H^2/(q*(1+q^2))",
            "X*Y - C - q^4*H^2/(q*(1+q^2))",
        ),
        (("X", "X"), ("Y", "Y"), ("H", "H"), ("C", "C")),
    )


def _usl2() -> GwaInstance:
    data = GwaData.create(
        ["C", "H"],
        [{"H": "H-1"}],
        [{"H": "H+1"}],
        ["C - H*(H+1)"],
        "Usl2",
    )
    return GwaInstance(
        "Usl2",
        data,
        ("e", "f", "h"),
        ("h*e - e*h - e", "h*f - f*h + f", "e*f - f*e - 2*h"),
        (("e", "X"), ("f", "Y"), ("h", "H")),
        (("h*(h+1) + f*e", "C"),),
    )


_BUILDERS = {
    "QuantumWeylA1": _weyl_a1,
    "QuantumSphere": _sphere,
    "QSO3": _qso3,
    "Usl2": _usl2,
}
INSTANCE_NAMES = tuple(_BUILDERS)


@lru_cache(maxsize=None)
def gwa_instance(name: str) -> GwaInstance:
    """Catalog instance, certified against its presentation on construction."""
    try:
        inst = _BUILDERS[name]()
    except KeyError:
        raise UnknownInstance(name) from None
    cert = inst.certificate()
    if not cert.passed:
        raise AssertionError(f"{name}: presentation relations fail: {cert.failures()}")
    return inst
