"""Certification of homomorphism, relation and equivariance claims.

Relations are noncommutative polynomials in named generators.  A claimed map
assigns a target element to every generator; it is certified when every
relation evaluates to zero in the target algebra, which supplies the only
multiplication involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import MissingImage, UndefinedAction
from .ratfunc import RatFunc, field
from .text import format_coeff_product, parse_expr

__all__ = [
    "NCPoly",
    "FreeAlgebra",
    "Presentation",
    "GenMap",
    "Certificate",
    "eval_word",
    "apply_map",
    "certify_hom",
    "certify_equivariance",
]


class NCPoly:
    """Element of the free algebra: sum of coeff * (g_1, ..., g_k)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = {tuple(w): field(c) for w, c in terms.items() if c}

    def __add__(self, other):
        other = _nc(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return NCPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = _nc(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _nc(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _nc(other)
        if other is None:
            return NotImplemented
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                out[w] = out[w] + c if w in out else c
        return NCPoly(out)

    def __rmul__(self, other):
        other = _nc(other)
        if other is None:
            return NotImplemented
        return other * self

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power in the free algebra")
        out = NCPoly({(): 1})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = _nc(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def letters(self) -> set[str]:
        return {g for w in self.terms for g in w}

    def format(self, compact: bool = False) -> str:
        items = sorted(self.terms.items(), key=lambda t: (-len(t[0]), t[0]))
        return format_coeff_product(((c, "*".join(w)) for w, c in items), compact)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"NCPoly({self.format()!r})"


def _nc(x):
    if isinstance(x, NCPoly):
        return x
    try:
        return NCPoly({(): field(x)})
    except TypeError:
        return None


@dataclass(frozen=True)
class FreeAlgebra:
    generators: tuple

    def gen(self, name: str) -> NCPoly:
        if name not in self.generators:
            raise KeyError(name)
        return NCPoly({(name,): 1})

    def one(self) -> NCPoly:
        return NCPoly({(): 1})

    def scalar(self, c) -> NCPoly:
        return NCPoly({(): c})

    def parse(self, text: str) -> NCPoly:
        def resolve(name):
            return self.gen(name) if name in self.generators else None

        out = parse_expr(text, resolve)
        if isinstance(out, RatFunc):
            out = NCPoly({(): out})
        return out


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relations: tuple
    labels: tuple = ()

    @classmethod
    def from_strings(cls, generators, relations) -> "Presentation":
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise ValueError("generator names must be distinct")
        free = FreeAlgebra(gens)
        rels = []
        for r in relations:
            w = free.parse(r)
            if w.is_zero():
                raise ValueError(f"relation {r!r} is identically zero")
            rels.append(w)
        return cls(gens, tuple(rels), tuple(relations))

    @property
    def free(self) -> FreeAlgebra:
        return FreeAlgebra(self.generators)


@dataclass
class GenMap:
    """Generator images of a claimed map source -> target."""

    source: Presentation
    target: object
    images: dict
    claims: list = dc_field(default_factory=list)
    claim_labels: list = dc_field(default_factory=list)

    @classmethod
    def from_strings(cls, source: Presentation, target, images: dict, claims=()) -> "GenMap":
        imgs = {g: target.parse(t) for g, t in images.items()}
        parsed = [(source.free.parse(w), target.parse(e)) for w, e in claims]
        return cls(source, target, imgs, parsed, [f"{w} -> {e}" for w, e in claims])


@dataclass
class Certificate:
    passed: bool
    residuals: list

    def failures(self) -> list:
        return [r for r in self.residuals if not r["ok"]]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "residuals": [{"label": r["label"], "ok": r["ok"], "residual": str(r["residual"])} for r in self.residuals],
        }


def eval_word(w: NCPoly, gm: GenMap):
    """Substitute generator images into w, multiplying in the target."""
    target = gm.target
    total = target.zero() if hasattr(target, "zero") else target.scalar(0)
    cache: dict = {}
    for word, c in w.terms.items():
        missing = [g for g in word if g not in gm.images]
        if missing:
            raise MissingImage(f"no image for {missing[0]!r}")
        prod = cache.get(word)
        if prod is None:
            prod = target.one()
            for k in range(len(word)):
                prefix = word[: k + 1]
                if prefix in cache:
                    prod = cache[prefix]
                else:
                    prod = prod * gm.images[word[k]]
                    cache[prefix] = prod
        total = total + target.scalar(c) * prod
    return total


def apply_map(gm: GenMap, element):
    """Image of a source element given as an NCPoly or via ``to_word()``."""
    if isinstance(element, NCPoly):
        return eval_word(element, gm)
    if hasattr(element, "to_word"):
        terms = {}
        for c, letters in element.to_word():
            word = tuple(g for g, e in letters for _ in range(e))
            terms[word] = terms[word] + c if word in terms else c
        return eval_word(NCPoly(terms), gm)
    raise TypeError(f"cannot map {element!r}")


def certify_hom(gm: GenMap) -> Certificate:
    residuals = []
    labels = gm.source.labels or [str(r) for r in gm.source.relations]
    for label, rel in zip(labels, gm.source.relations):
        res = eval_word(rel, gm)
        residuals.append({"label": f"relation {label}", "ok": res.is_zero(), "residual": res})
    for (w, expected), label in zip(gm.claims, gm.claim_labels or [None] * len(gm.claims)):
        res = eval_word(w, gm) - expected
        residuals.append({"label": f"claim {label or w}", "ok": res.is_zero(), "residual": res})
    return Certificate(all(r["ok"] for r in residuals), residuals)


def certify_equivariance(gm: GenMap, group_generators, source_act, target_act) -> Certificate:
    """phi(g(x)) == g(phi(x)) for every group generator g and algebra generator x.

    ``source_act(g, name)`` returns g applied to the source generator as an
    NCPoly or an element with ``to_word()``; ``target_act(g, element)`` acts
    on target elements.
    """
    residuals = []
    for gi, g in enumerate(group_generators):
        for name in gm.source.generators:
            try:
                left = apply_map(gm, source_act(g, name))
                right = target_act(g, gm.images[name])
            except KeyError as exc:
                raise UndefinedAction(str(exc)) from exc
            res = left - right
            residuals.append({"label": f"g{gi}({name})", "ok": res.is_zero(), "residual": res})
    return Certificate(all(r["ok"] for r in residuals), residuals)

