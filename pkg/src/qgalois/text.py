"""Deterministic text/JSON forms and the element expression parser.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' exponent)?
    atom   := INT | NAME | '(' expr ')'

``z<m>`` names the primitive root zeta_m.  Every other name is resolved by
the caller; unresolved names become commuting field variables.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .cyclotomic import Cyclotomic
from .errors import ParseError, QGaloisError
from .poly import MultiPoly, var_key

__all__ = [
    "format_poly",
    "format_ratfunc",
    "format_coeff_product",
    "parse_expr",
    "parse_field",
    "poly_to_json",
    "poly_from_json",
]


# -- formatting ---------------------------------------------------------------


def _mono_str(mono) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)


def _scalar_sign_body(c) -> tuple[str, str | None, bool]:
    """(sign, body, needs_parens) for a scalar multiplying a monomial."""
    if isinstance(c, Fraction):
        return ("-" if c < 0 else "+"), (None if abs(c) == 1 else str(abs(c))), False
    nz = [(j, v) for j, v in enumerate(c.coeffs) if v]
    if len(nz) == 1:
        j, v = nz[0]
        return ("-" if v < 0 else "+"), (-c).format(True) if v < 0 else c.format(True), False
    return "+", c.format(True), True


def format_poly(p: MultiPoly, compact: bool = False) -> str:
    if not p.terms:
        return "0"
    parts = []
    multi = len(p.terms) > 1
    for mono, c in p.sorted_terms():
        sign, body, paren = _scalar_sign_body(c)
        if body is not None and paren and (mono or multi):
            body = f"({body})"
        ms = _mono_str(mono)
        if body is None:
            text = ms or "1"
        elif ms:
            text = f"{body}*{ms}"
        else:
            text = body
        parts.append((sign, text))
    return _join(parts, compact)


def _join(parts, compact: bool) -> str:
    sep = "" if compact else " "
    sign, text = parts[0]
    out = ("-" if sign == "-" else "") + text
    for sign, text in parts[1:]:
        out += f"{sep}{sign}{sep}{text}"
    return out


def format_ratfunc(f, compact: bool = False) -> str:
    if f.den.is_one():
        return format_poly(f.num, compact)
    num = format_poly(f.num, True)
    if len(f.num.terms) > 1:
        num = f"({num})"
    den = format_poly(f.den, True)
    simple_den = len(f.den.terms) == 1 and len(next(iter(f.den.terms))) == 1
    if not simple_den:
        den = f"({den})"
    return f"{num}/{den}"


def coeff_sign_body(f) -> tuple[str, str | None]:
    """Sign and body for a field coefficient in front of an algebra word.

    body is None for coefficient +-1.
    """
    if f.den.is_one() and len(f.num.terms) == 1:
        (mono, c), = f.num.terms.items()
        sign, body, paren = _scalar_sign_body(c)
        if paren:
            body = f"({body})"
        ms = _mono_str(mono)
        if body is None:
            return sign, (ms or None)
        return sign, f"{body}*{ms}" if ms else body
    return "+", f"({format_ratfunc(f, True)})"


def format_coeff_product(items, compact: bool = False) -> str:
    """Render sum of coefficient * word, given (coeff, word_str) pairs in order."""
    parts = []
    for f, word in items:
        sign, body = coeff_sign_body(f)
        if body is None:
            text = word or "1"
        elif word:
            text = f"{body}*{word}"
        elif not f.den.is_one():
            # a quotient binds tighter than +, so a bare constant needs no parentheses
            text = format_ratfunc(f, True)
        else:
            text = body
        parts.append((sign, text))
    if not parts:
        return "0"
    if len(parts) == 1 and not word and body is not None:
        # a lone scalar prints as the rational function itself
        return format_ratfunc(f, compact)
    return _join(parts, compact)


# -- JSON ---------------------------------------------------------------------


def _scalar_json(c):
    if isinstance(c, Fraction):
        return [str(c)]
    return {"order": c.order, "coeffs": [str(v) for v in c.coeffs]}


def _scalar_from_json(data):
    if isinstance(data, list):
        return Fraction(data[0])
    return Cyclotomic.from_coeffs(int(data["order"]), [Fraction(v) for v in data["coeffs"]])


def poly_to_json(p: MultiPoly) -> list:
    out = []
    for mono, c in p.sorted_terms():
        out.append([[[v, e] for v, e in mono], _scalar_json(c)])
    return out


def poly_from_json(data) -> MultiPoly:
    terms = {}
    for mono, c in data:
        key = tuple(sorted(((v, int(e)) for v, e in mono), key=lambda t: var_key(t[0])))
        terms[key] = _scalar_from_json(c)
    return MultiPoly(terms)


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            toks.append(("int", num))
        elif name is not None:
            toks.append(("name", name))
        else:
            toks.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str, resolve, scalar):
        self.toks = _tokenize(text)
        self.i = 0
        self.resolve = resolve
        self.scalar = scalar

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            where = "end of input" if tok[0] is None else repr(tok[1])
            raise ParseError(f"expected {value or 'an operand'}, found {where}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        val = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at token {self.i}: {self.toks[self.i][1]!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                from .ratfunc import RatFunc

                if not isinstance(rhs, RatFunc):
                    raise ParseError("only field elements may appear as divisors")
                try:
                    val = val * rhs.inverse()
                except ZeroDivisionError as exc:
                    raise ParseError("division by zero") from exc
        return val

    def unary(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.unary()
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def exponent(self) -> int:
        paren = False
        if self.peek() == ("op", "("):
            self.take()
            paren = True
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        kind, val = self.take()
        if kind != "int":
            raise ParseError("exponent must be an integer literal")
        if paren:
            self.take(")")
        return sign * int(val)

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            k = self.exponent()
            try:
                return base ** k
            except ZeroDivisionError as exc:
                raise ParseError("negative power of zero") from exc
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return self.scalar(int(val))
        if kind == "name":
            return self.resolve(val)
        if val == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {val!r}")


def parse_expr(text: str, resolve=None, scalar=None):
    """Parse *text*, resolving names with *resolve* (defaults: field variables)."""
    from .ratfunc import field, fvar

    scalar = scalar or field

    def default_resolve(name):
        return fvar(name)

    def wrapped(name):
        if re.match(r"^z\d+$", name) and int(name[1:]) > 0:
            return fvar(name)
        out = resolve(name) if resolve else None
        return default_resolve(name) if out is None else out

    try:
        return _Parser(text, wrapped, scalar).parse()
    except QGaloisError:
        raise
    except (ArithmeticError, ValueError, TypeError) as exc:
        raise ParseError(str(exc)) from exc


def parse_field(text: str):
    """Parse a rational function in commuting variables."""
    return parse_expr(text)
