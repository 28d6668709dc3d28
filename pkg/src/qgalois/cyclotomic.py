"""Exact arithmetic in cyclotomic fields Q(zeta_m).

An element is stored as its coordinate vector in the power basis
1, z, ..., z^(phi(m)-1) modulo the m-th cyclotomic polynomial.  Values are
always kept at their minimal conductor, so an element lying in Q is returned
as a plain :class:`fractions.Fraction` and structural equality is exact
equality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "Cyclotomic",
    "cyclo_root",
    "cyclotomic_poly",
    "euler_phi",
    "is_root_of_unity",
    "to_scalar",
]


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        num = _divexact_int(num, cyclotomic_poly(d))
    return tuple(num)


def _divexact_int(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    assert not any(num[:dd]), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coordinates of z^k for 0 <= k < m."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by z and reduce
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return tuple(rows)


def _from_exponents(m: int, items) -> list[Fraction]:
    table = _power_table(m)
    out = [Fraction(0)] * euler_phi(m)
    for k, c in items:
        if c:
            row = table[k % m]
            for j, r in enumerate(row):
                if r:
                    out[j] += c * r
    return out


def _solve(cols: list[tuple[int, ...]], rhs: tuple[Fraction, ...]):
    """Solve sum_j x_j cols[j] = rhs exactly; None when inconsistent."""
    nrows = len(rhs)
    ncols = len(cols)
    mat = [[Fraction(cols[j][i]) for j in range(ncols)] + [rhs[i]] for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    if any(mat[i][ncols] for i in range(r, nrows)):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = mat[i][ncols]
    return x


@lru_cache(maxsize=4096)
def _minimize(m: int, coeffs: tuple[Fraction, ...]):
    if not any(coeffs[1:]):
        return coeffs[0]
    table = _power_table(m)
    for d in _divisors(m)[1:-1]:
        step = m // d
        cols = [table[j * step] for j in range(euler_phi(d))]
        sol = _solve(cols, coeffs)
        if sol is not None:
            return Cyclotomic._raw(d, tuple(sol))
    return Cyclotomic._raw(m, coeffs)


def _make(m: int, coeffs) -> "Fraction | Cyclotomic":
    return _minimize(m, tuple(Fraction(c) for c in coeffs))


def to_scalar(x) -> "Fraction | Cyclotomic":
    if isinstance(x, (Fraction, Cyclotomic)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


class Cyclotomic:
    """Non-rational element of Q(zeta_order), at its minimal order."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, *_args, **_kw):
        raise TypeError("use cyclo_root() or Cyclotomic.from_coeffs()")

    @classmethod
    def _raw(cls, order: int, coeffs: tuple[Fraction, ...]) -> "Cyclotomic":
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        obj._hash = hash((order, coeffs))
        return obj

    @classmethod
    def from_coeffs(cls, order: int, coeffs) -> "Fraction | Cyclotomic":
        """Element sum c_j z^j of Q(zeta_order); coeffs may be any length."""
        return _make(order, _from_exponents(order, enumerate(coeffs)))

    def _lift(self, order: int) -> list[Fraction]:
        step = order // self.order
        return _from_exponents(order, ((j * step, c) for j, c in enumerate(self.coeffs)))

    @staticmethod
    def _common(a, b):
        ma = a.order if isinstance(a, Cyclotomic) else 1
        mb = b.order if isinstance(b, Cyclotomic) else 1
        n = ma * mb // gcd(ma, mb)

        def lift(x):
            if isinstance(x, Cyclotomic):
                return x._lift(n)
            return [Fraction(x)] + [Fraction(0)] * (euler_phi(n) - 1)

        return n, lift(a), lift(b)

    def __add__(self, other):
        if not isinstance(other, (Cyclotomic, Fraction, int)):
            return NotImplemented
        n, u, v = self._common(self, other)
        return _make(n, [a + b for a, b in zip(u, v)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, (Cyclotomic, Fraction, int)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Fraction, int)):
            if not other:
                return Fraction(0)
            return Cyclotomic._raw(self.order, tuple(c * other for c in self.coeffs))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        n, u, v = self._common(self, other)
        prod: dict[int, Fraction] = {}
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        prod[i + j] = prod.get(i + j, 0) + a * b
        return _make(n, _from_exponents(n, prod.items()))

    __rmul__ = __mul__

    def inverse(self) -> "Fraction | Cyclotomic":
        return _inverse(self)

    def __truediv__(self, other):
        if isinstance(other, (Fraction, int)):
            if not other:
                raise ZeroDivisionError("cyclotomic division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result: Fraction | Cyclotomic = Fraction(1)
        base: Fraction | Cyclotomic = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (Fraction, int)):
            return False
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return True

    def format(self, compact: bool = False) -> str:
        name = f"z{self.order}"
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if not c:
                continue
            mono = "" if j == 0 else (name if j == 1 else f"{name}^{j}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        sep = "" if compact else " "
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f"{sep}{sign}{sep}{body}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Cyclotomic({self.order}, {list(map(str, self.coeffs))})"


@lru_cache(maxsize=4096)
def _inverse(x: Cyclotomic):
    m = x.order
    table = _power_table(m)
    phi = euler_phi(m)
    # columns: coordinates of x * z^j
    cols = []
    for j in range(phi):
        cols.append(tuple(_from_exponents(m, ((i + j, c) for i, c in enumerate(x.coeffs)))))
    sol = _solve(cols, tuple(Fraction(int(i == 0)) for i in range(phi)))
    assert sol is not None and table  # nonzero elements of a field are invertible
    return _make(m, sol)


def cyclo_root(m: int) -> "Fraction | Cyclotomic":
    """The primitive root zeta_m = exp(2 pi i / m)."""
    if m < 1:
        raise ValueError("order must be positive")
    if m == 1:
        return Fraction(1)
    return _make(m, _from_exponents(m, [(1, Fraction(1))]))


def root_power(m: int, k: int) -> "Fraction | Cyclotomic":
    """zeta_m ** k with k taken modulo m."""
    k %= m
    if k == 0:
        return Fraction(1)
    return _make(m, _from_exponents(m, [(k, Fraction(1))]))


def is_root_of_unity(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x in (1, -1)
    if isinstance(x, Cyclotomic):
        # roots of unity in Q(zeta_m) have order dividing 2m
        return x ** (2 * x.order) == 1
    return False
