"""Integer lattices: Hermite normal form and generation tests."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["xgcd", "hnf", "LatticeCertificate", "generates_group", "generates_monoid"]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def hnf(rows: list[list[int]], ncols: int | None = None):
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U * A = H``, U unimodular, H upper echelon with
    positive pivots and entries above each pivot reduced into [0, pivot).
    Zero rows are kept at the bottom of H.
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r >= m:
            break
        for i in range(r + 1, m):
            if a[i][c] == 0:
                continue
            x, y = a[r][c], a[i][c]
            g, s, t = xgcd(x, y)
            p, q = -y // g, x // g
            a[r], a[i] = (
                [s * v + t * w for v, w in zip(a[r], a[i])],
                [p * v + q * w for v, w in zip(a[r], a[i])],
            )
            u[r], u[i] = (
                [s * v + t * w for v, w in zip(u[r], u[i])],
                [p * v + q * w for v, w in zip(u[r], u[i])],
            )
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-v for v in a[r]]
            u[r] = [-v for v in u[r]]
        piv = a[r][c]
        for k in range(r):
            f = a[k][c] // piv
            if f:
                a[k] = [v - f * w for v, w in zip(a[k], a[r])]
                u[k] = [v - f * w for v, w in zip(u[k], u[r])]
        r += 1
    return a, u


@dataclass
class LatticeCertificate:
    generates: bool
    rows: list
    hnf: list
    transform: list = field(repr=False)

    def to_json(self) -> dict:
        return {
            "generates": self.generates,
            "rows": self.rows,
            "hnf": self.hnf,
            "transform": self.transform,
        }


def generates_group(vectors, n: int | None = None) -> LatticeCertificate:
    """Whether the integer span of *vectors* is all of Z^n."""
    rows = sorted({tuple(int(x) for x in v) for v in vectors})
    if n is None:
        if not rows:
            raise ValueError("dimension required for an empty set")
        n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise ValueError("vectors of mixed length")
    h, u = hnf([list(r) for r in rows], n)
    nonzero = [row for row in h if any(row)]
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    return LatticeCertificate(nonzero == ident, [list(r) for r in rows], nonzero, u)


def generates_monoid(vectors, n: int | None = None) -> bool:
    """Whether *vectors* (entries >= 0) generate N^n as a monoid.

    Any sum involving a vector outside {e_1, ..., e_n} overshoots some basis
    vector, so the test reduces to containment of the standard basis.
    """
    vecs = {tuple(int(x) for x in v) for v in vectors}
    if n is None:
        if not vecs:
            raise ValueError("dimension required for an empty set")
        n = len(next(iter(vecs)))
    if any(min(v) < 0 for v in vecs if v):
        raise ValueError("monoid generators must have nonnegative entries")
    return all(tuple(int(i == j) for j in range(n)) in vecs for i in range(n))
