"""Exact row reduction over the coefficient field, on sparse rows."""

from __future__ import annotations


def rref(rows, columns):
    """Reduced row echelon form of sparse rows (dicts column -> field element).

    Pivot choice is deterministic: columns are scanned in the given order and
    the earliest remaining row with a nonzero entry is used.
    Returns the nonzero reduced rows in pivot order.
    """
    work = [dict(r) for r in rows if r]
    done = []
    pivots = []
    for col in columns:
        idx = next((i for i, r in enumerate(work) if r.get(col)), None)
        if idx is None:
            continue
        row = work.pop(idx)
        inv = row[col].inverse()
        row = {k: v * inv for k, v in row.items()}
        for other in work + done:
            f = other.get(col)
            if f:
                for k, v in row.items():
                    nv = other.get(k)
                    nv = -f * v if nv is None else nv - f * v
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        work = [r for r in work if r]
        done.append(row)
        pivots.append(col)
    return done, pivots


def span_equal(rows_a, rows_b, columns) -> bool:
    cols = list(columns)
    ra, _ = rref(rows_a, cols)
    rb, _ = rref(rows_b, cols)
    return ra == rb


def rank(rows, columns) -> int:
    return len(rref(rows, list(columns))[0])
