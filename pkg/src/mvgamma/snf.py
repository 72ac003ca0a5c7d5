"""Smith normal form over the integers, exact, dependency-free.

Inputs are lists of equal-length integer rows.  Python ints are unbounded, so
there is no overflow regime to guard; the reduction is the classical one:
pick the smallest nonzero entry as pivot, clear its row and column by
division with remainder, absorb any entry the pivot fails to divide, recurse
into the remaining block, then repair the divisibility chain on the diagonal
with gcd/lcm exchanges.
"""

from __future__ import annotations

from math import gcd

__all__ = ["smith_diagonal", "invariant_factors", "matrix_rank"]


def _pivot(a: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    best_val = None
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            v = abs(row[j])
            if v and (best_val is None or v < best_val):
                best, best_val = (i, j), v
                if v == 1:
                    return best
    return best


def smith_diagonal(rows: list[list[int]], ncols: int | None = None) -> list[int]:
    """Diagonal of the Smith form, nonnegative, divisibility-ordered.

    The result has length min(nrows, ncols) and is padded with zeros past the
    rank.  An empty row list is allowed when ncols is given (rank 0).
    """
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(rows[0])
    a = [list(map(int, r)) for r in rows]
    for r in a:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    m, n = len(a), ncols
    bound = min(m, n)
    diag: list[int] = []
    t = 0
    while t < bound:
        pv = _pivot(a, t)
        if pv is None:
            break
        pi, pj = pv
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t, m):
                if i == t or a[i][t] == 0:
                    continue
                q = a[i][t] // p
                a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]
                    dirty = True
                    break
            if dirty:
                continue
            for j in range(t, n):
                if j == t or a[t][j] == 0:
                    continue
                q = a[t][j] // p
                for row in a:
                    row[j] -= q * row[t]
                if a[t][j]:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                    dirty = True
                    break
            if dirty:
                continue
            # pivot must divide the rest of the block; absorb a bad row
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        diag.append(abs(a[t][t]))
        t += 1
    diag.extend(0 for _ in range(bound - len(diag)))
    # repair divisibility (zeros count as divisible by everything, so they sink)
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            x, y = diag[i], diag[i + 1]
            divides = (y % x == 0) if x else (y == 0)
            if not divides:
                g = gcd(x, y)
                diag[i] = g
                diag[i + 1] = 0 if (x == 0 or y == 0) else x * y // g
                changed = True
    return diag


def matrix_rank(rows: list[list[int]], ncols: int | None = None) -> int:
    return sum(1 for d in smith_diagonal(rows, ncols) if d)


def invariant_factors(rows: list[list[int]], ncols: int) -> list[int]:
    """Invariant factors of the quotient of Z^ncols by the row span.

    Torsion factors greater than 1 in divisibility order, then one 0 per free
    rank.  Unit factors are dropped, so equality of two such lists is exactly
    isomorphism of the described groups.
    """
    diag = smith_diagonal(rows, ncols)
    rank = sum(1 for d in diag if d)
    torsion = [d for d in diag if d > 1]
    return torsion + [0] * (ncols - rank)
