"""Small exact linear algebra: integer HNF and rational solving.

Matrices are lists of row tuples.  Sizes here are tiny (a handful of
generators over a degree-at-most-8 field), so the quadratic algorithms
are fine; what matters is exactness.
"""

from __future__ import annotations

from fractions import Fraction


def hnf_with_transform(rows: list[tuple[int, ...]]):
    """Row Hermite form of an integer matrix.

    Returns (H, U, pivots) with U unimodular, U*A = H', where H' stacks the
    nonzero rows H over zero rows; pivots[i] is the pivot column of H[i].
    Rows of U beyond len(H) span the integer kernel of A.
    """
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    piv_row = 0
    pivots = []
    for col in range(ncols):
        # Euclidean reduction of column `col` below piv_row.
        while True:
            nz = [r for r in range(piv_row, nrows) if a[r][col] != 0]
            if not nz:
                break
            r0 = min(nz, key=lambda r: abs(a[r][col]))
            if a[r0][col] < 0:
                a[r0] = [-x for x in a[r0]]
                u[r0] = [-x for x in u[r0]]
            done = True
            for r in nz:
                if r == r0:
                    continue
                q = a[r][col] // a[r0][col]
                if q:
                    a[r] = [x - q * y for x, y in zip(a[r], a[r0])]
                    u[r] = [x - q * y for x, y in zip(u[r], u[r0])]
                if a[r][col] != 0:
                    done = False
            if done:
                a[piv_row], a[r0] = a[r0], a[piv_row]
                u[piv_row], u[r0] = u[r0], u[piv_row]
                break
        if piv_row < nrows and a[piv_row][col] != 0:
            # reduce entries above the pivot into canonical range
            p = a[piv_row][col]
            for r in range(piv_row):
                q = a[r][col] // p
                if q:
                    a[r] = [x - q * y for x, y in zip(a[r], a[piv_row])]
                    u[r] = [x - q * y for x, y in zip(u[r], u[piv_row])]
            pivots.append(col)
            piv_row += 1
    h = [tuple(r) for r in a[:piv_row]]
    return h, [tuple(r) for r in u], pivots


def kernel_basis(rows: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Z-basis of the integer (left) kernel {x : x*A = 0}."""
    if not rows:
        return []
    h, u, _ = hnf_with_transform(rows)
    return [u[i] for i in range(len(h), len(rows))]


def solve_upper(h: list[tuple[int, ...]], pivots: list[int], target) -> list[Fraction] | None:
    """Solve x*H = target for H in row-Hermite form; None if inconsistent."""
    x = [Fraction(0)] * len(h)
    rem = [Fraction(t) for t in target]
    for i, col in enumerate(pivots):
        if h[i][col] == 0:
            return None
        x[i] = rem[col] / h[i][col]
        if x[i]:
            for j in range(len(rem)):
                rem[j] -= x[i] * h[i][j]
    if any(rem):
        return None
    return x


def is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0
