"""Exact dense linear algebra over Q and other exact fields, plus a GF(2) solver.

Matrices are lists of rows.  Ranks of rational matrices are computed
fraction-free (rows scaled to integers, then Bareiss elimination), so the hot
path runs on machine integers; nullspaces and solves use ordinary Gaussian
elimination over whatever exact field the entries live in (Fraction or the
rational-function scalars from qfield).  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import LinAlgError


def _is_rational_matrix(rows) -> bool:
    return all(isinstance(x, (int, Fraction)) for row in rows for x in row)


def scale_rows_to_int(rows) -> list[list[int]]:
    """Scale each row by the lcm of its denominators; preserves rank and kernel."""
    out = []
    for row in rows:
        mult = 1
        for x in row:
            if isinstance(x, Fraction):
                mult = lcm(mult, x.denominator)
        out.append([int(x * mult) for x in row])
    return out


def _int_rank(rows: list[list[int]]) -> int:
    """Bareiss fraction-free elimination; all divisions are exact."""
    m = [row[:] for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    row = 0
    prev = 1
    for col in range(nc):
        piv = None
        for r in range(row, nr):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        p = m[row][col]
        for r in range(row + 1, nr):
            x = m[r][col]
            mr = m[r]
            mp = m[row]
            for c in range(col + 1, nc):
                mr[c] = (p * mr[c] - x * mp[c]) // prev
            mr[col] = 0
        prev = p
        rank += 1
        row += 1
        if row == nr:
            break
    return rank


def _field_rank(rows) -> int:
    m = [list(row) for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    row = 0
    for col in range(nc):
        piv = None
        for r in range(row, nr):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        p = m[row][col]
        for r in range(row + 1, nr):
            x = m[r][col]
            if x:
                f = x / p
                mr = m[r]
                mp = m[row]
                for c in range(col, nc):
                    mr[c] = mr[c] - f * mp[c]
        rank += 1
        row += 1
        if row == nr:
            break
    return rank


def rank(rows) -> int:
    if not rows or not rows[0]:
        return 0
    if _is_rational_matrix(rows):
        return _int_rank(scale_rows_to_int(rows))
    return _field_rank(rows)


def rref(rows, ncols: int):
    """Reduced row echelon form over the entries' field.

    Returns (matrix, pivot_columns); the input is not modified.
    """
    m = [list(row) for row in rows]
    nr = len(m)
    pivots = []
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nr):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        p = m[row][col]
        m[row] = [x / p for x in m[row]]
        for r in range(nr):
            if r != row and m[r][col]:
                f = m[r][col]
                mr = m[r]
                mp = m[row]
                for c in range(col, ncols):
                    mr[c] = mr[c] - f * mp[c]
        pivots.append(col)
        row += 1
        if row == nr:
            break
    return m, pivots


def nullspace(rows, ncols: int, one=Fraction(1)):
    """Deterministic kernel basis: one vector per free column, ascending,
    with a 1 in the free coordinate."""
    zero = one - one
    m, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [zero] * ncols
        v[free] = one
        for prow, pcol in enumerate(pivots):
            v[pcol] = -m[prow][free]
        basis.append(v)
    return basis


def solve_columns(a_rows, b_rows, ncols_a: int, ncols_b: int):
    """Solve A X = B columnwise; raises LinAlgError when inconsistent.

    Free coordinates of X are set to zero (in this package A always has full
    column rank, so solutions are unique).
    """
    nr = len(a_rows)
    if len(b_rows) != nr:
        raise LinAlgError("row count mismatch")
    aug = [list(a_rows[r]) + list(b_rows[r]) for r in range(nr)]
    m, pivots = rref(aug, ncols_a + ncols_b)
    for col in pivots:
        if col >= ncols_a:
            raise LinAlgError("inconsistent system")
    if pivots:
        zero = m[0][0] - m[0][0]
    elif nr:
        zero = a_rows[0][0] - a_rows[0][0]
    else:
        zero = Fraction(0)
    x = [[zero] * ncols_b for _ in range(ncols_a)]
    for prow, pcol in enumerate(pivots):
        for j in range(ncols_b):
            x[pcol][j] = m[prow][ncols_a + j]
    return x


def in_column_span(a_rows, vec) -> bool:
    """Whether vec lies in the column span of A (rank comparison)."""
    base = rank(a_rows)
    aug = [list(row) + [v] for row, v in zip(a_rows, vec)]
    if not a_rows:
        return all(not v for v in vec)
    return rank(aug) == base


def mat_mul(a_rows, b_rows, zero=Fraction(0)):
    nr = len(a_rows)
    inner = len(b_rows)
    nc = len(b_rows[0]) if inner else 0
    out = [[zero] * nc for _ in range(nr)]
    for i in range(nr):
        ai = a_rows[i]
        oi = out[i]
        for k in range(inner):
            x = ai[k]
            if x:
                bk = b_rows[k]
                for j in range(nc):
                    if bk[j]:
                        oi[j] = oi[j] + x * bk[j]
    return out


def mat_is_zero(rows) -> bool:
    return all(not x for row in rows for x in row)


def gf2_solve(n_vars: int, constraints):
    """Solve a parity system over GF(2).

    constraints: iterable of (variable-index iterable, rhs bit).  Returns a
    0/1 list with all free variables set to 0, or None if inconsistent.
    Rows are packed into Python ints, rhs in bit n_vars.
    """
    var_mask = (1 << n_vars) - 1
    pivots: dict[int, int] = {}
    for idxs, rhs in constraints:
        cur = 0
        for i in idxs:
            cur ^= 1 << i
        cur |= (rhs & 1) << n_vars
        while cur & var_mask:
            low = (cur & var_mask) & -(cur & var_mask)
            col = low.bit_length() - 1
            if col in pivots:
                cur ^= pivots[col]
            else:
                pivots[col] = cur
                cur = 0
        if cur:
            return None
    sol = [0] * n_vars
    for col in sorted(pivots, reverse=True):
        row = pivots[col]
        s = (row >> n_vars) & 1
        m = (row & var_mask) & ~(1 << col)
        while m:
            b = m & -m
            s ^= sol[b.bit_length() - 1]
            m ^= b
        sol[col] = s
    return sol
