"""Exact dense linear algebra over the rationals.

Everything here is deterministic: pivots are chosen as the first row with a
nonzero entry in ascending column order, and kernel bases come out in echelon
form with the free coordinate set to 1.  Elimination is fraction-free
(integer cross-multiplication with row-content stripping), so no rational
normalization happens until back-substitution.
"""

from fractions import Fraction
from math import gcd


def _int_rows(rows):
    """Clear denominators row by row; returns integer rows (content-stripped)."""
    out = []
    for row in rows:
        lcm = 1
        for x in row:
            if isinstance(x, Fraction):
                d = x.denominator
                lcm = lcm // gcd(lcm, d) * d
        ints = [int(x * lcm) if isinstance(x, Fraction) else int(x) * lcm for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _strip(row):
    g = 0
    for v in row:
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return [v // g for v in row]
    return row


def row_echelon(rows, ncols):
    """Fraction-free row echelon form.

    Returns (echelon_rows, pivot_cols) where echelon_rows are integer rows and
    pivot_cols[i] is the pivot column of echelon_rows[i].
    """
    work = [r for r in _int_rows(rows) if any(r)]
    pivots = []
    ech = []
    for col in range(ncols):
        pivot_row = None
        for idx, r in enumerate(work):
            if r[col] != 0:
                pivot_row = idx
                break
        if pivot_row is None:
            continue
        piv = work.pop(pivot_row)
        p = piv[col]
        nxt = []
        for r in work:
            if r[col] != 0:
                # fraction-free update: p*r - r[col]*piv
                c = r[col]
                r = _strip([p * a - c * b for a, b in zip(r, piv)])
            if any(r):
                nxt.append(r)
        work = nxt
        ech.append(piv)
        pivots.append(col)
        if not work:
            break
    return ech, pivots


def kernel(rows, ncols):
    """Exact basis of {x : R x = 0} for the given constraint rows.

    The basis is returned as a list of Fraction vectors, one per free column,
    with the free coordinate normalized to 1 (echelon-style, deterministic).
    An empty constraint list yields the standard basis.
    """
    ech, pivots = row_echelon(rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        # back-substitute pivot coordinates, bottom-up
        for i in range(len(ech) - 1, -1, -1):
            row = ech[i]
            pc = pivots[i]
            s = Fraction(0)
            for c in range(pc + 1, ncols):
                if row[c] and vec[c]:
                    s += Fraction(row[c]) * vec[c]
            if s:
                vec[pc] = -s / row[pc]
        basis.append(vec)
    return basis


def rank(rows, ncols):
    return len(row_echelon(rows, ncols)[1])


def solve_in_span(basis_cols, target):
    """Write target as a combination of basis columns, or return None.

    basis_cols: list of vectors (the columns) with Fraction entries; target: a
    vector of the same length over any field extension of Q (Fraction or
    RationalFunction entries).  Returns the coefficient list or None if target
    is outside the span.
    """
    m = len(basis_cols)
    if m == 0:
        return [] if not any(target) else None
    nrows = len(target)
    # Gaussian elimination on the augmented system [B | t]
    aug = [[Fraction(basis_cols[j][i]) for j in range(m)] + [target[i]]
           for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(m):
        pr = None
        for i in range(r, nrows):
            if aug[i][c]:
                pr = i
                break
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    # consistency: rows past the pivot rows must have zero RHS
    for i in range(r, nrows):
        if aug[i][m]:
            return None
    coeffs = [Fraction(0)] * m
    for i, c in enumerate(pivots):
        coeffs[c] = aug[i][m]
    # free basis columns (dependent basis) keep coefficient 0; verify exactly
    for i in range(nrows):
        s = Fraction(0)
        for j in range(m):
            if coeffs[j] and basis_cols[j][i]:
                s = s + coeffs[j] * basis_cols[j][i]
        if s != target[i]:
            return None
    return coeffs
