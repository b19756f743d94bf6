"""Exact rational feasibility for small cone-membership systems.

Phase-one simplex over Fraction with Bland's rule: deterministic, cycle
free, and free of rounding.  Used for interior-overlap detection between
cones and for deciding whether a curve class lies in the cone spanned by
the other wall classes.
"""

from fractions import Fraction


def in_nonneg_span(columns, target):
    """Decide whether target = sum(lam_j * columns[j]) admits lam >= 0.

    ``columns`` and ``target`` are integer vectors of equal length; the
    answer is exact over the rationals.
    """
    m = len(columns)
    r = len(target)
    for col in columns:
        if len(col) != r:
            raise ValueError("column length mismatch")
    # Equality rows A lam = b with b >= 0, plus one artificial per row;
    # feasible iff the artificial sum minimises to zero.
    T = []
    b = []
    for i in range(r):
        sign = -1 if target[i] < 0 else 1
        row = [Fraction(sign * col[i]) for col in columns]
        row.extend(Fraction(int(i == k)) for k in range(r))
        T.append(row)
        b.append(Fraction(sign * target[i]))
    basis = [m + i for i in range(r)]
    while True:
        art_rows = [i for i in range(r) if basis[i] >= m]
        if sum((b[i] for i in art_rows), Fraction(0)) == 0:
            return True
        # Bland's rule: the lowest-index structural column with negative
        # reduced cost enters (artificials never re-enter).
        entering = -1
        for j in range(m):
            if j in basis:
                continue
            if sum((T[i][j] for i in art_rows), Fraction(0)) > 0:
                entering = j
                break
        if entering < 0:
            return False
        leave = -1
        best = None
        for i in range(r):
            if T[i][entering] > 0:
                ratio = b[i] / T[i][entering]
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best, leave = ratio, i
        if leave < 0:
            raise ArithmeticError("phase-one simplex cannot be unbounded")
        piv = T[leave][entering]
        T[leave] = [x / piv for x in T[leave]]
        b[leave] /= piv
        for i in range(r):
            if i != leave and T[i][entering] != 0:
                f = T[i][entering]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
                b[i] -= f * b[leave]
        basis[leave] = entering
