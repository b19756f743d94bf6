"""Exact integer linear algebra over arbitrary-precision Python ints.

Reference implementation of the kernel API.  `_kernel_fast` mirrors these
semantics in 64-bit arithmetic and raises OverflowError whenever a value
might not fit, at which point `kernel` retries here, so results are exact
no matter which backend is active.
"""


def det(rows):
    """Determinant of a square integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0 or any(len(r) != n for r in m):
        raise ValueError("matrix must be square and non-empty")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Bareiss step: the division by the previous pivot is exact.
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def solve(rows, rhs):
    """Solve A x = b exactly by Cramer's rule.

    Returns (nums, den) with x_i = nums[i] / den and den = det(A).
    Raises ValueError when A is singular.
    """
    d = det(rows)
    if d == 0:
        raise ValueError("singular linear system")
    n = len(rows)
    if len(rhs) != n:
        raise ValueError("right-hand side has wrong length")
    nums = []
    for j in range(n):
        replaced = [list(r) for r in rows]
        for i in range(n):
            replaced[i][j] = rhs[i]
        nums.append(det(replaced))
    return tuple(nums), d
