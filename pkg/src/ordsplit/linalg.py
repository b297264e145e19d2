"""Small exact linear algebra over Fractions.

Everything here works on tuples of tuples of Fraction; sizes are desk-scale
(rank <= ~6), so plain Gaussian elimination and Fourier-Motzkin are fine.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


def mat(rows) -> Matrix:
    return tuple(tuple(Fraction(c) for c in row) for row in rows)


def identity_matrix(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b))
        for row in a
    )


def mat_vec(a: Matrix, v) -> Vector:
    return tuple(sum((c * Fraction(x) for c, x in zip(row, v)), Fraction(0)) for row in a)


def mat_pow(a: Matrix, n: int) -> Matrix:
    if n < 0:
        inv = matrix_inverse(a)
        if inv is None:
            raise ValueError("matrix is not invertible")
        return mat_pow(inv, -n)
    out = identity_matrix(len(a))
    base = a
    while n:
        if n & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        n >>= 1
    return out


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(a, b))


def determinant(a: Matrix) -> Fraction:
    n = len(a)
    rows = [list(r) for r in a]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, n):
            f = rows[r][col] * inv
            if f:
                for c in range(col, n):
                    rows[r][c] -= f * rows[col][c]
    return det


def matrix_inverse(a: Matrix) -> Matrix | None:
    n = len(a)
    if any(len(row) != n for row in a):
        return None
    aug = [list(row) + list(identity_matrix(n)[i]) for i, row in enumerate(mat(a))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [c * inv for c in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def solve(a: Matrix, b) -> tuple[Vector | None, list[Vector]]:
    """One solution of a x = b (or None) plus a basis of the null space."""
    m, n = len(a), len(a[0]) if a else 0
    aug = [[Fraction(c) for c in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [c * inv for c in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None, []
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = aug[i][n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, col in enumerate(pivots):
            v[col] = -aug[i][fc]
        basis.append(tuple(v))
    return tuple(x), basis


def feasible_strict(
    nonneg: list, strict_neg: list
) -> Vector | None:
    """Find y with y.a >= 0 for all a in nonneg and y.x < 0 for all x in strict_neg.

    Fourier-Motzkin on the homogeneous system; returns a rational witness or
    None when no such functional exists.
    """
    if not strict_neg:
        return None
    n = len(strict_neg[0])
    # Constraints as (coeffs, strict): coeffs . y >= 0, or > 0 when strict.
    cons: list[tuple[list[Fraction], bool]] = []
    for a in nonneg:
        cons.append(([Fraction(c) for c in a], False))
    for x in strict_neg:
        cons.append(([-Fraction(c) for c in x], True))
    return _fourier_motzkin(cons, n)


def _fourier_motzkin(cons, n) -> Vector | None:
    """Solve coeffs.y >= 0 (or > 0) by eliminating y_{n-1}, ..., y_0."""
    if n == 0:
        for coeffs, strict in cons:
            if strict:
                return None
        return ()
    var = n - 1
    lower, upper, rest = [], [], []
    # c*y_var + head.y' >= 0  ->  y_var >= -head.y'/c (c>0), <= -head.y'/c (c<0).
    for coeffs, strict in cons:
        c = coeffs[var]
        head = coeffs[:var]
        if c > 0:
            lower.append(([x / c for x in head], strict))
        elif c < 0:
            upper.append(([x / c for x in head], strict))
        else:
            rest.append((head, strict))
    for lo, s1 in lower:
        for up, s2 in upper:
            # -lo.y' <= -up.y' is (lo - up).y' >= 0; strict if either side is.
            rest.append(([l - u for l, u in zip(lo, up)], s1 or s2))
    sub = _fourier_motzkin(rest, var)
    if sub is None:
        return None
    subl = list(sub)

    def val(expr):
        return sum((c * v for c, v in zip(expr, subl)), Fraction(0))

    lo_bound = lo_strict = None
    for lo, s in lower:
        v = -val(lo)
        if lo_bound is None or v > lo_bound:
            lo_bound, lo_strict = v, s
        elif v == lo_bound:
            lo_strict = lo_strict or s
    up_bound = up_strict = None
    for up, s in upper:
        v = -val(up)
        if up_bound is None or v < up_bound:
            up_bound, up_strict = v, s
        elif v == up_bound:
            up_strict = up_strict or s
    if lo_bound is None and up_bound is None:
        y = Fraction(0)
    elif lo_bound is None:
        y = up_bound - 1 if up_strict else up_bound
    elif up_bound is None:
        y = lo_bound + 1 if lo_strict else lo_bound
    else:
        if lo_bound > up_bound:
            return None
        if lo_bound == up_bound:
            if lo_strict or up_strict:
                return None
            y = lo_bound
        else:
            y = (lo_bound + up_bound) / 2
    return tuple(subl + [y])
