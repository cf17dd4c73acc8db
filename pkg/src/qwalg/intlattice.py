"""Exact integer linear algebra on dense arbitrary-precision matrices.

Matrices are plain lists of lists of Python ints and are never mutated by
the public functions. Normal forms track their transforms so that every
result can be re-verified by exact multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> list[list[int]]:
    return [[0] * c for _ in range(r)]


def copy(a) -> list[list[int]]:
    return [list(row) for row in a]


def transpose(a) -> list[list[int]]:
    if not a:
        return []
    return [[a[i][j] for i in range(len(a))] for j in range(len(a[0]))]


def matmul(a, b) -> list[list[int]]:
    if a and b and len(a[0]) != len(b):
        raise ValueError("dimension mismatch")
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)]
            for i in range(len(a))]


def matvec(a, v) -> list[int]:
    return [sum(row[k] * v[k] for k in range(len(v))) for row in a]


def mat_eq(a, b) -> bool:
    return [list(r) for r in a] == [list(r) for r in b]


def det(a) -> int:
    """Fraction-free Bareiss determinant."""
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    m = copy(a)
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
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def hermite_nf(a) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form: returns (H, U) with U*a = H, |det U| = 1.

    H is in echelon form with positive pivots and the entries above each
    pivot reduced into [0, pivot); this form is the canonical representative
    of the row lattice.
    """
    h = copy(a)
    r = len(h)
    c = len(h[0]) if h else 0
    u = identity(r)
    piv = 0
    for col in range(c):
        # Gcd-descent on the entries of this column at rows >= piv.
        while True:
            nz = [i for i in range(piv, r) if h[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(h[i][col]))
            if i0 != piv:
                h[piv], h[i0] = h[i0], h[piv]
                u[piv], u[i0] = u[i0], u[piv]
            p = h[piv][col]
            done = True
            for i in range(piv + 1, r):
                q = h[i][col] // p
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[piv])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[piv])]
                if h[i][col] != 0:
                    done = False
            if done:
                break
        if piv < r and h[piv][col] != 0:
            if h[piv][col] < 0:
                h[piv] = [-x for x in h[piv]]
                u[piv] = [-x for x in u[piv]]
            p = h[piv][col]
            for i in range(piv):
                q = h[i][col] // p
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[piv])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[piv])]
            piv += 1
            if piv == r:
                break
    return h, u


def smith_nf(a) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form: returns (D, U, V) with U*a*V = D and d_i | d_{i+1}."""
    d = copy(a)
    r = len(d)
    c = len(d[0]) if d else 0
    u = identity(r)
    v = identity(c)

    def row_op(i, j, q):  # row_i -= q*row_j
        d[i] = [x - q * y for x, y in zip(d[i], d[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q*col_j
        for row in d:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    t = 0
    while t < min(r, c):
        # Locate the smallest nonzero entry of the active block.
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best
        if i0 != t:
            d[t], d[i0] = d[i0], d[t]
            u[t], u[i0] = u[i0], u[t]
        if j0 != t:
            for row in d:
                row[t], row[j0] = row[j0], row[t]
            for row in v:
                row[t], row[j0] = row[j0], row[t]
        p = d[t][t]
        dirty = False
        for i in range(t + 1, r):
            q = d[i][t] // p
            if q:
                row_op(i, t, q)
            if d[i][t] != 0:
                dirty = True
        for j in range(t + 1, c):
            q = d[t][j] // p
            if q:
                col_op(j, t, q)
            if d[t][j] != 0:
                dirty = True
        if dirty:
            continue
        # Pivot must divide everything that remains.
        offender = None
        for i in range(t + 1, r):
            for j in range(t + 1, c):
                if d[i][j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)  # adds the offending row to row t
            continue
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return d, u, v


def rank(a) -> int:
    d, _, _ = smith_nf(a)
    return sum(1 for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i] != 0)


def kernel(a, ncols: int | None = None) -> list[list[int]]:
    """Basis (as rows) of the right kernel {x : a*x = 0} over Z."""
    if not a:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return identity(ncols)
    c = len(a[0])
    d, _, v = smith_nf(a)
    rk = sum(1 for i in range(min(len(d), c)) if d[i][i] != 0)
    cols = [[v[i][j] for i in range(c)] for j in range(rk, c)]
    h, _ = hermite_nf(cols) if cols else ([], [])
    return [row for row in h if any(row)]


def kernel_with_torsion(a, b, e: int, ncols: int) -> list[list[int]]:
    """Basis of {x in Z^ncols : a*x = 0 over Z and b*x = 0 mod e}.

    Solved by adjoining one auxiliary unconstrained variable per row of b
    scaled by e, then projecting the integer kernel back to the x block.
    """
    if e < 1:
        raise ValueError("modulus must be >= 1")
    for row in list(a) + list(b):
        if len(row) != ncols:
            raise ValueError("dimension mismatch")
    rows = [list(r) + [0] * len(b) for r in a]
    for k, r in enumerate(b):
        aux = [0] * len(b)
        aux[k] = e
        rows.append(list(r) + aux)
    if not rows:
        return identity(ncols)
    ker = kernel(rows, ncols + len(b))
    proj = [row[:ncols] for row in ker]
    if not proj:
        return []
    h, _ = hermite_nf(proj)
    return [row for row in h if any(row)]


def lattice_intersect(basis1, basis2, dim: int) -> list[list[int]]:
    """Basis of the intersection of the row lattices spanned by basis1, basis2."""
    for row in list(basis1) + list(basis2):
        if len(row) != dim:
            raise ValueError("dimension mismatch")
    if not basis1 or not basis2:
        return []
    r1, r2 = len(basis1), len(basis2)
    # x*basis1 = y*basis2  <=>  (x, y) in kernel of the stacked transpose.
    stacked = [[basis1[i][j] for i in range(r1)] + [-basis2[i][j] for i in range(r2)]
               for j in range(dim)]
    ker = kernel(stacked, r1 + r2)
    vecs = []
    for row in ker:
        v = [sum(row[i] * basis1[i][j] for i in range(r1)) for j in range(dim)]
        if any(v):
            vecs.append(v)
    if not vecs:
        return []
    h, _ = hermite_nf(vecs)
    return [row for row in h if any(row)]


def lattice_member(basis, vec) -> bool:
    """Exact membership test of vec in the row lattice spanned by basis."""
    if not basis:
        return not any(vec)
    h, _ = hermite_nf(basis)
    rows = [r for r in h if any(r)]
    v = list(vec)
    for row in rows:
        j = next(i for i, x in enumerate(row) if x)
        if v[j] % row[j] != 0:
            return False
        q = v[j] // row[j]
        v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


@dataclass(frozen=True)
class SkewNormalForm:
    """Congruence canonical form of an antisymmetric integer matrix.

    transform U satisfies U^T * A * U = C where C is block diagonal with
    hyperbolic blocks [[0, d_i], [-d_i, 0]] followed by zeros, and the
    divisors satisfy d_i | d_{i+1}.
    """

    size: int
    divisors: tuple[int, ...]
    transform: tuple[tuple[int, ...], ...]

    def canonical_matrix(self) -> list[list[int]]:
        c = zeros(self.size, self.size)
        for k, d in enumerate(self.divisors):
            c[2 * k][2 * k + 1] = d
            c[2 * k + 1][2 * k] = -d
        return c


def is_antisymmetric(a) -> bool:
    n = len(a)
    return all(len(row) == n for row in a) and \
        all(a[i][j] == -a[j][i] for i in range(n) for j in range(n))


def skew_normal_form(a) -> SkewNormalForm:
    """Reduce an antisymmetric matrix to its congruence canonical form.

    Simultaneous row/column operations (so the result is U^T A U) run a
    gcd descent on the active block, isolate one hyperbolic block at a
    time, and force the pivot to divide the remainder before moving on,
    which yields the divisor chain directly.
    """
    if not is_antisymmetric(a):
        raise ValueError("matrix is not antisymmetric")
    n = len(a)
    m = copy(a)
    u = identity(n)

    def col_add(j, k, q):  # col_j += q*col_k together with row_j += q*row_k
        for i in range(n):
            m[i][j] += q * m[i][k]
        for i in range(n):
            m[j][i] += q * m[k][i]
        for i in range(n):
            u[i][j] += q * u[i][k]

    def swap(j, k):
        if j == k:
            return
        for row in m:
            row[j], row[k] = row[k], row[j]
        m[j], m[k] = m[k], m[j]
        for row in u:
            row[j], row[k] = row[k], row[j]

    def negate(j):
        for i in range(n):
            m[i][j] = -m[i][j]
        for i in range(n):
            m[j][i] = -m[j][i]
        for i in range(n):
            u[i][j] = -u[i][j]

    t = 0
    guard = 0
    while t + 1 < n:
        guard += 1
        if guard > 100000:
            raise RuntimeError("skew normal form failed to converge")
        best = None
        for i in range(t, n):
            for j in range(i + 1, n):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best  # i0 < j0 and j0 >= t+1, so these swaps land the pivot at (t, t+1)
        swap(t, i0)
        swap(t + 1, j0)
        if m[t][t + 1] < 0:
            negate(t + 1)
        p = m[t][t + 1]
        dirty = False
        for j in range(t + 2, n):
            q = m[t][j] // p
            if q:
                col_add(j, t + 1, -q)
            if m[t][j] != 0:
                dirty = True
        for j in range(t + 2, n):
            q = m[t + 1][j] // p
            if q:
                col_add(j, t, q)
            if m[t + 1][j] != 0:
                dirty = True
        if dirty:
            continue
        offender = None
        for i in range(t + 2, n):
            for j in range(i + 1, n):
                if m[i][j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            col_add(t, offender, 1)
            continue
        t += 2
    divisors = []
    k = 0
    while 2 * k + 1 < n and m[2 * k][2 * k + 1] != 0:
        divisors.append(m[2 * k][2 * k + 1])
        k += 1
    for i in range(len(divisors) - 1):
        if divisors[i + 1] % divisors[i] != 0:
            raise AssertionError("divisor chain violated")
    snf = SkewNormalForm(n, tuple(divisors), tuple(tuple(r) for r in u))
    ut = transpose(u)
    if not mat_eq(matmul(matmul(ut, copy(a)), u), snf.canonical_matrix()):
        raise AssertionError("transform re-multiplication failed")
    return snf


def matinv_unimodular(a) -> list[list[int]]:
    """Exact inverse of a unimodular integer matrix."""
    h, u = hermite_nf(a)
    n = len(a)
    if not mat_eq(h, identity(n)):
        raise ValueError("matrix is not unimodular")
    return u
