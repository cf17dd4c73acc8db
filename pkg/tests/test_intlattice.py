import itertools
import random

import pytest

from qwalg import intlattice as il


def random_unimodular(n, rng, steps=8):
    u = il.identity(n)
    for _ in range(steps):
        kind = rng.randrange(3)
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        e = il.identity(n)
        if kind == 0 and n > 1:
            e[i][j] = rng.choice([-2, -1, 1, 2])
        elif kind == 1 and n > 1:
            e[i][i] = e[j][j] = 0
            e[i][j] = 1
            e[j][i] = 1
        else:
            e[i][i] = -1
        u = il.matmul(u, e)
    return u


def random_antisymmetric(n, rng, bound=4):
    a = il.zeros(n, n)
    for i in range(n):
        for j in range(i + 1, n):
            a[i][j] = rng.randrange(-bound, bound + 1)
            a[j][i] = -a[i][j]
    return a


def test_smith_identity():
    d, u, v = il.smith_nf(il.identity(3))
    assert il.mat_eq(d, il.identity(3))
    assert il.mat_eq(il.matmul(il.matmul(u, il.identity(3)), v), d)


def test_smith_2_3():
    a = [[2, 0], [0, 3]]
    d, u, v = il.smith_nf(a)
    assert il.mat_eq(il.matmul(il.matmul(u, a), v), d)
    diag = [d[i][i] for i in range(2)]
    assert all(diag[i] >= 0 for i in range(2))
    assert diag[1] % diag[0] == 0
    # elementary divisors of diag(2,3) are 1 and 6
    assert diag == [1, 6]


def test_smith_random_verified():
    rng = random.Random(3)
    for _ in range(60):
        r, c = rng.randrange(1, 5), rng.randrange(1, 5)
        a = [[rng.randrange(-6, 7) for _ in range(c)] for _ in range(r)]
        d, u, v = il.smith_nf(a)
        assert il.mat_eq(il.matmul(il.matmul(u, a), v), d)
        assert abs(il.det(u)) == 1 and abs(il.det(v)) == 1
        diag = [d[i][i] for i in range(min(r, c))]
        for i in range(len(diag) - 1):
            if diag[i]:
                assert diag[i + 1] % diag[i] == 0
            else:
                assert diag[i + 1] == 0


def test_hermite_zero():
    h, u = il.hermite_nf([[0, 0], [0, 0]])
    assert il.mat_eq(h, [[0, 0], [0, 0]])
    assert abs(il.det(u)) == 1


def test_hermite_canonical():
    rng = random.Random(5)
    for _ in range(60):
        r, c = rng.randrange(1, 5), rng.randrange(1, 5)
        a = [[rng.randrange(-6, 7) for _ in range(c)] for _ in range(r)]
        h, u = il.hermite_nf(a)
        assert il.mat_eq(il.matmul(u, a), h)
        assert abs(il.det(u)) == 1
        # row-space canonicity: shuffling rows gives the same form
        b = [row[:] for row in a]
        rng.shuffle(b)
        h2, _ = il.hermite_nf(b)
        assert [r for r in h if any(r)] == [r2 for r2 in h2 if any(r2)]


def test_kernel_simple():
    assert il.kernel_with_torsion([[1, -1]], [], 1, 2) == [[1, 1]]
    assert il.kernel_with_torsion([], [[1]], 2, 1) == [[2]]


def test_kernel_with_torsion_brute():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randrange(1, 4)
        e = rng.choice([1, 2, 3, 4])
        a = [[rng.randrange(-2, 3) for _ in range(n)] for _ in range(rng.randrange(0, 3))]
        b = [[rng.randrange(-2, 3) for _ in range(n)] for _ in range(rng.randrange(0, 3))]
        basis = il.kernel_with_torsion(a, b, e, n)
        # brute force on a small box
        for alpha in itertools.product(range(-3, 4), repeat=n):
            in_set = all(sum(r[i] * alpha[i] for i in range(n)) == 0 for r in a) and \
                all(sum(r[i] * alpha[i] for i in range(n)) % e == 0 for r in b)
            assert il.lattice_member(basis, list(alpha)) == in_set


def test_lattice_intersect_examples():
    assert il.lattice_intersect(il.identity(2), [[0, 1]], 2) == [[0, 1]]
    got = il.lattice_intersect([[2, 0], [0, 1]], [[1, 0], [0, 3]], 2)
    assert got == [[2, 0], [0, 3]]


def test_lattice_intersect_membership():
    rng = random.Random(13)
    for _ in range(25):
        b1 = [[rng.randrange(-3, 4) for _ in range(4)] for _ in range(3)]
        b2 = [[rng.randrange(-3, 4) for _ in range(4)] for _ in range(3)]
        inter = il.lattice_intersect(b1, b2, 4)
        for v in inter:
            assert il.lattice_member(b1, v) and il.lattice_member(b2, v)
        for v in itertools.product(range(-2, 3), repeat=4):
            v = list(v)
            if il.lattice_member(b1, v) and il.lattice_member(b2, v):
                assert il.lattice_member(inter, v)


def test_skew_examples():
    f = il.skew_normal_form([[0, 2], [-2, 0]])
    assert f.divisors == (2,)
    assert il.mat_eq([list(r) for r in f.transform], il.identity(2))
    f2 = il.skew_normal_form([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]])
    assert f2.divisors == (1,)  # rank 2: one hyperbolic block, one zero line
    assert il.rank([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]) == 2


def test_skew_congruence_invariance():
    rng = random.Random(17)
    for _ in range(120):
        n = rng.randrange(1, 7)
        a = random_antisymmetric(n, rng)
        u = random_unimodular(n, rng)
        b = il.matmul(il.matmul(il.transpose(u), a), u)
        fa = il.skew_normal_form(a)
        fb = il.skew_normal_form(b)
        assert fa.divisors == fb.divisors
        assert il.rank(a) == 2 * len(fa.divisors)
        for i in range(len(fa.divisors) - 1):
            assert fa.divisors[i + 1] % fa.divisors[i] == 0


def test_skew_rejects_nonantisymmetric():
    with pytest.raises(ValueError):
        il.skew_normal_form([[0, 1], [1, 0]])


def test_matinv_unimodular():
    rng = random.Random(19)
    for _ in range(30):
        n = rng.randrange(1, 6)
        u = random_unimodular(n, rng)
        w = il.matinv_unimodular(u)
        assert il.mat_eq(il.matmul(w, u), il.identity(n))
